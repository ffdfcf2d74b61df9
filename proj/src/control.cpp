#include "mec/control.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "mec/channel.hpp"
#include "mec/cost.hpp"
#include "mec/error.hpp"

namespace mec {

namespace {

constexpr double kCapacitySlack = 1e-9;

std::string client_tag(int i) { return "client " + std::to_string(i); }

}  // namespace

SlotDecision SlotDecision::zeros(int n, int m) {
  SlotDecision d;
  d.f = Eigen::VectorXd::Zero(n);
  d.p = Eigen::VectorXd::Zero(n);
  d.x = Eigen::MatrixXi::Zero(n, m);
  d.d_l = Eigen::VectorXd::Zero(n);
  d.d_r = Eigen::VectorXd::Zero(n);
  d.d_s = Eigen::VectorXd::Zero(n);
  d.server_cycles = Eigen::VectorXd::Zero(m);
  return d;
}

void check_decision(const SlotDecision& d, const Topology& topo, const SystemParams& p) {
  const int n = topo.n_clients();
  const int m = topo.n_servers();
  require(d.f.size() == n && d.p.size() == n && d.d_l.size() == n && d.d_r.size() == n &&
              d.d_s.size() == n && d.x.rows() == n && d.x.cols() == m &&
              d.server_cycles.size() == m,
          "decision: dimensions do not match the topology");
  for (int i = 0; i < n; ++i) {
    require(d.f[i] >= 0.0 && d.f[i] <= p.f_max_client, [&] { return client_tag(i) + ": frequency out of range"; });
    require(d.p[i] >= 0.0 && d.p[i] <= p.p_max, [&] { return client_tag(i) + ": power out of range"; });
    require(d.d_l[i] >= 0.0 && d.d_r[i] >= 0.0 && d.d_s[i] >= 0.0, [&] { return client_tag(i) + ": negative bit amount"; });
    int assigned = 0;
    for (int j = 0; j < m; ++j) {
      require(d.x(i, j) == 0 || d.x(i, j) == 1, [&] { return client_tag(i) + ": assignment not 0/1"; });
      if (d.x(i, j) == 1) {
        require(topo.coverage(i, j), [&] { return client_tag(i) + ": assigned to a server that does not cover it"; });
        ++assigned;
      }
    }
    require(assigned <= 1, [&] { return client_tag(i) + ": assigned to more than one server"; });
  }
  const double cap = p.server_cycles_per_slot();
  for (int j = 0; j < m; ++j)
    require(d.server_cycles[j] >= 0.0 && d.server_cycles[j] <= cap * (1.0 + kCapacitySlack), [&] { return "server " + std::to_string(j) + ": cycle budget exceeded"; });
  const double executed = d.d_s.sum() * p.cycles_per_bit;
  require(executed <= d.server_cycles.sum() * (1.0 + kCapacitySlack) + 1e-6,
          "decision: edge execution exceeds spent cycles");
}

ControlWeights ControlWeights::from(const QueueState& queues, const SystemParams& p) {
  ControlWeights w;
  w.v = p.v;
  w.alpha = p.alpha;
  w.beta = p.beta;
  w.psi = (queues.q - queues.h).array() + p.v * p.alpha * p.beta;
  w.value = queues.h.array() + p.v * (1.0 - p.alpha) * p.beta;
  return w;
}

double optimal_frequency(double q, const SystemParams& p) {
  if (!(p.v > 0.0)) throw ConfigError("optimal_frequency: V must be > 0");
  require(q >= 0.0, "optimal_frequency: negative queue");
  if (p.beta == 1.0) return p.f_max_client;
  const double stationary = std::sqrt((q + p.v * p.alpha * p.beta) * p.tau /
                                      (3.0 * p.k_mod * p.v * (1.0 - p.beta) * p.cycles_per_bit));
  return std::min(stationary, p.f_max_client);
}

Eigen::VectorXd optimal_frequency(const Eigen::VectorXd& q, const SystemParams& p) {
  return q.unaryExpr([&](double qi) { return optimal_frequency(qi, p); });
}

double optimal_power(double psi, double gain, double bandwidth, const SystemParams& p) {
  require(bandwidth > 0.0, "optimal_power: bandwidth must be > 0");
  require(gain >= 0.0, "optimal_power: negative gain");
  if (p.beta == 1.0) return p.p_max;
  if (psi <= 0.0 || gain == 0.0) return 0.0;
  const double lambda = psi * p.tau * bandwidth / (p.v * (1.0 - p.beta) * std::numbers::ln2) -
                        p.noise_psd * bandwidth / gain;
  return std::clamp(lambda, 0.0, p.p_max);
}

OffloadCandidate evaluate_candidate(int client, int server, double psi, const Topology& topo,
                                    const Eigen::MatrixXd& gains, const SystemParams& p) {
  require(topo.coverage(client, server), [&] { return client_tag(client) + ": candidate server " + std::to_string(server) + " does not cover it"; });
  const double bandwidth = topo.bandwidth_share[server];
  const double gain = gains(client, server);
  OffloadCandidate c;
  c.server = server;
  c.power = optimal_power(psi, gain, bandwidth, p);
  c.bits = transmit_rate(bandwidth, gain, c.power, p.noise_psd, true) * p.tau;
  c.objective = -psi * c.bits + p.v * (1.0 - p.beta) * c.power;
  return c;
}

std::optional<OffloadCandidate> select_server(int client, double psi, const Topology& topo,
                                              const Eigen::MatrixXd& gains,
                                              const SystemParams& p) {
  const auto& candidates = topo.g_sets.at(client);
  require(!candidates.empty(), [&] { return client_tag(client) + ": no covering server"; });
  if (psi <= 0.0) return std::nullopt;

  std::optional<OffloadCandidate> best;
  for (int j : candidates) {
    const OffloadCandidate c = evaluate_candidate(client, j, psi, topo, gains, p);
    const bool better =
        !best || c.objective < best->objective ||
        (c.objective == best->objective &&
         topo.distances(client, j) < topo.distances(client, best->server));
    if (better) best = c;
  }
  if (!best->beneficial()) return std::nullopt;
  return best;
}

ComputeAllocation allocate_compute(const Eigen::VectorXd& h, const Eigen::VectorXd& value,
                                   const Topology& topo, const SystemParams& p) {
  const int n = topo.n_clients();
  require(h.size() == n && value.size() == n, "allocate_compute: size mismatch");
  require((h.array() >= 0.0).all(), "allocate_compute: negative backlog");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return value[a] > value[b]; });

  ComputeAllocation out;
  out.served = Eigen::VectorXd::Zero(n);
  out.remaining_cycles = Eigen::VectorXd::Constant(topo.n_servers(), p.server_cycles_per_slot());
  Eigen::VectorXd& rest = out.remaining_cycles;

  for (int i : order) {
    if (h[i] == 0.0) continue;
    const auto& g = topo.g_sets[i];
    double pool = 0.0;
    for (int j : g) pool += rest[j];
    const double demand = h[i] * p.cycles_per_bit;
    if (pool >= demand) {
      out.served[i] = h[i];
      for (int j : g) rest[j] = std::max(rest[j] - rest[j] / pool * demand, 0.0);
    } else {
      out.served[i] = pool / p.cycles_per_bit;
      for (int j : g) rest[j] = 0.0;
    }
  }
  return out;
}

double drift_penalty_objective(const SlotDecision& d, const QueueState& queues,
                               const Topology& topo, const SystemParams& p) {
  check_decision(d, topo, p);
  require(queues.size() == topo.n_clients(), "drift_penalty_objective: queue size mismatch");
  double total = 0.0;
  for (int i = 0; i < topo.n_clients(); ++i) {
    const double q = queues.q[i];
    const double h = queues.h[i];
    const ClientSlot c{q, h, d.d_l[i] + d.d_r[i], d.d_s[i], local_power(d.f[i], p), d.p[i]};
    total += -q * c.d_sum - h * (d.d_s[i] - d.d_r[i]) + p.v * service_cost(c, p, false);
  }
  return total;
}

}  // namespace mec
