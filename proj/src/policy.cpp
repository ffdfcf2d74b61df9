#include "mec/policy.hpp"

#include <string>

#include "mec/channel.hpp"
#include "mec/error.hpp"

namespace mec {

PolicyKind parse_policy(std::string_view name) {
  if (name == "ojtora") return PolicyKind::Ojtora;
  if (name == "random") return PolicyKind::Random;
  if (name == "greedy") return PolicyKind::Greedy;
  throw ConfigError("unknown policy '" + std::string(name) + "' (expected ojtora, random or greedy)");
}

std::string_view policy_name(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::Ojtora: return "ojtora";
    case PolicyKind::Random: return "random";
    case PolicyKind::Greedy: return "greedy";
  }
  throw ConfigError("unknown policy kind");
}

namespace {

int nearest_server(int client, const Topology& topo) {
  const auto& g = topo.g_sets[client];
  int best = g.front();
  for (int j : g)
    if (topo.distances(client, j) < topo.distances(client, best)) best = j;
  return best;
}

std::optional<OffloadCandidate> fixed_server(int client, int server, double psi,
                                             const Topology& topo, const Eigen::MatrixXd& gains,
                                             const SystemParams& p) {
  const OffloadCandidate c = evaluate_candidate(client, server, psi, topo, gains, p);
  if (!c.beneficial()) return std::nullopt;
  return c;
}

}  // namespace

SlotDecision decide(PolicyKind kind, const Observation& obs, Rng& rng) {
  const Topology& topo = obs.topology;
  const SystemParams& p = obs.params;
  const int n = topo.n_clients();
  const int m = topo.n_servers();
  require(obs.queues.size() == n && obs.draw.arrivals.size() == n &&
              obs.draw.fading.rows() == n && obs.draw.fading.cols() == m,
          "decide: observation dimensions are inconsistent");

  SlotDecision d = SlotDecision::zeros(n, m);
  d.f = optimal_frequency(obs.queues.q, p);
  d.d_l = local_exec_bits(d.f.array(), p).matrix();

  const ControlWeights w = ControlWeights::from(obs.queues, p);
  const Eigen::MatrixXd gains = channel_gains(topo, obs.draw.fading);

  for (int i = 0; i < n; ++i) {
    require(!topo.g_sets[i].empty(), [&] { return "decide: client " + std::to_string(i) + " is uncovered"; });
    if (w.psi[i] <= 0.0) continue;
    std::optional<OffloadCandidate> choice;
    switch (kind) {
      case PolicyKind::Ojtora:
        choice = select_server(i, w.psi[i], topo, gains, p);
        break;
      case PolicyKind::Random: {
        const auto& g = topo.g_sets[i];
        const int j = g[rng.index(g.size())];
        choice = fixed_server(i, j, w.psi[i], topo, gains, p);
        break;
      }
      case PolicyKind::Greedy:
        choice = fixed_server(i, nearest_server(i, topo), w.psi[i], topo, gains, p);
        break;
    }
    if (choice) {
      d.x(i, choice->server) = 1;
      d.p[i] = choice->power;
      d.d_r[i] = choice->bits;
    }
  }

  const ComputeAllocation alloc = allocate_compute(obs.queues.h, w.value, topo, p);
  d.d_s = alloc.served;
  d.server_cycles = p.server_cycles_per_slot() - alloc.remaining_cycles.array();
  return d;
}

}  // namespace mec
