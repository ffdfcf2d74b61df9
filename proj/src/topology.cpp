#include "mec/topology.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "mec/error.hpp"

namespace mec {

namespace {

constexpr double kMinDistance = 0.01;
constexpr int kMaxAttemptsPerClient = 100000;

}  // namespace

Positions server_grid(int n_servers, double cell_radius) {
  require(n_servers >= 1, "server_grid: need at least one server");
  const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n_servers))));
  const double spacing = 1.5 * cell_radius;
  Positions pos(n_servers, 2);
  for (int j = 0; j < n_servers; ++j) {
    pos(j, 0) = (j % cols) * spacing;
    pos(j, 1) = (j / cols) * spacing;
  }
  return pos;
}

Topology make_topology(const Positions& clients, const Positions& servers,
                       const SystemParams& params) {
  const double cell_radius = params.cell_radius;
  const double omega = params.omega;
  const auto n = static_cast<int>(clients.rows());
  const auto m = static_cast<int>(servers.rows());
  require(n >= 1 && m >= 1, "make_topology: need at least one client and one server");

  Topology t;
  t.client_pos = clients;
  t.server_pos = servers;
  t.distances.resize(n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      t.distances(i, j) =
          std::max((clients.row(i) - servers.row(j)).norm(), kMinDistance);
  t.coverage = (t.distances.array() <= cell_radius).matrix();
  t.attenuation = t.coverage.array().select(
      params.g0 * (params.d0 / t.distances.array()).pow(params.theta), 0.0);

  t.g_sets.assign(n, {});
  t.z_sets.assign(m, {});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      if (t.coverage(i, j)) {
        t.g_sets[i].push_back(j);
        t.z_sets[j].push_back(i);
      }

  t.bandwidth_share = Eigen::VectorXd::Zero(m);
  for (int j = 0; j < m; ++j)
    if (!t.z_sets[j].empty()) t.bandwidth_share[j] = omega / static_cast<double>(t.z_sets[j].size());
  return t;
}

Topology build_topology(const SystemParams& params, Rng& rng) {
  require(params.n_clients >= 1, "build_topology: n_clients must be >= 1");
  require(params.n_servers >= 1, "build_topology: n_servers must be >= 1");
  const double r = params.cell_radius;
  const Positions servers = server_grid(params.n_servers, r);
  const Eigen::RowVector2d lo = servers.colwise().minCoeff().array() - r;
  const Eigen::RowVector2d hi = servers.colwise().maxCoeff().array() + r;

  Positions clients(params.n_clients, 2);
  for (int i = 0; i < params.n_clients; ++i) {
    bool covered = false;
    for (int attempt = 0; attempt < kMaxAttemptsPerClient && !covered; ++attempt) {
      const Eigen::RowVector2d c(rng.uniform(lo.x(), hi.x()), rng.uniform(lo.y(), hi.y()));
      covered = ((servers.rowwise() - c).rowwise().norm().array() <= r).any();
      if (covered) clients.row(i) = c;
    }
    if (!covered)
      throw SimulationError("build_topology: could not place client " + std::to_string(i) +
                            " inside any coverage disk");
  }

  Topology t = make_topology(clients, servers, params);
  t.validate(params.omega);
  return t;
}

void Topology::validate(double omega) const {
  const int n = n_clients();
  const int m = n_servers();
  require(distances.rows() == n && distances.cols() == m, "topology: distance shape");
  require(coverage.rows() == n && coverage.cols() == m, "topology: coverage shape");
  require(static_cast<int>(g_sets.size()) == n && static_cast<int>(z_sets.size()) == m,
          "topology: coverage set sizes");
  for (int i = 0; i < n; ++i) {
    require(!g_sets[i].empty(), [&] { return "topology: client " + std::to_string(i) + " is uncovered"; });
    for (int j : g_sets[i]) require(coverage(i, j), "topology: G set disagrees with coverage");
  }
  for (int j = 0; j < m; ++j) {
    for (int i : z_sets[j]) require(coverage(i, j), "topology: Z set disagrees with coverage");
    const auto size = static_cast<double>(z_sets[j].size());
    if (size > 0)
      require(std::abs(bandwidth_share[j] * size - omega) <= 1e-9 * omega,
              "topology: bandwidth shares do not add up");
    else
      require(bandwidth_share[j] == 0.0, "topology: empty cell with bandwidth");
  }
  require(coverage.cast<int>().sum() ==
              static_cast<int>(std::accumulate(g_sets.begin(), g_sets.end(), std::size_t{0},
                                               [](std::size_t a, const auto& g) { return a + g.size(); })),
          "topology: coverage count mismatch");
}

}  // namespace mec
