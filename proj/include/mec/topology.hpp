#pragma once

#include <vector>

#include <Eigen/Dense>

#include "mec/params.hpp"
#include "mec/rng.hpp"

namespace mec {

using Positions = Eigen::Matrix<double, Eigen::Dynamic, 2>;
using CoverageMatrix = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

/// Static placement of clients and servers and everything derived from it.
struct Topology {
  Positions client_pos;       // n x 2 [m]
  Positions server_pos;       // m x 2 [m]
  Eigen::MatrixXd distances;  // n x m [m]
  CoverageMatrix coverage;    // n x m, true iff distance <= cell radius
  std::vector<std::vector<int>> g_sets;  // covering servers per client
  std::vector<std::vector<int>> z_sets;  // covered clients per server
  Eigen::VectorXd bandwidth_share;       // omega / |Z_j|, 0 for empty cells
  Eigen::MatrixXd attenuation;           // g0 (d0 / d)^theta, 0 where uncovered

  int n_clients() const { return static_cast<int>(client_pos.rows()); }
  int n_servers() const { return static_cast<int>(server_pos.rows()); }

  /// Throws ContractError if the coverage sets, matrix and shares disagree
  /// or some client is uncovered.
  void validate(double omega) const;
};

/// Servers on a square grid with spacing 1.5 * radius.
Positions server_grid(int n_servers, double cell_radius);

/**
 * Derives distances, coverage sets, bandwidth shares and path loss from
 * explicit positions. Zero distances are moved to 1 cm.
 */
Topology make_topology(const Positions& clients, const Positions& servers,
                       const SystemParams& params);

/// Grid servers plus clients drawn uniformly over the union of the coverage
/// disks (rejection sampling on the bounding box).
Topology build_topology(const SystemParams& params, Rng& rng);

}  // namespace mec
