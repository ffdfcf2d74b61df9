#pragma once

#include <optional>

#include <Eigen/Dense>

#include "mec/params.hpp"
#include "mec/queues.hpp"
#include "mec/topology.hpp"

namespace mec {

/// Per-slot control output.
struct SlotDecision {
  Eigen::VectorXd f;    // CPU frequency per client [Hz]
  Eigen::VectorXd p;    // transmit power per client [W]
  Eigen::MatrixXi x;    // n x m assignment, 0/1
  Eigen::VectorXd d_l;  // bits executed locally
  Eigen::VectorXd d_r;  // bits offloaded
  Eigen::VectorXd d_s;  // bits executed at the edge
  Eigen::VectorXd server_cycles;  // cycles spent per server

  static SlotDecision zeros(int n, int m);

  int offload_count() const { return x.sum(); }
};

/// Throws ContractError when a decision breaks a frequency, power,
/// assignment or server-capacity constraint.
void check_decision(const SlotDecision& d, const Topology& topo, const SystemParams& p);

/// Offloading pressure psi = q - h + V alpha beta and edge priority
/// value = V (1 - alpha) beta + h.
struct ControlWeights {
  double v = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  Eigen::VectorXd psi;
  Eigen::VectorXd value;

  static ControlWeights from(const QueueState& queues, const SystemParams& p);
};

/// Minimizer of -(q + V alpha beta) tau f / L + V (1 - beta) k f^3 on [0, f_max].
double optimal_frequency(double q, const SystemParams& p);
Eigen::VectorXd optimal_frequency(const Eigen::VectorXd& q, const SystemParams& p);

/**
 * Minimizer of -psi tau r(p) + V (1 - beta) p on [0, p_max] for a fixed
 * server with bandwidth share `bandwidth` and channel gain `gain`.
 * beta = 1 transmits at full power; psi <= 0 or a dead channel gives 0.
 */
double optimal_power(double psi, double gain, double bandwidth, const SystemParams& p);

/// One client/server pairing evaluated at its optimal power.
struct OffloadCandidate {
  int server = -1;
  double power = 0.0;
  double bits = 0.0;       // tau * rate
  double objective = 0.0;  // -psi * bits + V (1 - beta) * power

  /// Whether offloading through this candidate improves on staying local.
  bool beneficial() const { return power > 0.0 && objective < 0.0; }
};

OffloadCandidate evaluate_candidate(int client, int server, double psi, const Topology& topo,
                                    const Eigen::MatrixXd& gains, const SystemParams& p);

/**
 * Picks, among the servers covering `client`, the one whose candidate has the
 * lowest objective (ties: nearer server, then lower index). Returns nothing
 * when psi <= 0 or no candidate is beneficial.
 */
std::optional<OffloadCandidate> select_server(int client, double psi, const Topology& topo,
                                              const Eigen::MatrixXd& gains,
                                              const SystemParams& p);

struct ComputeAllocation {
  Eigen::VectorXd served;           // d_s per client [bits]
  Eigen::VectorXd remaining_cycles; // per server, after allocation
};

/**
 * Greedy edge allocation: clients in decreasing priority draw on the pooled
 * remaining cycles of the servers covering them. A client whose demand fits
 * is fully served and its servers are debited in proportion to their
 * remaining budget; otherwise it takes everything left on them.
 */
ComputeAllocation allocate_compute(const Eigen::VectorXd& h, const Eigen::VectorXd& value,
                                   const Topology& topo, const SystemParams& p);

/// Per-slot drift-plus-penalty objective
///   -sum q (d_l + d_r) - sum h (d_s - d_r) + V sum xi
/// with the unclamped service cost. Validates the decision first.
double drift_penalty_objective(const SlotDecision& d, const QueueState& queues,
                               const Topology& topo, const SystemParams& p);

}  // namespace mec
