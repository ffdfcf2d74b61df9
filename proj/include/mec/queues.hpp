#pragma once

#include <span>

#include <Eigen/Dense>

namespace mec {

/// Backlogs in bits: q is the local queue, h the aggregate amount offloaded
/// but not yet executed at any server.
struct QueueState {
  Eigen::VectorXd q;
  Eigen::VectorXd h;

  static QueueState zeros(int n) {
    return {Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n)};
  }
  int size() const { return static_cast<int>(q.size()); }
  bool non_negative() const { return (q.array() >= 0.0).all() && (h.array() >= 0.0).all(); }
};

/// max(q - served, 0) + arrived
double update_local(double q, double served, double arrived);

/// max(h - executed, 0) + offloaded
double update_virtual(double h, double executed, double offloaded);

struct StabilityReport {
  double mean_first_half = 0.0;
  double mean_second_half = 0.0;
  double ratio = 1.0;  // second / first; 1 when both halves are zero
  bool unstable = false;
};

inline constexpr double kInstabilityRatio = 2.0;
inline constexpr std::size_t kMinStabilityHistory = 100;

/**
 * Compares the mean total backlog of the second half of a run with the first
 * half. A ratio above 2 flags a backlog that keeps growing. For odd lengths
 * the middle slot belongs to the second half.
 */
StabilityReport stability_diagnostic(std::span<const double> totals);

}  // namespace mec
