#pragma once

#include <Eigen/Dense>

#include "mec/params.hpp"
#include "mec/rng.hpp"

namespace mec {

/// Random inputs of one slot.
struct SlotDraw {
  Eigen::VectorXd arrivals;  // bits, Uniform[0, a_max]
  Eigen::MatrixXd fading;    // n x m, Exp(1)
};

/// Arrivals first (client order), then fading row by row. Every pair is
/// drawn, covered or not, so the stream layout only depends on n and m.
inline SlotDraw draw_slot(const SystemParams& p, Rng& rng) {
  SlotDraw d;
  d.arrivals.resize(p.n_clients);
  for (int i = 0; i < p.n_clients; ++i) d.arrivals[i] = rng.uniform(0.0, p.a_max);
  d.fading.resize(p.n_clients, p.n_servers);
  for (int i = 0; i < p.n_clients; ++i)
    for (int j = 0; j < p.n_servers; ++j) d.fading(i, j) = rng.exponential();
  return d;
}

}  // namespace mec
