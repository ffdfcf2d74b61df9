#pragma once

#include "mec/params.hpp"

namespace mec {

/// Decision quantities of one client in one slot.
struct ClientSlot {
  double q = 0.0;
  double h = 0.0;
  double d_sum = 0.0;  // d_l + d_r
  double d_s = 0.0;
  double p_local = 0.0;
  double p_tx = 0.0;
};

/// beta * latency + (1 - beta) * power, with
/// latency = alpha (q - d_sum) + (1 - alpha) (h - d_s). With `clamp` the two
/// backlog terms are floored at zero.
inline double service_cost(const ClientSlot& c, const SystemParams& p, bool clamp) {
  double local = c.q - c.d_sum;
  double edge = c.h - c.d_s;
  if (clamp) {
    local = local > 0.0 ? local : 0.0;
    edge = edge > 0.0 ? edge : 0.0;
  }
  const double latency = p.alpha * local + (1.0 - p.alpha) * edge;
  return p.beta * latency + (1.0 - p.beta) * (c.p_local + c.p_tx);
}

}  // namespace mec
