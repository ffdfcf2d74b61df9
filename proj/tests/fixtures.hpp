#pragma once

// Random instance generators shared by the unit and acceptance suites.

#include <cmath>

#include "mec/channel.hpp"
#include "mec/control.hpp"
#include "mec/params.hpp"
#include "mec/queues.hpp"
#include "mec/rng.hpp"
#include "mec/slot_draw.hpp"
#include "mec/topology.hpp"

namespace fixture {

inline double log_uniform(mec::Rng& rng, double lo, double hi) {
  return std::exp(rng.uniform(std::log(lo), std::log(hi)));
}

/// Control parameters drawn from the ranges used in the experiments.
inline mec::SystemParams random_control(mec::Rng& rng) {
  mec::SystemParams p;
  p.v = log_uniform(rng, 1e8, 1e10);
  p.alpha = rng.uniform(0.3, 0.7);
  p.beta = log_uniform(rng, 1e-6, 1e-5);
  return p;
}

struct Instance {
  mec::SystemParams params;
  mec::Topology topology;
  mec::QueueState queues;
  mec::SlotDraw draw;
};

/// Random topology with up to `max_n` clients and `max_m` servers, random
/// backlogs up to `max_backlog` bits and a fresh slot draw.
inline Instance random_instance(mec::Rng& rng, int max_n, int max_m, double max_backlog) {
  Instance in;
  in.params = random_control(rng);
  in.params.n_clients = 1 + static_cast<int>(rng.index(static_cast<std::uint64_t>(max_n)));
  in.params.n_servers = 1 + static_cast<int>(rng.index(static_cast<std::uint64_t>(max_m)));
  in.topology = mec::build_topology(in.params, rng);
  const int n = in.params.n_clients;
  in.queues = mec::QueueState::zeros(n);
  for (int i = 0; i < n; ++i) {
    in.queues.q[i] = rng.uniform(0.0, max_backlog);
    in.queues.h[i] = rng.uniform(0.0, max_backlog);
  }
  in.draw = mec::draw_slot(in.params, rng);
  return in;
}

/// Sets client i's frequency and the matching local execution.
inline void set_frequency(mec::SlotDecision& d, int i, double f, const mec::SystemParams& p) {
  d.f[i] = f;
  d.d_l[i] = mec::local_exec_bits(f, p);
}

/// Sets client i's transmit power on its current server and the matching
/// offloaded bits.
inline void set_power(mec::SlotDecision& d, int i, double power, const mec::Topology& t,
                      const Eigen::MatrixXd& gains, const mec::SystemParams& p) {
  int j = -1;
  for (int k = 0; k < t.n_servers(); ++k)
    if (d.x(i, k) == 1) j = k;
  d.p[i] = power;
  d.d_r[i] = j < 0 ? 0.0
                   : mec::transmit_rate(t.bandwidth_share[j], gains(i, j), power, p.noise_psd,
                                        true) * p.tau;
}

}  // namespace fixture
