#pragma once

#include <cmath>
#include <concepts>
#include <numbers>

#include <Eigen/Dense>

#include "mec/error.hpp"
#include "mec/params.hpp"
#include "mec/topology.hpp"

namespace mec {

/// Uplink channel power gain: fading * g0 * (d0 / d)^theta.
template <std::floating_point Scalar>
Scalar path_gain(Scalar fading, Scalar distance, const SystemParams& p) {
  using std::pow;
  return fading * Scalar(p.g0) * pow(Scalar(p.d0) / distance, Scalar(p.theta));
}

/// Gain of the pair (i, j); the pair must be in coverage.
inline double channel_gain(const Topology& topo, const Eigen::MatrixXd& fading,
                           const SystemParams& p, int i, int j) {
  require(i >= 0 && i < topo.n_clients() && j >= 0 && j < topo.n_servers(),
          "channel_gain: index out of range");
  require(topo.coverage(i, j), [&] { return "channel_gain: client " + std::to_string(i) +
                                   " is not covered by server " + std::to_string(j); });
  require(topo.distances(i, j) > 0.0, "channel_gain: non-positive distance");
  return path_gain(fading(i, j), topo.distances(i, j), p);
}

/// Gains for every pair at once from the topology's cached path loss;
/// uncovered pairs are zero.
inline Eigen::MatrixXd channel_gains(const Topology& topo, const Eigen::MatrixXd& fading) {
  return (fading.array() * topo.attenuation.array()).matrix();
}

/// Shannon rate in bit/s of a client transmitting at `power` over `bandwidth`.
template <std::floating_point Scalar>
Scalar shannon_rate(Scalar bandwidth, Scalar gain, Scalar power, Scalar noise_psd) {
  using std::log2;
  return bandwidth * log2(Scalar(1) + gain * power / (bandwidth * noise_psd));
}

/// Rate when the link is selected, zero otherwise.
inline double transmit_rate(double bandwidth, double gain, double power, double noise_psd,
                            bool selected) {
  require(power >= 0.0, "transmit_rate: negative power");
  if (!selected) return 0.0;
  if (!(bandwidth > 0.0))
    throw ConfigError("transmit_rate: selected server has no bandwidth share");
  return shannon_rate(bandwidth, gain, power, noise_psd);
}

/// Bits processed locally in one slot at CPU frequency f.
template <std::floating_point Scalar>
Scalar local_exec_bits(Scalar f, const SystemParams& p) {
  require(f >= Scalar(0) && f <= Scalar(p.f_max_client),
          "local_exec_bits: frequency outside [0, f_max]");
  return Scalar(p.tau) * f / Scalar(p.cycles_per_bit);
}

template <typename Derived>
Eigen::ArrayXd local_exec_bits(const Eigen::ArrayBase<Derived>& f, const SystemParams& p) {
  require((f >= 0.0).all() && (f <= p.f_max_client).all(),
          "local_exec_bits: frequency outside [0, f_max]");
  return p.tau * f / p.cycles_per_bit;
}

/// Dynamic CPU power k f^3.
template <std::floating_point Scalar>
Scalar local_power(Scalar f, const SystemParams& p) {
  require(f >= Scalar(0), "local_power: negative frequency");
  return Scalar(p.k_mod) * f * f * f;
}

template <typename Derived>
Eigen::ArrayXd local_power(const Eigen::ArrayBase<Derived>& f, const SystemParams& p) {
  require((f >= 0.0).all(), "local_power: negative frequency");
  return p.k_mod * f.cube();
}

}  // namespace mec
