#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include <json.hpp>

namespace mec {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

/// dBm/Hz to W/Hz.
inline double dbm_per_hz_to_watts(double dbm) { return db_to_linear(dbm) * 1e-3; }

/**
 * Physical and algorithmic constants of one experiment. All values are
 * stored in linear SI units; decibel quantities are converted on load.
 *
 * Defaults reproduce the reference experiment (n = 30 clients, m = 3
 * servers, V = 1e9, alpha = 0.3, beta = 1e-5, 10000 slots) except for the
 * bandwidth, which defaults to 10 MHz per server.
 */
struct SystemParams {
  double tau = 2e-3;                               // slot length [s]
  double omega = 10e6;                             // bandwidth per server [Hz]
  double noise_psd = dbm_per_hz_to_watts(-174.0);  // N0 [W/Hz]
  double g0 = db_to_linear(-40.0);                 // path-loss constant
  double d0 = 1.0;                                 // reference distance [m]
  double theta = 4.0;                              // path-loss exponent
  double k_mod = 1e-27;                            // switched capacitance
  double f_max_client = 1e9;                       // [Hz]
  double p_max = 0.5;                              // [W]
  double cycles_per_bit = 737.5;
  double f_max_server = 2.5e9;                     // per CPU [Hz]
  int num_cpus_server = 4;
  double v = 1e9;
  double alpha = 0.3;
  double beta = 1e-5;
  double a_max = 1000.0;                           // [bits]
  int n_clients = 30;
  int n_servers = 3;
  int n_slots = 10000;
  double cell_radius = 150.0;                      // [m]
  std::uint64_t seed = 42;

  // Cap the bits entering the virtual queue at the local backlog.
  bool physical_clamp = false;
  // Clamp the latency terms of the service cost at zero.
  bool clamp_cost = true;

  /// Throws ConfigError naming the first offending field.
  void validate() const;

  /// Per-server compute budget in cycles per slot.
  double server_cycles_per_slot() const {
    return tau * static_cast<double>(num_cpus_server) * f_max_server;
  }
};

/// Reads every known key from `j`; absent keys keep their defaults and
/// unknown keys are rejected. The result is validated.
SystemParams params_from_json(const nlohmann::json& j);
nlohmann::json params_to_json(const SystemParams& p);
SystemParams load_params(const std::string& path);

}  // namespace mec
