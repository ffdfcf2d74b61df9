#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "mec/params.hpp"
#include "mec/policy.hpp"
#include "mec/simulator.hpp"

namespace mec {

enum class SweepAxis { V, NClients, NServers };

/// "v" | "n" | "m"
SweepAxis parse_axis(std::string_view name);
std::string_view axis_name(SweepAxis axis);

/// Copy of `base` with the swept field set to `value`.
SystemParams with_axis_value(SystemParams base, SweepAxis axis, double value);

struct SweepSpec {
  SweepAxis axis = SweepAxis::V;
  std::vector<double> values;
  SystemParams base;
  std::vector<PolicyKind> policies{PolicyKind::Ojtora, PolicyKind::Random, PolicyKind::Greedy};
  std::vector<std::uint64_t> seeds;

  /// Values non-empty and strictly increasing, integral for n and m; at
  /// least one policy and one seed.
  void validate() const;
};

/// Values used in the reference experiments for each axis.
std::vector<double> reference_axis_values(SweepAxis axis);

/// `count` consecutive seeds starting at `first`.
std::vector<std::uint64_t> seed_range(std::uint64_t first, int count);

struct SweepRow {
  double axis_value = 0.0;
  PolicyKind policy = PolicyKind::Ojtora;
  std::size_t seed_count = 0;
  MetricSummary power, queue, cost, capacity;
};

/// One row per (value, policy), ordered by value then by the order of
/// `spec.policies`. Cells run on up to `jobs` threads.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, int jobs = 1);

std::string sweep_csv(const std::vector<SweepRow>& rows);

enum class Metric { Power, Queue, Cost, Capacity };
inline constexpr Metric kAllMetrics[] = {Metric::Power, Metric::Queue, Metric::Cost,
                                         Metric::Capacity};
std::string_view metric_name(Metric metric);

/// Line chart of one metric against the axis, one polyline per policy.
std::string sweep_svg(const std::vector<SweepRow>& rows, SweepAxis axis, Metric metric,
                      std::string_view title = {});

/// Compact decimal text for numbers in file names and tables ("1e+09", "0.3").
std::string format_number(double value);

/// Writes `<stem>.csv` and `<stem>_<metric>.svg` into `dir`. The directory is
/// created if needed; failure to write throws std::runtime_error.
void write_sweep_outputs(const std::filesystem::path& dir, const std::string& stem,
                         const std::vector<SweepRow>& rows, SweepAxis axis);

void write_trace_csv(const std::filesystem::path& file, const std::vector<TraceRow>& trace);

}  // namespace mec
