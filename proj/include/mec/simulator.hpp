#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mec/params.hpp"
#include "mec/policy.hpp"
#include "mec/queues.hpp"

namespace mec {

/// Running sums over slots and clients.
struct MetricsAccumulator {
  double sum_power = 0.0;  // sum_t sum_i (p_local + p_tx)
  double sum_queue = 0.0;  // sum_t sum_i (q + h)
  double sum_cost = 0.0;   // sum_t sum_i xi
  double sum_offloads = 0.0;
  std::int64_t slots = 0;

  void merge(const MetricsAccumulator& other);
};

struct TraceRow {
  int slot = 0;
  double total_q = 0.0;
  double total_h = 0.0;
  double power = 0.0;
  double cost = 0.0;
  int offloads = 0;
};

struct RunResult {
  double avg_power = 0.0;     // per client and slot [W]
  double avg_queue = 0.0;     // per client and slot [bits]
  double avg_cost = 0.0;      // per client and slot
  double avg_capacity = 0.0;  // offloading clients per slot, divided by m
  double avg_offloads = 0.0;  // offloading clients per slot
  std::optional<StabilityReport> stability;  // absent for runs under 100 slots
  std::vector<TraceRow> trace;

  /// Averages from an accumulator over `n` clients and `m` servers.
  static RunResult from(const MetricsAccumulator& acc, int n, int m);
};

struct EpisodeOptions {
  bool trace = false;
};

/// One full run of `params.n_slots` slots from empty queues, seeded by
/// `params.seed`. Deterministic in (params, kind).
RunResult run_episode(const SystemParams& params, PolicyKind kind, EpisodeOptions opts = {});

struct MetricSummary {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation, 0 for a single run
};

struct ReplicationSummary {
  std::vector<RunResult> runs;  // in seed order
  MetricSummary power, queue, cost, capacity;
};

MetricSummary summarize(std::span<const double> values);

/// Runs one episode per seed on up to `jobs` threads.
ReplicationSummary run_replications(const SystemParams& params, PolicyKind kind,
                                    std::span<const std::uint64_t> seeds, int jobs = 1);

/// Evaluates `task(k)` for k in [0, count) on up to `jobs` threads. The first
/// exception (lowest k) is rethrown after all workers stop.
template <typename Task>
void parallel_for(std::size_t count, int jobs, Task&& task);

}  // namespace mec

#include "mec/detail/parallel.hpp"
