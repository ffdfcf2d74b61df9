#include "mec/simulator.hpp"

#include <cmath>
#include <string>

#include "mec/channel.hpp"
#include "mec/cost.hpp"
#include "mec/error.hpp"
#include "mec/slot_draw.hpp"
#include "mec/topology.hpp"

namespace mec {

void MetricsAccumulator::merge(const MetricsAccumulator& other) {
  sum_power += other.sum_power;
  sum_queue += other.sum_queue;
  sum_cost += other.sum_cost;
  sum_offloads += other.sum_offloads;
  slots += other.slots;
}

RunResult RunResult::from(const MetricsAccumulator& acc, int n, int m) {
  require(acc.slots > 0, "metrics: no slots accumulated");
  const auto t = static_cast<double>(acc.slots);
  RunResult r;
  r.avg_power = acc.sum_power / (t * n);
  r.avg_queue = acc.sum_queue / (t * n);
  r.avg_cost = acc.sum_cost / (t * n);
  r.avg_capacity = acc.sum_offloads / (t * m);
  r.avg_offloads = acc.sum_offloads / t;
  return r;
}

namespace {

void run_slot(int slot, PolicyKind kind, const Topology& topo, const SystemParams& p,
              QueueState& queues, Rng& draws, Rng& policy_rng, MetricsAccumulator& acc,
              std::vector<double>& history, std::vector<TraceRow>* trace) {
  const SlotDraw draw = draw_slot(p, draws);
  const SlotDecision d = decide(kind, Observation{queues, draw, topo, p}, policy_rng);
  check_decision(d, topo, p);

  TraceRow row;
  row.slot = slot;
  row.total_q = queues.q.sum();
  row.total_h = queues.h.sum();
  row.offloads = d.offload_count();
  for (int i = 0; i < topo.n_clients(); ++i) {
    const ClientSlot c{queues.q[i], queues.h[i], d.d_l[i] + d.d_r[i], d.d_s[i],
                       local_power(d.f[i], p), d.p[i]};
    row.power += c.p_local + c.p_tx;
    row.cost += service_cost(c, p, p.clamp_cost);
  }
  acc.sum_power += row.power;
  acc.sum_queue += row.total_q + row.total_h;
  acc.sum_cost += row.cost;
  acc.sum_offloads += row.offloads;
  acc.slots += 1;
  history.push_back(row.total_q + row.total_h);
  if (trace) trace->push_back(row);

  for (int i = 0; i < topo.n_clients(); ++i) {
    const double q = queues.q[i];
    double offloaded = d.d_r[i];
    if (p.physical_clamp) offloaded = std::min(offloaded, std::max(q - d.d_l[i], 0.0));
    queues.q[i] = update_local(q, d.d_l[i] + d.d_r[i], draw.arrivals[i]);
    queues.h[i] = update_virtual(queues.h[i], d.d_s[i], offloaded);
  }
  require(queues.non_negative(), "negative backlog after update");
}

}  // namespace

RunResult run_episode(const SystemParams& params, PolicyKind kind, EpisodeOptions opts) {
  params.validate();
  Rng topo_rng(params.seed, Stream::Topology);
  Rng draws(params.seed, Stream::SlotDraws);
  Rng policy_rng(params.seed, Stream::Policy);
  const Topology topo = build_topology(params, topo_rng);

  QueueState queues = QueueState::zeros(params.n_clients);
  MetricsAccumulator acc;
  std::vector<double> history;
  history.reserve(static_cast<std::size_t>(params.n_slots));
  std::vector<TraceRow> trace;

  for (int t = 0; t < params.n_slots; ++t) {
    try {
      run_slot(t, kind, topo, params, queues, draws, policy_rng, acc, history,
               opts.trace ? &trace : nullptr);
    } catch (const std::exception& e) {
      throw SimulationError("slot " + std::to_string(t) + ": " + e.what());
    }
  }

  RunResult r = RunResult::from(acc, params.n_clients, params.n_servers);
  if (history.size() >= kMinStabilityHistory) r.stability = stability_diagnostic(history);
  r.trace = std::move(trace);
  return r;
}

MetricSummary summarize(std::span<const double> values) {
  require(!values.empty(), "summarize: no values");
  MetricSummary s;
  for (double v : values) s.mean += v;
  s.mean /= static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return s;
}

ReplicationSummary run_replications(const SystemParams& params, PolicyKind kind,
                                    std::span<const std::uint64_t> seeds, int jobs) {
  require(!seeds.empty(), "run_replications: need at least one seed");
  ReplicationSummary out;
  out.runs.resize(seeds.size());
  parallel_for(seeds.size(), jobs, [&](std::size_t k) {
    SystemParams p = params;
    p.seed = seeds[k];
    try {
      out.runs[k] = run_episode(p, kind);
    } catch (const std::exception& e) {
      throw SimulationError("seed " + std::to_string(seeds[k]) + ": " + e.what());
    }
  });

  auto column = [&](auto member) {
    std::vector<double> v;
    v.reserve(out.runs.size());
    for (const auto& r : out.runs) v.push_back(r.*member);
    return summarize(v);
  };
  out.power = column(&RunResult::avg_power);
  out.queue = column(&RunResult::avg_queue);
  out.cost = column(&RunResult::avg_cost);
  out.capacity = column(&RunResult::avg_capacity);
  return out;
}

}  // namespace mec
