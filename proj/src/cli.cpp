#include "mec/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mec/error.hpp"
#include "mec/experiments.hpp"
#include "mec/params.hpp"
#include "mec/simulator.hpp"

namespace mec {

namespace {

struct CommonOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  int seeds = 1;
  std::optional<int> slots;
  std::string out;
  int jobs = 1;
  bool physical_clamp = false;
  bool no_clamp_cost = false;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config, "JSON configuration file")->check(CLI::ExistingFile);
  cmd->add_option("--seed", o.seed, "base seed (replications use seed, seed+1, ...)");
  cmd->add_option("--slots", o.slots, "number of time slots")->check(CLI::PositiveNumber);
  cmd->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
  cmd->add_flag("--physical-clamp", o.physical_clamp,
                "cap bits entering the virtual queue at the local backlog");
  cmd->add_flag("--no-clamp-cost", o.no_clamp_cost,
                "use the unclamped latency terms in the service cost");
}

SystemParams base_params(const CommonOptions& o) {
  SystemParams p = o.config.empty() ? SystemParams{} : load_params(o.config);
  if (o.seed) p.seed = *o.seed;
  if (o.slots) p.n_slots = *o.slots;
  if (o.physical_clamp) p.physical_clamp = true;
  if (o.no_clamp_cost) p.clamp_cost = false;
  p.validate();
  return p;
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

int cmd_run(const CommonOptions& o, const std::string& policy, bool trace, std::ostream& out) {
  const SystemParams p = base_params(o);
  const PolicyKind kind = parse_policy(policy);
  const auto seeds = seed_range(p.seed, o.seeds);

  if (trace && o.out.empty()) throw ConfigError("--trace needs --out DIR");
  ReplicationSummary summary;
  if (trace) {
    for (auto seed : seeds) {
      SystemParams ps = p;
      ps.seed = seed;
      RunResult r = run_episode(ps, kind, {.trace = true});
      write_trace_csv(std::filesystem::path(o.out) /
                          ("trace_" + std::string(policy_name(kind)) + "_seed" +
                           std::to_string(seed) + ".csv"),
                      r.trace);
      r.trace.clear();
      summary.runs.push_back(std::move(r));
    }
    auto column = [&](auto member) {
      std::vector<double> v;
      for (const auto& r : summary.runs) v.push_back(r.*member);
      return summarize(v);
    };
    summary.power = column(&RunResult::avg_power);
    summary.queue = column(&RunResult::avg_queue);
    summary.cost = column(&RunResult::avg_cost);
    summary.capacity = column(&RunResult::avg_capacity);
  } else {
    summary = run_replications(p, kind, seeds, o.jobs);
  }

  out << "policy        " << policy_name(kind) << "\n";
  out << "seeds         " << seeds.size() << " (first " << seeds.front() << ")\n";
  out << "slots         " << p.n_slots << "\n";
  auto line = [&](const char* label, const MetricSummary& m) {
    out << label << num(m.mean);
    if (seeds.size() > 1) out << "  (sd " << num(m.stddev) << ")";
    out << "\n";
  };
  line("avg_power     ", summary.power);
  line("avg_queue     ", summary.queue);
  line("avg_cost      ", summary.cost);
  line("avg_capacity  ", summary.capacity);
  if (seeds.size() == 1) {
    const RunResult& r = summary.runs.front();
    out << "avg_offloads  " << num(r.avg_offloads) << "\n";
    if (r.stability)
      out << "stability     ratio " << num(r.stability->ratio)
          << (r.stability->unstable ? " (unstable)" : " (stable)") << "\n";
  }

  if (!o.out.empty()) {
    SweepRow row{static_cast<double>(p.n_clients), kind, seeds.size(), summary.power,
                 summary.queue, summary.cost, summary.capacity};
    std::filesystem::create_directories(o.out);
    std::ofstream csv(std::filesystem::path(o.out) / ("run_" + std::string(policy_name(kind)) + ".csv"));
    if (!csv) throw std::runtime_error("cannot write into '" + o.out + "'");
    csv << sweep_csv({row});
  }
  return 0;
}

struct SweepJob {
  std::string stem;
  SweepSpec spec;
};

std::vector<SweepJob> reference_preset(SystemParams base, const std::vector<std::uint64_t>& seeds,
                                   const std::vector<PolicyKind>& policies) {
  base.alpha = 0.3;
  base.beta = 1e-5;
  base.v = 1e9;
  base.n_clients = 30;
  base.n_servers = 3;

  std::vector<SweepJob> jobs;
  auto add = [&](std::string stem, SweepAxis axis, SystemParams p) {
    jobs.push_back({std::move(stem), {axis, reference_axis_values(axis), p, policies, seeds}});
  };
  add("sweep_v", SweepAxis::V, base);
  for (auto [alpha, beta] : {std::pair{0.3, 1e-6}, {0.7, 1e-5}, {0.7, 1e-6}}) {
    SystemParams p = base;
    p.alpha = alpha;
    p.beta = beta;
    add("sweep_v_alpha" + format_number(alpha) + "_beta" + format_number(beta), SweepAxis::V, p);
  }
  add("sweep_n", SweepAxis::NClients, base);
  add("sweep_m", SweepAxis::NServers, base);
  return jobs;
}

int cmd_sweep(const CommonOptions& o, const std::string& axis, const std::string& preset,
              const std::vector<double>& values, const std::vector<std::string>& policy_names,
              std::ostream& out) {
  SystemParams base = base_params(o);
  if (!o.slots && !preset.empty()) base.n_slots = 10000;
  const auto seeds = seed_range(base.seed, o.seeds);
  std::vector<PolicyKind> policies;
  for (const auto& name : policy_names) policies.push_back(parse_policy(name));
  if (policies.empty())
    policies = {PolicyKind::Ojtora, PolicyKind::Random, PolicyKind::Greedy};

  std::vector<SweepJob> jobs;
  if (!preset.empty()) {
    if (preset != "paper") throw ConfigError("unknown preset '" + preset + "'");
    jobs = reference_preset(base, seeds, policies);
  } else {
    if (axis.empty()) throw ConfigError("sweep needs --sweep {v|n|m} or --preset paper");
    const SweepAxis a = parse_axis(axis);
    jobs.push_back({"sweep_" + std::string(axis_name(a)),
                    {a, values.empty() ? reference_axis_values(a) : values, base, policies, seeds}});
  }
  for (const auto& job : jobs) job.spec.validate();

  const std::filesystem::path dir = o.out.empty() ? std::filesystem::path("results") : std::filesystem::path(o.out);
  std::vector<std::vector<SweepRow>> results;
  for (const auto& job : jobs) results.push_back(run_sweep(job.spec, o.jobs));
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    write_sweep_outputs(dir, jobs[k].stem, results[k], jobs[k].spec.axis);
    out << "wrote " << (dir / (jobs[k].stem + ".csv")).string() << " (" << results[k].size()
        << " rows)\n";
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Edge offloading simulator: online offloading and resource allocation"};
  app.require_subcommand(1);

  CommonOptions run_opts;
  std::string policy = "ojtora";
  bool trace = false;
  auto* run = app.add_subcommand("run", "simulate one policy and print the averages");
  add_common(run, run_opts);
  run->add_option("--policy", policy, "ojtora | random | greedy");
  run->add_option("--seeds", run_opts.seeds, "number of replications")->check(CLI::PositiveNumber);
  run->add_option("--out", run_opts.out, "directory for result and trace CSV files");
  run->add_flag("--trace", trace, "write a per-slot trace CSV per seed into --out");

  CommonOptions sweep_opts;
  sweep_opts.seeds = 5;
  std::string axis, preset;
  std::vector<double> values;
  std::vector<std::string> policies;
  auto* sweep = app.add_subcommand("sweep", "sweep V, n or m across policies");
  add_common(sweep, sweep_opts);
  sweep->add_option("--sweep", axis, "axis to sweep: v | n | m");
  sweep->add_option("--preset", preset, "'paper' runs every reference sweep");
  sweep->add_option("--values", values, "axis values (default: reference values)");
  sweep->add_option("--policy", policies, "policies to include (repeatable; default all)");
  sweep->add_option("--seeds", sweep_opts.seeds, "replications per cell")->check(CLI::PositiveNumber);
  sweep->add_option("--out", sweep_opts.out, "output directory (default: results)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*run) return cmd_run(run_opts, policy, trace, out);
    return cmd_sweep(sweep_opts, axis, preset, values, policies, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace mec
