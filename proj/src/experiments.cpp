#include "mec/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "mec/error.hpp"

namespace mec {

SweepAxis parse_axis(std::string_view name) {
  if (name == "v" || name == "V") return SweepAxis::V;
  if (name == "n") return SweepAxis::NClients;
  if (name == "m") return SweepAxis::NServers;
  throw ConfigError("unknown sweep axis '" + std::string(name) + "' (expected v, n or m)");
}

std::string_view axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::V: return "v";
    case SweepAxis::NClients: return "n";
    case SweepAxis::NServers: return "m";
  }
  return "?";
}

SystemParams with_axis_value(SystemParams base, SweepAxis axis, double value) {
  switch (axis) {
    case SweepAxis::V: base.v = value; break;
    case SweepAxis::NClients: base.n_clients = static_cast<int>(value); break;
    case SweepAxis::NServers: base.n_servers = static_cast<int>(value); break;
  }
  return base;
}

void SweepSpec::validate() const {
  if (values.empty()) throw ConfigError("sweep: no axis values");
  for (std::size_t k = 1; k < values.size(); ++k)
    if (!(values[k] > values[k - 1]))
      throw ConfigError("sweep: axis values must be strictly increasing");
  if (axis != SweepAxis::V)
    for (double v : values)
      if (v != std::floor(v) || v < 1)
        throw ConfigError("sweep: n and m values must be positive integers");
  if (policies.empty()) throw ConfigError("sweep: no policies");
  if (seeds.empty()) throw ConfigError("sweep: no seeds");
  for (double v : values) with_axis_value(base, axis, v).validate();
}

std::vector<double> reference_axis_values(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::V: return {1e9, 2e9, 3e9, 4e9, 5e9, 6e9, 7e9, 8e9, 9e9};
    case SweepAxis::NClients: return {10, 20, 30, 100, 200};
    case SweepAxis::NServers: return {3, 6, 9};
  }
  return {};
}

std::vector<std::uint64_t> seed_range(std::uint64_t first, int count) {
  std::vector<std::uint64_t> seeds;
  for (int k = 0; k < count; ++k) seeds.push_back(first + static_cast<std::uint64_t>(k));
  return seeds;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, int jobs) {
  spec.validate();
  const std::size_t nv = spec.values.size();
  const std::size_t np = spec.policies.size();
  const std::size_t ns = spec.seeds.size();
  std::vector<RunResult> cells(nv * np * ns);

  parallel_for(cells.size(), jobs, [&](std::size_t k) {
    const std::size_t s = k % ns;
    const std::size_t pi = (k / ns) % np;
    const std::size_t vi = k / (ns * np);
    SystemParams p = with_axis_value(spec.base, spec.axis, spec.values[vi]);
    p.seed = spec.seeds[s];
    try {
      cells[k] = run_episode(p, spec.policies[pi]);
    } catch (const std::exception& e) {
      throw SimulationError(std::string(axis_name(spec.axis)) + "=" +
                            format_number(spec.values[vi]) + ", policy " +
                            std::string(policy_name(spec.policies[pi])) + ", seed " +
                            std::to_string(p.seed) + ": " + e.what());
    }
  });

  std::vector<SweepRow> rows;
  for (std::size_t vi = 0; vi < nv; ++vi) {
    for (std::size_t pi = 0; pi < np; ++pi) {
      std::vector<double> power, queue, cost, capacity;
      for (std::size_t s = 0; s < ns; ++s) {
        const RunResult& r = cells[(vi * np + pi) * ns + s];
        power.push_back(r.avg_power);
        queue.push_back(r.avg_queue);
        cost.push_back(r.avg_cost);
        capacity.push_back(r.avg_capacity);
      }
      rows.push_back({spec.values[vi], spec.policies[pi], ns, summarize(power),
                      summarize(queue), summarize(cost), summarize(capacity)});
    }
  }
  return rows;
}

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", value);
  return buf;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "axis,policy,seed_count,avg_power,sd_power,avg_queue,sd_queue,avg_cost,sd_cost,"
         "avg_capacity,sd_capacity\n";
  for (const auto& r : rows) {
    out << format_number(r.axis_value) << ',' << policy_name(r.policy) << ',' << r.seed_count;
    for (const MetricSummary* m : {&r.power, &r.queue, &r.cost, &r.capacity})
      out << ',' << format_number(m->mean) << ',' << format_number(m->stddev);
    out << '\n';
  }
  return out.str();
}

std::string_view metric_name(Metric metric) {
  switch (metric) {
    case Metric::Power: return "power";
    case Metric::Queue: return "queue";
    case Metric::Cost: return "cost";
    case Metric::Capacity: return "capacity";
  }
  return "?";
}

namespace {

const MetricSummary& pick(const SweepRow& r, Metric metric) {
  switch (metric) {
    case Metric::Power: return r.power;
    case Metric::Queue: return r.queue;
    case Metric::Cost: return r.cost;
    case Metric::Capacity: return r.capacity;
  }
  return r.cost;
}

std::string_view metric_label(Metric metric) {
  switch (metric) {
    case Metric::Power: return "average power [W]";
    case Metric::Queue: return "average queue length [bits]";
    case Metric::Cost: return "average service cost";
    case Metric::Capacity: return "average service capacity";
  }
  return "";
}

std::string_view axis_label(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::V: return "control parameter V";
    case SweepAxis::NClients: return "number of clients n";
    case SweepAxis::NServers: return "number of servers m";
  }
  return "";
}

std::string_view policy_color(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::Ojtora: return "#d62728";
    case PolicyKind::Random: return "#1f77b4";
    case PolicyKind::Greedy: return "#2ca02c";
  }
  return "#000000";
}

std::string fixed(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string tick(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

}  // namespace

std::string sweep_svg(const std::vector<SweepRow>& rows, SweepAxis axis, Metric metric,
                      std::string_view title) {
  constexpr double W = 640, H = 420, left = 90, right = 130, top = 40, bottom = 60;
  const double pw = W - left - right;
  const double ph = H - top - bottom;

  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  if (!rows.empty()) {
    xmin = xmax = rows.front().axis_value;
    ymax = pick(rows.front(), metric).mean;
    for (const auto& r : rows) {
      xmin = std::min(xmin, r.axis_value);
      xmax = std::max(xmax, r.axis_value);
      ymin = std::min(ymin, pick(r, metric).mean);
      ymax = std::max(ymax, pick(r, metric).mean);
    }
  }
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;
  ymax += 0.05 * (ymax - ymin);
  auto sx = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
  auto sy = [&](double y) { return top + ph - (y - ymin) / (ymax - ymin) * ph; };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
    << "\" viewBox=\"0 0 " << W << ' ' << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty())
    s << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << title
      << "</text>\n";
  s << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
    << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int k = 0; k <= 4; ++k) {
    const double yv = ymin + (ymax - ymin) * k / 4.0;
    const double y = sy(yv);
    s << "<line x1=\"" << left << "\" y1=\"" << fixed(y) << "\" x2=\"" << left + pw << "\" y2=\""
      << fixed(y) << "\" stroke=\"#dddddd\"/>\n";
    s << "<text x=\"" << left - 6 << "\" y=\"" << fixed(y + 4) << "\" text-anchor=\"end\">"
      << tick(yv) << "</text>\n";
  }
  std::vector<double> xs;
  for (const auto& r : rows)
    if (std::find(xs.begin(), xs.end(), r.axis_value) == xs.end()) xs.push_back(r.axis_value);
  for (double xv : xs)
    s << "<text x=\"" << fixed(sx(xv)) << "\" y=\"" << top + ph + 18
      << "\" text-anchor=\"middle\">" << tick(xv) << "</text>\n";

  s << "<text x=\"" << left + pw / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\">"
    << axis_label(axis) << "</text>\n";
  s << "<text transform=\"translate(20," << top + ph / 2
    << ") rotate(-90)\" text-anchor=\"middle\">" << metric_label(metric) << "</text>\n";

  std::vector<PolicyKind> policies;
  for (const auto& r : rows)
    if (std::find(policies.begin(), policies.end(), r.policy) == policies.end())
      policies.push_back(r.policy);

  for (std::size_t k = 0; k < policies.size(); ++k) {
    const PolicyKind pk = policies[k];
    std::ostringstream pts;
    for (const auto& r : rows)
      if (r.policy == pk)
        pts << fixed(sx(r.axis_value)) << ',' << fixed(sy(pick(r, metric).mean)) << ' ';
    s << "<polyline fill=\"none\" stroke=\"" << policy_color(pk) << "\" stroke-width=\"2\" points=\""
      << pts.str() << "\"/>\n";
    for (const auto& r : rows)
      if (r.policy == pk)
        s << "<circle cx=\"" << fixed(sx(r.axis_value)) << "\" cy=\""
          << fixed(sy(pick(r, metric).mean)) << "\" r=\"3\" fill=\"" << policy_color(pk)
          << "\"/>\n";
    const double ly = top + 10 + 20.0 * static_cast<double>(k);
    s << "<line x1=\"" << left + pw + 15 << "\" y1=\"" << ly << "\" x2=\"" << left + pw + 40
      << "\" y2=\"" << ly << "\" stroke=\"" << policy_color(pk) << "\" stroke-width=\"2\"/>\n";
    s << "<text x=\"" << left + pw + 46 << "\" y=\"" << ly + 4 << "\">" << policy_name(pk)
      << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

namespace {

void write_file(const std::filesystem::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + file.string() + "'");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + file.string() + "'");
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir))
    throw std::runtime_error("cannot create output directory '" + dir.string() + "'");
}

}  // namespace

void write_sweep_outputs(const std::filesystem::path& dir, const std::string& stem,
                         const std::vector<SweepRow>& rows, SweepAxis axis) {
  ensure_dir(dir);
  write_file(dir / (stem + ".csv"), sweep_csv(rows));
  for (Metric metric : kAllMetrics)
    write_file(dir / (stem + "_" + std::string(metric_name(metric)) + ".svg"),
               sweep_svg(rows, axis, metric, stem));
}

void write_trace_csv(const std::filesystem::path& file, const std::vector<TraceRow>& trace) {
  if (file.has_parent_path()) ensure_dir(file.parent_path());
  std::ostringstream out;
  out << "slot,total_q,total_h,power,cost,offloads\n";
  for (const auto& r : trace)
    out << r.slot << ',' << format_number(r.total_q) << ',' << format_number(r.total_h) << ','
        << format_number(r.power) << ',' << format_number(r.cost) << ',' << r.offloads << '\n';
  write_file(file, out.str());
}

}  // namespace mec
