#include "mec/params.hpp"

#include <fstream>
#include <functional>
#include <limits>
#include <map>

#include "mec/error.hpp"

namespace mec {

namespace {

void check(bool ok, const char* field, const char* what) {
  if (!ok) throw ConfigError(std::string("config field '") + field + "': " + what);
}

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }

template <typename T>
T read_field(const nlohmann::json& value, const std::string& key) {
  try {
    if constexpr (std::is_same_v<T, bool>) {
      if (!value.is_boolean()) throw ConfigError("expected a boolean");
      return value.get<bool>();
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!value.is_number()) throw ConfigError("expected a number");
      return value.get<double>();
    } else {
      if (!value.is_number_integer() && !value.is_number_unsigned())
        throw ConfigError("expected an integer");
      if constexpr (std::is_signed_v<T>) {
        const auto v = value.get<std::int64_t>();
        if (v < std::numeric_limits<T>::min() || v > std::numeric_limits<T>::max())
          throw ConfigError("integer out of range");
        return static_cast<T>(v);
      } else {
        if (value.is_number_integer() && value.get<std::int64_t>() < 0)
          throw ConfigError("expected a non-negative integer");
        return value.get<T>();
      }
    }
  } catch (const ConfigError& e) {
    throw ConfigError("config field '" + key + "': " + e.what());
  }
}

// Field table shared by the reader and the writer.
template <typename Visitor>
void visit_fields(SystemParams& p, Visitor&& visit) {
  visit("tau", p.tau);
  visit("omega", p.omega);
  visit("noise_psd", p.noise_psd);
  visit("g0", p.g0);
  visit("d0", p.d0);
  visit("theta", p.theta);
  visit("k_mod", p.k_mod);
  visit("f_max_client", p.f_max_client);
  visit("p_max", p.p_max);
  visit("cycles_per_bit", p.cycles_per_bit);
  visit("f_max_server", p.f_max_server);
  visit("num_cpus_server", p.num_cpus_server);
  visit("v", p.v);
  visit("alpha", p.alpha);
  visit("beta", p.beta);
  visit("a_max", p.a_max);
  visit("n_clients", p.n_clients);
  visit("n_servers", p.n_servers);
  visit("n_slots", p.n_slots);
  visit("cell_radius", p.cell_radius);
  visit("seed", p.seed);
  visit("physical_clamp", p.physical_clamp);
  visit("clamp_cost", p.clamp_cost);
}

}  // namespace

void SystemParams::validate() const {
  check(finite_positive(tau), "tau", "must be > 0");
  check(finite_positive(omega), "omega", "must be > 0");
  check(finite_positive(noise_psd), "noise_psd", "must be > 0");
  check(finite_positive(g0), "g0", "must be > 0");
  check(finite_positive(d0), "d0", "must be > 0");
  check(finite_positive(theta), "theta", "must be > 0");
  check(finite_positive(k_mod), "k_mod", "must be > 0");
  check(finite_positive(f_max_client), "f_max_client", "must be > 0");
  check(finite_positive(p_max), "p_max", "must be > 0");
  check(finite_positive(cycles_per_bit), "cycles_per_bit", "must be > 0");
  check(finite_positive(f_max_server), "f_max_server", "must be > 0");
  check(num_cpus_server > 0, "num_cpus_server", "must be > 0");
  check(finite_positive(v), "v", "must be > 0");
  check(alpha >= 0.0 && alpha <= 1.0, "alpha", "must lie in [0, 1]");
  check(beta >= 0.0 && beta <= 1.0, "beta", "must lie in [0, 1]");
  check(std::isfinite(a_max) && a_max >= 0.0, "a_max", "must be >= 0");
  check(n_clients >= 1, "n_clients", "must be >= 1");
  check(n_servers >= 1, "n_servers", "must be >= 1");
  check(n_slots >= 1, "n_slots", "must be >= 1");
  check(finite_positive(cell_radius), "cell_radius", "must be > 0");
}

SystemParams params_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  SystemParams p;
  std::map<std::string, bool> known;
  visit_fields(p, [&](const char* key, auto& field) {
    known[key] = true;
    if (auto it = j.find(key); it != j.end())
      field = read_field<std::decay_t<decltype(field)>>(*it, key);
  });
  for (const auto& [key, value] : j.items())
    if (!known.contains(key)) throw ConfigError("config field '" + key + "': unknown key");
  p.validate();
  return p;
}

nlohmann::json params_to_json(const SystemParams& params) {
  SystemParams p = params;
  nlohmann::json j = nlohmann::json::object();
  visit_fields(p, [&](const char* key, auto& field) { j[key] = field; });
  return j;
}

SystemParams load_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return params_from_json(j);
}

}  // namespace mec
