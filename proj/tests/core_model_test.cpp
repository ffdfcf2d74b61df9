#include <doctest.h>

#include <cmath>
#include <set>

#include "mec/channel.hpp"
#include "mec/error.hpp"
#include "mec/params.hpp"
#include "mec/rng.hpp"
#include "mec/slot_draw.hpp"
#include "mec/topology.hpp"

using namespace mec;

TEST_CASE("default parameters are linear SI values") {
  const SystemParams p;
  CHECK(p.tau == 2e-3);
  CHECK(p.omega == 10e6);
  CHECK(p.noise_psd == doctest::Approx(3.981071705534985e-21).epsilon(1e-12));
  CHECK(p.g0 == doctest::Approx(1e-4).epsilon(1e-12));
  CHECK(p.server_cycles_per_slot() == doctest::Approx(2e7));
  CHECK_NOTHROW(p.validate());
}

TEST_CASE("config json: missing keys default, bad values name the field") {
  const auto p = params_from_json(nlohmann::json{{"v", 2e9}, {"n_clients", 12}});
  CHECK(p.v == 2e9);
  CHECK(p.n_clients == 12);
  CHECK(p.alpha == 0.3);

  auto message = [](const nlohmann::json& j) {
    try {
      params_from_json(j);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message({{"alpha", 1.5}}).find("'alpha'") != std::string::npos);
  CHECK(message({{"v", 0.0}}).find("'v'") != std::string::npos);
  CHECK(message({{"n_servers", "three"}}).find("'n_servers'") != std::string::npos);
  CHECK(message({{"n_slots", 1.5}}).find("'n_slots'") != std::string::npos);
  CHECK(message({{"bogus", 1}}).find("'bogus'") != std::string::npos);
  CHECK_THROWS_AS(params_from_json(nlohmann::json::array()), ConfigError);

  SystemParams custom;
  custom.seed = 7;
  custom.physical_clamp = true;
  custom.omega = 10.0;
  const auto back = params_from_json(params_to_json(custom));
  CHECK(back.seed == 7);
  CHECK(back.physical_clamp);
  CHECK(back.omega == 10.0);
}

TEST_CASE("decibel conversions") {
  CHECK(db_to_linear(-40.0) == doctest::Approx(1e-4));
  CHECK(dbm_per_hz_to_watts(-174.0) == doctest::Approx(3.981071705534985e-21).epsilon(1e-12));
  CHECK(dbm_per_hz_to_watts(30.0) == doctest::Approx(1.0));
}

TEST_CASE("rng conversions are reproducible and in range") {
  Rng a(5, Stream::SlotDraws), b(5, Stream::SlotDraws), c(5, Stream::Policy);
  bool differs = false;
  for (int k = 0; k < 1000; ++k) {
    const double u = a.uniform();
    CHECK(u == b.uniform());
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    differs |= u != c.uniform();
    const auto idx = a.index(3);
    CHECK(idx == b.index(3));
    CHECK(idx < 3u);
    CHECK(a.exponential() >= 0.0);
    b.exponential();
  }
  CHECK(differs);

  Rng e(11);
  double mean = 0.0;
  for (int k = 0; k < 200000; ++k) mean += e.exponential();
  CHECK(mean / 200000 == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("build_topology") {
  SystemParams p;

  SUBCASE("single server covers every client") {
    p.n_servers = 1;
    p.n_clients = 25;
    Rng rng(3, Stream::Topology);
    const Topology t = build_topology(p, rng);
    for (const auto& g : t.g_sets) CHECK(g == std::vector<int>{0});
    CHECK(t.bandwidth_share[0] * 25 == doctest::Approx(p.omega));
  }

  SUBCASE("deterministic for a fixed seed") {
    Rng r1(9, Stream::Topology), r2(9, Stream::Topology), r3(10, Stream::Topology);
    const Topology a = build_topology(p, r1);
    const Topology b = build_topology(p, r2);
    const Topology c = build_topology(p, r3);
    CHECK(a.client_pos == b.client_pos);
    CHECK(a.distances == b.distances);
    CHECK(a.g_sets == b.g_sets);
    CHECK(a.client_pos != c.client_pos);
  }

  SUBCASE("invariants hold across sizes and seeds") {
    for (int m : {1, 2, 3, 4, 6, 9}) {
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        p.n_servers = m;
        p.n_clients = 40;
        Rng rng(seed, Stream::Topology);
        const Topology t = build_topology(p, rng);
        CHECK_NOTHROW(t.validate(p.omega));
        double shared = 0.0;
        int active = 0;
        for (int j = 0; j < m; ++j) {
          shared += t.bandwidth_share[j] * static_cast<double>(t.z_sets[j].size());
          active += t.z_sets[j].empty() ? 0 : 1;
        }
        CHECK(shared == doctest::Approx(p.omega * active));
        for (int i = 0; i < t.n_clients(); ++i)
          for (int j = 0; j < m; ++j) {
            const bool in_g = std::find(t.g_sets[i].begin(), t.g_sets[i].end(), j) != t.g_sets[i].end();
            const bool in_z = std::find(t.z_sets[j].begin(), t.z_sets[j].end(), i) != t.z_sets[j].end();
            CHECK(t.coverage(i, j) == in_g);
            CHECK(in_g == in_z);
            CHECK(t.coverage(i, j) == (t.distances(i, j) <= p.cell_radius));
          }
      }
    }
  }

  SUBCASE("adjacent grid cells overlap") {
    const Positions s = server_grid(3, 150.0);
    CHECK((s.row(0) - s.row(1)).norm() == doctest::Approx(225.0));
    CHECK((s.row(0) - s.row(1)).norm() < 300.0);
  }
}

TEST_CASE("client at a server centre is covered by it") {
  SystemParams p;
  const Positions servers = server_grid(3, p.cell_radius);
  Positions clients(1, 2);
  clients.row(0) = servers.row(2);
  const Topology t = make_topology(clients, servers, p);
  CHECK(t.coverage(0, 2));
  CHECK(t.distances(0, 2) == doctest::Approx(0.01));
}

TEST_CASE("empty cells get no bandwidth") {
  SystemParams p;
  Positions servers(2, 2);
  servers << 0, 0, 1000, 0;
  Positions clients(2, 2);
  clients << 10, 0, 0, 20;
  const Topology t = make_topology(clients, servers, p);
  CHECK(t.bandwidth_share[0] == doctest::Approx(p.omega / 2));
  CHECK(t.bandwidth_share[1] == 0.0);
  CHECK_NOTHROW(t.validate(p.omega));
}

namespace {

Topology line_topology(const SystemParams& p, std::initializer_list<double> client_x) {
  Positions servers(1, 2);
  servers << 0, 0;
  Positions clients(static_cast<Eigen::Index>(client_x.size()), 2);
  int i = 0;
  for (double x : client_x) clients.row(i++) << x, 0;
  return make_topology(clients, servers, p);
}

}  // namespace

TEST_CASE("channel_gain") {
  SystemParams p;
  const Topology t = line_topology(p, {1.0, 10.0, 500.0});
  Eigen::MatrixXd fading = Eigen::MatrixXd::Ones(3, 1);
  CHECK(channel_gain(t, fading, p, 0, 0) == doctest::Approx(1e-4));
  CHECK(channel_gain(t, fading, p, 1, 0) == doctest::Approx(1e-8));
  CHECK_THROWS_AS(channel_gain(t, fading, p, 2, 0), ContractError);
  fading(1, 0) = 0.0;
  CHECK(channel_gain(t, fading, p, 1, 0) == 0.0);

  const Eigen::MatrixXd all = channel_gains(t, Eigen::MatrixXd::Ones(3, 1));
  CHECK(all(1, 0) == doctest::Approx(1e-8));
  CHECK(all(2, 0) == 0.0);
}

TEST_CASE("channel_gain decreases with distance") {
  SystemParams p;
  for (double d = 1.0; d < 150.0; d += 7.3)
    CHECK(path_gain(0.7, d, p) > path_gain(0.7, d + 0.5, p));
}

TEST_CASE("transmit_rate") {
  const double n0 = 1e-20;
  const double b = 1e6;
  // SNR 3 -> log2(4) = 2 bits/s/Hz.
  const double gain = 3.0 * b * n0;
  CHECK(transmit_rate(b, gain, 1.0, n0, true) == doctest::Approx(2e6));
  CHECK(transmit_rate(b, gain, 1.0, n0, false) == 0.0);
  CHECK(transmit_rate(b, gain, 0.0, n0, true) == 0.0);
  CHECK_THROWS_AS(transmit_rate(0.0, gain, 1.0, n0, true), ConfigError);
  CHECK(transmit_rate(0.0, gain, 1.0, n0, false) == 0.0);
  CHECK_THROWS_AS(transmit_rate(b, gain, -1.0, n0, true), ContractError);

  Rng rng(1);
  for (int k = 0; k < 500; ++k) {
    const double bw = rng.uniform(1e3, 1e7);
    const double g = rng.uniform(1e-14, 1e-6);
    const double pw = rng.uniform(1e-4, 0.5);
    CHECK(transmit_rate(bw, g, pw * 1.01, n0, true) > transmit_rate(bw, g, pw, n0, true));
    CHECK(transmit_rate(bw, g * 1.01, pw, n0, true) > transmit_rate(bw, g, pw, n0, true));
  }
}

TEST_CASE("local execution and power") {
  SystemParams p;
  CHECK(local_exec_bits(0.0, p) == 0.0);
  CHECK(local_exec_bits(1e9, p) == doctest::Approx(2711.864406779661));
  CHECK_THROWS_AS(local_exec_bits(1.1e9, p), ContractError);
  CHECK_THROWS_AS(local_exec_bits(-1.0, p), ContractError);

  CHECK(local_power(0.0, p) == 0.0);
  CHECK(local_power(1e9, p) == doctest::Approx(1.0));
  CHECK(local_power(4e8, p) == doctest::Approx(8.0 * local_power(2e8, p)));
  CHECK_THROWS_AS(local_power(-1.0, p), ContractError);

  Eigen::ArrayXd f(3);
  f << 0.0, 5e8, 1e9;
  const Eigen::ArrayXd bits = local_exec_bits(f, p);
  CHECK(bits[2] == doctest::Approx(local_exec_bits(1e9, p)));
  CHECK(local_power(f, p)[1] == doctest::Approx(0.125));
}

TEST_CASE("slot draws stay in range and are reproducible") {
  SystemParams p;
  Rng a(4, Stream::SlotDraws), b(4, Stream::SlotDraws);
  for (int t = 0; t < 50; ++t) {
    const SlotDraw x = draw_slot(p, a);
    const SlotDraw y = draw_slot(p, b);
    CHECK(x.arrivals == y.arrivals);
    CHECK(x.fading == y.fading);
    CHECK((x.arrivals.array() >= 0.0).all());
    CHECK((x.arrivals.array() <= p.a_max).all());
    CHECK((x.fading.array() >= 0.0).all());
  }
}
