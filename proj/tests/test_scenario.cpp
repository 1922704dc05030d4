#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "aerolink/config.hpp"
#include "aerolink/scenario.hpp"

using namespace aerolink;
using nlohmann::json;

namespace {

bool has_error(const std::vector<std::string>& errors, const std::string& needle) {
  return std::any_of(errors.begin(), errors.end(),
                     [&](const std::string& e) { return e.find(needle) != std::string::npos; });
}

}  // namespace

TEST_CASE("default scenario layout") {
  const Scenario s = build_default_scenario(7, 25.0);
  CHECK(s.num_uavs() == 8);
  CHECK(s.num_interferers() == 7);
  CHECK(s.channel.alpha_a2a == 2.05);
  CHECK(s.channel.alpha_a2g == 2.32);
  CHECK(s.p_max_w == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(s.si_power_w.front() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(s.channel.bandwidth_hz == 1.0e4);
  CHECK(s.safety.r_int == 5.0);
  CHECK(s.primary.front() == Position{0.0, 0.0, 15.0});
  CHECK(s.primary.back() == Position{200.0, 0.0, 25.0});
  for (std::size_t k = 0; k < s.num_uavs(); ++k) {
    const Position& p = s.primary[s.uav_node(k)];
    CHECK(p.x == doctest::Approx(200.0 * static_cast<double>(k + 1) / 9.0));
    CHECK(p.y == 0.0);
    CHECK(p.z == 30.0);
  }
  for (const Position& p : s.interferers) {
    CHECK(p.x >= 0.0);
    CHECK(p.x <= 200.0);
    CHECK(p.y >= -100.0);
    CHECK(p.y <= 100.0);
    CHECK(p.z == 20.0);
  }
  CHECK(validate(s).empty());
}

TEST_CASE("default scenario is a pure function of the seed") {
  CHECK(build_default_scenario(7, 25.0) == build_default_scenario(7, 25.0));
  CHECK_FALSE(build_default_scenario(7, 25.0).interferers == build_default_scenario(8, 25.0).interferers);
}

TEST_CASE("dBm conversion") {
  CHECK(dbm_to_watts(20.0) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(dbm_to_watts(30.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(watts_to_dbm(dbm_to_watts(-37.5)) == doctest::Approx(-37.5).epsilon(1e-14));
}

TEST_CASE("validation reports invariant breaches") {
  const Scenario base = build_default_scenario(7, 25.0);

  Scenario s = base;
  s.weights.front() = 0.0;
  CHECK(has_error(validate(s), "source weight must be 1"));

  s = base;
  s.weights.back() = 0.5;
  CHECK(has_error(validate(s), "destination weight must be 1"));

  s = base;
  s.topology.pop_back();
  CHECK(has_error(validate(s), "destination unreachable"));

  s = base;
  s.topology.erase(s.topology.begin() + 3, s.topology.begin() + 5);
  s.topology.push_back({3, 5});
  CHECK(has_error(validate(s), "topology is disconnected"));

  s = base;
  s.primary[2] = s.primary[1];
  CHECK(has_error(validate(s), "duplicate node position"));

  s = base;
  s.tx_power_w[1] = 0.0;
  CHECK(has_error(validate(s), "nonpositive transmit power"));

  s = base;
  s.tx_power_w[1] = 2.0 * s.p_max_w;
  CHECK(has_error(validate(s), "exceeds p_max"));

  s = base;
  s.weights[3] = 1.5;
  CHECK(has_error(validate(s), "relay weight"));

  s = base;
  s.primary[4].z = NAN;
  CHECK(has_error(validate(s), "non-finite"));

  s = base;
  s.channel.alpha_a2g = 0.5;
  CHECK(has_error(validate(s), "path-loss exponents"));

  s = base;
  s.safety.y0 = 0.0;
  CHECK(has_error(validate(s), "y0"));

  CHECK_THROWS_AS(require_valid(s), std::invalid_argument);
}

TEST_CASE("aerial partition") {
  Scenario s = build_default_scenario(7, 25.0);
  s.ue_aerial = false;
  AerialPartition p = partition(s);
  CHECK(p.aerial.size() == 8);
  CHECK(p.ground.size() == 9);

  s.ue_aerial = true;
  p = partition(s);
  CHECK(p.aerial.size() == 9);
  CHECK(p.ground.size() == 8);
  CHECK(is_aerial(s, s.sink()));
  CHECK_FALSE(is_aerial(s, s.source()));

  Scenario bare = build_default_scenario(7, 0.0, {.num_interferers = 0});
  CHECK_FALSE(bare.ue_aerial);
  p = partition(bare);
  CHECK(p.ground == std::vector<std::size_t>{bare.source(), bare.sink()});
  CHECK(p.aerial.size() + p.ground.size() == bare.num_nodes());
}

TEST_CASE("config round trip preserves the scenario") {
  const Scenario s = build_default_scenario(11, 40.0);
  const Scenario back = scenario_from_json(scenario_to_json(s));
  CHECK(back.primary == s.primary);
  CHECK(back.interferers == s.interferers);
  CHECK(back.channel == s.channel);
  CHECK(back.safety == s.safety);
  CHECK(back.weights == s.weights);
  CHECK(back.topology == s.topology);
  CHECK(back.seed == s.seed);
  CHECK(back.ue_aerial == s.ue_aerial);
  REQUIRE(back.tx_power_w.size() == s.tx_power_w.size());
  for (std::size_t i = 0; i < s.tx_power_w.size(); ++i)
    CHECK(back.tx_power_w[i] == doctest::Approx(s.tx_power_w[i]).epsilon(1e-13));
  for (std::size_t j = 0; j < s.i_max_w.size(); ++j)
    CHECK(back.i_max_w[j] == doctest::Approx(s.i_max_w[j]).epsilon(1e-13));
}

TEST_CASE("preset config with overrides and a seed override") {
  const json doc = json::parse(R"({
    "schema-version": 1, "seed": 3,
    "preset": {"name": "table1", "ue_altitude_m": 100},
    "powers": {"i_max_dbm": -40},
    "weights": {"uav": 0.5},
    "safety": {"chi": 0},
    "optimizer": {"mask": "xy", "epsilon": 0.5, "laplacian": "normalized",
                  "fading": {"model": "rayleigh"}}
  })");
  const RunConfig rc = parse_config(doc, 9);
  CHECK(rc.scenario.seed == 9);
  CHECK(rc.scenario.interferers == build_default_scenario(9, 100.0).interferers);
  CHECK(rc.scenario.primary.back().z == 100.0);
  CHECK(rc.scenario.ue_aerial);
  CHECK(rc.scenario.i_max_w.front() == doctest::Approx(1e-7).epsilon(1e-13));
  CHECK(rc.scenario.weights[1] == 0.5);
  CHECK(rc.scenario.weights.front() == 1.0);
  CHECK(rc.scenario.safety.chi == 0.0);
  CHECK(rc.optimizer.trajectory.mask == AxisMask::XY);
  CHECK(rc.optimizer.epsilon == 0.5);
  CHECK(rc.optimizer.laplacian_mode == LaplacianMode::NormalizedWeighted);
  CHECK(rc.optimizer.fading == FadingModel::rayleigh(9));

  const RunConfig again = parse_config(config_to_json(rc));
  CHECK(again.optimizer == rc.optimizer);
  CHECK(again.scenario.primary == rc.scenario.primary);
}

TEST_CASE("explicit node lists are put in canonical order") {
  const json doc = json::parse(R"({
    "schema-version": 1,
    "nodes": [
      {"class": "user_equipment", "position": [100, 0, 0]},
      {"class": "interference_source", "position": [50, 40, 10]},
      {"class": "relay_uav", "position": [33, 0, 30]},
      {"class": "base_station", "position": [0, 0, 15]},
      {"class": "relay_uav", "position": [66, 0, 30]}
    ],
    "powers": {"i_max_dbm": [null]}
  })");
  const RunConfig rc = parse_config(doc);
  const Scenario& s = rc.scenario;
  REQUIRE(s.num_primary() == 4);
  CHECK(s.primary[0] == Position{0, 0, 15});
  CHECK(s.primary[1] == Position{33, 0, 30});
  CHECK(s.primary[2] == Position{66, 0, 30});
  CHECK(s.primary[3] == Position{100, 0, 0});
  CHECK(s.interferers.size() == 1);
  CHECK(std::isinf(s.i_max_w.front()));
  CHECK_FALSE(s.ue_aerial);
  CHECK(s.topology == line_topology(4));
  CHECK(s.weights == std::vector<double>{1.0, 0.01, 0.01, 1.0});
}

TEST_CASE("malformed configs are rejected") {
  auto rejects = [](const char* text) {
    CHECK_THROWS_AS(parse_config(json::parse(text)), ConfigError);
  };
  rejects(R"({"preset": {"name": "table1"}})");
  rejects(R"({"schema-version": 2, "preset": {"name": "table1"}})");
  rejects(R"({"schema-version": 1})");
  rejects(R"({"schema-version": 1, "preset": {"name": "fig9"}})");
  rejects(R"({"schema-version": 1, "preset": {"name": "table1"}, "colour": 1})");
  rejects(R"({"schema-version": 1, "preset": {"name": "table1"}, "optimizer": {"mask": "xx"}})");
  rejects(R"({"schema-version": 1, "preset": {"name": "table1"}, "optimizer": {"epsilon": 0}})");
  rejects(R"({"schema-version": 1, "preset": {"name": "table1"}, "powers": {"tx_dbm": [20, 20]}})");
  rejects(R"({"schema-version": 1, "preset": {"name": "table1"}, "weights": [1, 1]})");
  rejects(R"({"schema-version": 1, "preset": {"name": "table1"}, "topology": [[0, 1]]})");
  rejects(R"({"schema-version": 1, "nodes": [{"class": "relay_uav", "position": [0, 0, 1]}]})");
  rejects(R"({"schema-version": 1, "nodes": [{"class": "blimp", "position": [0, 0, 1]}]})");
  rejects(R"({"schema-version": 1, "preset": {"name": "table1"}, "seed": "seven"})");
  CHECK_THROWS_AS(load_config("/nonexistent/aerolink.json"), ConfigError);
}
