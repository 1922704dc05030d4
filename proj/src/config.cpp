#include "aerolink/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace aerolink {

using nlohmann::json;

namespace {

const std::set<std::string> kTopLevelKeys = {
    "schema-version", "seed", "preset", "nodes", "ue_aerial", "channel",
    "safety", "powers", "weights", "topology", "optimizer"};

NodeClass parse_node_class(const std::string& s) {
  if (s == "base_station") return NodeClass::BaseStation;
  if (s == "user_equipment") return NodeClass::UserEquipment;
  if (s == "relay_uav") return NodeClass::RelayUav;
  if (s == "interference_source") return NodeClass::InterferenceSource;
  throw ConfigError("unknown node class '" + s + "'");
}

Position parse_position(const json& j) {
  if (!j.is_array() || j.size() != 3) throw ConfigError("position must be an array [x, y, z]");
  for (const auto& v : j)
    if (!v.is_number()) throw ConfigError("position entries must be numbers");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json position_json(const Position& p) { return json::array({p.x, p.y, p.z}); }

// Scalar broadcast or per-element array, converted from dBm to Watts.
// A null entry maps to +inf when `allow_null` is set.
std::vector<double> parse_dbm_list(const json& j, std::size_t count, const std::string& key,
                                   bool allow_null = false) {
  auto one = [&](const json& v) {
    if (v.is_null()) {
      if (!allow_null) throw ConfigError("powers." + key + " must not be null");
      return std::numeric_limits<double>::infinity();
    }
    if (!v.is_number()) throw ConfigError("powers." + key + " must be numeric");
    return dbm_to_watts(v.get<double>());
  };
  if (j.is_array()) {
    if (j.size() != count)
      throw ConfigError("powers." + key + " has " + std::to_string(j.size()) + " entries, expected " +
                        std::to_string(count));
    std::vector<double> out;
    for (const auto& v : j) out.push_back(one(v));
    return out;
  }
  return std::vector<double>(count, one(j));
}

json dbm_list_json(const std::vector<double>& w) {
  json out = json::array();
  for (double v : w) out.push_back(std::isinf(v) ? json(nullptr) : json(watts_to_dbm(v)));
  return out;
}

void reset_per_node_defaults(Scenario& s) {
  s.tx_power_w.assign(s.num_primary(), s.p_max_w);
  s.si_power_w.assign(s.num_interferers(), dbm_to_watts(30.0));
  s.i_max_w.assign(s.num_interferers(), dbm_to_watts(-30.0));
  s.weights.assign(s.num_primary(), DefaultScenarioOptions{}.uav_weight);
  if (!s.weights.empty()) {
    s.weights.front() = 1.0;
    s.weights.back() = 1.0;
  }
  s.topology = line_topology(s.num_primary());
}

void parse_nodes(const json& j, Scenario& s) {
  if (!j.is_array()) throw ConfigError("nodes must be an array");
  std::vector<Position> bs, ue, uavs, sis;
  for (const auto& node : j) {
    const NodeClass c = parse_node_class(node.at("class").get<std::string>());
    const Position p = parse_position(node.at("position"));
    switch (c) {
      case NodeClass::BaseStation: bs.push_back(p); break;
      case NodeClass::UserEquipment: ue.push_back(p); break;
      case NodeClass::RelayUav: uavs.push_back(p); break;
      case NodeClass::InterferenceSource: sis.push_back(p); break;
    }
  }
  if (bs.size() != 1) throw ConfigError("exactly one base_station is required");
  if (ue.size() != 1) throw ConfigError("exactly one user_equipment is required");
  if (uavs.empty()) throw ConfigError("at least one relay_uav is required");
  s.primary.clear();
  s.primary.push_back(bs.front());
  s.primary.insert(s.primary.end(), uavs.begin(), uavs.end());
  s.primary.push_back(ue.front());
  s.interferers = std::move(sis);
}

Scenario scenario_from_preset(const json& preset, std::uint64_t seed) {
  const std::string name = preset.value("name", std::string("table1"));
  if (name != "table1") throw ConfigError("unknown preset '" + name + "'");
  DefaultScenarioOptions opts;
  opts.num_uavs = preset.value("num_uavs", opts.num_uavs);
  opts.num_interferers = preset.value("num_interferers", opts.num_interferers);
  opts.uav_altitude_m = preset.value("uav_altitude_m", opts.uav_altitude_m);
  opts.si_altitude_m = preset.value("si_altitude_m", opts.si_altitude_m);
  opts.i_max_dbm = preset.value("i_max_dbm", opts.i_max_dbm);
  opts.uav_weight = preset.value("uav_weight", opts.uav_weight);
  const double alt = preset.value("ue_altitude_m", 25.0);
  if (opts.num_uavs < 1) throw ConfigError("preset needs at least one relay uav");
  if (!(alt >= 0.0)) throw ConfigError("preset ue_altitude_m must be nonnegative");
  return build_default_scenario(seed, alt, opts);
}

}  // namespace

Scenario scenario_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, _] : doc.items())
    if (!kTopLevelKeys.contains(key)) throw ConfigError("unknown config key '" + key + "'");
  if (!doc.contains("schema-version")) throw ConfigError("missing schema-version");
  if (doc.at("schema-version").get<int>() != kSchemaVersion)
    throw ConfigError("unsupported schema-version (expected " + std::to_string(kSchemaVersion) + ")");

  const std::uint64_t seed = doc.value("seed", std::uint64_t{0});
  Scenario s;
  if (doc.contains("preset")) {
    s = scenario_from_preset(doc.at("preset"), seed);
  } else if (!doc.contains("nodes")) {
    throw ConfigError("config needs either nodes or a preset");
  }
  s.seed = seed;

  if (doc.contains("nodes")) {
    parse_nodes(doc.at("nodes"), s);
    reset_per_node_defaults(s);
    s.ue_aerial = s.primary.back().z > 0.0;
  }
  if (doc.contains("ue_aerial")) s.ue_aerial = doc.at("ue_aerial").get<bool>();

  if (doc.contains("channel")) {
    const json& c = doc.at("channel");
    ChannelParams& p = s.channel;
    p.carrier_hz = c.value("carrier_hz", p.carrier_hz);
    p.bandwidth_hz = c.value("bandwidth_hz", p.bandwidth_hz);
    p.alpha_a2a = c.value("alpha_a2a", p.alpha_a2a);
    p.alpha_a2g = c.value("alpha_a2g", p.alpha_a2g);
    const double fs = free_space_eta_db(p.carrier_hz);
    p.eta_a2a_db = c.value("eta_a2a_db", fs);
    p.eta_a2g_db = c.value("eta_a2g_db", fs);
  }
  if (doc.contains("safety")) {
    const json& c = doc.at("safety");
    SafetyParams& p = s.safety;
    p.chi = c.value("chi", p.chi);
    p.zeta = c.value("zeta", p.zeta);
    p.kappa = c.value("kappa", p.kappa);
    p.y0 = c.value("y0", p.y0);
    p.r_int = c.value("r_int_m", p.r_int);
  }
  if (doc.contains("powers")) {
    const json& p = doc.at("powers");
    if (p.contains("p_max_dbm")) {
      s.p_max_w = dbm_to_watts(p.at("p_max_dbm").get<double>());
      s.tx_power_w.assign(s.num_primary(), s.p_max_w);
    }
    if (p.contains("tx_dbm")) s.tx_power_w = parse_dbm_list(p.at("tx_dbm"), s.num_primary(), "tx_dbm");
    if (p.contains("si_dbm")) s.si_power_w = parse_dbm_list(p.at("si_dbm"), s.num_interferers(), "si_dbm");
    if (p.contains("i_max_dbm"))
      s.i_max_w = parse_dbm_list(p.at("i_max_dbm"), s.num_interferers(), "i_max_dbm", true);
  }
  if (doc.contains("weights")) {
    const json& w = doc.at("weights");
    if (w.is_array()) {
      if (w.size() != s.num_primary()) throw ConfigError("weights array must have one entry per primary node");
      s.weights = w.get<std::vector<double>>();
    } else if (w.is_object()) {
      const double uav = w.at("uav").get<double>();
      for (std::size_t i = 1; i + 1 < s.num_primary(); ++i) s.weights[i] = uav;
    } else {
      throw ConfigError("weights must be an array or {\"uav\": w}");
    }
  }
  if (doc.contains("topology")) {
    const json& t = doc.at("topology");
    if (t.is_string()) {
      if (t.get<std::string>() != "line") throw ConfigError("topology string must be \"line\"");
      s.topology = line_topology(s.num_primary());
    } else if (t.is_array()) {
      s.topology.clear();
      for (const auto& e : t) {
        if (!e.is_array() || e.size() != 2) throw ConfigError("topology edges must be [a, b] pairs");
        s.topology.push_back({e[0].get<std::size_t>(), e[1].get<std::size_t>()});
      }
    } else {
      throw ConfigError("topology must be \"line\" or an edge list");
    }
  }
  return s;
}

json scenario_to_json(const Scenario& s) {
  json doc;
  doc["schema-version"] = kSchemaVersion;
  doc["seed"] = s.seed;
  json nodes = json::array();
  for (const Node& n : s.nodes()) nodes.push_back({{"class", to_string(n.node_class)}, {"position", position_json(n.position)}});
  doc["nodes"] = nodes;
  doc["ue_aerial"] = s.ue_aerial;
  doc["channel"] = {{"alpha_a2a", s.channel.alpha_a2a},   {"alpha_a2g", s.channel.alpha_a2g},
                    {"eta_a2a_db", s.channel.eta_a2a_db}, {"eta_a2g_db", s.channel.eta_a2g_db},
                    {"carrier_hz", s.channel.carrier_hz}, {"bandwidth_hz", s.channel.bandwidth_hz}};
  doc["safety"] = {{"chi", s.safety.chi},   {"zeta", s.safety.zeta}, {"kappa", s.safety.kappa},
                   {"y0", s.safety.y0},     {"r_int_m", s.safety.r_int}};
  doc["powers"] = {{"p_max_dbm", watts_to_dbm(s.p_max_w)},
                   {"tx_dbm", dbm_list_json(s.tx_power_w)},
                   {"si_dbm", dbm_list_json(s.si_power_w)},
                   {"i_max_dbm", dbm_list_json(s.i_max_w)}};
  doc["weights"] = s.weights;
  json topo = json::array();
  for (const Edge& e : s.topology) topo.push_back(json::array({e.a, e.b}));
  doc["topology"] = topo;
  return doc;
}

OptimizerConfig optimizer_from_json(const json& j, std::uint64_t seed) {
  if (!j.is_object()) throw ConfigError("optimizer must be an object");
  OptimizerConfig c;
  c.fading = FadingModel::unit();
  c.epsilon = j.value("epsilon", c.epsilon);
  c.max_iterations = j.value("max_iterations", c.max_iterations);
  TrajectoryConfig& t = c.trajectory;
  t.dt = j.value("dt", t.dt);
  if (j.contains("mask")) {
    try {
      t.mask = parse_axis_mask(j.at("mask").get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (j.contains("gradient")) {
    const auto g = j.at("gradient").get<std::string>();
    if (g == "analytic") t.gradient_mode = GradientMode::Analytic;
    else if (g == "finite-difference") t.gradient_mode = GradientMode::FiniteDifference;
    else throw ConfigError("gradient must be \"analytic\" or \"finite-difference\"");
  }
  t.backtracking = j.value("backtracking", t.backtracking);
  t.max_step_m = j.value("max_step_m", t.max_step_m);
  t.fd_step_m = j.value("fd_step_m", t.fd_step_m);
  t.max_halvings = j.value("max_halvings", t.max_halvings);
  t.min_altitude_m = j.value("min_altitude_m", t.min_altitude_m);
  if (j.contains("laplacian")) {
    const auto l = j.at("laplacian").get<std::string>();
    if (l == "combinatorial") c.laplacian_mode = LaplacianMode::CombinatorialWeighted;
    else if (l == "normalized") c.laplacian_mode = LaplacianMode::NormalizedWeighted;
    else throw ConfigError("laplacian must be \"combinatorial\" or \"normalized\"");
  }
  if (j.contains("fading")) {
    const json& f = j.at("fading");
    const auto model = f.value("model", std::string("unit"));
    if (model == "unit") c.fading = FadingModel::unit();
    else if (model == "rayleigh") c.fading = FadingModel::rayleigh(f.value("seed", seed));
    else throw ConfigError("fading model must be \"unit\" or \"rayleigh\"");
  }

  if (!(c.epsilon > 0.0)) throw ConfigError("optimizer.epsilon must be positive");
  if (c.max_iterations < 1) throw ConfigError("optimizer.max_iterations must be at least 1");
  if (!(t.dt > 0.0)) throw ConfigError("optimizer.dt must be positive");
  if (!(t.fd_step_m > 0.0)) throw ConfigError("optimizer.fd_step_m must be positive");
  if (!(t.max_step_m > 0.0)) throw ConfigError("optimizer.max_step_m must be positive");
  if (t.max_halvings < 0) throw ConfigError("optimizer.max_halvings must be nonnegative");
  return c;
}

json optimizer_to_json(const OptimizerConfig& c) {
  json j;
  j["epsilon"] = c.epsilon;
  j["max_iterations"] = c.max_iterations;
  j["dt"] = c.trajectory.dt;
  j["mask"] = to_string(c.trajectory.mask);
  j["gradient"] = to_string(c.trajectory.gradient_mode);
  j["backtracking"] = c.trajectory.backtracking;
  j["max_step_m"] = c.trajectory.max_step_m;
  j["fd_step_m"] = c.trajectory.fd_step_m;
  j["max_halvings"] = c.trajectory.max_halvings;
  j["min_altitude_m"] = c.trajectory.min_altitude_m;
  j["laplacian"] = to_string(c.laplacian_mode);
  if (c.fading.kind == FadingModel::Kind::Rayleigh)
    j["fading"] = {{"model", "rayleigh"}, {"seed", c.fading.seed}};
  else
    j["fading"] = {{"model", "unit"}};
  return j;
}

json config_to_json(const RunConfig& c) {
  json doc = scenario_to_json(c.scenario);
  doc["optimizer"] = optimizer_to_json(c.optimizer);
  return doc;
}

RunConfig parse_config(const json& in, std::optional<std::uint64_t> seed_override) {
  if (!in.is_object()) throw ConfigError("config must be a JSON object");
  json doc = in;
  if (seed_override) doc["seed"] = *seed_override;
  RunConfig rc;
  try {
    rc.scenario = scenario_from_json(doc);
    rc.optimizer = optimizer_from_json(doc.value("optimizer", json::object()), rc.scenario.seed);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  const auto errors = validate(rc.scenario);
  if (!errors.empty()) {
    std::ostringstream os;
    os << "invalid scenario:";
    for (const auto& e : errors) os << "\n  " << e;
    throw ConfigError(os.str());
  }
  return rc;
}

RunConfig load_config(const std::filesystem::path& path, std::optional<std::uint64_t> seed_override) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("malformed JSON in " + path.string() + ": " + e.what());
  }
  return parse_config(doc, seed_override);
}

}  // namespace aerolink
