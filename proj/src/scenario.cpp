#include "aerolink/scenario.hpp"

#include <algorithm>
#include <numbers>
#include <queue>
#include <random>
#include <sstream>
#include <stdexcept>

namespace aerolink {

const char* to_string(NodeClass c) {
  switch (c) {
    case NodeClass::BaseStation: return "base_station";
    case NodeClass::UserEquipment: return "user_equipment";
    case NodeClass::RelayUav: return "relay_uav";
    case NodeClass::InterferenceSource: return "interference_source";
  }
  return "unknown";
}

double free_space_eta_db(double carrier_hz) {
  const double r = 4.0 * std::numbers::pi * carrier_hz / kSpeedOfLight;
  return 10.0 * std::log10(r * r);
}

ChannelParams ChannelParams::free_space(double carrier_hz, double bandwidth_hz) {
  ChannelParams p;
  p.alpha_a2a = 2.0;
  p.alpha_a2g = 2.0;
  p.eta_a2a_db = free_space_eta_db(carrier_hz);
  p.eta_a2g_db = p.eta_a2a_db;
  p.carrier_hz = carrier_hz;
  p.bandwidth_hz = bandwidth_hz;
  return p;
}

NodeClass Scenario::node_class(std::size_t id) const {
  if (id == source()) return NodeClass::BaseStation;
  if (id == sink()) return NodeClass::UserEquipment;
  if (id < primary.size()) return NodeClass::RelayUav;
  return NodeClass::InterferenceSource;
}

std::vector<Position> Scenario::uav_positions() const {
  return {primary.begin() + 1, primary.end() - 1};
}

void Scenario::set_uav_positions(const std::vector<Position>& uavs) {
  if (uavs.size() != num_uavs()) throw std::invalid_argument("uav position count mismatch");
  std::copy(uavs.begin(), uavs.end(), primary.begin() + 1);
}

std::vector<Node> Scenario::nodes() const {
  std::vector<Node> out;
  out.reserve(num_nodes());
  for (std::size_t id = 0; id < num_nodes(); ++id) out.push_back({node_class(id), position(id)});
  return out;
}

std::vector<Edge> line_topology(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  return edges;
}

namespace {

// Portable uniform draw in [0, 1): the 53 high bits of a 64-bit Mersenne
// Twister output. std::uniform_real_distribution is not specified bit-exactly.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

bool finite(const Position& p) {
  return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z);
}

}  // namespace

Scenario build_default_scenario(std::uint64_t seed, double ue_altitude_m,
                                const DefaultScenarioOptions& opts) {
  if (!(ue_altitude_m >= 0.0)) throw std::invalid_argument("ue altitude must be nonnegative");

  Scenario s;
  s.seed = seed;
  const Position bs{0.0, 0.0, 15.0};
  const Position ue{200.0, 0.0, ue_altitude_m};
  const std::size_t k = opts.num_uavs;

  s.primary.push_back(bs);
  for (std::size_t i = 1; i <= k; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(k + 1);
    s.primary.push_back({bs.x + t * (ue.x - bs.x), bs.y + t * (ue.y - bs.y), opts.uav_altitude_m});
  }
  s.primary.push_back(ue);

  std::mt19937_64 rng(seed);
  for (std::size_t m = 0; m < opts.num_interferers; ++m) {
    const double x = 200.0 * uniform01(rng);
    const double y = -100.0 + 200.0 * uniform01(rng);
    s.interferers.push_back({x, y, opts.si_altitude_m});
  }

  s.p_max_w = dbm_to_watts(20.0);
  s.tx_power_w.assign(s.num_primary(), s.p_max_w);
  s.si_power_w.assign(s.num_interferers(), dbm_to_watts(30.0));
  s.i_max_w.assign(s.num_interferers(), dbm_to_watts(opts.i_max_dbm));
  s.channel = ChannelParams{};
  s.safety = SafetyParams{};
  s.weights.assign(s.num_primary(), opts.uav_weight);
  s.weights.front() = 1.0;
  s.weights.back() = 1.0;
  s.topology = line_topology(s.num_primary());
  s.ue_aerial = ue_altitude_m > 0.0;
  return s;
}

bool is_aerial(const Scenario& s, std::size_t id) {
  if (id >= s.num_primary()) return false;
  if (id == s.source()) return false;
  if (id == s.sink()) return s.ue_aerial;
  return true;
}

AerialPartition partition(const Scenario& s) {
  AerialPartition p;
  for (std::size_t id = 0; id < s.num_nodes(); ++id) {
    (is_aerial(s, id) ? p.aerial : p.ground).push_back(id);
  }
  return p;
}

std::vector<std::string> validate(const Scenario& s) {
  std::vector<std::string> errors;
  auto fail = [&](std::string msg) { errors.push_back(std::move(msg)); };

  const std::size_t n = s.num_primary();
  const std::size_t m = s.num_interferers();
  if (n < 3) {
    fail("at least one relay uav is required");
    return errors;
  }

  for (std::size_t id = 0; id < s.num_nodes(); ++id) {
    const Position& p = s.position(id);
    if (!finite(p)) fail("node " + std::to_string(id) + " has a non-finite coordinate");
    else if (p.z < 0.0) fail("node " + std::to_string(id) + " is below ground");
  }
  for (std::size_t i = 0; i < s.num_nodes(); ++i) {
    for (std::size_t j = i + 1; j < s.num_nodes(); ++j) {
      if (s.position(i) == s.position(j)) {
        fail("duplicate node position: nodes " + std::to_string(i) + " and " + std::to_string(j));
      }
    }
  }

  if (!(s.p_max_w > 0.0) || !std::isfinite(s.p_max_w)) fail("p_max must be positive");
  if (s.tx_power_w.size() != n) {
    fail("transmit power count does not match primary node count");
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      if (!(s.tx_power_w[i] > 0.0)) fail("nonpositive transmit power at node " + std::to_string(i));
      else if (s.tx_power_w[i] > s.p_max_w * (1.0 + 1e-12))
        fail("transmit power exceeds p_max at node " + std::to_string(i));
    }
  }
  if (s.si_power_w.size() != m) {
    fail("interferer power count does not match interferer count");
  } else {
    for (std::size_t j = 0; j < m; ++j)
      if (!(s.si_power_w[j] > 0.0) || !std::isfinite(s.si_power_w[j]))
        fail("nonpositive interferer power at interferer " + std::to_string(j));
  }
  if (s.i_max_w.size() != m) {
    fail("interference threshold count does not match interferer count");
  } else {
    for (std::size_t j = 0; j < m; ++j)
      if (!(s.i_max_w[j] > 0.0)) fail("nonpositive interference threshold at interferer " + std::to_string(j));
  }

  const ChannelParams& c = s.channel;
  if (!(c.alpha_a2a >= 1.0) || !(c.alpha_a2g >= 1.0)) fail("path-loss exponents must be >= 1");
  if (!std::isfinite(c.eta_a2a_db) || !std::isfinite(c.eta_a2g_db)) fail("reference path loss must be finite");
  if (!(c.bandwidth_hz > 0.0) || !std::isfinite(c.bandwidth_hz)) fail("bandwidth must be positive");
  if (!(c.carrier_hz > 0.0) || !std::isfinite(c.carrier_hz)) fail("carrier frequency must be positive");

  const SafetyParams& sp = s.safety;
  if (!(sp.y0 > 0.0)) fail("safety y0 must be positive");
  if (!(sp.r_int > 0.0)) fail("interference radius must be positive");
  if (!(sp.chi >= 0.0)) fail("safety priority chi must be nonnegative");
  if (!std::isfinite(sp.zeta) || !std::isfinite(sp.kappa)) fail("safety parameters must be finite");

  if (s.weights.size() != n) {
    fail("weight count does not match primary node count");
  } else {
    if (s.weights.front() != 1.0) fail("source weight must be 1");
    if (s.weights.back() != 1.0) fail("destination weight must be 1");
    for (std::size_t i = 1; i + 1 < n; ++i)
      if (!(s.weights[i] > 0.0 && s.weights[i] <= 1.0))
        fail("relay weight must lie in (0, 1] at node " + std::to_string(i));
  }

  bool edges_ok = true;
  std::vector<std::vector<std::size_t>> adj(n);
  for (const Edge& e : s.topology) {
    if (e.a >= n || e.b >= n) {
      fail("topology edge references unknown node");
      edges_ok = false;
    } else if (e.a == e.b) {
      fail("topology edge is a self loop");
      edges_ok = false;
    } else {
      adj[e.a].push_back(e.b);
      adj[e.b].push_back(e.a);
    }
  }
  if (edges_ok) {
    std::vector<bool> seen(n, false);
    std::queue<std::size_t> q;
    q.push(s.source());
    seen[s.source()] = true;
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop();
      for (std::size_t v : adj[u])
        if (!seen[v]) {
          seen[v] = true;
          q.push(v);
        }
    }
    if (!seen[s.sink()]) fail("destination unreachable");
    else if (std::find(seen.begin(), seen.end(), false) != seen.end()) fail("topology is disconnected");
  }
  return errors;
}

void require_valid(const Scenario& s) {
  const auto errors = validate(s);
  if (errors.empty()) return;
  std::ostringstream os;
  os << "invalid scenario:";
  for (const auto& e : errors) os << "\n  " << e;
  throw std::invalid_argument(os.str());
}

}  // namespace aerolink
