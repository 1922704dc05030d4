#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace aerolink {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double& operator[](std::size_t axis) { return axis == 0 ? x : (axis == 1 ? y : z); }
  double operator[](std::size_t axis) const { return axis == 0 ? x : (axis == 1 ? y : z); }

  Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }

  friend bool operator==(const Vec3&, const Vec3&) = default;
};

inline Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }
inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }
inline double distance(const Vec3& a, const Vec3& b) { return norm(a - b); }

using Position = Vec3;

enum class NodeClass { BaseStation, UserEquipment, RelayUav, InterferenceSource };

const char* to_string(NodeClass c);

struct Node {
  NodeClass node_class;
  Position position;
  friend bool operator==(const Node&, const Node&) = default;
};

/// Speed of light used by the free-space reference path loss.
inline constexpr double kSpeedOfLight = 3.0e8;

/// Free-space path loss at 1 m, 10*log10((4*pi*f/c)^2).
double free_space_eta_db(double carrier_hz);

struct ChannelParams {
  double alpha_a2a = 2.05;
  double alpha_a2g = 2.32;
  double eta_a2a_db = free_space_eta_db(2.0e9);
  double eta_a2g_db = free_space_eta_db(2.0e9);
  double carrier_hz = 2.0e9;
  double bandwidth_hz = 1.0e4;

  /// alpha = 2 on both link classes with the free-space reference loss.
  static ChannelParams free_space(double carrier_hz, double bandwidth_hz);

  friend bool operator==(const ChannelParams&, const ChannelParams&) = default;
};

/// Parameters of the separation penalty added to the SIR denominator.
struct SafetyParams {
  double chi = 1.0;
  double zeta = 1.0;
  double kappa = 10.0;
  double y0 = 1.0e-3;
  double r_int = 5.0;

  friend bool operator==(const SafetyParams&, const SafetyParams&) = default;
};

struct Edge {
  std::size_t a = 0;
  std::size_t b = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }

/// Network configuration.
///
/// Primary nodes are held in canonical order [BS, UAV_1 .. UAV_K, UE], so the
/// source is index 0 and the destination is index N-1. Interference sources are
/// stored separately. Functions that need a single index space over every node
/// use global ids: [0, N) for primary nodes, [N, N+M) for interferers.
struct Scenario {
  std::vector<Position> primary;
  std::vector<Position> interferers;

  std::vector<double> tx_power_w;  ///< per primary node
  std::vector<double> si_power_w;  ///< per interferer
  double p_max_w = 0.1;
  std::vector<double> i_max_w;  ///< per interferer; +inf means unconstrained

  ChannelParams channel;
  SafetyParams safety;
  std::vector<double> weights;  ///< per primary node
  std::vector<Edge> topology;   ///< undirected, primary indices
  bool ue_aerial = false;
  std::uint64_t seed = 0;

  std::size_t num_primary() const { return primary.size(); }
  std::size_t num_uavs() const { return primary.size() < 2 ? 0 : primary.size() - 2; }
  std::size_t num_interferers() const { return interferers.size(); }
  std::size_t num_nodes() const { return primary.size() + interferers.size(); }
  std::size_t source() const { return 0; }
  std::size_t sink() const { return primary.size() - 1; }
  bool is_uav(std::size_t i) const { return i > 0 && i + 1 < primary.size(); }
  std::size_t uav_node(std::size_t k) const { return k + 1; }
  bool is_interferer(std::size_t id) const { return id >= primary.size(); }

  const Position& position(std::size_t id) const {
    return id < primary.size() ? primary[id] : interferers[id - primary.size()];
  }
  NodeClass node_class(std::size_t id) const;

  std::vector<Position> uav_positions() const;
  void set_uav_positions(const std::vector<Position>& uavs);

  /// Every node with its class, primary nodes first in canonical order.
  std::vector<Node> nodes() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Line topology s - uav_1 - ... - uav_K - d over n primary nodes.
std::vector<Edge> line_topology(std::size_t n);

/// Default configuration: BS at (0,0,15), UE at (200,0,ue_altitude),
/// 8 relays evenly spaced on the BS-UE ground segment at 30 m, and 7
/// interferers drawn uniformly over [0,200]x[-100,100] at 20 m.
struct DefaultScenarioOptions {
  std::size_t num_uavs = 8;
  std::size_t num_interferers = 7;
  double uav_altitude_m = 30.0;
  double si_altitude_m = 20.0;
  double i_max_dbm = -30.0;
  double uav_weight = 1.0e-2;
};

Scenario build_default_scenario(std::uint64_t seed, double ue_altitude_m,
                                const DefaultScenarioOptions& opts = {});

/// Aerial nodes have A2A links among themselves; every other link is A2G.
struct AerialPartition {
  std::vector<std::size_t> aerial;  ///< global ids
  std::vector<std::size_t> ground;  ///< global ids
};

AerialPartition partition(const Scenario& s);
bool is_aerial(const Scenario& s, std::size_t id);

/// All invariant violations; empty means the scenario is valid.
std::vector<std::string> validate(const Scenario& s);

/// Throws std::invalid_argument listing every violation.
void require_valid(const Scenario& s);

}  // namespace aerolink
