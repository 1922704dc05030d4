#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "aerolink/flow.hpp"
#include "aerolink/linalg.hpp"
#include "aerolink/scenario.hpp"
#include "aerolink/spectral.hpp"

namespace testing {

using namespace aerolink;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t index(std::size_t lo, std::size_t hi) {  // inclusive
    return lo + static_cast<std::size_t>(gen_() % (hi - lo + 1));
  }
  bool coin(double p) { return uniform() < p; }

 private:
  std::mt19937_64 gen_;
};

inline double rel_err(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

/// Directed capacitated graph on n nodes, source 0, sink n-1.
inline FlowNetwork random_flow_network(Rng& rng, std::size_t n, double density = 0.45) {
  FlowNetwork net;
  net.node_count = n;
  net.source = 0;
  net.sink = n - 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && rng.coin(density)) net.edges.push_back({i, j, rng.uniform(0.1, 10.0)});
  return net;
}

inline Matrix random_symmetric(Rng& rng, std::size_t n, double scale = 1.0) {
  Matrix a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j <= i; ++j) a(i, j) = a(j, i) = scale * rng.uniform(-1.0, 1.0);
  return a;
}

/// Connected weighted graph: a random spanning tree plus extra random edges.
inline GraphMatrices random_connected_graph(Rng& rng, std::size_t n, double extra = 0.3) {
  const auto N = static_cast<Eigen::Index>(n);
  Matrix adj = Matrix::Zero(N, N);
  for (Eigen::Index i = 1; i < N; ++i) {
    const auto j = static_cast<Eigen::Index>(rng.index(0, static_cast<std::size_t>(i) - 1));
    adj(i, j) = adj(j, i) = rng.uniform(0.1, 5.0);
  }
  for (Eigen::Index i = 0; i < N; ++i)
    for (Eigen::Index j = 0; j < i; ++j)
      if (adj(i, j) == 0.0 && rng.coin(extra)) adj(i, j) = adj(j, i) = rng.uniform(0.1, 5.0);
  return matrices_from_adjacency(adj);
}

struct ScenarioShape {
  std::size_t min_uavs = 3, max_uavs = 8;
  std::size_t min_sis = 0, max_sis = 7;
  double min_separation_m = 8.0;
};

/// Line relay scenario with random relay/interferer placement and weights.
inline Scenario random_scenario(Rng& rng, const ScenarioShape& shape = {}) {
  Scenario s = build_default_scenario(0, 25.0, {.num_uavs = 1, .num_interferers = 0});
  const std::size_t k = rng.index(shape.min_uavs, shape.max_uavs);
  const std::size_t m = rng.index(shape.min_sis, shape.max_sis);
  const Position bs{0.0, 0.0, 15.0};
  const Position ue{rng.uniform(150.0, 250.0), rng.uniform(-30.0, 30.0), rng.uniform(0.0, 60.0)};

  std::vector<Position> placed{bs, ue};
  auto far_enough = [&](const Position& p) {
    for (const Position& q : placed)
      if (distance(p, q) < shape.min_separation_m) return false;
    return true;
  };
  auto draw = [&](auto make) {
    for (;;) {
      const Position p = make();
      if (far_enough(p)) {
        placed.push_back(p);
        return p;
      }
    }
  };

  s.primary.assign(1, bs);
  for (std::size_t i = 0; i < k; ++i) {
    const double t = (static_cast<double>(i) + 1.0) / (static_cast<double>(k) + 1.0);
    s.primary.push_back(draw([&] {
      return Position{t * ue.x + rng.uniform(-15.0, 15.0), t * ue.y + rng.uniform(-20.0, 20.0),
                      rng.uniform(15.0, 60.0)};
    }));
  }
  s.primary.push_back(ue);
  s.interferers.clear();
  for (std::size_t i = 0; i < m; ++i)
    s.interferers.push_back(draw([&] {
      return Position{rng.uniform(0.0, 200.0), rng.uniform(-100.0, 100.0), rng.uniform(5.0, 40.0)};
    }));

  const std::size_t n = s.num_primary();
  s.ue_aerial = ue.z > 0.0;
  s.tx_power_w.assign(n, s.p_max_w);
  s.si_power_w.assign(m, dbm_to_watts(30.0));
  s.i_max_w.assign(m, dbm_to_watts(rng.uniform(-60.0, -10.0)));
  s.weights.assign(n, 1.0);
  for (std::size_t i = 1; i + 1 < n; ++i) s.weights[i] = rng.uniform(0.005, 1.0);
  s.topology = line_topology(n);
  return s;
}

}  // namespace testing
