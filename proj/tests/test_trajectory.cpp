#include "doctest.h"

#include <cmath>

#include "aerolink/trajectory.hpp"
#include "support.hpp"

using namespace aerolink;

namespace {

double max_abs(const GradientField& g) {
  double m = 0.0;
  for (const Vec3& v : g.per_uav)
    for (std::size_t a = 0; a < 3; ++a) m = std::max(m, std::abs(v[a]));
  return m;
}

// Edge-sum gradient evaluated with an explicit Fiedler vector.
std::vector<Vec3> edge_sum(const Scenario& s, const FadingModel& f, const Vector& fiedler) {
  std::vector<Vec3> out(s.num_uavs());
  for (std::size_t k = 0; k < s.num_uavs(); ++k) {
    for (const Edge& e : s.topology) {
      const double d = fiedler[static_cast<Eigen::Index>(e.a)] / std::sqrt(s.weights[e.a]) -
                       fiedler[static_cast<Eigen::Index>(e.b)] / std::sqrt(s.weights[e.b]);
      out[k] += (d * d) * rate_position_gradient(e.a, e.b, s.uav_node(k), s, f);
    }
  }
  return out;
}

Scenario mirror_symmetric() {
  Scenario s = build_default_scenario(7, 25.0, {.num_uavs = 4, .num_interferers = 0});
  s.primary.back() = {200, 0, 25};
  s.interferers = {{60, 40, 20}, {60, -40, 20}, {140, 25, 10}, {140, -25, 10}};
  s.si_power_w.assign(4, 1.0);
  s.i_max_w.assign(4, dbm_to_watts(-30.0));
  return s;
}

}  // namespace

TEST_CASE("axis masks") {
  CHECK(parse_axis_mask("xy") == AxisMask::XY);
  CHECK(parse_axis_mask("xz") == AxisMask::XZ);
  CHECK(parse_axis_mask("yz") == AxisMask::YZ);
  CHECK(parse_axis_mask("xyz") == AxisMask::XYZ);
  CHECK_THROWS_AS(parse_axis_mask("z"), std::invalid_argument);
  CHECK(std::string(to_string(AxisMask::XZ)) == "xz");
  CHECK_FALSE(axis_enabled(AxisMask::XY, 2));
  CHECK_FALSE(axis_enabled(AxisMask::YZ, 0));
  CHECK(axis_enabled(AxisMask::XZ, 2));
}

TEST_CASE("analytic gradient matches finite differences") {
  testing::Rng rng(99);
  int checked = 0;
  while (checked < 10) {
    const Scenario s = testing::random_scenario(rng);
    const FadingModel f = FadingModel::unit();
    const GradientField a = analytic_lambda2_gradient(s, f, LaplacianMode::CombinatorialWeighted);
    if (a.degenerate || laplacian_bundle(s, f, LaplacianMode::CombinatorialWeighted).spectral_gap < 1e-2 * a.lambda2)
      continue;
    ++checked;
    const GradientField d = fd_lambda2_gradient(s, f, LaplacianMode::CombinatorialWeighted, 1e-3);
    const double floor = 1e-6 * max_abs(d);
    for (std::size_t k = 0; k < s.num_uavs(); ++k)
      for (std::size_t axis = 0; axis < 3; ++axis) {
        const double fd = d.per_uav[k][axis];
        CHECK(std::abs(a.per_uav[k][axis] - fd) <= 1e-4 * std::max(std::abs(fd), floor));
      }
  }
}

TEST_CASE("fiedler sign does not change the gradient") {
  const Scenario s = build_default_scenario(7, 25.0);
  const FadingModel f = FadingModel::unit();
  const LaplacianBundle b = laplacian_bundle(s, f, LaplacianMode::CombinatorialWeighted);
  const auto plus = edge_sum(s, f, b.fiedler);
  const auto minus = edge_sum(s, f, -b.fiedler);
  const GradientField g = analytic_lambda2_gradient(s, f, LaplacianMode::CombinatorialWeighted);
  for (std::size_t k = 0; k < s.num_uavs(); ++k) {
    CHECK(plus[k] == minus[k]);
    for (std::size_t axis = 0; axis < 3; ++axis)
      CHECK(g.per_uav[k][axis] == doctest::Approx(plus[k][axis]).epsilon(1e-12));
  }
}

TEST_CASE("mirror symmetry kills the y component") {
  const Scenario s = mirror_symmetric();
  REQUIRE(validate(s).empty());
  const GradientField g = analytic_lambda2_gradient(s, FadingModel::unit(), LaplacianMode::CombinatorialWeighted);
  const double scale = max_abs(g);
  CHECK(scale > 0.0);
  for (const Vec3& v : g.per_uav) CHECK(std::abs(v.y) <= 1e-12 * scale);
}

TEST_CASE("masked gradients and the finite-difference mode") {
  const Scenario s = build_default_scenario(7, 25.0);
  const FadingModel f = FadingModel::unit();
  TrajectoryConfig c;
  c.mask = AxisMask::XY;
  const GradientField g = lambda2_gradient(s, f, LaplacianMode::CombinatorialWeighted, c);
  for (const Vec3& v : g.per_uav) CHECK(v.z == 0.0);
  CHECK_FALSE(g.used_finite_difference);

  c.gradient_mode = GradientMode::FiniteDifference;
  c.mask = AxisMask::YZ;
  const GradientField d = lambda2_gradient(s, f, LaplacianMode::CombinatorialWeighted, c);
  CHECK(d.used_finite_difference);
  for (const Vec3& v : d.per_uav) CHECK(v.x == 0.0);
  CHECK_THROWS_AS(fd_lambda2_gradient(s, f, LaplacianMode::CombinatorialWeighted, 0.0), std::invalid_argument);
}

TEST_CASE("step mechanics") {
  const Scenario s = build_default_scenario(7, 25.0);
  const FadingModel f = FadingModel::unit();
  const LaplacianMode mode = LaplacianMode::CombinatorialWeighted;
  TrajectoryConfig c;

  GradientField zero;
  zero.per_uav.assign(s.num_uavs(), Vec3{});
  StepResult r = step(s, zero, c, f, mode);
  CHECK(r.uav_positions == s.uav_positions());
  CHECK_FALSE(r.stalled);

  const GradientField g = lambda2_gradient(s, f, mode, c);
  r = step(s, g, c, f, mode);
  CHECK(r.lambda2_after >= r.lambda2_before);
  CHECK(r.lambda2_before == weighted_lambda2(s, f, mode));
  for (std::size_t k = 0; k < s.num_uavs(); ++k)
    CHECK(distance(r.uav_positions[k], s.uav_positions()[k]) <= c.max_step_m * (1 + 1e-12));

  c.mask = AxisMask::XY;
  r = step(s, lambda2_gradient(s, f, mode, c), c, f, mode);
  for (std::size_t k = 0; k < s.num_uavs(); ++k) CHECK(r.uav_positions[k].z == s.uav_positions()[k].z);

  // Clipping and the altitude floor.
  GradientField down;
  down.per_uav.assign(s.num_uavs(), Vec3{0.0, 0.0, -1000.0});
  TrajectoryConfig free_fall;
  free_fall.backtracking = false;
  free_fall.max_step_m = 50.0;
  r = step(s, down, free_fall, f, mode);
  for (const Position& p : r.uav_positions) CHECK(p.z == free_fall.min_altitude_m);
  free_fall.max_step_m = 2.0;
  r = step(s, down, free_fall, f, mode);
  for (const Position& p : r.uav_positions) CHECK(p.z == doctest::Approx(28.0));
}

TEST_CASE("backtracking never lowers lambda2") {
  testing::Rng rng(3);
  const LaplacianMode mode = LaplacianMode::CombinatorialWeighted;
  for (int trial = 0; trial < 10; ++trial) {
    const Scenario s = testing::random_scenario(rng);
    const FadingModel f = trial % 2 ? FadingModel::rayleigh(trial) : FadingModel::unit();
    TrajectoryConfig c;
    c.dt = 50.0;  // deliberately too long
    const StepResult r = step(s, lambda2_gradient(s, f, mode, c), c, f, mode);
    Scenario moved = s;
    moved.set_uav_positions(r.uav_positions);
    CHECK(weighted_lambda2(moved, f, mode) >= weighted_lambda2(s, f, mode));
  }
}

TEST_CASE("an impossible objective stalls") {
  const Scenario s = build_default_scenario(7, 25.0);
  TrajectoryConfig c;
  c.max_halvings = 3;
  int calls = 0;
  const Lambda2Evaluator worse_after_move = [&](const Scenario& sc) {
    ++calls;
    return sc.uav_positions() == s.uav_positions() ? 1.0 : 0.0;
  };
  const GradientField g = lambda2_gradient(s, FadingModel::unit(), LaplacianMode::CombinatorialWeighted, c);
  const StepResult r =
      step(s, g, c, FadingModel::unit(), LaplacianMode::CombinatorialWeighted, worse_after_move);
  CHECK(r.stalled);
  CHECK(r.uav_positions == s.uav_positions());
  CHECK(calls == 1 + 4);
}
