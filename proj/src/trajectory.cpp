#include "aerolink/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>

namespace aerolink {

const char* to_string(AxisMask m) {
  switch (m) {
    case AxisMask::XY: return "xy";
    case AxisMask::XZ: return "xz";
    case AxisMask::YZ: return "yz";
    case AxisMask::XYZ: return "xyz";
  }
  return "xyz";
}

AxisMask parse_axis_mask(const std::string& s) {
  if (s == "xy") return AxisMask::XY;
  if (s == "xz") return AxisMask::XZ;
  if (s == "yz") return AxisMask::YZ;
  if (s == "xyz") return AxisMask::XYZ;
  throw std::invalid_argument("unknown axis mask '" + s + "' (expected xy, xz, yz or xyz)");
}

bool axis_enabled(AxisMask m, std::size_t axis) {
  switch (m) {
    case AxisMask::XY: return axis != 2;
    case AxisMask::XZ: return axis != 1;
    case AxisMask::YZ: return axis != 0;
    case AxisMask::XYZ: return axis < 3;
  }
  return false;
}

const char* to_string(GradientMode m) {
  return m == GradientMode::Analytic ? "analytic" : "finite-difference";
}

namespace {

struct EdgeCoefficients {
  std::vector<double> coeff;  // per topology edge
  double lambda2 = 0.0;
  bool degenerate = false;
};

EdgeCoefficients edge_coefficients(const Scenario& s, const FadingModel& f, LaplacianMode mode) {
  const LaplacianBundle b = laplacian_bundle(s, f, mode);
  EdgeCoefficients out;
  out.lambda2 = b.lambda2;
  out.degenerate = b.degenerate;
  out.coeff.reserve(s.topology.size());
  for (const Edge& e : s.topology) {
    const double d = b.fiedler[static_cast<Eigen::Index>(e.a)] / std::sqrt(s.weights[e.a]) -
                     b.fiedler[static_cast<Eigen::Index>(e.b)] / std::sqrt(s.weights[e.b]);
    out.coeff.push_back(d * d);
  }
  return out;
}

// Contribution of every topology edge to d lambda2 / d r_v.
Vec3 uav_gradient(const Scenario& s, const FadingModel& f, const EdgeCoefficients& ec,
                  std::size_t v) {
  Vec3 g{};
  const bool coupled = s.safety.chi != 0.0;
  for (std::size_t e = 0; e < s.topology.size(); ++e) {
    const Edge& edge = s.topology[e];
    if (!coupled && edge.a != v && edge.b != v) continue;
    g += ec.coeff[e] * rate_position_gradient(edge.a, edge.b, v, s, f);
  }
  return g;
}

double perturbed_lambda2(Scenario sc, const FadingModel& f, LaplacianMode mode, std::size_t node,
                         std::size_t axis, double delta) {
  sc.primary[node][axis] += delta;
  return weighted_lambda2(sc, f, mode);
}

struct FdTask {
  std::size_t uav;
  std::size_t axis;
};

std::vector<FdTask> fd_tasks(const Scenario& s, AxisMask mask) {
  std::vector<FdTask> tasks;
  for (std::size_t k = 0; k < s.num_uavs(); ++k)
    for (std::size_t axis = 0; axis < 3; ++axis)
      if (axis_enabled(mask, axis)) tasks.push_back({k, axis});
  return tasks;
}

void require_fd_step(double h) {
  if (!(h > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
}

}  // namespace

namespace reference {

GradientField analytic_lambda2_gradient(const Scenario& s, const FadingModel& f, LaplacianMode mode) {
  const EdgeCoefficients ec = edge_coefficients(s, f, mode);
  GradientField out;
  out.lambda2 = ec.lambda2;
  out.degenerate = ec.degenerate;
  out.per_uav.resize(s.num_uavs());
  for (std::size_t k = 0; k < s.num_uavs(); ++k) out.per_uav[k] = uav_gradient(s, f, ec, s.uav_node(k));
  return out;
}

GradientField fd_lambda2_gradient(const Scenario& s, const FadingModel& f, LaplacianMode mode,
                                  double step_m, AxisMask mask) {
  require_fd_step(step_m);
  const FiedlerPair base = fiedler_pair(weighted_laplacian(reference::build_matrices(s, f), s.weights, mode));
  GradientField out;
  out.lambda2 = base.lambda2;
  out.degenerate = base.degenerate;
  out.used_finite_difference = true;
  out.per_uav.resize(s.num_uavs());
  for (const FdTask& t : fd_tasks(s, mask)) {
    const std::size_t node = s.uav_node(t.uav);
    const double up = perturbed_lambda2(s, f, mode, node, t.axis, step_m);
    const double down = perturbed_lambda2(s, f, mode, node, t.axis, -step_m);
    out.per_uav[t.uav][t.axis] = (up - down) / (2.0 * step_m);
  }
  return out;
}

}  // namespace reference

GradientField analytic_lambda2_gradient(const Scenario& s, const FadingModel& f, LaplacianMode mode) {
  const EdgeCoefficients ec = edge_coefficients(s, f, mode);
  GradientField out;
  out.lambda2 = ec.lambda2;
  out.degenerate = ec.degenerate;
  out.per_uav.resize(s.num_uavs());

  const auto k_count = static_cast<long>(s.num_uavs());
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < k_count; ++k) {
    try {
      const auto uk = static_cast<std::size_t>(k);
      out.per_uav[uk] = uav_gradient(s, f, ec, s.uav_node(uk));
    } catch (...) {
#pragma omp critical(aerolink_gradient_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

GradientField fd_lambda2_gradient(const Scenario& s, const FadingModel& f, LaplacianMode mode,
                                  double step_m, AxisMask mask) {
  require_fd_step(step_m);
  const FiedlerPair base = fiedler_pair(weighted_laplacian(build_matrices(s, f), s.weights, mode));
  GradientField out;
  out.lambda2 = base.lambda2;
  out.degenerate = base.degenerate;
  out.used_finite_difference = true;
  out.per_uav.resize(s.num_uavs());

  const std::vector<FdTask> tasks = fd_tasks(s, mask);
  const auto count = static_cast<long>(tasks.size());
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
  for (long t = 0; t < count; ++t) {
    try {
      const FdTask& task = tasks[static_cast<std::size_t>(t)];
      const std::size_t node = s.uav_node(task.uav);
      const double up = perturbed_lambda2(s, f, mode, node, task.axis, step_m);
      const double down = perturbed_lambda2(s, f, mode, node, task.axis, -step_m);
      out.per_uav[task.uav][task.axis] = (up - down) / (2.0 * step_m);
    } catch (...) {
#pragma omp critical(aerolink_fd_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

GradientField lambda2_gradient(const Scenario& s, const FadingModel& f, LaplacianMode mode,
                               const TrajectoryConfig& c) {
  GradientField g;
  if (c.gradient_mode == GradientMode::Analytic) {
    g = analytic_lambda2_gradient(s, f, mode);
    if (g.degenerate) {
      g = fd_lambda2_gradient(s, f, mode, c.fd_step_m, c.mask);
      g.degenerate = true;
    }
  } else {
    g = fd_lambda2_gradient(s, f, mode, c.fd_step_m, c.mask);
  }
  for (Vec3& v : g.per_uav)
    for (std::size_t axis = 0; axis < 3; ++axis)
      if (!axis_enabled(c.mask, axis)) v[axis] = 0.0;
  return g;
}

StepResult step(const Scenario& s, const GradientField& g, const TrajectoryConfig& c,
                const FadingModel& f, LaplacianMode mode, const Lambda2Evaluator& objective) {
  if (!(c.dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(c.max_step_m > 0.0)) throw std::invalid_argument("max_step_m must be positive");
  if (g.per_uav.size() != s.num_uavs()) throw std::invalid_argument("gradient does not match scenario");

  const Lambda2Evaluator eval =
      objective ? objective : Lambda2Evaluator([&](const Scenario& sc) { return weighted_lambda2(sc, f, mode); });
  const std::vector<Position> old_positions = s.uav_positions();

  auto trial_positions = [&](double dt) {
    std::vector<Position> out = old_positions;
    for (std::size_t k = 0; k < out.size(); ++k) {
      Vec3 d{};
      for (std::size_t axis = 0; axis < 3; ++axis)
        if (axis_enabled(c.mask, axis)) d[axis] = dt * g.per_uav[k][axis];
      const double len = norm(d);
      if (len > c.max_step_m) d = (c.max_step_m / len) * d;
      for (std::size_t axis = 0; axis < 3; ++axis)
        if (axis_enabled(c.mask, axis)) out[k][axis] += d[axis];
      if (axis_enabled(c.mask, 2)) out[k].z = std::max(out[k].z, c.min_altitude_m);
    }
    return out;
  };

  StepResult r;
  Scenario trial = s;
  if (!c.backtracking) {
    r.lambda2_before = eval(s);
    r.uav_positions = trial_positions(c.dt);
    trial.set_uav_positions(r.uav_positions);
    r.lambda2_after = eval(trial);
    return r;
  }

  r.lambda2_before = eval(s);
  double dt = c.dt;
  for (int h = 0; h <= c.max_halvings; ++h, dt *= 0.5) {
    std::vector<Position> candidate = trial_positions(dt);
    trial.set_uav_positions(candidate);
    double value;
    try {
      value = eval(trial);
    } catch (const std::domain_error&) {
      continue;  // trial landed on a degenerate geometry
    }
    if (value >= r.lambda2_before) {
      r.uav_positions = std::move(candidate);
      r.lambda2_after = value;
      r.halvings = h;
      return r;
    }
  }
  r.uav_positions = old_positions;
  r.lambda2_after = r.lambda2_before;
  r.halvings = c.max_halvings;
  r.stalled = true;
  return r;
}

}  // namespace aerolink
