#pragma once

#include <functional>
#include <string>
#include <vector>

#include "aerolink/channel.hpp"
#include "aerolink/scenario.hpp"
#include "aerolink/spectral.hpp"

namespace aerolink {

enum class AxisMask { XY, XZ, YZ, XYZ };

const char* to_string(AxisMask m);
AxisMask parse_axis_mask(const std::string& s);  ///< "xy" | "xz" | "yz" | "xyz"
bool axis_enabled(AxisMask m, std::size_t axis);

enum class GradientMode { Analytic, FiniteDifference };

const char* to_string(GradientMode m);

struct TrajectoryConfig {
  double dt = 1.0;  ///< meters per unit gradient
  AxisMask mask = AxisMask::XYZ;
  GradientMode gradient_mode = GradientMode::Analytic;
  bool backtracking = true;
  double max_step_m = 5.0;
  double fd_step_m = 1.0e-3;
  int max_halvings = 20;
  double min_altitude_m = 1.0;

  friend bool operator==(const TrajectoryConfig&, const TrajectoryConfig&) = default;
};

/// d lambda2 / d(x, y, z) for every relay UAV, in UAV order.
struct GradientField {
  std::vector<Vec3> per_uav;
  double lambda2 = 0.0;
  bool degenerate = false;            ///< lambda2 was not simple
  bool used_finite_difference = false;
};

/// Edge-sum formula: sum over topology edges of
/// (x_p/sqrt(w_p) - x_q/sqrt(w_q))^2 * grad a_pq, using the Fiedler vector of
/// the weighted Laplacian in `mode`. Exact for CombinatorialWeighted. All
/// three axes, no masking, no fallback.
GradientField analytic_lambda2_gradient(const Scenario& s, const FadingModel& f, LaplacianMode mode);

/// Central differences of lambda2 over each enabled UAV coordinate.
GradientField fd_lambda2_gradient(const Scenario& s, const FadingModel& f, LaplacianMode mode,
                                  double step_m, AxisMask mask = AxisMask::XYZ);

/// Gradient per the configured mode with masked axes zeroed. A degenerate
/// lambda2 switches Analytic to finite differences for this call.
GradientField lambda2_gradient(const Scenario& s, const FadingModel& f, LaplacianMode mode,
                               const TrajectoryConfig& c);

/// Objective used by backtracking; defaults to lambda2 at fixed powers.
using Lambda2Evaluator = std::function<double(const Scenario&)>;

struct StepResult {
  std::vector<Position> uav_positions;
  double lambda2_before = 0.0;
  double lambda2_after = 0.0;
  int halvings = 0;
  bool stalled = false;
};

/// One ascent move: dt * gradient, masked, clipped to max_step_m per UAV,
/// altitude clamped. With backtracking the step is halved until the
/// objective does not decrease; if that never happens the old positions
/// come back with `stalled` set.
StepResult step(const Scenario& s, const GradientField& g, const TrajectoryConfig& c,
                const FadingModel& f, LaplacianMode mode, const Lambda2Evaluator& objective = {});

namespace reference {
/// Serial versions of the gradient kernels, kept for cross-checking.
GradientField analytic_lambda2_gradient(const Scenario& s, const FadingModel& f, LaplacianMode mode);
GradientField fd_lambda2_gradient(const Scenario& s, const FadingModel& f, LaplacianMode mode,
                                  double step_m, AxisMask mask = AxisMask::XYZ);
}  // namespace reference

}  // namespace aerolink
