#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "aerolink/config.hpp"
#include "aerolink/optimizer.hpp"
#include "aerolink/trajectory.hpp"

namespace aerolink {

enum class SweepVariable { InterferenceThresholdDbm, UeAltitudeM };

const char* to_string(SweepVariable v);

/// Sweep document:
///
///   variable   "interference_threshold_dbm" | "ue_altitude_m"
///   values     optional, strictly monotone; defaults to -50..-10 dBm step 5
///              or 0..500 m step 25
///   masks      optional list of "xy"|"xz"|"yz"|"xyz", defaults to ["xyz"]
///   optimizer  optional overrides merged into the base optimizer settings
struct SweepSpec {
  SweepVariable variable = SweepVariable::InterferenceThresholdDbm;
  std::vector<double> values;
  std::vector<AxisMask> masks{AxisMask::XYZ};
  nlohmann::json optimizer_overrides = nlohmann::json::object();
};

std::vector<double> default_sweep_values(SweepVariable v);

SweepSpec parse_sweep_spec(const nlohmann::json& j);
SweepSpec load_sweep_spec(const std::filesystem::path& path);

struct SweepPoint {
  double value = 0.0;
  AxisMask mask = AxisMask::XYZ;
};

struct SweepRow {
  double value = 0.0;
  AxisMask mask = AxisMask::XYZ;
  double final_flow = 0.0;
  int iterations = 0;
  Termination terminated = Termination::MaxIterations;
};

/// Points in output order: values outer, masks inner.
std::vector<SweepPoint> sweep_points(const SweepSpec& spec);

/// The scenario and optimizer settings of a single sweep point.
RunConfig point_config(const RunConfig& base, const SweepSpec& spec, const SweepPoint& p);

/// One optimizer run per point on up to `jobs` workers (0 = all available);
/// rows come back in sweep order.
std::vector<SweepRow> run_sweep(const RunConfig& base, const SweepSpec& spec, int jobs = 0);

}  // namespace aerolink
