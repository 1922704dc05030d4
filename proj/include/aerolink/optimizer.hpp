#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "aerolink/channel.hpp"
#include "aerolink/scenario.hpp"
#include "aerolink/spectral.hpp"
#include "aerolink/trajectory.hpp"

namespace aerolink {

struct OptimizerConfig {
  double epsilon = 1.0;  ///< bits/s
  int max_iterations = 500;
  TrajectoryConfig trajectory;
  LaplacianMode laplacian_mode = LaplacianMode::CombinatorialWeighted;
  FadingModel fading;

  friend bool operator==(const OptimizerConfig&, const OptimizerConfig&) = default;
};

enum class Termination { Converged, MaxIterations, Stalled };

const char* to_string(Termination t);

struct IterationRecord {
  int iteration = 0;
  std::vector<Position> uav_positions;
  std::vector<double> powers;  ///< per primary node
  double lambda2 = 0.0;
  double flow = 0.0;           ///< max s-d flow, bits/s
  double min_margin_w = 0.0;   ///< smallest interference margin
  bool interference_ok = false;
  bool stalled = false;
  bool degenerate = false;
  int halvings = 0;
};

/// `initial` is the configuration before the first move (iteration 0);
/// `iterations` holds one record per pass of the alternating loop.
struct RunHistory {
  IterationRecord initial;
  std::vector<IterationRecord> iterations;
  Termination termination = Termination::MaxIterations;

  std::size_t size() const { return iterations.size() + 1; }
  /// t = 0 is the initial record, t >= 1 the t-th iteration.
  const IterationRecord& at(std::size_t t) const;
  const IterationRecord& final_record() const { return iterations.empty() ? initial : iterations.back(); }
};

/// Max s-d flow of the scenario's current positions and powers.
double network_flow(const Scenario& s, const FadingModel& f);

/// Alternating optimization: gradient step on the UAV positions, power
/// re-allocation, flow evaluation; repeated until two consecutive flow
/// values differ by at most epsilon or max_iterations passes have run.
///
/// With backtracking enabled the line search scores a trial position by
/// lambda2 after re-solving powers there, so the recorded lambda2 series is
/// non-decreasing.
RunHistory run(const Scenario& s, const OptimizerConfig& c);

/// Recomputes the flow of record t from its stored positions and powers.
double replay_flow(const RunHistory& h, const Scenario& s, const OptimizerConfig& c, std::size_t t);

/// Scenario with the positions and powers of record t.
Scenario scenario_at(const RunHistory& h, const Scenario& s, std::size_t t);

}  // namespace aerolink
