#include "aerolink/optimizer.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "aerolink/flow.hpp"
#include "aerolink/power.hpp"

namespace aerolink {

const char* to_string(Termination t) {
  switch (t) {
    case Termination::Converged: return "converged";
    case Termination::MaxIterations: return "max_iterations";
    case Termination::Stalled: return "stalled";
  }
  return "unknown";
}

const IterationRecord& RunHistory::at(std::size_t t) const {
  if (t == 0) return initial;
  if (t > iterations.size()) throw std::out_of_range("iteration index outside the run history");
  return iterations[t - 1];
}

double network_flow(const Scenario& s, const FadingModel& f) {
  const GraphMatrices m = build_matrices(s, f);
  return max_flow(from_adjacency(m.adjacency, s.source(), s.sink())).value;
}

namespace {

IterationRecord make_record(int iteration, const Scenario& s, const OptimizerConfig& c) {
  IterationRecord r;
  r.iteration = iteration;
  r.uav_positions = s.uav_positions();
  r.powers = s.tx_power_w;
  const FiedlerPair fp = fiedler_pair(weighted_laplacian(build_matrices(s, c.fading), s.weights, c.laplacian_mode));
  r.lambda2 = fp.lambda2;
  r.degenerate = fp.degenerate;
  r.flow = network_flow(s, c.fading);
  const InterferenceReport ir = verify_interference(s, s.tx_power_w, c.fading);
  r.min_margin_w = ir.min_margin_w;
  r.interference_ok = ir.pass;
  return r;
}

void check_config(const OptimizerConfig& c) {
  if (!(c.epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (c.max_iterations < 1) throw std::invalid_argument("max_iterations must be at least 1");
  if (!(c.trajectory.dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(c.trajectory.fd_step_m > 0.0)) throw std::invalid_argument("fd_step_m must be positive");
  if (!(c.trajectory.max_step_m > 0.0)) throw std::invalid_argument("max_step_m must be positive");
}

}  // namespace

RunHistory run(const Scenario& s, const OptimizerConfig& c) {
  require_valid(s);
  check_config(c);
  const FadingModel& f = c.fading;
  const LaplacianMode mode = c.laplacian_mode;

  Scenario current = s;
  RunHistory h;
  h.initial = make_record(0, current, c);

  // Trial positions are scored after the power step they would receive.
  const Lambda2Evaluator with_power_step = [&](const Scenario& trial) {
    Scenario sc = trial;
    sc.tx_power_w = solve_maxmin(sc, f).powers;
    return weighted_lambda2(sc, f, mode);
  };

  double flow_prev2 = -std::numeric_limits<double>::infinity();
  double flow_prev1 = 0.0;
  double last_flow = h.initial.flow;
  h.termination = Termination::Converged;

  while (std::abs(flow_prev1 - flow_prev2) > c.epsilon) {
    if (static_cast<int>(h.iterations.size()) == c.max_iterations) {
      h.termination = Termination::MaxIterations;
      break;
    }
    const int t = static_cast<int>(h.iterations.size()) + 1;

    const GradientField g = lambda2_gradient(current, f, mode, c.trajectory);
    const StepResult st = step(current, g, c.trajectory, f, mode, with_power_step);
    current.set_uav_positions(st.uav_positions);

    current.tx_power_w = solve_maxmin(current, f).powers;

    IterationRecord rec = make_record(t, current, c);
    rec.stalled = st.stalled;
    rec.degenerate = rec.degenerate || g.degenerate;
    rec.halvings = st.halvings;
    h.iterations.push_back(rec);

    if (st.stalled && rec.flow == last_flow) {
      h.termination = Termination::Stalled;
      break;
    }
    last_flow = rec.flow;
    flow_prev2 = flow_prev1;
    flow_prev1 = rec.flow;
  }
  return h;
}

Scenario scenario_at(const RunHistory& h, const Scenario& s, std::size_t t) {
  const IterationRecord& r = h.at(t);
  Scenario sc = s;
  sc.set_uav_positions(r.uav_positions);
  sc.tx_power_w = r.powers;
  return sc;
}

double replay_flow(const RunHistory& h, const Scenario& s, const OptimizerConfig& c, std::size_t t) {
  return network_flow(scenario_at(h, s, t), c.fading);
}

}  // namespace aerolink
