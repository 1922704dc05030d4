#include "aerolink/cli.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <iomanip>
#include <limits>
#include <ostream>

#include <omp.h>

#include "CLI11.hpp"

#include "aerolink/config.hpp"
#include "aerolink/output.hpp"
#include "aerolink/sweep.hpp"

namespace aerolink {

namespace {

RunConfig load(const CliOptions& o) {
  RunConfig rc = load_config(o.config, o.seed);
  if (o.mask) rc.optimizer.trajectory.mask = *o.mask;
  return rc;
}

void apply_jobs(int jobs) {
  if (jobs > 0) omp_set_num_threads(jobs);
}

// Shared error mapping for every subcommand.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "aerolink: invalid config: " << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (const std::exception& e) {
    err << "aerolink: " << e.what() << '\n';
    return kExitRuntime;
  }
}

const char* axis_name(std::size_t axis) { return axis == 0 ? "x" : (axis == 1 ? "y" : "z"); }

}  // namespace

int cmd_run(const CliOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig rc = load(o);
    apply_jobs(o.jobs);
    const RunHistory h = run(rc.scenario, rc.optimizer);
    write_files_atomically(o.out, {{"history.csv", history_csv(h, rc.scenario)},
                                   {"trajectory.json", trajectory_json(h, rc.scenario).dump(2) + "\n"},
                                   {"summary.json", summary_json(h, rc).dump(2) + "\n"}});
    out << "final flow " << format_number(h.final_record().flow) << " bit/s after " << h.iterations.size()
        << " iterations (" << to_string(h.termination) << ")\n";
    return static_cast<int>(kExitOk);
  });
}

int cmd_sweep(const CliOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig rc = load(o);
    SweepSpec spec = load_sweep_spec(o.sweep);
    if (o.mask) spec.masks = {*o.mask};
    for (const SweepPoint& p : sweep_points(spec)) {
      const auto errors = validate(point_config(rc, spec, p).scenario);
      if (!errors.empty()) throw ConfigError("sweep point " + format_number(p.value) + ": " + errors.front());
    }
    const std::vector<SweepRow> rows = run_sweep(rc, spec, o.jobs);
    write_files_atomically(o.out, {{"sweep.csv", sweep_csv(rows)}});
    out << rows.size() << " sweep points written to " << (o.out / "sweep.csv").string() << '\n';
    return static_cast<int>(kExitOk);
  });
}

GradcheckReport gradcheck(const Scenario& s, const OptimizerConfig& c, double tol) {
  const AxisMask mask = c.trajectory.mask;
  const GradientField a = analytic_lambda2_gradient(s, c.fading, c.laplacian_mode);
  const GradientField f = fd_lambda2_gradient(s, c.fading, c.laplacian_mode, c.trajectory.fd_step_m, mask);

  double scale = 0.0;
  for (const Vec3& g : f.per_uav)
    for (std::size_t axis = 0; axis < 3; ++axis)
      if (axis_enabled(mask, axis)) scale = std::max(scale, std::abs(g[axis]));
  const double floor = 1e-6 * scale;

  GradcheckReport r;
  r.degenerate = a.degenerate;
  for (std::size_t k = 0; k < s.num_uavs(); ++k) {
    for (std::size_t axis = 0; axis < 3; ++axis) {
      if (!axis_enabled(mask, axis)) continue;
      GradcheckEntry e{k + 1, axis, a.per_uav[k][axis], f.per_uav[k][axis], 0.0};
      const double denom = std::max(std::abs(e.finite_difference), floor);
      const double diff = std::abs(e.analytic - e.finite_difference);
      e.rel_err = denom > 0.0 ? diff / denom : (diff > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
      if (r.entries.empty() || e.rel_err > r.max_rel_err) {
        r.worst = r.entries.size();
        r.max_rel_err = e.rel_err;
      }
      r.entries.push_back(e);
    }
  }
  r.pass = !(r.max_rel_err > tol);
  return r;
}

int cmd_gradcheck(const CliOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig rc = load(o);
    apply_jobs(o.jobs);
    const GradcheckReport r = gradcheck(rc.scenario, rc.optimizer);
    out << "laplacian " << to_string(rc.optimizer.laplacian_mode) << ", fd step "
        << format_number(rc.optimizer.trajectory.fd_step_m) << " m\n";
    if (r.degenerate) out << "warning: lambda2 is not simple; the gradient is not defined\n";
    out << std::left << std::setw(5) << "uav" << std::setw(6) << "axis" << std::setw(26) << "analytic"
        << std::setw(26) << "finite_difference" << "rel_err\n";
    for (const GradcheckEntry& e : r.entries)
      out << std::setw(5) << e.uav << std::setw(6) << axis_name(e.axis) << std::setw(26)
          << format_number(e.analytic) << std::setw(26) << format_number(e.finite_difference)
          << format_number(e.rel_err) << '\n';
    out << "max rel_err " << format_number(r.max_rel_err) << " (tolerance " << format_number(kGradcheckTolerance)
        << ")\n";
    if (r.pass) return static_cast<int>(kExitOk);
    const GradcheckEntry& w = r.entries[r.worst];
    err << "gradcheck failed: uav " << w.uav << " axis " << axis_name(w.axis) << " analytic "
        << format_number(w.analytic) << " finite-difference " << format_number(w.finite_difference)
        << " rel_err " << format_number(w.rel_err) << '\n';
    return static_cast<int>(kExitGradcheck);
  });
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"UAV relay trajectory and power optimizer", "aerolink"};
  app.require_subcommand(1);
  CliOptions o;
  std::string mask;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "scenario config JSON")->required();
    sub->add_option("--seed", seed, "override the config seed");
    sub->add_option("--mask", mask, "movement axes: xy, xz, yz or xyz")
        ->check(CLI::IsMember({"xy", "xz", "yz", "xyz"}));
    sub->add_option("--jobs", o.jobs, "worker threads (0 = available parallelism)")
        ->check(CLI::NonNegativeNumber);
  };
  CLI::App* run_cmd = app.add_subcommand("run", "optimize one scenario");
  add_common(run_cmd);
  run_cmd->add_option("--out", o.out, "output directory")->required();
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep");
  add_common(sweep_cmd);
  sweep_cmd->add_option("--sweep", o.sweep, "sweep spec JSON")->required();
  sweep_cmd->add_option("--out", o.out, "output directory")->required();
  CLI::App* grad_cmd = app.add_subcommand("gradcheck", "compare analytic and finite-difference gradients");
  add_common(grad_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidConfig;
  }
  if (app.get_subcommands().front()->count("--seed")) o.seed = seed;
  if (!mask.empty()) o.mask = parse_axis_mask(mask);

  if (run_cmd->parsed()) return cmd_run(o, out, err);
  if (sweep_cmd->parsed()) return cmd_sweep(o, out, err);
  return cmd_gradcheck(o, out, err);
}

}  // namespace aerolink
