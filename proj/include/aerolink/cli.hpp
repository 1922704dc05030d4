#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "aerolink/optimizer.hpp"
#include "aerolink/scenario.hpp"
#include "aerolink/trajectory.hpp"

namespace aerolink {

enum ExitCode : int { kExitOk = 0, kExitInvalidConfig = 1, kExitRuntime = 2, kExitGradcheck = 3 };

struct CliOptions {
  std::filesystem::path config;
  std::filesystem::path out = ".";
  std::filesystem::path sweep;
  std::optional<std::uint64_t> seed;
  std::optional<AxisMask> mask;
  int jobs = 0;  ///< 0 = available parallelism
};

int cmd_run(const CliOptions& o, std::ostream& out, std::ostream& err);
int cmd_sweep(const CliOptions& o, std::ostream& out, std::ostream& err);
int cmd_gradcheck(const CliOptions& o, std::ostream& out, std::ostream& err);

/// Entry point of the `aerolink` executable.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

inline constexpr double kGradcheckTolerance = 1.0e-4;

struct GradcheckEntry {
  std::size_t uav = 0;  ///< 1-based
  std::size_t axis = 0;
  double analytic = 0.0;
  double finite_difference = 0.0;
  double rel_err = 0.0;
};

struct GradcheckReport {
  std::vector<GradcheckEntry> entries;
  double max_rel_err = 0.0;
  std::size_t worst = 0;
  bool degenerate = false;
  bool pass = true;
};

/// Analytic edge-sum gradient against central differences on every enabled
/// coordinate. Relative error is |a - f| / max(|f|, 1e-6 * max_k |f_k|).
GradcheckReport gradcheck(const Scenario& s, const OptimizerConfig& c, double tol = kGradcheckTolerance);

}  // namespace aerolink
