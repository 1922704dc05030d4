#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "aerolink/config.hpp"
#include "aerolink/optimizer.hpp"
#include "aerolink/sweep.hpp"

namespace aerolink {

/// Shortest form that round-trips at 17 significant digits; "inf", "-inf", "nan" otherwise.
std::string format_number(double v);

/// Columns: iteration, R_bits_per_s, lambda2, uavK_x/y/z, uavK_power_w,
/// min_interference_margin_w. Row 0 is the initial configuration.
std::string history_csv(const RunHistory& h, const Scenario& s);

/// Position series of every UAV plus the fixed nodes.
nlohmann::json trajectory_json(const RunHistory& h, const Scenario& s);

nlohmann::json summary_json(const RunHistory& h, const RunConfig& c);

/// Columns: sweep_value, axis_mask, final_flow_bits_per_s, iterations, terminated.
std::string sweep_csv(const std::vector<SweepRow>& rows);

/// Writes every (name, content) pair into `dir` through temporary files and
/// renames them into place. On failure nothing from this call is left behind.
void write_files_atomically(const std::filesystem::path& dir,
                            const std::vector<std::pair<std::string, std::string>>& files);

}  // namespace aerolink
