#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "aerolink/optimizer.hpp"
#include "aerolink/scenario.hpp"

namespace aerolink {

inline constexpr int kSchemaVersion = 1;

/// Malformed or invalid configuration input.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  Scenario scenario;
  OptimizerConfig optimizer;
};

/// Scenario config document:
///
///   schema-version  integer, must be 1
///   seed            u64; drives preset interferer placement and Rayleigh fading
///   preset          optional {"name": "table1", "ue_altitude_m": h}; other keys override it
///   nodes           [{"class": "base_station"|"user_equipment"|"relay_uav"|"interference_source",
///                     "position": [x, y, z]}]   (meters)
///   ue_aerial       optional bool, defaults to UE altitude > 0
///   channel         {alpha_a2a, alpha_a2g, eta_a2a_db, eta_a2g_db, carrier_hz, bandwidth_hz}
///   safety          {chi, zeta, kappa, y0, r_int_m}
///   powers          {p_max_dbm, tx_dbm, si_dbm, i_max_dbm}; scalars or per-node arrays,
///                   i_max_dbm null means unconstrained
///   weights         {"uav": w} or an array over primary nodes [s, uav_1 .. uav_K, d]
///   topology        "line" or [[a, b], ...] over primary indices
///   optimizer       {epsilon, max_iterations, dt, mask, gradient, backtracking,
///                    max_step_m, fd_step_m, laplacian, fading: {model, seed}}
///
/// `seed_override` replaces the document's seed before anything is built.
RunConfig parse_config(const nlohmann::json& doc, std::optional<std::uint64_t> seed_override = {});
RunConfig load_config(const std::filesystem::path& path, std::optional<std::uint64_t> seed_override = {});

nlohmann::json scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const nlohmann::json& doc);

nlohmann::json optimizer_to_json(const OptimizerConfig& c);
OptimizerConfig optimizer_from_json(const nlohmann::json& j, std::uint64_t seed);

nlohmann::json config_to_json(const RunConfig& c);

}  // namespace aerolink
