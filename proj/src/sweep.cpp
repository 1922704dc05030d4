#include "aerolink/sweep.hpp"

#include <exception>
#include <fstream>

#include <omp.h>

namespace aerolink {

using nlohmann::json;

const char* to_string(SweepVariable v) {
  return v == SweepVariable::InterferenceThresholdDbm ? "interference_threshold_dbm" : "ue_altitude_m";
}

std::vector<double> default_sweep_values(SweepVariable v) {
  std::vector<double> out;
  if (v == SweepVariable::InterferenceThresholdDbm) {
    for (int dbm = -50; dbm <= -10; dbm += 5) out.push_back(dbm);
  } else {
    for (int h = 0; h <= 500; h += 25) out.push_back(h);
  }
  return out;
}

SweepSpec parse_sweep_spec(const json& j) {
  if (!j.is_object()) throw ConfigError("sweep spec must be a JSON object");
  SweepSpec spec;
  try {
    const std::string var = j.at("variable").get<std::string>();
    if (var == "interference_threshold_dbm") spec.variable = SweepVariable::InterferenceThresholdDbm;
    else if (var == "ue_altitude_m") spec.variable = SweepVariable::UeAltitudeM;
    else throw ConfigError("unknown sweep variable '" + var + "'");

    spec.values = j.contains("values") ? j.at("values").get<std::vector<double>>()
                                       : default_sweep_values(spec.variable);
    if (j.contains("masks")) {
      spec.masks.clear();
      for (const auto& m : j.at("masks")) spec.masks.push_back(parse_axis_mask(m.get<std::string>()));
    }
    if (j.contains("optimizer")) spec.optimizer_overrides = j.at("optimizer");
  } catch (const json::exception& e) {
    throw ConfigError(std::string("sweep spec: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("sweep spec: ") + e.what());
  }

  if (spec.values.empty()) throw ConfigError("sweep values must be nonempty");
  if (spec.masks.empty()) throw ConfigError("sweep masks must be nonempty");
  if (spec.values.size() > 1) {
    const bool up = spec.values[1] > spec.values[0];
    for (std::size_t i = 1; i < spec.values.size(); ++i) {
      const bool ok = up ? spec.values[i] > spec.values[i - 1] : spec.values[i] < spec.values[i - 1];
      if (!ok) throw ConfigError("sweep values must be strictly monotone");
    }
  }
  if (spec.variable == SweepVariable::UeAltitudeM)
    for (double h : spec.values)
      if (!(h >= 0.0)) throw ConfigError("ue altitude values must be nonnegative");
  if (!spec.optimizer_overrides.is_object()) throw ConfigError("sweep optimizer overrides must be an object");
  return spec;
}

SweepSpec load_sweep_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read sweep spec " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("malformed JSON in " + path.string() + ": " + e.what());
  }
  return parse_sweep_spec(j);
}

std::vector<SweepPoint> sweep_points(const SweepSpec& spec) {
  std::vector<SweepPoint> out;
  for (double v : spec.values)
    for (AxisMask m : spec.masks) out.push_back({v, m});
  return out;
}

RunConfig point_config(const RunConfig& base, const SweepSpec& spec, const SweepPoint& p) {
  RunConfig rc = base;
  Scenario& s = rc.scenario;
  if (spec.variable == SweepVariable::InterferenceThresholdDbm) {
    s.i_max_w.assign(s.num_interferers(), dbm_to_watts(p.value));
  } else {
    s.primary.back().z = p.value;
    s.ue_aerial = p.value > 0.0;
  }
  if (!spec.optimizer_overrides.empty()) {
    json merged = optimizer_to_json(base.optimizer);
    merged.merge_patch(spec.optimizer_overrides);
    try {
      rc.optimizer = optimizer_from_json(merged, s.seed);
    } catch (const json::exception& e) {
      throw ConfigError(std::string("sweep optimizer overrides: ") + e.what());
    }
  }
  rc.optimizer.trajectory.mask = p.mask;
  return rc;
}

std::vector<SweepRow> run_sweep(const RunConfig& base, const SweepSpec& spec, int jobs) {
  const std::vector<SweepPoint> points = sweep_points(spec);
  std::vector<RunConfig> configs;
  configs.reserve(points.size());
  for (const SweepPoint& p : points) {
    RunConfig rc = point_config(base, spec, p);
    require_valid(rc.scenario);
    configs.push_back(std::move(rc));
  }

  std::vector<SweepRow> rows(points.size());
  const int workers = jobs > 0 ? jobs : omp_get_max_threads();
  const long count = static_cast<long>(points.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
  for (long i = 0; i < count; ++i) {
    try {
      const RunHistory h = run(configs[i].scenario, configs[i].optimizer);
      rows[i] = {points[i].value, points[i].mask, h.final_record().flow,
                 static_cast<int>(h.iterations.size()), h.termination};
    } catch (...) {
#pragma omp critical(aerolink_sweep_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

}  // namespace aerolink
