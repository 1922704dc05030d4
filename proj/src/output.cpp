#include "aerolink/output.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace aerolink {

using nlohmann::json;

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json position_json(const Position& p) { return json::array({p.x, p.y, p.z}); }

void history_row(std::ostringstream& os, const IterationRecord& r, const Scenario& s) {
  os << r.iteration << ',' << format_number(r.flow) << ',' << format_number(r.lambda2);
  for (const Position& p : r.uav_positions)
    os << ',' << format_number(p.x) << ',' << format_number(p.y) << ',' << format_number(p.z);
  for (std::size_t k = 0; k < s.num_uavs(); ++k) os << ',' << format_number(r.powers[s.uav_node(k)]);
  os << ',' << format_number(r.min_margin_w) << '\n';
}

}  // namespace

std::string history_csv(const RunHistory& h, const Scenario& s) {
  std::ostringstream os;
  os << "iteration,R_bits_per_s,lambda2";
  for (std::size_t k = 1; k <= s.num_uavs(); ++k) os << ",uav" << k << "_x,uav" << k << "_y,uav" << k << "_z";
  for (std::size_t k = 1; k <= s.num_uavs(); ++k) os << ",uav" << k << "_power_w";
  os << ",min_interference_margin_w\n";
  for (std::size_t t = 0; t < h.size(); ++t) history_row(os, h.at(t), s);
  return os.str();
}

json trajectory_json(const RunHistory& h, const Scenario& s) {
  json uavs = json::array();
  for (std::size_t k = 0; k < s.num_uavs(); ++k) {
    json series = json::array();
    for (std::size_t t = 0; t < h.size(); ++t) series.push_back(position_json(h.at(t).uav_positions[k]));
    uavs.push_back({{"uav", k + 1}, {"positions", series}});
  }
  json interferers = json::array();
  for (const Position& p : s.interferers) interferers.push_back(position_json(p));
  json iterations = json::array();
  for (std::size_t t = 0; t < h.size(); ++t) iterations.push_back(h.at(t).iteration);
  return {{"iterations", iterations},
          {"base_station", position_json(s.primary.front())},
          {"user_equipment", position_json(s.primary.back())},
          {"interferers", interferers},
          {"uavs", uavs}};
}

json summary_json(const RunHistory& h, const RunConfig& c) {
  const IterationRecord& last = h.final_record();
  bool interference_ok = true;
  for (const IterationRecord& r : h.iterations) interference_ok = interference_ok && r.interference_ok;
  return {{"final_flow_bits_per_s", last.flow},
          {"final_lambda2", last.lambda2},
          {"initial_flow_bits_per_s", h.initial.flow},
          {"iterations", h.iterations.size()},
          {"termination", to_string(h.termination)},
          {"interference_ok", interference_ok},
          {"min_interference_margin_w", finite_or_null(last.min_margin_w)},
          {"seed", c.scenario.seed},
          {"config", config_to_json(c)}};
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "sweep_value,axis_mask,final_flow_bits_per_s,iterations,terminated\n";
  for (const SweepRow& r : rows)
    os << format_number(r.value) << ',' << to_string(r.mask) << ',' << format_number(r.final_flow) << ','
       << r.iterations << ',' << to_string(r.terminated) << '\n';
  return os.str();
}

void write_files_atomically(const std::filesystem::path& dir,
                            const std::vector<std::pair<std::string, std::string>>& files) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::vector<fs::path> staged;
  std::vector<fs::path> placed;
  auto cleanup = [&] {
    std::error_code ec;
    for (const auto& p : staged) fs::remove(p, ec);
    for (const auto& p : placed) fs::remove(p, ec);
  };
  try {
    for (const auto& [name, content] : files) {
      const fs::path tmp = dir / (name + ".tmp");
      staged.push_back(tmp);
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out << content;
      out.close();
      if (!out) throw std::runtime_error("failed to write " + tmp.string());
    }
    for (std::size_t i = 0; i < files.size(); ++i) {
      const fs::path target = dir / files[i].first;
      fs::rename(staged[i], target);
      placed.push_back(target);
    }
  } catch (...) {
    cleanup();
    throw;
  }
}

}  // namespace aerolink
