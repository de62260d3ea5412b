#include "fm/report.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "fm/version.hpp"

namespace fm {

using nlohmann::ordered_json;

nlohmann::ordered_json experiment_report_json(const ExperimentConfig& cfg,
                                              const ExperimentResult& res,
                                              const ordered_json& input_echo,
                                              double wall_ms) {
  ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["tool"] = kToolName;
  j["tool_version"] = kToolVersion;
  j["timestamp"] = std::chrono::duration_cast<std::chrono::seconds>(
                       std::chrono::system_clock::now().time_since_epoch())
                       .count();
  j["wall_clock_ms"] = wall_ms;
  j["input"] = input_echo;

  ordered_json params;
  params["t"] = cfg.t;
  params["eps"] = cfg.eps;
  params["delta"] = res.delta;
  params["s"] = cfg.s;
  params["s1"] = res.s1;
  params["j0"] = cfg.j0;
  params["n_angles"] = cfg.n_angles;
  params["subdiv"] = cfg.subdiv;
  params["seed"] = cfg.seed;
  params["separation"] = cfg.separation;
  params["annulus_levels"] = cfg.annulus_levels;
  params["n_random_subsets"] = cfg.n_random_subsets;
  params["candidates"] = cfg.candidates;
  j["params"] = std::move(params);

  ordered_json sched;
  sched["values"] = res.schedule;
  sched["vantage_admissible_from_j0"] = res.vantage_admissible;
  sched["min_vantage_j1"] = res.min_vantage_j1;
  j["schedule"] = std::move(sched);

  ordered_json frost;
  frost["c"] = res.frostman_c;
  frost["ok"] = res.frostman_ok;
  j["frostman"] = std::move(frost);

  ordered_json vantage;
  vantage["y"] = res.vantage;
  vantage["a1_mass"] = res.vantage_mass;
  vantage["a1_leaves"] = res.a1_leaves;
  j["vantage"] = std::move(vantage);

  ordered_json scales = ordered_json::array();
  for (const auto& r : res.scales) {
    ordered_json row;
    row["j"] = r.j;
    row["m"] = r.m;
    row["d"] = r.d;
    row["good_mass"] = r.good_mass;
    row["bad_mass"] = r.bad_mass;
    row["light_mass"] = r.light_mass;
    row["mean_local_entropy"] = r.mean_local_entropy;
    if (!r.good_mass_exact.empty()) {
      row["good_mass_exact"] = r.good_mass_exact;
      row["bad_mass_exact"] = r.bad_mass_exact;
    }
    scales.push_back(std::move(row));
  }
  j["per_scale"] = std::move(scales);

  ordered_json advs = ordered_json::array();
  for (const auto& a : res.adversaries) {
    ordered_json row;
    row["kind"] = a.kind;
    row["param"] = a.param;
    row["mass_fraction"] = a.mass_fraction;
    row["entropy_bits"] = a.entropy_bits;
    row["normalized"] = a.normalized;
    row["qualifies"] = a.qualifies;
    if (!a.mass_exact.empty()) row["mass_exact"] = a.mass_exact;
    advs.push_back(std::move(row));
  }
  j["adversaries"] = std::move(advs);

  ordered_json verdicts;
  verdicts["frostman_ok"] = res.frostman_ok;
  verdicts["worst_adversary"] = res.worst_adversary;
  verdicts["worst_normalized_entropy"] = res.worst_normalized_entropy;
  verdicts["entropy_ge_t"] = res.verdict;
  j["verdicts"] = std::move(verdicts);
  return j;
}

nlohmann::ordered_json strip_volatile(ordered_json j) {
  j.erase("timestamp");
  j.erase("wall_clock_ms");
  return j;
}

void write_json_file(const std::string& path, const ordered_json& j) {
  std::ofstream out(path);
  if (!out) throw format_error("cannot open '" + path + "' for writing");
  out << j.dump(2) << "\n";
}

std::string csv_correlation_profile(const std::vector<double>& terms) {
  std::ostringstream os;
  os << "j,T_j\n";
  for (std::size_t i = 0; i < terms.size(); ++i) os << (i + 1) << "," << terms[i] << "\n";
  return os.str();
}

std::string csv_angle_sweep(const std::vector<AngleSweepRow>& rows) {
  std::ostringstream os;
  os << "theta,sobolev,l2\n";
  for (const auto& r : rows) os << r.theta << "," << r.sobolev << "," << r.l2 << "\n";
  return os.str();
}

std::string csv_line_bins(const Grid1D& line) {
  std::ostringstream os;
  double w = std::exp2(-line.level());
  os << "bin_lo,mass\n";
  for (std::size_t i = 0; i < line.masses().size(); ++i) {
    if (line.masses()[i] != 0)
      os << (static_cast<double>(line.lo() + static_cast<long>(i)) * w) << ","
         << line.masses()[i] << "\n";
  }
  return os.str();
}

std::string csv_scale_table(const std::vector<ScaleRow>& rows) {
  std::ostringstream os;
  os << "j,m_j,d_j,good_mass,bad_mass,light_mass,mean_local_entropy\n";
  for (const auto& r : rows) {
    os << r.j << "," << r.m << "," << r.d << "," << r.good_mass << "," << r.bad_mass << ","
       << r.light_mass << "," << r.mean_local_entropy << "\n";
  }
  return os.str();
}

bool summarize_report(const std::string& path, std::string& out) {
  std::ifstream in(path);
  if (!in) throw format_error("cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw format_error(std::string("report file: ") + e.what());
  }
  std::ostringstream os;
  os << "tool: " << j.value("tool", "?") << " " << j.value("tool_version", "?") << "\n";
  bool ok = true;
  if (j.contains("verdicts")) {
    for (const auto& [key, val] : j["verdicts"].items()) {
      os << "verdict " << key << ": " << val.dump() << "\n";
      if (val.is_boolean() && !val.get<bool>()) ok = false;
    }
  }
  if (j.contains("vantage")) {
    os << "vantage: " << j["vantage"].dump() << "\n";
  }
  if (j.contains("per_scale")) {
    os << "scales: " << j["per_scale"].size() << "\n";
  }
  out = os.str();
  return ok;
}

}  // namespace fm
