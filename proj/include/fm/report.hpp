#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fm/experiment.hpp"
#include "fm/projection.hpp"

namespace fm {

// Assemble the self-contained experiment report: echoed input description,
// parameters, per-scale tables, adversary table, verdicts. The timestamp and
// wall-clock fields are the only ones excluded from byte comparisons.
nlohmann::ordered_json experiment_report_json(const ExperimentConfig& cfg,
                                              const ExperimentResult& res,
                                              const nlohmann::ordered_json& input_echo,
                                              double wall_ms);

// Drop volatile fields (timestamp, wall_clock_ms) for determinism diffs.
nlohmann::ordered_json strip_volatile(nlohmann::ordered_json j);

void write_json_file(const std::string& path, const nlohmann::ordered_json& j);

std::string csv_correlation_profile(const std::vector<double>& terms);
std::string csv_angle_sweep(const std::vector<AngleSweepRow>& rows);
std::string csv_line_bins(const Grid1D& line);
std::string csv_scale_table(const std::vector<ScaleRow>& rows);

// Human-readable digest of a stored experiment report; returns false when any
// verdict in the file is false.
bool summarize_report(const std::string& path, std::string& out);

}  // namespace fm
