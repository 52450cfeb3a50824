#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "losfc/sim.hpp"

namespace losfc::cli {

/// "1" for the leader loop, "2_1", "3_2", ... for the pairs.
std::string loop_label(std::size_t loop);

/// Fixed, ordered column names of each CSV file.
std::vector<std::string> states_header(std::size_t n);
std::vector<std::string> errors_header(std::size_t n);
std::vector<std::string> controls_header(std::size_t n);
std::vector<std::string> lyapunov_header(std::size_t n);

/// 17 significant digits, locale independent, so logs reproduce bit-exact doubles.
std::string format_number(double v);

nlohmann::json summary_json(const Scenario& s, const RunLog& log, double wall_seconds);

/// Writes states.csv, errors.csv, controls.csv, lyapunov.csv and
/// summary.json into dir, creating it if needed. Throws IoError.
void write_run(const std::filesystem::path& dir, const Scenario& s, const RunLog& log, double wall_seconds);

}  // namespace losfc::cli
