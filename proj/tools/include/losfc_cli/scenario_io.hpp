#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "losfc/scenario.hpp"

namespace losfc::cli {

/// File could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Scenario <-> JSON. Spacecraft are numbered from 1 in files. Schema or
/// value errors raise ValidationError naming the offending field.
Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const Scenario& s);

/// Throws IoError if the file cannot be read, ValidationError for malformed
/// JSON (with line and column) or schema violations.
Scenario load_scenario(const std::filesystem::path& path);
void save_scenario(const Scenario& s, const std::filesystem::path& path);

}  // namespace losfc::cli
