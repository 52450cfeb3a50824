#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "losfc/scenario.hpp"

namespace losfc::cli {

enum ExitCode : int { kSuccess = 0, kUsage = 1, kValidation = 2, kRuntime = 3, kIo = 4 };

struct CliConfig {
  std::string subcommand;
  std::optional<std::string> preset;
  std::optional<std::filesystem::path> scenario;
  std::filesystem::path out;
  std::optional<double> dt;
  std::optional<double> t_final;
  std::optional<std::size_t> decimation;
  bool strict = false;
  int verbosity = 0;
};

/// Bad command line that the argument parser cannot catch, such as an
/// unknown preset name.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Accepts "two-spacecraft", "four-spacecraft" and the full preset names.
/// Throws UsageError for anything else.
Scenario resolve_preset(const std::string& name);

/// The scenario named by the config, with dt / t_final / decimation
/// overrides applied.
Scenario load_configured(const CliConfig& c);

/// The t = 0 check that every loop's M and N matrices are positive definite.
/// Returns one line per loop that fails.
std::vector<std::string> stability_precheck(const Scenario& s);

int cmd_run(const CliConfig& c, std::ostream& out, std::ostream& err);
int cmd_validate(const CliConfig& c, std::ostream& out, std::ostream& err);
int cmd_export_preset(const CliConfig& c, std::ostream& out, std::ostream& err);

/// Parses arguments and dispatches; returns the process exit code.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace losfc::cli
