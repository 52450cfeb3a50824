#include "losfc_cli/commands.hpp"

#include <chrono>
#include <filesystem>

#include <CLI11.hpp>

#include "losfc/presets.hpp"
#include "losfc/sim.hpp"
#include "losfc_cli/output.hpp"
#include "losfc_cli/scenario_io.hpp"

namespace losfc::cli {

Scenario resolve_preset(const std::string& name) {
  if (name == "two-spacecraft") return two_spacecraft_tracking();
  if (name == "four-spacecraft") return four_spacecraft_sync();
  for (const std::string& p : preset_names()) {
    if (name == p) return preset(name);
  }
  throw UsageError("unknown preset '" + name + "' (see list-presets)");
}

Scenario load_configured(const CliConfig& c) {
  Scenario s = c.scenario ? load_scenario(*c.scenario) : resolve_preset(c.preset.value_or(""));
  if (c.dt) s.dt = *c.dt;
  if (c.t_final) s.t_final = *c.t_final;
  if (c.decimation) s.decimation = *c.decimation;
  return s;
}

std::vector<std::string> stability_precheck(const Scenario& s) {
  const std::vector<RigidBodyState> states = s.initial_states();
  const ChainEvaluation chain = evaluate_chain(0.0, states, s);
  const SampleDiagnostics d = diagnose(chain, s);
  std::vector<std::string> failures;
  for (std::size_t l = 0; l < d.lyapunov.loops.size(); ++l) {
    const LoopLyapunov& ly = d.lyapunov.loops[l];
    if (ly.positive_definite()) continue;
    failures.push_back("loop " + loop_label(l) + ": min eig M = " + format_number(ly.min_eig_M) +
                       ", min eig N = " + format_number(ly.min_eig_N));
  }
  return failures;
}

namespace {

void report(const ValidationError& e, std::ostream& err) {
  err << "validation failed:\n";
  for (const ValidationIssue& i : e.issues()) {
    err << "  " << i.field << " [" << i.rule << "]: " << i.message << '\n';
  }
}

// Maps the library's exceptions to exit codes.
template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ValidationError& e) {
    report(e, err);
    return kValidation;
  } catch (const SimulationError& e) {
    err << "simulation aborted at t = " << format_number(e.time()) << " s: " << e.what() << '\n';
    return kRuntime;
  } catch (const GeometryError& e) {
    err << "degenerate geometry: " << e.what() << '\n';
    return kRuntime;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const UsageError& e) {
    err << "usage: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << '\n';
    return kValidation;
  }
}

}  // namespace

int cmd_run(const CliConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scenario s = load_configured(c);
    const auto start = std::chrono::steady_clock::now();
    const RunLog log = run(s);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_run(c.out, s, log, wall);

    out << s.name << ": " << log.summary.steps << " steps, " << log.samples.size() << " samples, "
        << format_number(wall) << " s wall\n";
    for (std::size_t l = 0; l < log.summary.loops.size(); ++l) {
      const LoopSummary& ls = log.summary.loops[l];
      out << "  loop " << loop_label(l) << ": |e_att| " << format_number(ls.attitude_error.final)
          << "  |e_x| " << format_number(ls.e_x.final) << "  |e_v| " << format_number(ls.e_v.final) << '\n';
    }
    if (c.verbosity > 0) {
      out << "  lyapunov increases " << log.summary.lyapunov_increases << ", indefinite samples "
          << log.summary.indefinite_samples << ", B_Omega_d " << format_number(log.summary.B_Omega_d)
          << ", B_mu " << format_number(log.summary.B_mu) << '\n';
    }
    out << "wrote " << c.out.string() << '\n';
    return static_cast<int>(kSuccess);
  });
}

int cmd_validate(const CliConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scenario s = load_configured(c);
    const std::vector<ValidationIssue> issues = validate(s);
    for (const ValidationIssue& i : issues) {
      out << "FAIL " << i.field << " [" << i.rule << "]: " << i.message << '\n';
    }
    if (!issues.empty()) return static_cast<int>(kValidation);

    // The matrices bound the Lyapunov derivative only locally; a large
    // initial error may leave them indefinite without the run diverging.
    const std::vector<std::string> precheck = stability_precheck(s);
    for (const std::string& line : precheck) out << (c.strict ? "FAIL " : "WARN ") << line << '\n';
    if (c.strict && !precheck.empty()) return static_cast<int>(kValidation);

    out << "OK " << s.name << ": " << s.size() << " spacecraft, "
        << (precheck.empty() ? "M and N positive definite at t = 0" : "M or N indefinite at t = 0") << '\n';
    return static_cast<int>(kSuccess);
  });
}

int cmd_export_preset(const CliConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    save_scenario(resolve_preset(c.preset.value_or("")), c.out);
    out << "wrote " << c.out.string() << '\n';
    return static_cast<int>(kSuccess);
  });
}

namespace {

void add_source(CLI::App& sub, CliConfig& c) {
  auto* preset = sub.add_option("--preset", c.preset, "two-spacecraft or four-spacecraft");
  auto* file = sub.add_option("--scenario", c.scenario, "scenario JSON file");
  preset->excludes(file);
  file->excludes(preset);
  sub.callback([preset, file] {
    if (preset->count() + file->count() == 0) throw CLI::RequiredError("--preset or --scenario");
  });
}

void add_overrides(CLI::App& sub, CliConfig& c) {
  sub.add_option("--dt", c.dt, "integration step [s]")->check(CLI::PositiveNumber);
  sub.add_option("--tf", c.t_final, "final time [s]")->check(CLI::PositiveNumber);
  sub.add_option("--decimation", c.decimation, "log every n-th step")->check(CLI::PositiveNumber);
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Line-of-sight formation control simulator", "losfc"};
  app.require_subcommand(1);
  CliConfig c;

  auto* run_cmd = app.add_subcommand("run", "simulate a preset or scenario file and write CSV logs");
  add_source(*run_cmd, c);
  add_overrides(*run_cmd, c);
  run_cmd->add_option("--out", c.out, "output directory")->required();
  run_cmd->add_flag("-v,--verbose", c.verbosity, "print diagnostics");

  auto* validate_cmd = app.add_subcommand("validate", "check a scenario without running it");
  add_source(*validate_cmd, c);
  add_overrides(*validate_cmd, c);
  validate_cmd->add_flag("--strict", c.strict, "fail when M or N is indefinite at t = 0");

  auto* export_cmd = app.add_subcommand("export-preset", "write a preset as a scenario file");
  export_cmd->add_option("name", c.preset, "preset name")->required();
  export_cmd->add_option("--out", c.out, "scenario JSON file")->required();

  auto* list_cmd = app.add_subcommand("list-presets", "print the preset names");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n' << "run with --help for usage\n";
    return kUsage;
  }

  if (*run_cmd) return cmd_run(c, out, err);
  if (*validate_cmd) return cmd_validate(c, out, err);
  if (*export_cmd) return cmd_export_preset(c, out, err);
  if (*list_cmd) {
    out << "two-spacecraft (two_spacecraft_tracking)\nfour-spacecraft (four_spacecraft_sync)\n";
  }
  return kSuccess;
}

}  // namespace losfc::cli
