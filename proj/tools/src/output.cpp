#include "losfc_cli/output.hpp"

#include <charconv>
#include <fstream>

#include "losfc_cli/scenario_io.hpp"

namespace losfc::cli {

using nlohmann::json;

std::string loop_label(std::size_t loop) {
  return loop == 0 ? std::string("1") : std::to_string(loop + 1) + "_" + std::to_string(loop);
}

std::string format_number(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

namespace {

std::string body(std::size_t i) { return std::to_string(i + 1); }

std::string error_prefix(std::size_t loop) { return loop == 0 ? "eR_" : "eQ_"; }

class CsvFile {
 public:
  CsvFile(const std::filesystem::path& path, const std::vector<std::string>& header) : path_(path), out_(path) {
    if (!out_) throw IoError("cannot write '" + path.string() + "'");
    for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
    out_ << '\n';
  }

  CsvFile& operator<<(double v) {
    if (!first_) out_ << ',';
    out_ << format_number(v);
    first_ = false;
    return *this;
  }

  CsvFile& operator<<(const Vec3& v) { return *this << v.x() << v.y() << v.z(); }

  void end_row() {
    out_ << '\n';
    first_ = true;
  }

  void close() {
    out_.close();
    if (!out_) throw IoError("failed writing '" + path_.string() + "'");
  }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  bool first_ = true;
};

json history(const NormHistory& h) { return json{{"initial", h.initial}, {"peak", h.peak}, {"final", h.final}}; }

}  // namespace

std::vector<std::string> states_header(std::size_t n) {
  std::vector<std::string> h{"t"};
  for (std::size_t i = 0; i < n; ++i) {
    const std::string b = body(i);
    for (int r = 1; r <= 3; ++r) {
      for (int c = 1; c <= 3; ++c) h.push_back("R" + std::to_string(r) + std::to_string(c) + "_" + b);
    }
    for (const char* q : {"x", "v", "Omega"}) {
      for (const char* axis : {"_x_", "_y_", "_z_"}) h.push_back(std::string(q) + axis + b);
    }
  }
  return h;
}

std::vector<std::string> errors_header(std::size_t n) {
  std::vector<std::string> h{"t"};
  for (std::size_t l = 0; l < n; ++l) {
    const std::string s = loop_label(l);
    h.push_back(error_prefix(l) + s);
    for (const char* q : {"eOmega_", "ex_", "ev_", "Psi_"}) h.push_back(q + s);
  }
  return h;
}

std::vector<std::string> controls_header(std::size_t n) {
  std::vector<std::string> h{"t"};
  for (std::size_t i = 0; i < n; ++i) {
    const std::string b = body(i);
    for (const char* q : {"u", "f"}) {
      for (const char* axis : {"_x", "_y", "_z"}) h.push_back(q + b + axis);
    }
  }
  return h;
}

std::vector<std::string> lyapunov_header(std::size_t n) {
  std::vector<std::string> h{"t", "V_total"};
  for (const char* q : {"V_r_", "V_t_", "minM_", "minN_"}) {
    for (std::size_t l = 0; l < n; ++l) h.push_back(q + loop_label(l));
  }
  return h;
}

json summary_json(const Scenario& s, const RunLog& log, double wall_seconds) {
  const RunSummary& r = log.summary;
  json loops = json::array();
  for (std::size_t l = 0; l < r.loops.size(); ++l) {
    const LoopSummary& ls = r.loops[l];
    loops.push_back(json{
        {"loop", loop_label(l)},
        {"attitude_error", history(ls.attitude_error)},
        {"e_Omega", history(ls.e_Omega)},
        {"e_x", history(ls.e_x)},
        {"e_v", history(ls.e_v)},
        {"Psi", history(ls.Psi)},
    });
  }
  return json{
      {"scenario", s.name},
      {"spacecraft", s.size()},
      {"dt", s.dt},
      {"t_final", s.t_final},
      {"decimation", s.decimation},
      {"steps", r.steps},
      {"samples", log.samples.size()},
      {"wall_seconds", wall_seconds},
      {"loops", loops},
      {"lyapunov_increases", r.lyapunov_increases},
      {"indefinite_samples", r.indefinite_samples},
      {"B_Omega_d", r.B_Omega_d},
      {"B_mu", r.B_mu},
      {"max_moment", r.max_moment},
      {"max_force", r.max_force},
  };
}

void write_run(const std::filesystem::path& dir, const Scenario& s, const RunLog& log, double wall_seconds) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());

  const std::size_t n = s.size();
  CsvFile states(dir / "states.csv", states_header(n));
  CsvFile errors(dir / "errors.csv", errors_header(n));
  CsvFile controls(dir / "controls.csv", controls_header(n));
  CsvFile lyapunov(dir / "lyapunov.csv", lyapunov_header(n));

  for (const LogSample& sample : log.samples) {
    states << sample.t;
    for (const RigidBodyState& b : sample.states) {
      for (int r = 0; r < 3; ++r) states << Vec3(b.R.matrix().row(r));
      states << b.x << b.v << b.Omega;
    }
    states.end_row();

    errors << sample.t;
    controls << sample.t;
    for (const LoopEvaluation& e : sample.chain.loops) {
      errors << e.attitude_error.norm() << e.att.e_Omega.norm() << e.pos.e_x.norm() << e.pos.e_v.norm() << e.att.Psi;
      controls << e.input.u << e.input.f;
    }
    errors.end_row();
    controls.end_row();

    const LyapunovReport& ly = sample.diagnostics.lyapunov;
    lyapunov << sample.t << ly.V_total;
    for (const LoopLyapunov& l : ly.loops) lyapunov << l.V_r;
    for (const LoopLyapunov& l : ly.loops) lyapunov << l.V_t;
    for (const LoopLyapunov& l : ly.loops) lyapunov << l.min_eig_M;
    for (const LoopLyapunov& l : ly.loops) lyapunov << l.min_eig_N;
    lyapunov.end_row();
  }
  states.close();
  errors.close();
  controls.close();
  lyapunov.close();

  const auto path = dir / "summary.json";
  std::ofstream out(path);
  out << summary_json(s, log, wall_seconds).dump(2) << '\n';
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace losfc::cli
