#include "losfc_cli/scenario_io.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <type_traits>

namespace losfc::cli {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& rule, const std::string& msg) {
  throw ValidationError({ValidationIssue{field, rule, msg}});
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const json& object(const json& j, const std::string& path, std::initializer_list<const char*> keys) {
  if (!j.is_object()) fail(path, "type", "expected an object");
  for (const auto& [k, v] : j.items()) {
    bool known = false;
    for (const char* key : keys) known = known || k == key;
    if (!known) fail(join(path, k), "unknown_field", "field is not part of the scenario schema");
  }
  return j;
}

const json& member(const json& j, const std::string& path, const char* key) {
  if (!j.contains(key)) fail(join(path, key), "required", "missing required field");
  return j.at(key);
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "type", "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "finite", "value must be finite");
  return v;
}

double number(const json& j, const std::string& path, const char* key) {
  return number(member(j, path, key), join(path, key));
}

double number_or(const json& j, const std::string& path, const char* key, double fallback) {
  return j.contains(key) ? number(j.at(key), join(path, key)) : fallback;
}

double positive(const json& j, const std::string& path, const char* key) {
  const double v = number(j, path, key);
  if (!(v > 0.0)) fail(join(path, key), "positive", "value must be positive");
  return v;
}

Vec3 vec3(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3) fail(path, "type", "expected an array of 3 numbers");
  return Vec3(number(j[0], at(path, 0)), number(j[1], at(path, 1)), number(j[2], at(path, 2)));
}

Mat3 mat3(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3) fail(path, "type", "expected a 3x3 array (rows)");
  Mat3 m;
  for (std::size_t r = 0; r < 3; ++r) m.row(static_cast<Eigen::Index>(r)) = vec3(j[r], at(path, r)).transpose();
  return m;
}

UnitVec3 direction(const json& j, const std::string& path) {
  const Vec3 v = vec3(j, path);
  if (!(v.norm() > 0.0)) fail(path, "nonzero", "direction must be nonzero");
  // keep exact unit vectors bit-for-bit so files round-trip
  return std::abs(v.norm() - 1.0) <= 1e-12 ? UnitVec3::from_unit(v) : UnitVec3::normalize(v);
}

std::size_t spacecraft_index(const json& j, const std::string& path, std::size_t n) {
  if (!j.is_number_integer()) fail(path, "type", "expected a spacecraft number (1-based integer)");
  const auto i = j.get<long long>();
  if (i < 1 || static_cast<std::size_t>(i) > n) {
    fail(path, "index_in_range", "spacecraft number must lie in 1.." + std::to_string(n));
  }
  return static_cast<std::size_t>(i - 1);
}

Signal signal(const json& j, const std::string& path) {
  if (j.is_number()) return Signal::constant(number(j, path));
  object(j, path, {"constant", "sinusoid"});
  if (j.contains("constant")) return Signal::constant(number(j, path, "constant"));
  if (!j.contains("sinusoid")) fail(path, "signal_form", "expected a number, {\"constant\"} or {\"sinusoid\"}");
  const std::string p = join(path, "sinusoid");
  const json& s = object(j.at("sinusoid"), p, {"amplitude", "frequency", "phase", "offset"});
  return Signal::sinusoid(number(s, p, "amplitude"), number(s, p, "frequency"),
                          number_or(s, p, "phase", 0.0), number_or(s, p, "offset", 0.0));
}

std::array<Signal, 3> signals(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3) fail(path, "type", "expected an array of 3 signals");
  return {signal(j[0], at(path, 0)), signal(j[1], at(path, 1)), signal(j[2], at(path, 2))};
}

EulerTrajectory euler(const json& j, const std::string& path) {
  object(j, path, {"euler321", "h"});
  EulerTrajectory t{signals(member(j, path, "euler321"), join(path, "euler321"))};
  if (j.contains("h")) t.h = positive(j, path, "h");
  return t;
}

PositionTrajectory position(const json& j, const std::string& path) {
  return PositionTrajectory{signals(j, path)};
}

template <class Gains>
Gains los_gains(const json& j, const std::string& path, const char* k1, const char* k2) {
  object(j, path, {k1, k2});
  const double a = positive(j, path, k1);
  const double b = positive(j, path, k2);
  if (a == b) fail(path, "gains_distinct", std::string(k1) + " and " + k2 + " must differ");
  return Gains(a, b);
}

LoopGains loop_gains(const json& j, const std::string& path) {
  object(j, path, {"k_Omega", "k_x", "k_v", "c_r", "c_t"});
  const double c_r = j.contains("c_r") ? positive(j, path, "c_r") : 0.01;
  const double c_t = j.contains("c_t") ? positive(j, path, "c_t") : 0.01;
  return LoopGains(positive(j, path, "k_Omega"), positive(j, path, "k_x"), positive(j, path, "k_v"),
                   c_r, c_t);
}

SpacecraftSpec spacecraft(const json& j, const std::string& path) {
  object(j, path, {"mass", "inertia", "initial"});
  const double mass = positive(j, path, "mass");
  const Mat3 J = mat3(member(j, path, "inertia"), join(path, "inertia"));
  std::optional<BodyParams> params;
  try {
    params.emplace(mass, J);
  } catch (const std::invalid_argument& e) {
    fail(join(path, "inertia"), "symmetric_positive_definite", e.what());
  }

  const std::string ip = join(path, "initial");
  const json& init = object(member(j, path, "initial"), ip,
                            {"attitude", "position", "velocity", "angular_velocity"});
  RigidBodyState s;
  if (init.contains("attitude")) {
    const Mat3 R = mat3(init.at("attitude"), join(ip, "attitude"));
    if (!is_rotation(R)) {
      fail(join(ip, "attitude"), "rotation", "attitude must be a rotation matrix (orthonormal, det +1)");
    }
    s.R = Rotation::from_matrix(R);
  }
  s.x = vec3(member(init, ip, "position"), join(ip, "position"));
  if (init.contains("velocity")) s.v = vec3(init.at("velocity"), join(ip, "velocity"));
  if (init.contains("angular_velocity")) {
    s.Omega = vec3(init.at("angular_velocity"), join(ip, "angular_velocity"));
  }
  return SpacecraftSpec{*params, s};
}

BeaconSpec beacon(const json& j, const std::string& path, std::size_t n) {
  object(j, path, {"direction", "point", "spacecraft"});
  if (j.size() != 1) fail(path, "one_of", "give exactly one of direction, point or spacecraft");
  if (j.contains("direction")) return DistantBeacon{direction(j.at("direction"), join(path, "direction"))};
  if (j.contains("point")) return FixedPoint{vec3(j.at("point"), join(path, "point"))};
  return SpacecraftRef{spacecraft_index(j.at("spacecraft"), join(path, "spacecraft"), n)};
}

CommonObject common_object(const json& j, const std::string& path, std::size_t n) {
  object(j, path, {"point", "spacecraft"});
  if (j.size() != 1) fail(path, "one_of", "give exactly one of point or spacecraft");
  if (j.contains("point")) return FixedPoint{vec3(j.at("point"), join(path, "point"))};
  return SpacecraftRef{spacecraft_index(j.at("spacecraft"), join(path, "spacecraft"), n)};
}

json to_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

json to_json(const Mat3& m) {
  return json::array({to_json(Vec3(m.row(0))), to_json(Vec3(m.row(1))), to_json(Vec3(m.row(2)))});
}

json to_json(const Signal& s) {
  if (s.kind() == Signal::Kind::constant) return s.offset();
  return json{{"sinusoid",
               {{"amplitude", s.amplitude()},
                {"frequency", s.frequency()},
                {"phase", s.phase()},
                {"offset", s.offset()}}}};
}

json to_json(const std::array<Signal, 3>& s) { return json::array({to_json(s[0]), to_json(s[1]), to_json(s[2])}); }

json to_json(const EulerTrajectory& t) { return json{{"euler321", to_json(t.angles)}, {"h", t.h}}; }

json to_json(const LoopGains& g) {
  return json{{"k_Omega", g.k_Omega()}, {"k_x", g.k_x()}, {"k_v", g.k_v()}, {"c_r", g.c_r()}, {"c_t", g.c_t()}};
}

template <class Variant>
json target_to_json(const Variant& v) {
  return std::visit(
      [](const auto& b) -> json {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, DistantBeacon>) return json{{"direction", to_json(b.direction.vec())}};
        else if constexpr (std::is_same_v<T, FixedPoint>) return json{{"point", to_json(b.position)}};
        else return json{{"spacecraft", b.index + 1}};
      },
      v);
}

}  // namespace

Scenario scenario_from_json(const json& j) {
  object(j, "", {"name", "integration", "spacecraft", "leader", "followers"});

  const json& bodies_j = member(j, "", "spacecraft");
  if (!bodies_j.is_array() || bodies_j.empty()) fail("spacecraft", "non_empty", "expected a non-empty array");
  std::vector<SpacecraftSpec> bodies;
  for (std::size_t i = 0; i < bodies_j.size(); ++i) bodies.push_back(spacecraft(bodies_j[i], at("spacecraft", i)));
  const std::size_t n = bodies.size();

  const json& lj = object(member(j, "", "leader"), "leader",
                          {"attitude", "position", "beacons", "los_gains", "gains"});
  const json& bj = object(member(lj, "leader", "beacons"), "leader.beacons", {"A", "B"});
  LeaderSpec leader{
      euler(member(lj, "leader", "attitude"), "leader.attitude"),
      position(member(lj, "leader", "position"), "leader.position"),
      beacon(member(bj, "leader.beacons", "A"), "leader.beacons.A", n),
      beacon(member(bj, "leader.beacons", "B"), "leader.beacons.B", n),
      los_gains<LeaderGains>(member(lj, "leader", "los_gains"), "leader.los_gains", "k_bA", "k_bB"),
      loop_gains(member(lj, "leader", "gains"), "leader.gains"),
  };

  std::vector<FollowerSpec> followers;
  if (j.contains("followers")) {
    const json& fj = j.at("followers");
    if (!fj.is_array()) fail("followers", "type", "expected an array");
    for (std::size_t k = 0; k < fj.size(); ++k) {
      const std::string p = at("followers", k);
      const json& f = object(fj[k], p,
                             {"relative_attitude", "relative_position", "common_object", "los_gains", "gains"});
      CommonObject common = FixedPoint{Vec3::Zero()};
      if (f.contains("common_object")) {
        common = common_object(f.at("common_object"), join(p, "common_object"), n);
      } else if (auto d = default_common_object(k + 2, n)) {
        common = *d;
      } else {
        fail(join(p, "common_object"), "required",
             "no default common object exists for this pair; specify a point or spacecraft");
      }
      followers.push_back(FollowerSpec{
          euler(member(f, p, "relative_attitude"), join(p, "relative_attitude")),
          position(member(f, p, "relative_position"), join(p, "relative_position")),
          common,
          los_gains<PairGains>(member(f, p, "los_gains"), join(p, "los_gains"), "k_alpha", "k_beta"),
          loop_gains(member(f, p, "gains"), join(p, "gains")),
      });
    }
  }

  Scenario s{.name = j.value("name", std::string("scenario")),
             .bodies = std::move(bodies),
             .leader = std::move(leader),
             .followers = std::move(followers)};
  if (j.contains("integration")) {
    const json& ij = object(j.at("integration"), "integration", {"dt", "t_final", "decimation"});
    s.dt = number_or(ij, "integration", "dt", s.dt);
    s.t_final = number_or(ij, "integration", "t_final", s.t_final);
    if (ij.contains("decimation")) {
      const json& d = ij.at("decimation");
      if (!d.is_number_integer() || d.get<long long>() < 1) {
        fail("integration.decimation", "positive", "decimation must be a positive integer");
      }
      s.decimation = d.get<std::size_t>();
    }
  }
  return s;
}

json scenario_to_json(const Scenario& s) {
  json bodies = json::array();
  for (const SpacecraftSpec& b : s.bodies) {
    bodies.push_back(json{
        {"mass", b.params.mass()},
        {"inertia", to_json(b.params.inertia())},
        {"initial",
         {{"attitude", to_json(b.initial.R.matrix())},
          {"position", to_json(b.initial.x)},
          {"velocity", to_json(b.initial.v)},
          {"angular_velocity", to_json(b.initial.Omega)}}},
    });
  }
  json followers = json::array();
  for (const FollowerSpec& f : s.followers) {
    followers.push_back(json{
        {"relative_attitude", to_json(f.relative_attitude)},
        {"relative_position", to_json(f.relative_position.components)},
        {"common_object", target_to_json(f.common)},
        {"los_gains", {{"k_alpha", f.los_gains.first()}, {"k_beta", f.los_gains.second()}}},
        {"gains", to_json(f.gains)},
    });
  }
  return json{
      {"name", s.name},
      {"integration", {{"dt", s.dt}, {"t_final", s.t_final}, {"decimation", s.decimation}}},
      {"spacecraft", bodies},
      {"leader",
       {{"attitude", to_json(s.leader.attitude)},
        {"position", to_json(s.leader.position.components)},
        {"beacons", {{"A", target_to_json(s.leader.beacon_a)}, {"B", target_to_json(s.leader.beacon_b)}}},
        {"los_gains", {{"k_bA", s.leader.los_gains.first()}, {"k_bB", s.leader.los_gains.second()}}},
        {"gains", to_json(s.leader.gains)}}},
      {"followers", followers},
  };
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("cannot read scenario file '" + path.string() + "'");
  const std::string text = buf.str();

  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    // locate the byte offset as line and column
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    fail("(file)", "json_syntax",
         "malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(col));
  }
  return scenario_from_json(j);
}

void save_scenario(const Scenario& s, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write scenario file '" + path.string() + "'");
  out << scenario_to_json(s).dump(2) << '\n';
  if (!out) throw IoError("failed writing scenario file '" + path.string() + "'");
}

}  // namespace losfc::cli
