#include "losfc/scenario.hpp"

#include <sstream>
#include <type_traits>

namespace losfc {

std::vector<BodyParams> Scenario::params() const {
  std::vector<BodyParams> out;
  out.reserve(bodies.size());
  for (const SpacecraftSpec& b : bodies) out.push_back(b.params);
  return out;
}

std::vector<RigidBodyState> Scenario::initial_states() const {
  std::vector<RigidBodyState> out;
  out.reserve(bodies.size());
  for (const SpacecraftSpec& b : bodies) out.push_back(b.initial);
  return out;
}

SightLine beacon_sight_line(const BeaconSpec& beacon, const PointState& observer,
                            std::span<const RigidBodyState> states) {
  return std::visit(
      [&](const auto& b) -> SightLine {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, DistantBeacon>) {
          return SightLine{b.direction, Vec3::Zero()};
        } else if constexpr (std::is_same_v<T, FixedPoint>) {
          return SightLine{los_unit(observer.x, b.position),
                           los_rate(observer.x, b.position, observer.v, Vec3::Zero())};
        } else {
          const RigidBodyState& target = states[b.index];
          return SightLine{los_unit(observer.x, target.x),
                           los_rate(observer.x, target.x, observer.v, target.v)};
        }
      },
      beacon);
}

PointState common_object_state(const CommonObject& object, std::span<const RigidBodyState> states) {
  return std::visit(
      [&](const auto& o) -> PointState {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, FixedPoint>) {
          return PointState{o.position, Vec3::Zero()};
        } else {
          return PointState{states[o.index].x, states[o.index].v};
        }
      },
      object);
}

std::optional<SpacecraftRef> default_common_object(std::size_t i, std::size_t n) {
  // i and n are 1-based; the returned index is 0-based
  if (i < 2 || i > n) return std::nullopt;
  if (i < n) return SpacecraftRef{i};  // spacecraft i+1
  if (i >= 3) return SpacecraftRef{i - 3};  // spacecraft i-2
  return std::nullopt;
}

namespace {

std::string describe(const std::vector<ValidationIssue>& issues) {
  std::ostringstream os;
  os << "scenario is invalid (" << issues.size() << " issue" << (issues.size() == 1 ? "" : "s") << ")";
  for (const ValidationIssue& i : issues) os << "\n  " << i.field << " [" << i.rule << "]: " << i.message;
  return os.str();
}

bool finite_state(const RigidBodyState& s) {
  return s.x.allFinite() && s.v.allFinite() && s.Omega.allFinite();
}

}  // namespace

ValidationError::ValidationError(std::vector<ValidationIssue> issues)
    : std::runtime_error(describe(issues)), issues_(std::move(issues)) {}

std::vector<ValidationIssue> validate(const Scenario& s) {
  std::vector<ValidationIssue> issues;
  auto add = [&](std::string field, std::string rule, std::string msg) {
    issues.push_back({std::move(field), std::move(rule), std::move(msg)});
  };

  const std::size_t n = s.bodies.size();
  if (n == 0) add("bodies", "non_empty", "a scenario needs at least one spacecraft");
  if (s.followers.size() + 1 != n && n > 0) {
    add("followers", "chain_length",
        "expected " + std::to_string(n - 1) + " follower entries for " + std::to_string(n) +
            " spacecraft, found " + std::to_string(s.followers.size()));
  }
  if (!(s.dt > 0.0) || !std::isfinite(s.dt)) add("dt", "positive", "time step must be positive");
  if (!(s.t_final > 0.0) || !std::isfinite(s.t_final)) {
    add("t_final", "positive", "final time must be positive");
  } else if (s.dt > 0.0 && s.t_final < s.dt) {
    add("t_final", "at_least_one_step", "final time is shorter than one time step");
  }
  if (s.decimation == 0) add("decimation", "positive", "log decimation must be at least 1");

  for (std::size_t i = 0; i < n; ++i) {
    if (!finite_state(s.bodies[i].initial)) {
      add("bodies[" + std::to_string(i) + "].initial", "finite", "initial state has non-finite entries");
    }
  }

  auto check_traj = [&](const EulerTrajectory& t, const std::string& field) {
    if (!(t.h > 0.0)) add(field + ".h", "positive", "finite-difference step must be positive");
  };
  check_traj(s.leader.attitude, "leader.attitude");

  auto check_beacon = [&](const BeaconSpec& b, const std::string& field) {
    if (const auto* r = std::get_if<SpacecraftRef>(&b)) {
      if (r->index >= n) add(field, "index_in_range", "beacon refers to a spacecraft that does not exist");
      else if (r->index == 0) add(field, "beacon_not_leader", "the leader cannot be its own beacon");
    }
  };
  check_beacon(s.leader.beacon_a, "leader.beacon_a");
  check_beacon(s.leader.beacon_b, "leader.beacon_b");

  const std::size_t pairs = std::min(s.followers.size(), n > 0 ? n - 1 : 0);
  for (std::size_t k = 0; k < pairs; ++k) {
    const std::string field = "followers[" + std::to_string(k) + "]";
    check_traj(s.followers[k].relative_attitude, field + ".relative_attitude");
    if (const auto* r = std::get_if<SpacecraftRef>(&s.followers[k].common)) {
      if (r->index >= n) {
        add(field + ".common", "index_in_range", "common object refers to a spacecraft that does not exist");
      } else if (r->index == k || r->index == k + 1) {
        add(field + ".common", "common_object_distinct",
            "common object must differ from both members of the pair");
      }
    }
  }
  if (!issues.empty() || n == 0) return issues;

  // Geometry at t = 0.
  const std::vector<RigidBodyState> x0 = s.initial_states();
  const PointState leader{x0[0].x, x0[0].v};
  try {
    const SightLine a = beacon_sight_line(s.leader.beacon_a, leader, x0);
    const SightLine b = beacon_sight_line(s.leader.beacon_b, leader, x0);
    if (!(a.s.cross(b.s).norm() > kCollinearTolerance)) {
      add("leader", "beacons_not_collinear", "sight lines to beacons A and B are collinear at t = 0");
    }
  } catch (const GeometryError& e) {
    add("leader", "beacon_geometry", e.what());
  }
  for (std::size_t k = 0; k < pairs; ++k) {
    const std::string field = "followers[" + std::to_string(k) + "]";
    const RigidBodyState& p = x0[k];
    const RigidBodyState& f = x0[k + 1];
    try {
      const PointState c = common_object_state(s.followers[k].common, x0);
      measure_pair(p.R, {p.x, p.v}, f.R, {f.x, f.v}, c);
    } catch (const GeometryError& e) {
      add(field + ".common", "common_object_off_chord",
          "pair (" + std::to_string(k + 2) + "," + std::to_string(k + 1) +
              "): the common object must not lie on the line joining the pair at t = 0 (" + e.what() + ")");
    }
  }
  return issues;
}

void require_valid(const Scenario& s) {
  std::vector<ValidationIssue> issues = validate(s);
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

}  // namespace losfc
