#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "losfc/controllers.hpp"
#include "losfc/trajectories.hpp"

namespace losfc {

/// Beacon so far away that its sight line is a fixed inertial direction (mu = 0).
struct DistantBeacon {
  UnitVec3 direction;
  bool operator==(const DistantBeacon&) const = default;
};

/// Object resting at a fixed inertial position.
struct FixedPoint {
  Vec3 position;
  bool operator==(const FixedPoint&) const = default;
};

/// Another spacecraft of the formation, by 0-based index.
struct SpacecraftRef {
  std::size_t index;
  bool operator==(const SpacecraftRef&) const = default;
};

using BeaconSpec = std::variant<DistantBeacon, FixedPoint, SpacecraftRef>;
using CommonObject = std::variant<FixedPoint, SpacecraftRef>;

struct SpacecraftSpec {
  BodyParams params;
  RigidBodyState initial;
  bool operator==(const SpacecraftSpec&) const = default;
};

struct LeaderSpec {
  EulerTrajectory attitude;
  PositionTrajectory position;
  BeaconSpec beacon_a;
  BeaconSpec beacon_b;
  LeaderGains los_gains;
  LoopGains gains;
  bool operator==(const LeaderSpec&) const = default;
};

/// Spacecraft i following spacecraft i-1.
struct FollowerSpec {
  EulerTrajectory relative_attitude;     // Q_{i,i-1}^d
  PositionTrajectory relative_position;  // desired x_i - x_{i-1}
  CommonObject common;
  PairGains los_gains;
  LoopGains gains;
  bool operator==(const FollowerSpec&) const = default;
};

struct Scenario {
  std::string name;
  std::vector<SpacecraftSpec> bodies;  // bodies[0] is the leader
  LeaderSpec leader;
  std::vector<FollowerSpec> followers;  // followers[k] drives bodies[k + 1]
  double dt = 1e-3;
  double t_final = 20.0;
  std::size_t decimation = 10;

  std::size_t size() const { return bodies.size(); }
  std::vector<BodyParams> params() const;
  std::vector<RigidBodyState> initial_states() const;

  bool operator==(const Scenario&) const = default;
};

/// Sight line from an observer toward a leader beacon, with its rate.
struct SightLine {
  UnitVec3 s;
  Vec3 mu;
};

/// Only the position and velocity of a referenced spacecraft are read.
SightLine beacon_sight_line(const BeaconSpec& beacon, const PointState& observer,
                            std::span<const RigidBodyState> states);

PointState common_object_state(const CommonObject& object, std::span<const RigidBodyState> states);

/// Default common object of pair (i, i-1), 1-based: spacecraft i+1 when
/// i < n, otherwise spacecraft i-2. Returns nullopt when neither exists.
std::optional<SpacecraftRef> default_common_object(std::size_t follower_index_1based, std::size_t n);

struct ValidationIssue {
  std::string field;  // e.g. "followers[0].common"
  std::string rule;   // short rule identifier
  std::string message;
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<ValidationIssue> issues);
  const std::vector<ValidationIssue>& issues() const { return issues_; }

 private:
  std::vector<ValidationIssue> issues_;
};

/// Structural and t = 0 geometric checks. Gains and mass properties are
/// validated when their objects are constructed.
std::vector<ValidationIssue> validate(const Scenario& s);

/// Throws ValidationError listing every issue.
void require_valid(const Scenario& s);

}  // namespace losfc
