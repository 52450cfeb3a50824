#include "losfc/presets.hpp"

#include <numbers>
#include <stdexcept>

namespace losfc {

namespace {

constexpr double pi = std::numbers::pi;

BodyParams standard_body() { return BodyParams(30.0, Vec3(3.0, 2.0, 1.0).asDiagonal()); }

Signal zero() { return Signal::constant(0.0); }

EulerTrajectory fixed_attitude() { return EulerTrajectory{{zero(), zero(), zero()}}; }

PositionTrajectory fixed_position(const Vec3& p) {
  return PositionTrajectory{{Signal::constant(p.x()), Signal::constant(p.y()), Signal::constant(p.z())}};
}

RigidBodyState at_rest(const Rotation& R, const Vec3& x, const Vec3& v = Vec3::Zero()) {
  return RigidBodyState{R, x, v, Vec3::Zero()};
}

// Two distant stars along the first two inertial axes.
LeaderSpec leader(EulerTrajectory attitude, PositionTrajectory position) {
  return LeaderSpec{std::move(attitude),
                    std::move(position),
                    DistantBeacon{UnitVec3::from_unit(Vec3::UnitX())},
                    DistantBeacon{UnitVec3::from_unit(Vec3::UnitY())},
                    LeaderGains(25.0, 25.1),
                    LoopGains(7.0, 49.0, 12.6)};
}

FollowerSpec follower(EulerTrajectory attitude, PositionTrajectory position, CommonObject common) {
  return FollowerSpec{std::move(attitude), std::move(position), common, PairGains(25.0, 25.1),
                      LoopGains(7.0, 49.0, 12.6)};
}

}  // namespace

Scenario two_spacecraft_tracking() {
  const EulerTrajectory leader_attitude{{
      zero(),                                   // alpha
      cosine(1.0, 0.2, -0.7),                   // beta = -0.7 + cos 0.2t
      Signal::sinusoid(1.0, 2.0, 0.0, 0.5),     // gamma = 0.5 + sin 2t
  }};
  const PositionTrajectory leader_position{{
      Signal::sinusoid(1.0, 0.04, 0.0, 0.0),
      zero(),
      Signal::sinusoid(-1.0, 0.07, 0.0, 0.0),
  }};
  const EulerTrajectory relative_attitude{{
      Signal::sinusoid(1.0, 0.5, 0.0, 0.0),  // sin 0.5t
      Signal::constant(2.0),
      cosine(1.0, 1.0, 1.0),                 // cos t + 1
  }};
  const PositionTrajectory relative_position{{
      Signal::constant(2.0),
      cosine(1.0, 0.02, -3.0),
      Signal::constant(10.0),
  }};

  return Scenario{
      .name = "two_spacecraft_tracking",
      .bodies = {{standard_body(), at_rest(Rotation::identity(), Vec3::Zero())},
                 {standard_body(), at_rest(Rotation::identity(), Vec3(2.0, -1.0, 7.0))}},
      .leader = leader(leader_attitude, leader_position),
      // With only two spacecraft the common object has to be external: a
      // fixed marker well off the line joining them.
      .followers = {follower(relative_attitude, relative_position, FixedPoint{Vec3(20.0, 0.0, 0.0)})},
      .dt = 1e-3,
      .t_final = 20.0,
      .decimation = 10,
  };
}

Scenario four_spacecraft_sync() {
  std::vector<SpacecraftSpec> bodies = {
      {standard_body(), at_rest(exp_so3(0.2 * pi * Vec3::UnitY()), Vec3(-200.0, 0.0, 0.0))},
      {standard_body(), at_rest(exp_so3(0.5 * pi * Vec3::UnitX()), Vec3(-100.0, -50.0, 0.0),
                                Vec3(0.0, 0.0, 10.0))},
      {standard_body(), at_rest(exp_so3(0.4 * pi * Vec3::UnitX()), Vec3(0.0, 0.0, 20.0),
                                Vec3(0.0, 10.0, 0.0))},
      {standard_body(), at_rest(exp_so3(0.8 * pi * Vec3::UnitZ()), Vec3(100.0, 100.0, -1.0),
                                Vec3(0.0, 10.0, 0.0))},
  };
  const Vec3 offsets[] = {Vec3(100.0, 100.0, 6.0), Vec3(0.0, -200.0, 0.0), Vec3(0.0, -200.0, 0.0)};
  // Spacecraft 2, 3 and 4 end up on one line (x = 0, z = 6), so the pairs
  // (3,2) and (4,3) cannot use each other as common object; both watch the
  // leader instead. Pair (2,1) watches spacecraft 3.
  const CommonObject common[] = {SpacecraftRef{2}, SpacecraftRef{0}, SpacecraftRef{0}};
  std::vector<FollowerSpec> followers;
  for (std::size_t k = 0; k < 3; ++k) {
    followers.push_back(follower(fixed_attitude(), fixed_position(offsets[k]), common[k]));
  }
  return Scenario{
      .name = "four_spacecraft_sync",
      .bodies = std::move(bodies),
      .leader = leader(fixed_attitude(), fixed_position(Vec3(-100.0, 0.0, 0.0))),
      .followers = std::move(followers),
      .dt = 1e-3,
      .t_final = 60.0,
      .decimation = 10,
  };
}

Scenario preset(std::string_view name) {
  if (name == "two_spacecraft_tracking") return two_spacecraft_tracking();
  if (name == "four_spacecraft_sync") return four_spacecraft_sync();
  throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
}

std::vector<std::string> preset_names() { return {"two_spacecraft_tracking", "four_spacecraft_sync"}; }

}  // namespace losfc
