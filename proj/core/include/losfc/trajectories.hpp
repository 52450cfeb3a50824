#pragma once

#include <array>
#include <utility>

#include "losfc/los.hpp"

namespace losfc {

/// Scalar signal offset + amplitude * sin(frequency * t + phase).
///
/// A constant is the zero-amplitude case; the kind is remembered so that
/// scenario files round-trip in the form they were written.
class Signal {
 public:
  enum class Kind { constant, sinusoid };

  Signal() = default;
  static Signal constant(double value);
  /// Throws std::invalid_argument for non-finite parameters.
  static Signal sinusoid(double amplitude, double frequency, double phase, double offset);

  double value(double t) const;
  double rate(double t) const;
  double acceleration(double t) const;

  Kind kind() const { return kind_; }
  double amplitude() const { return amplitude_; }
  double frequency() const { return frequency_; }
  double phase() const { return phase_; }
  double offset() const { return offset_; }

  bool operator==(const Signal&) const = default;

 private:
  Kind kind_ = Kind::constant;
  double amplitude_ = 0.0;
  double frequency_ = 0.0;
  double phase_ = 0.0;
  double offset_ = 0.0;
};

/// cos(w t) written as a sinusoid with a quarter-period phase.
Signal cosine(double amplitude, double frequency, double offset);

enum class RateMethod { analytic, finite_difference };

/// Attitude given by 3-2-1 Euler angles (yaw alpha, pitch beta, roll gamma).
struct EulerTrajectory {
  std::array<Signal, 3> angles;
  /// Step used by the finite-difference rate method.
  double h = 1e-5;

  bool operator==(const EulerTrajectory&) const = default;
};

struct AttitudeSample {
  Rotation R;
  Vec3 Omega;   // body frame, rad/s
  Vec3 dOmega;  // rad/s^2
};

/// Rz(alpha) Ry(beta) Rx(gamma)
Rotation euler321_rotation(const Vec3& angles);

/// Desired attitude and its body angular velocity and acceleration.
///
/// The analytic method maps Euler-angle rates through the kinematic
/// relation. The finite-difference method takes central differences of R(t)
/// and Omega(t) with step traj.h; its O(h^2) truncation and rounding noise
/// (about 1e-7 for h = 1e-5) make it unsuitable for the control path when
/// integrator convergence is measured.
AttitudeSample sample_attitude_trajectory(const EulerTrajectory& traj, double t,
                                          RateMethod method = RateMethod::analytic);

struct PositionTrajectory {
  std::array<Signal, 3> components;

  bool operator==(const PositionTrajectory&) const = default;
};

struct PositionSample {
  Vec3 x;
  Vec3 v;
  Vec3 a;
};

PositionSample sample_position(const PositionTrajectory& traj, double t);

/// b_d = R1_d^T s for both beacons.
std::pair<UnitVec3, UnitVec3> desired_leader_los(const Rotation& R1_d, const UnitVec3& sA,
                                                 const UnitVec3& sB);

}  // namespace losfc
