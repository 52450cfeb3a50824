#pragma once

#include <stdexcept>
#include <string>

#include "losfc/so3.hpp"

namespace losfc {

/// Cross products shorter than this count as collinear directions.
inline constexpr double kCollinearTolerance = 1e-8;
/// Bodies closer than this (m) count as coincident.
inline constexpr double kCoincidentTolerance = 1e-9;

/// Raised for coincident bodies or collinear sight lines.
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Direction on the unit sphere.
class UnitVec3 {
 public:
  /// Scales v to unit length. Throws GeometryError for a (near) zero vector.
  static UnitVec3 normalize(const Vec3& v);
  /// Accepts v only if | ||v|| - 1 | <= 1e-12; throws std::invalid_argument otherwise.
  static UnitVec3 from_unit(const Vec3& v);

  const Vec3& vec() const { return v_; }
  operator const Vec3&() const { return v_; }
  UnitVec3 operator-() const { return UnitVec3(-v_); }
  double dot(const Vec3& o) const { return v_.dot(o); }
  Vec3 cross(const Vec3& o) const { return v_.cross(o); }

  bool operator==(const UnitVec3& o) const { return v_ == o.v_; }

 private:
  explicit UnitVec3(const Vec3& v) : v_(v) {}
  Vec3 v_;
};

inline UnitVec3 operator*(const Rotation& r, const UnitVec3& s) {
  return UnitVec3::normalize(r.matrix() * s.vec());
}

/// s = (x_to - x_from) / ||x_to - x_from||, inertial frame.
UnitVec3 los_unit(const Vec3& x_from, const Vec3& x_to);

/// b = R^T s.
UnitVec3 to_body(const Rotation& R, const UnitVec3& s);

/// (a x b) / ||a x b||. Throws GeometryError if ||a x b|| <= kCollinearTolerance.
UnitVec3 normalized_cross(const UnitVec3& a, const UnitVec3& b);

/// Angular velocity of the sight line from x_from to x_to.
///
/// Only the component normal to s is observable from s-dot, so the
/// minimum-norm choice mu = s x s-dot is returned (mu . s = 0).
Vec3 los_rate(const Vec3& x_from, const Vec3& x_to, const Vec3& v_from, const Vec3& v_to);

/// Angular velocity of s_ijk = normalized_cross(s_ij, s_ik) given the rates of its factors.
Vec3 los_rate_cross(const UnitVec3& s_ij, const UnitVec3& s_ik, const Vec3& mu_ij,
                    const Vec3& mu_ik);

/// Sight lines of the leader toward its two beacons.
struct LeaderLosMeasurements {
  UnitVec3 bA, bB;  // body frame
  UnitVec3 sA, sB;  // inertial frame
  Vec3 muA, muB;    // rad/s, inertial frame

  /// Builds the body-frame measurements from R1. Throws GeometryError if
  /// sA and sB are collinear.
  static LeaderLosMeasurements observe(const Rotation& R1, const UnitVec3& sA, const UnitVec3& sB,
                                       const Vec3& muA, const Vec3& muB);
};

/// Sight lines exchanged by a spacecraft pair plus the common object.
///
/// Index 1 is the preceding spacecraft, 2 the follower, 3 the common object;
/// b12 and b13 are in frame 1, b21 and b23 in frame 2.
struct LosPairMeasurements {
  UnitVec3 b12, b13, b21, b23, b123, b213;
  Vec3 mu12, mu21, mu123, mu213;
  // Inertial counterparts kept for the matrix-form diagnostics.
  UnitVec3 s21, s213;
};

/// Kinematic state of one body as seen by the sight-line geometry.
struct PointState {
  Vec3 x = Vec3::Zero();
  Vec3 v = Vec3::Zero();
};

/// Generates the exact pair measurements from true states.
/// Throws GeometryError when the common object lies on the line through 1 and 2.
LosPairMeasurements measure_pair(const Rotation& R1, const PointState& p1, const Rotation& R2,
                                 const PointState& p2, const PointState& common);

/// Relative attitude Q21 = R1^T R2 recovered from the pair measurements alone.
Rotation solve_relative_attitude(const LosPairMeasurements& m);

}  // namespace losfc
