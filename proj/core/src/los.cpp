#include "losfc/los.hpp"

#include <cmath>

namespace losfc {

UnitVec3 UnitVec3::normalize(const Vec3& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw GeometryError("cannot normalize a zero or non-finite vector");
  return UnitVec3(v / n);
}

UnitVec3 UnitVec3::from_unit(const Vec3& v) {
  if (!v.allFinite() || std::abs(v.norm() - 1.0) > 1e-12) {
    throw std::invalid_argument("vector is not of unit length");
  }
  return UnitVec3(v);
}

UnitVec3 los_unit(const Vec3& x_from, const Vec3& x_to) {
  const Vec3 d = x_to - x_from;
  if (!(d.norm() > kCoincidentTolerance)) throw GeometryError("coincident positions");
  return UnitVec3::normalize(d);
}

UnitVec3 to_body(const Rotation& R, const UnitVec3& s) {
  return UnitVec3::normalize(R.matrix().transpose() * s.vec());
}

UnitVec3 normalized_cross(const UnitVec3& a, const UnitVec3& b) {
  const Vec3 c = a.cross(b);
  if (!(c.norm() > kCollinearTolerance)) throw GeometryError("collinear directions");
  return UnitVec3::normalize(c);
}

Vec3 los_rate(const Vec3& x_from, const Vec3& x_to, const Vec3& v_from, const Vec3& v_to) {
  const Vec3 d = x_to - x_from;
  const double r = d.norm();
  if (!(r > kCoincidentTolerance)) throw GeometryError("coincident positions");
  const Vec3 s = d / r;
  const Vec3 dv = v_to - v_from;
  const Vec3 s_dot = (dv - s * s.dot(dv)) / r;
  return s.cross(s_dot);
}

Vec3 los_rate_cross(const UnitVec3& s_ij, const UnitVec3& s_ik, const Vec3& mu_ij,
                    const Vec3& mu_ik) {
  const Vec3 c = s_ij.cross(s_ik);
  const double n = c.norm();
  if (!(n > kCollinearTolerance)) throw GeometryError("collinear directions");
  const Vec3 s = c / n;
  const Vec3 c_dot = mu_ij.cross(s_ij.vec()).cross(s_ik.vec()) + s_ij.cross(mu_ik.cross(s_ik.vec()));
  // derivative of c/||c||: the component of c-dot along s only changes the length
  const Vec3 s_dot = (c_dot - s * s.dot(c_dot)) / n;
  return s.cross(s_dot);
}

LeaderLosMeasurements LeaderLosMeasurements::observe(const Rotation& R1, const UnitVec3& sA,
                                                     const UnitVec3& sB, const Vec3& muA,
                                                     const Vec3& muB) {
  if (!(sA.cross(sB).norm() > kCollinearTolerance)) {
    throw GeometryError("leader beacons A and B are collinear");
  }
  return LeaderLosMeasurements{to_body(R1, sA), to_body(R1, sB), sA, sB, muA, muB};
}

LosPairMeasurements measure_pair(const Rotation& R1, const PointState& p1, const Rotation& R2,
                                 const PointState& p2, const PointState& common) {
  const UnitVec3 s12 = los_unit(p1.x, p2.x);
  const UnitVec3 s13 = los_unit(p1.x, common.x);
  const UnitVec3 s21 = -s12;
  const UnitVec3 s23 = los_unit(p2.x, common.x);
  if (!(s12.cross(s13).norm() > kCollinearTolerance) ||
      !(s21.cross(s23).norm() > kCollinearTolerance)) {
    throw GeometryError("common object lies on the line joining the pair");
  }
  const UnitVec3 s213 = normalized_cross(s21, s23);

  const Vec3 mu12 = los_rate(p1.x, p2.x, p1.v, p2.v);
  const Vec3 mu13 = los_rate(p1.x, common.x, p1.v, common.v);
  const Vec3 mu21 = los_rate(p2.x, p1.x, p2.v, p1.v);
  const Vec3 mu23 = los_rate(p2.x, common.x, p2.v, common.v);

  const UnitVec3 b12 = to_body(R1, s12);
  const UnitVec3 b13 = to_body(R1, s13);
  const UnitVec3 b21 = to_body(R2, s21);
  const UnitVec3 b23 = to_body(R2, s23);
  return LosPairMeasurements{
      .b12 = b12,
      .b13 = b13,
      .b21 = b21,
      .b23 = b23,
      // formed from the body-frame pairs, as the spacecraft would
      .b123 = normalized_cross(b12, b13),
      .b213 = normalized_cross(b21, b23),
      .mu12 = mu12,
      .mu21 = mu21,
      .mu123 = los_rate_cross(s12, s13, mu12, mu13),
      .mu213 = los_rate_cross(s21, s23, mu21, mu23),
      .s21 = s21,
      .s213 = s213,
  };
}

namespace {

Mat3 triad(const UnitVec3& a, const UnitVec3& b) {
  const Vec3 c = a.cross(b);
  if (!(c.norm() > 0.5)) throw GeometryError("degenerate measurement triad");
  Mat3 t;
  t.col(0) = a.vec();
  t.col(1) = b.vec();
  t.col(2) = c;
  return t;
}

}  // namespace

Rotation solve_relative_attitude(const LosPairMeasurements& m) {
  if (!(m.b12.cross(m.b13).norm() > kCollinearTolerance) ||
      !(m.b21.cross(m.b23).norm() > kCollinearTolerance)) {
    throw GeometryError("common object lies on the line joining the pair");
  }
  // b123 is normal to b12 by construction, so each triad is orthonormal.
  const Mat3 t1 = triad(-m.b12, -m.b123);
  const Mat3 t2 = triad(m.b21, m.b213);
  return project_so3(t1 * t2.transpose());
}

}  // namespace losfc
