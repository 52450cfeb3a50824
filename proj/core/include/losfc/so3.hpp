#pragma once

#include <Eigen/Dense>

namespace losfc {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Tolerance on ||R^T R - I||_F accepted for a rotation matrix.
inline constexpr double kRotationTolerance = 1e-9;
/// Below this angle exp_so3 switches to the Taylor expansion of its coefficients.
inline constexpr double kSmallAngle = 1e-6;

/// Element of SO(3).
///
/// Construction through from_matrix() validates orthonormality and
/// orientation. Products of rotations are closed and are not re-validated.
class Rotation {
 public:
  Rotation() : m_(Mat3::Identity()) {}

  static Rotation identity() { return Rotation(); }
  /// Throws std::invalid_argument unless m is a rotation within kRotationTolerance.
  static Rotation from_matrix(const Mat3& m);

  const Mat3& matrix() const { return m_; }
  Rotation transpose() const { return Rotation(m_.transpose(), Unchecked{}); }
  /// ||R^T R - I||_F
  double orthonormality_error() const;

  Vec3 operator*(const Vec3& v) const { return m_ * v; }
  Rotation operator*(const Rotation& o) const { return Rotation(m_ * o.m_, Unchecked{}); }

  bool operator==(const Rotation& o) const { return m_ == o.m_; }

 private:
  struct Unchecked {};
  Rotation(const Mat3& m, Unchecked) : m_(m) {}
  friend Rotation exp_so3(const Vec3& v);
  friend Rotation project_so3(const Mat3& m);

  Mat3 m_;
};

bool is_rotation(const Mat3& m, double tol = kRotationTolerance);

/// Skew-symmetric matrix with hat(v) * w == v.cross(w).
Mat3 hat(const Vec3& v);

/// Inverse of hat. The input is antisymmetrized first; throws
/// std::invalid_argument when its symmetric part exceeds 1e-9 (relative to
/// max(1, max|m_ij|)).
Vec3 vee(const Mat3& m);

/// Rodrigues exponential map.
Rotation exp_so3(const Vec3& v);

/// Nearest rotation in the Frobenius norm (SVD polar factor). Throws
/// std::invalid_argument for singular input or det(m) <= 0.
Rotation project_so3(const Mat3& m);

/// Attitude error vector 1/2 (Rd^T R - R^T Rd)^vee used for reporting.
Vec3 attitude_error_vector(const Rotation& actual, const Rotation& desired);

}  // namespace losfc
