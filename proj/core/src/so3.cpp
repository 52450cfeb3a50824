#include "losfc/so3.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace losfc {

bool is_rotation(const Mat3& m, double tol) {
  if (!m.allFinite()) return false;
  const double ortho = (m.transpose() * m - Mat3::Identity()).norm();
  return ortho <= tol && m.determinant() > 0.0;
}

Rotation Rotation::from_matrix(const Mat3& m) {
  if (!is_rotation(m)) {
    throw std::invalid_argument("matrix is not a rotation (orthonormality or determinant check failed)");
  }
  return Rotation(m, Unchecked{});
}

double Rotation::orthonormality_error() const {
  return (m_.transpose() * m_ - Mat3::Identity()).norm();
}

Mat3 hat(const Vec3& v) {
  Mat3 m;
  // clang-format off
  m <<   0.0, -v.z(),  v.y(),
       v.z(),    0.0, -v.x(),
      -v.y(),  v.x(),    0.0;
  // clang-format on
  return m;
}

Vec3 vee(const Mat3& m) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const Mat3 sym = 0.5 * (m + m.transpose());
  if (sym.cwiseAbs().maxCoeff() > 1e-9 * scale) {
    throw std::invalid_argument("vee: matrix is not skew-symmetric");
  }
  const Mat3 skew = 0.5 * (m - m.transpose());
  return Vec3(skew(2, 1), skew(0, 2), skew(1, 0));
}

Rotation exp_so3(const Vec3& v) {
  const double theta = v.norm();
  double a;  // sin(theta)/theta
  double b;  // (1 - cos(theta))/theta^2
  if (theta < kSmallAngle) {
    const double t2 = theta * theta;
    a = 1.0 - t2 / 6.0;
    b = 0.5 - t2 / 24.0;
  } else {
    a = std::sin(theta) / theta;
    b = (1.0 - std::cos(theta)) / (theta * theta);
  }
  const Mat3 h = hat(v);
  return Rotation(Mat3::Identity() + a * h + b * h * h, Rotation::Unchecked{});
}

Rotation project_so3(const Mat3& m) {
  if (!m.allFinite()) throw std::invalid_argument("project_so3: non-finite input");
  const double det = m.determinant();
  if (!(det > 0.0)) {
    throw std::invalid_argument("project_so3: input is singular or a reflection");
  }
  Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Mat3 u = svd.matrixU();
  const Mat3 v = svd.matrixV();
  const Vec3 sigma = svd.singularValues();
  if (sigma(2) <= 1e-12 * std::max(1.0, sigma(0))) {
    throw std::invalid_argument("project_so3: input is singular");
  }
  Mat3 d = Mat3::Identity();
  d(2, 2) = (u * v.transpose()).determinant() < 0.0 ? -1.0 : 1.0;
  return Rotation(u * d * v.transpose(), Rotation::Unchecked{});
}

Vec3 attitude_error_vector(const Rotation& actual, const Rotation& desired) {
  const Mat3 a = desired.matrix().transpose() * actual.matrix();
  return 0.5 * vee(a - a.transpose());
}

}  // namespace losfc
