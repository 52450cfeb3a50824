#include "losfc/trajectories.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace losfc {

Signal Signal::constant(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("signal constant must be finite");
  Signal s;
  s.offset_ = value;
  return s;
}

Signal Signal::sinusoid(double amplitude, double frequency, double phase, double offset) {
  if (!std::isfinite(amplitude) || !std::isfinite(frequency) || !std::isfinite(phase) ||
      !std::isfinite(offset)) {
    throw std::invalid_argument("sinusoid parameters must be finite");
  }
  Signal s;
  s.kind_ = Kind::sinusoid;
  s.amplitude_ = amplitude;
  s.frequency_ = frequency;
  s.phase_ = phase;
  s.offset_ = offset;
  return s;
}

double Signal::value(double t) const {
  if (kind_ == Kind::constant) return offset_;
  return offset_ + amplitude_ * std::sin(frequency_ * t + phase_);
}

double Signal::rate(double t) const {
  if (kind_ == Kind::constant) return 0.0;
  return amplitude_ * frequency_ * std::cos(frequency_ * t + phase_);
}

double Signal::acceleration(double t) const {
  if (kind_ == Kind::constant) return 0.0;
  return -amplitude_ * frequency_ * frequency_ * std::sin(frequency_ * t + phase_);
}

Signal cosine(double amplitude, double frequency, double offset) {
  return Signal::sinusoid(amplitude, frequency, std::numbers::pi / 2.0, offset);
}

namespace {

Mat3 rot_x(double a) {
  const double c = std::cos(a), s = std::sin(a);
  Mat3 m;
  m << 1, 0, 0, 0, c, -s, 0, s, c;
  return m;
}

Mat3 rot_y(double a) {
  const double c = std::cos(a), s = std::sin(a);
  Mat3 m;
  m << c, 0, s, 0, 1, 0, -s, 0, c;
  return m;
}

Mat3 rot_z(double a) {
  const double c = std::cos(a), s = std::sin(a);
  Mat3 m;
  m << c, -s, 0, s, c, 0, 0, 0, 1;
  return m;
}

Vec3 angles_at(const EulerTrajectory& traj, double t) {
  return {traj.angles[0].value(t), traj.angles[1].value(t), traj.angles[2].value(t)};
}

AttitudeSample analytic_sample(const EulerTrajectory& traj, double t) {
  const Vec3 a = angles_at(traj, t);
  const Vec3 da(traj.angles[0].rate(t), traj.angles[1].rate(t), traj.angles[2].rate(t));
  const Vec3 dda(traj.angles[0].acceleration(t), traj.angles[1].acceleration(t),
                 traj.angles[2].acceleration(t));
  const Vec3 e1 = Vec3::UnitX(), e2 = Vec3::UnitY(), e3 = Vec3::UnitZ();
  const Mat3 rxT = rot_x(a.z()).transpose();
  const Mat3 ryT = rot_y(a.y()).transpose();

  // Omega = A(angles) * angle rates, columns for yaw, pitch and roll rates
  Mat3 A;
  A.col(0) = rxT * ryT * e3;
  A.col(1) = rxT * e2;
  A.col(2) = e1;

  // d/dt Rx(g)^T = -g' hat(e1) Rx(g)^T, and likewise for Ry
  Mat3 dA = Mat3::Zero();
  dA.col(0) = -da.z() * hat(e1) * A.col(0) - rxT * (da.y() * hat(e2)) * ryT * e3;
  dA.col(1) = -da.z() * hat(e1) * A.col(1);

  return AttitudeSample{euler321_rotation(a), A * da, A * dda + dA * da};
}

Vec3 fd_omega(const EulerTrajectory& traj, double t) {
  const double h = traj.h;
  const Mat3 R = euler321_rotation(angles_at(traj, t)).matrix();
  const Mat3 dR = (euler321_rotation(angles_at(traj, t + h)).matrix() -
                   euler321_rotation(angles_at(traj, t - h)).matrix()) /
                  (2.0 * h);
  return vee(R.transpose() * dR);
}

}  // namespace

Rotation euler321_rotation(const Vec3& angles) {
  return Rotation::from_matrix(rot_z(angles.x()) * rot_y(angles.y()) * rot_x(angles.z()));
}

AttitudeSample sample_attitude_trajectory(const EulerTrajectory& traj, double t, RateMethod method) {
  if (method == RateMethod::analytic) return analytic_sample(traj, t);
  if (!(traj.h > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
  const double h = traj.h;
  return AttitudeSample{
      euler321_rotation(angles_at(traj, t)),
      fd_omega(traj, t),
      (fd_omega(traj, t + h) - fd_omega(traj, t - h)) / (2.0 * h),
  };
}

PositionSample sample_position(const PositionTrajectory& traj, double t) {
  PositionSample p;
  for (int i = 0; i < 3; ++i) {
    p.x(i) = traj.components[i].value(t);
    p.v(i) = traj.components[i].rate(t);
    p.a(i) = traj.components[i].acceleration(t);
  }
  return p;
}

std::pair<UnitVec3, UnitVec3> desired_leader_los(const Rotation& R1_d, const UnitVec3& sA,
                                                 const UnitVec3& sB) {
  return {to_body(R1_d, sA), to_body(R1_d, sB)};
}

}  // namespace losfc
