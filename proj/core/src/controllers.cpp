#include "losfc/controllers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace losfc {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(name) + " must be positive and finite");
  }
}

Vec3 attitude_moment(const Vec3& e, const Vec3& e_Omega, const Vec3& Omega_d, const Vec3& dOmega_d,
                     const Mat3& J, double k_Omega) {
  return -e - k_Omega * e_Omega + hat(Omega_d) * J * (e_Omega + Omega_d) + J * dOmega_d;
}

double min_eigenvalue(const Mat2& m) {
  return Eigen::SelfAdjointEigenSolver<Mat2>(m, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
}

}  // namespace

LoopGains::LoopGains(double k_Omega, double k_x, double k_v, double c_r, double c_t)
    : k_Omega_(k_Omega), k_x_(k_x), k_v_(k_v), c_r_(c_r), c_t_(c_t) {
  require_positive(k_Omega, "k_Omega");
  require_positive(k_x, "k_x");
  require_positive(k_v, "k_v");
  require_positive(c_r, "c_r");
  require_positive(c_t, "c_t");
}

Vec3 leader_moment(const Vec3& e_b, const Vec3& e_Omega1, const Vec3& Omega1_d,
                   const Vec3& dOmega1_d, const Mat3& J1, double k_Omega1) {
  return attitude_moment(e_b, e_Omega1, Omega1_d, dOmega1_d, J1, k_Omega1);
}

Vec3 follower_moment(const Vec3& e_rel, const Vec3& e_Omega_i, const Vec3& Omega_i_d,
                     const Vec3& dOmega_i_d, const Mat3& J_i, double k_Omega_i) {
  return attitude_moment(e_rel, e_Omega_i, Omega_i_d, dOmega_i_d, J_i, k_Omega_i);
}

Vec3 leader_force(const Vec3& e_x1, const Vec3& e_v1, const Vec3& x1_dd_des, double m1, double k_x1,
                  double k_v1) {
  return -k_x1 * e_x1 - k_v1 * e_v1 + m1 * x1_dd_des;
}

Vec3 follower_force(const Vec3& e_x_rel, const Vec3& e_v_rel, const Vec3& x_prev_dd,
                    const Vec3& x_rel_dd_des, double m_i, double k_x, double k_v) {
  return -k_x * e_x_rel - k_v * e_v_rel + m_i * (x_prev_dd + x_rel_dd_des);
}

DesiredKinematics follower_desired_kinematics(const Vec3& Omega_rel_d, const Vec3& dOmega_rel_d,
                                              const Rotation& Q_d, const Vec3& Omega_prev,
                                              const Vec3& dOmega_prev, const Vec3& x_prev_dd,
                                              const Vec3& x_rel_dd_des) {
  const Mat3 QdT = Q_d.matrix().transpose();
  return DesiredKinematics{
      .Omega_d = Omega_rel_d + QdT * Omega_prev,
      .dOmega_d = dOmega_rel_d - hat(Omega_rel_d) * QdT * Omega_prev + QdT * dOmega_prev,
      .x_dd = x_prev_dd + x_rel_dd_des,
  };
}

LoopLyapunov loop_lyapunov(const AttitudeErrorState& att, const PositionErrorState& pos,
                           const BodyParams& body, const LoopGains& gains, double k_bar,
                           const LoopBounds& bounds) {
  const Mat3& J = body.inertia();
  const double m = body.mass();
  const double c_r = gains.c_r();
  const double c_t = gains.c_t();
  const double lambda = body.lambda_max();

  LoopLyapunov out;
  out.V_r = 0.5 * att.e_Omega.dot(J * att.e_Omega) + att.Psi + c_r * (J * att.e_Omega).dot(att.e);
  out.V_t = 0.5 * gains.k_x() * pos.e_x.squaredNorm() + 0.5 * m * pos.e_v.squaredNorm() +
            c_t * pos.e_x.dot(pos.e_v);

  const double Lambda = lambda * (2.0 * bounds.B_Omega_d + bounds.B) + gains.k_Omega();
  out.M << 2.0 * (c_r - bounds.Gamma), -c_r * Lambda,
      -c_r * Lambda, 2.0 * gains.k_Omega() - c_r * lambda * k_bar * (std::numbers::sqrt2 + 2.0);
  out.M *= 0.5;
  out.N << 2.0 * c_t * gains.k_x(), c_t * gains.k_v(),
      c_t * gains.k_v(), 2.0 * m * (gains.k_v() - c_t);
  out.N /= 2.0 * m;
  out.min_eig_M = min_eigenvalue(out.M);
  out.min_eig_N = min_eigenvalue(out.N);
  return out;
}

bool LyapunovReport::all_positive_definite() const {
  return std::all_of(loops.begin(), loops.end(),
                     [](const LoopLyapunov& l) { return l.positive_definite(); });
}

LyapunovReport lyapunov_report(std::vector<LoopLyapunov> loops) {
  LyapunovReport r;
  for (const LoopLyapunov& l : loops) r.V_total += l.V_r + l.V_t;
  r.loops = std::move(loops);
  return r;
}

}  // namespace losfc
