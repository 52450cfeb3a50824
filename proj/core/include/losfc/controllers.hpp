#pragma once

#include <Eigen/Dense>

#include "losfc/errors.hpp"
#include "losfc/rigid_body.hpp"

namespace losfc {

using Mat2 = Eigen::Matrix2d;

/// Feedback gains of one loop. c_r and c_t only enter the Lyapunov
/// diagnostics, never the control law.
class LoopGains {
 public:
  /// Throws std::invalid_argument unless every gain is positive and finite.
  LoopGains(double k_Omega, double k_x, double k_v, double c_r = 0.01, double c_t = 0.01);

  double k_Omega() const { return k_Omega_; }
  double k_x() const { return k_x_; }
  double k_v() const { return k_v_; }
  double c_r() const { return c_r_; }
  double c_t() const { return c_t_; }

  bool operator==(const LoopGains&) const = default;

 private:
  double k_Omega_, k_x_, k_v_, c_r_, c_t_;
};

struct DesiredKinematics {
  Vec3 Omega_d = Vec3::Zero();
  Vec3 dOmega_d = Vec3::Zero();
  Vec3 x_dd = Vec3::Zero();  // feedforward acceleration, inertial
};

/// u1 = -e_b - k_Omega e_Omega + hat(Omega_d) J (e_Omega + Omega_d) + J dOmega_d
Vec3 leader_moment(const Vec3& e_b, const Vec3& e_Omega1, const Vec3& Omega1_d,
                   const Vec3& dOmega1_d, const Mat3& J1, double k_Omega1);

/// Same structure as leader_moment with the pair error e_{i,i-1}.
Vec3 follower_moment(const Vec3& e_rel, const Vec3& e_Omega_i, const Vec3& Omega_i_d,
                     const Vec3& dOmega_i_d, const Mat3& J_i, double k_Omega_i);

/// f1 = -k_x e_x - k_v e_v + m x_dd_des
Vec3 leader_force(const Vec3& e_x1, const Vec3& e_v1, const Vec3& x1_dd_des, double m1, double k_x1,
                  double k_v1);

/// f_i = -k_x e_x - k_v e_v + m (x_prev_dd + x_rel_dd_des); x_prev_dd comes
/// from the force already chosen for spacecraft i-1.
Vec3 follower_force(const Vec3& e_x_rel, const Vec3& e_v_rel, const Vec3& x_prev_dd,
                    const Vec3& x_rel_dd_des, double m_i, double k_x, double k_v);

/// Desired angular velocity and acceleration of a follower.
///
/// Omega_d = Omega_rel_d + Q_d^T Omega_prev and its derivative
/// dOmega_rel_d - hat(Omega_rel_d) Q_d^T Omega_prev + Q_d^T dOmega_prev.
/// dOmega_prev is the predecessor's acceleration under its own control input;
/// x_dd is x_prev_dd + x_rel_dd_des.
DesiredKinematics follower_desired_kinematics(const Vec3& Omega_rel_d, const Vec3& dOmega_rel_d,
                                              const Rotation& Q_d, const Vec3& Omega_prev,
                                              const Vec3& dOmega_prev, const Vec3& x_prev_dd,
                                              const Vec3& x_rel_dd_des);

/// Lyapunov terms and stability matrices of one loop (leader or pair).
struct LoopLyapunov {
  double V_r = 0.0;
  double V_t = 0.0;
  Mat2 M = Mat2::Zero();
  Mat2 N = Mat2::Zero();
  double min_eig_M = 0.0;
  double min_eig_N = 0.0;

  bool positive_definite() const { return min_eig_M > 0.0 && min_eig_N > 0.0; }
};

/// Inputs to loop_lyapunov that vary along a run.
struct LoopBounds {
  double Gamma = 0.0;      // from rate_constants
  double B = 0.0;          // from rate_constants
  double B_Omega_d = 0.0;  // bound on the desired angular velocities
};

LoopLyapunov loop_lyapunov(const AttitudeErrorState& att, const PositionErrorState& pos,
                           const BodyParams& body, const LoopGains& gains, double k_bar,
                           const LoopBounds& bounds);

struct LyapunovReport {
  double V_total = 0.0;
  std::vector<LoopLyapunov> loops;  // leader first, then pairs (2,1), (3,2), ...

  bool all_positive_definite() const;
};

LyapunovReport lyapunov_report(std::vector<LoopLyapunov> loops);

}  // namespace losfc
