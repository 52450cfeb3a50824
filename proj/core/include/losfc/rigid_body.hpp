#pragma once

#include <functional>
#include <span>
#include <vector>

#include "losfc/so3.hpp"

namespace losfc {

/// Mass properties of one spacecraft. Validated on construction.
class BodyParams {
 public:
  /// Throws std::invalid_argument unless mass > 0 and inertia is symmetric
  /// (1e-12) positive definite.
  BodyParams(double mass, const Mat3& inertia);

  double mass() const { return mass_; }
  const Mat3& inertia() const { return inertia_; }
  const Mat3& inertia_inverse() const { return inertia_inv_; }
  /// Largest principal moment of inertia.
  double lambda_max() const { return lambda_max_; }

  bool operator==(const BodyParams& o) const { return mass_ == o.mass_ && inertia_ == o.inertia_; }

 private:
  double mass_;
  Mat3 inertia_;
  Mat3 inertia_inv_;
  double lambda_max_;
};

struct RigidBodyState {
  Rotation R;
  Vec3 x = Vec3::Zero();      // m, inertial
  Vec3 v = Vec3::Zero();      // m/s, inertial
  Vec3 Omega = Vec3::Zero();  // rad/s, body frame

  bool operator==(const RigidBodyState&) const = default;
};

struct WrenchInput {
  Vec3 f = Vec3::Zero();  // N, inertial frame
  Vec3 u = Vec3::Zero();  // N m, body frame
};

struct StateDerivative {
  Mat3 dR;
  Vec3 dx;
  Vec3 dv;
  Vec3 dOmega;
};

/// Translational and Euler rotational equations of motion.
StateDerivative state_derivative(const RigidBodyState& state, const BodyParams& params,
                                 const WrenchInput& input);

/// Body angular acceleration J^-1 (u - Omega x J Omega).
Vec3 angular_acceleration(const Vec3& omega, const BodyParams& params, const Vec3& moment);

using ControlEvaluator =
    std::function<std::vector<WrenchInput>(double t, std::span<const RigidBodyState> states)>;

/// One classical RK4 step over the stacked state of all spacecraft.
///
/// The controller is evaluated at every stage. Stage attitudes handed to the
/// controller, and the attitudes returned, are projected onto SO(3); this
/// amounts to integrating a smooth extension of the vector field off the
/// group, so the method stays fourth order.
std::vector<RigidBodyState> rk4_step(std::span<const RigidBodyState> states,
                                     std::span<const BodyParams> params, double t, double dt,
                                     const ControlEvaluator& control);

double rotational_kinetic_energy(const RigidBodyState& state, const BodyParams& params);

}  // namespace losfc
