#include "losfc/rigid_body.hpp"

#include <stdexcept>
#include <string>

namespace losfc {

BodyParams::BodyParams(double mass, const Mat3& inertia) : mass_(mass), inertia_(inertia) {
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw std::invalid_argument("mass must be positive and finite, got " + std::to_string(mass));
  }
  if (!inertia.allFinite() || (inertia - inertia.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("inertia matrix must be finite and symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Mat3> eig(inertia);
  if (eig.eigenvalues().minCoeff() <= 0.0) {
    throw std::invalid_argument("inertia matrix must be positive definite");
  }
  lambda_max_ = eig.eigenvalues().maxCoeff();
  inertia_inv_ = inertia.inverse();
}

Vec3 angular_acceleration(const Vec3& omega, const BodyParams& params, const Vec3& moment) {
  return params.inertia_inverse() * (moment - omega.cross(params.inertia() * omega));
}

StateDerivative state_derivative(const RigidBodyState& state, const BodyParams& params,
                                 const WrenchInput& input) {
  return StateDerivative{
      .dR = state.R.matrix() * hat(state.Omega),
      .dx = state.v,
      .dv = input.f / params.mass(),
      .dOmega = angular_acceleration(state.Omega, params, input.u),
  };
}

namespace {

std::vector<StateDerivative> derivatives(std::span<const RigidBodyState> states,
                                         std::span<const BodyParams> params, double t,
                                         const ControlEvaluator& control) {
  const std::vector<WrenchInput> inputs = control(t, states);
  if (inputs.size() != states.size()) {
    throw std::logic_error("control evaluator returned " + std::to_string(inputs.size()) +
                           " inputs for " + std::to_string(states.size()) + " bodies");
  }
  std::vector<StateDerivative> out;
  out.reserve(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    out.push_back(state_derivative(states[i], params[i], inputs[i]));
  }
  return out;
}

std::vector<RigidBodyState> advance(std::span<const RigidBodyState> base,
                                    const std::vector<StateDerivative>& k, double h) {
  std::vector<RigidBodyState> out;
  out.reserve(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    out.push_back(RigidBodyState{
        .R = project_so3(base[i].R.matrix() + h * k[i].dR),
        .x = base[i].x + h * k[i].dx,
        .v = base[i].v + h * k[i].dv,
        .Omega = base[i].Omega + h * k[i].dOmega,
    });
  }
  return out;
}

}  // namespace

std::vector<RigidBodyState> rk4_step(std::span<const RigidBodyState> states,
                                     std::span<const BodyParams> params, double t, double dt,
                                     const ControlEvaluator& control) {
  if (!(dt > 0.0)) throw std::invalid_argument("rk4_step: dt must be positive");
  if (params.size() != states.size()) {
    throw std::invalid_argument("rk4_step: params and states differ in length");
  }
  const auto k1 = derivatives(states, params, t, control);
  const auto s2 = advance(states, k1, 0.5 * dt);
  const auto k2 = derivatives(s2, params, t + 0.5 * dt, control);
  const auto s3 = advance(states, k2, 0.5 * dt);
  const auto k3 = derivatives(s3, params, t + 0.5 * dt, control);
  const auto s4 = advance(states, k3, dt);
  const auto k4 = derivatives(s4, params, t + dt, control);

  const double w = dt / 6.0;
  std::vector<RigidBodyState> out;
  out.reserve(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    const RigidBodyState& s = states[i];
    out.push_back(RigidBodyState{
        .R = project_so3(s.R.matrix() + w * (k1[i].dR + 2.0 * k2[i].dR + 2.0 * k3[i].dR + k4[i].dR)),
        .x = s.x + w * (k1[i].dx + 2.0 * k2[i].dx + 2.0 * k3[i].dx + k4[i].dx),
        .v = s.v + w * (k1[i].dv + 2.0 * k2[i].dv + 2.0 * k3[i].dv + k4[i].dv),
        .Omega = s.Omega + w * (k1[i].dOmega + 2.0 * k2[i].dOmega + 2.0 * k3[i].dOmega + k4[i].dOmega),
    });
  }
  return out;
}

double rotational_kinetic_energy(const RigidBodyState& state, const BodyParams& params) {
  return 0.5 * state.Omega.dot(params.inertia() * state.Omega);
}

}  // namespace losfc
