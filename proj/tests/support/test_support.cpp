#include "test_support.hpp"

#include <cmath>

#include <Eigen/Geometry>

namespace losfc::testing {

Mat3 Rng::mat(double scale) {
  Mat3 m;
  for (int i = 0; i < 9; ++i) m(i / 3, i % 3) = scale * normal();
  return m;
}

UnitVec3 Rng::unit() {
  for (;;) {
    const Vec3 v = vec();
    if (v.norm() > 1e-3) return UnitVec3::normalize(v);
  }
}

Rotation Rng::rotation() {
  Eigen::Vector4d q(normal(), normal(), normal(), normal());
  q.normalize();
  const Eigen::Quaterniond quat(q(0), q(1), q(2), q(3));
  return project_so3(quat.toRotationMatrix());
}

Rotation Rng::near(const Rotation& R, double radius) {
  // uniform in the ball: direction uniform, radius ~ r^(1/3)
  const Vec3 w = unit().vec() * radius * std::cbrt(uniform(0.0, 1.0));
  return R * exp_so3(w);
}

double central_difference(const std::function<double(double)>& f, double h) {
  return (f(h) - f(-h)) / (2.0 * h);
}

Vec3 central_difference(const std::function<Vec3(double)>& f, double h) {
  return (f(h) - f(-h)) / (2.0 * h);
}

RateBounds rate_bounds(const RateSample& s, double B_Omega_d) {
  const BoundConstants bc = spectral_bound_constants(s.K);
  const RateConstants rc = rate_constants(bc, s.K_dot);
  const double e = s.e.norm();
  const double base = s.e.dot(s.e_Omega);
  return RateBounds{
      .gamma_leader_form = base + rc.Gamma * e,
      .gamma_pair_form = base + std::sqrt(rc.Gamma) * e * e,
      .gamma_squared_form = base + rc.Gamma * e * e,
      .rate = s.K.trace() / std::sqrt(2.0) * s.e_Omega.norm() + (B_Omega_d + rc.B) * e,
  };
}

std::vector<RigidBodyState> extrapolate(std::span<const RigidBodyState> states,
                                        std::span<const BodyParams> params,
                                        std::span<const WrenchInput> inputs, double tau) {
  std::vector<RigidBodyState> out;
  out.reserve(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    const RigidBodyState& s = states[i];
    const StateDerivative d = state_derivative(s, params[i], inputs[i]);
    out.push_back(RigidBodyState{s.R * exp_so3(tau * s.Omega), s.x + tau * s.v, s.v + tau * d.dv,
                                 s.Omega + tau * d.dOmega});
  }
  return out;
}

std::vector<RateSample> chain_rate_samples(double t, std::span<const RigidBodyState> states, const Scenario& s,
                                           double h) {
  const std::vector<BodyParams> params = s.params();
  const ChainEvaluation now = evaluate_chain(t, states, s);
  const std::vector<WrenchInput> inputs = now.inputs();
  const ChainEvaluation plus = evaluate_chain(t + h, extrapolate(states, params, inputs, h), s);
  const ChainEvaluation minus = evaluate_chain(t - h, extrapolate(states, params, inputs, -h), s);

  std::vector<RateSample> out;
  for (std::size_t l = 0; l < now.loops.size(); ++l) {
    const LoopEvaluation& e = now.loops[l];
    out.push_back(RateSample{
        .Psi = e.att.Psi,
        .e = e.att.e,
        .e_Omega = e.att.e_Omega,
        .K = e.att.K,
        .K_dot = e.K_dot,
        .dPsi = (plus.loops[l].att.Psi - minus.loops[l].att.Psi) / (2.0 * h),
        .de = (plus.loops[l].att.e - minus.loops[l].att.e) / (2.0 * h),
    });
  }
  return out;
}

std::vector<RigidBodyState> integrate(const Scenario& s, double dt, double t_final) {
  const std::vector<BodyParams> params = s.params();
  std::vector<RigidBodyState> states = s.initial_states();
  const auto control = [&s](double t, std::span<const RigidBodyState> x) { return evaluate_controls(t, x, s); };
  const auto steps = std::llround(t_final / dt);
  for (long long k = 0; k < steps; ++k) states = rk4_step(states, params, static_cast<double>(k) * dt, dt, control);
  return states;
}

double state_distance(std::span<const RigidBodyState> a, std::span<const RigidBodyState> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d = std::max(d, (a[i].R.matrix() - b[i].R.matrix()).norm() + (a[i].x - b[i].x).norm() +
                        (a[i].v - b[i].v).norm() + (a[i].Omega - b[i].Omega).norm());
  }
  return d;
}

namespace {

struct MovingPoint {
  Vec3 x, v;
  Vec3 at(double tau) const { return x + tau * v; }
};

MovingPoint random_point(Rng& rng, double range, double speed) { return {rng.vec(range), rng.vec(speed)}; }

bool well_separated(const Vec3& a, const Vec3& b, const Vec3& c, double min_angle) {
  const double s = std::sin(min_angle);
  const Vec3 ab = b - a, ac = c - a, bc = c - b;
  if (ab.norm() < 1.0 || ac.norm() < 1.0 || bc.norm() < 1.0) return false;
  return ab.normalized().cross(ac.normalized()).norm() > s && (-ab).normalized().cross(bc.normalized()).norm() > s;
}

double random_gain(Rng& rng) { return rng.uniform(1.0, 50.0); }

}  // namespace

RateSample random_leader_rate_sample(Rng& rng, double* B_Omega_d, double h) {
  for (;;) {
    const MovingPoint self = random_point(rng, 10.0, 1.0);
    const MovingPoint a = random_point(rng, 100.0, 1.0);
    const MovingPoint b = random_point(rng, 100.0, 1.0);
    if (!well_separated(self.x, a.x, b.x, 0.1)) continue;
    const LeaderGains g(random_gain(rng), random_gain(rng));
    const Rotation R = rng.rotation();
    const Rotation Rd = rng.near(R, rng.uniform(0.0, 3.0));
    const Vec3 Omega = rng.vec();
    const Vec3 Omega_d = rng.vec();

    auto loop = [&](double tau) {
      const UnitVec3 sA = los_unit(self.at(tau), a.at(tau));
      const UnitVec3 sB = los_unit(self.at(tau), b.at(tau));
      const Rotation Rt = R * exp_so3(tau * Omega);
      const Rotation Rdt = Rd * exp_so3(tau * Omega_d);
      return psi_leader(to_body(Rt, sA), to_body(Rt, sB), to_body(Rdt, sA), to_body(Rdt, sB), g);
    };
    const UnitVec3 sA = los_unit(self.x, a.x);
    const UnitVec3 sB = los_unit(self.x, b.x);
    const LosError now = loop(0.0);
    RateSample s{
        .Psi = now.Psi,
        .e = now.e,
        .e_Omega = Omega - Omega_d,
        .K = weighting_matrix(sA, sB, g.first(), g.second()),
        .K_dot = weighting_rate(sA, sB, los_rate(self.x, a.x, self.v, a.v), los_rate(self.x, b.x, self.v, b.v),
                                g.first(), g.second()),
    };
    if (!(s.Psi < spectral_bound_constants(s.K).ceiling)) continue;
    s.dPsi = central_difference([&](double tau) { return loop(tau).Psi; }, h);
    s.de = central_difference([&](double tau) { return loop(tau).e; }, h);
    *B_Omega_d = Omega_d.norm();
    return s;
  }
}

RateSample random_pair_rate_sample(Rng& rng, double* B_Omega_d, double h) {
  for (;;) {
    const MovingPoint p1 = random_point(rng, 50.0, 1.0);
    const MovingPoint p2 = random_point(rng, 50.0, 1.0);
    const MovingPoint c = random_point(rng, 50.0, 1.0);
    if (!well_separated(p1.x, p2.x, c.x, 0.1)) continue;
    const PairGains g(random_gain(rng), random_gain(rng));
    const Rotation R1 = rng.rotation();
    const Rotation Qd = rng.rotation();
    const Rotation R2 = rng.near(R1 * Qd, rng.uniform(0.0, 3.0));
    const Vec3 Omega1 = rng.vec();
    const Vec3 Omega2 = rng.vec();
    const Vec3 Omega_rel_d = rng.vec();

    auto measure = [&](double tau) {
      return measure_pair(R1 * exp_so3(tau * Omega1), {p1.at(tau), p1.v}, R2 * exp_so3(tau * Omega2),
                          {p2.at(tau), p2.v}, {c.at(tau), c.v});
    };
    auto loop = [&](double tau) { return psi_pair(measure(tau), Qd * exp_so3(tau * Omega_rel_d), g); };
    const LosPairMeasurements m = measure(0.0);
    const LosError now = loop(0.0);
    const Vec3 Omega2_d = Omega_rel_d + Qd.transpose() * Omega1;
    RateSample s{
        .Psi = now.Psi,
        .e = now.e,
        .e_Omega = Omega2 - Omega2_d,
        .K = weighting_matrix(m.s21, m.s213, g.first(), g.second()),
        .K_dot = weighting_rate(m.s21, m.s213, m.mu21, m.mu213, g.first(), g.second()),
    };
    if (!(s.Psi < pair_bound_constants(g).ceiling)) continue;
    s.dPsi = central_difference([&](double tau) { return loop(tau).Psi; }, h);
    s.de = central_difference([&](double tau) { return loop(tau).e; }, h);
    *B_Omega_d = Omega2_d.norm();
    return s;
  }
}

PairGeometry random_pair_geometry(Rng& rng, double min_angle) {
  for (;;) {
    const MovingPoint p1 = random_point(rng, 50.0, 1.0);
    const MovingPoint p2 = random_point(rng, 50.0, 1.0);
    const MovingPoint c = random_point(rng, 50.0, 1.0);
    if (!well_separated(p1.x, p2.x, c.x, min_angle)) continue;
    const Rotation R1 = rng.rotation();
    const Rotation R2 = rng.rotation();
    const PointState a{p1.x, p1.v}, b{p2.x, p2.v}, common{c.x, c.v};
    return PairGeometry{R1, R2, a, b, common, measure_pair(R1, a, R2, b, common)};
  }
}

}  // namespace losfc::testing
