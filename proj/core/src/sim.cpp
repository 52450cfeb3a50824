#include "losfc/sim.hpp"

#include <algorithm>
#include <cmath>

namespace losfc {

std::vector<WrenchInput> ChainEvaluation::inputs() const {
  std::vector<WrenchInput> out;
  out.reserve(loops.size());
  for (const LoopEvaluation& l : loops) out.push_back(l.input);
  return out;
}

namespace {

LoopEvaluation evaluate_leader(double t, std::span<const RigidBodyState> states, const Scenario& s) {
  const RigidBodyState& st = states[0];
  const BodyParams& body = s.bodies[0].params;
  const LeaderSpec& spec = s.leader;
  const double kA = spec.los_gains.first();
  const double kB = spec.los_gains.second();

  const AttitudeSample ref = sample_attitude_trajectory(spec.attitude, t);
  const PositionSample pref = sample_position(spec.position, t);
  const PointState self{st.x, st.v};
  const SightLine a = beacon_sight_line(spec.beacon_a, self, states);
  const SightLine b = beacon_sight_line(spec.beacon_b, self, states);

  const LeaderLosMeasurements m = LeaderLosMeasurements::observe(st.R, a.s, b.s, a.mu, b.mu);
  const auto [bA_d, bB_d] = desired_leader_los(ref.R, a.s, b.s);
  const LosError err = psi_leader(m.bA, m.bB, bA_d, bB_d, spec.los_gains);

  LoopEvaluation loop{.desired_attitude = ref.R, .attitude_error = attitude_error_vector(st.R, ref.R)};
  loop.att = AttitudeErrorState{err.Psi, err.e, angular_velocity_error(st.Omega, ref.Omega),
                                weighting_matrix(a.s, b.s, kA, kB)};
  loop.K_dot = weighting_rate(a.s, b.s, a.mu, b.mu, kA, kB);
  loop.pos = position_errors(st.x, pref.x, st.v, pref.v);
  loop.desired = DesiredKinematics{ref.Omega, ref.dOmega, pref.a};
  loop.max_mu = std::max(a.mu.norm(), b.mu.norm());
  loop.input.u = leader_moment(err.e, loop.att.e_Omega, ref.Omega, ref.dOmega, body.inertia(),
                               spec.gains.k_Omega());
  loop.input.f = leader_force(loop.pos.e_x, loop.pos.e_v, pref.a, body.mass(), spec.gains.k_x(),
                              spec.gains.k_v());
  return loop;
}

// Pair (k+2, k+1) in 1-based numbering: spacecraft k+1 follows spacecraft k (0-based).
LoopEvaluation evaluate_follower(double t, std::size_t k, std::span<const RigidBodyState> states,
                                 const Scenario& s, const Vec3& prev_dOmega, const Vec3& prev_acc) {
  const RigidBodyState& p = states[k];
  const RigidBodyState& f = states[k + 1];
  const BodyParams& body = s.bodies[k + 1].params;
  const FollowerSpec& spec = s.followers[k];
  const double ka = spec.los_gains.first();
  const double kb = spec.los_gains.second();

  const PointState c = common_object_state(spec.common, states);
  const LosPairMeasurements m = measure_pair(p.R, {p.x, p.v}, f.R, {f.x, f.v}, c);
  const AttitudeSample ref = sample_attitude_trajectory(spec.relative_attitude, t);
  const PositionSample pref = sample_position(spec.relative_position, t);
  const LosError err = psi_pair(m, ref.R, spec.los_gains);

  LoopEvaluation loop{.desired_attitude = ref.R,
                      .attitude_error = attitude_error_vector(p.R.transpose() * f.R, ref.R)};
  loop.desired = follower_desired_kinematics(ref.Omega, ref.dOmega, ref.R, p.Omega, prev_dOmega,
                                             prev_acc, pref.a);
  loop.Omega_rel_d = ref.Omega;
  loop.att = AttitudeErrorState{err.Psi, err.e, angular_velocity_error(f.Omega, loop.desired.Omega_d),
                                weighting_matrix(m.s21, m.s213, ka, kb)};
  loop.K_dot = weighting_rate(m.s21, m.s213, m.mu21, m.mu213, ka, kb);
  loop.pos = position_errors(f.x - p.x, pref.x, f.v - p.v, pref.v);
  loop.max_mu = std::max({m.mu12.norm(), m.mu21.norm(), m.mu123.norm(), m.mu213.norm()});
  loop.input.u = follower_moment(err.e, loop.att.e_Omega, loop.desired.Omega_d,
                                 loop.desired.dOmega_d, body.inertia(), spec.gains.k_Omega());
  loop.input.f = follower_force(loop.pos.e_x, loop.pos.e_v, prev_acc, pref.a, body.mass(),
                                spec.gains.k_x(), spec.gains.k_v());
  return loop;
}

}  // namespace

ChainEvaluation evaluate_chain(double t, std::span<const RigidBodyState> states, const Scenario& s) {
  if (states.size() != s.size()) throw std::invalid_argument("state count does not match scenario");
  ChainEvaluation out;
  out.loops.reserve(states.size());
  try {
    out.loops.push_back(evaluate_leader(t, states, s));
  } catch (const GeometryError& e) {
    throw GeometryError(std::string("leader: ") + e.what());
  }
  for (std::size_t k = 0; k + 1 < states.size(); ++k) {
    // The predecessor's accelerations under the input it has just been given.
    const WrenchInput& prev = out.loops[k].input;
    const BodyParams& prev_body = s.bodies[k].params;
    const Vec3 prev_dOmega = angular_acceleration(states[k].Omega, prev_body, prev.u);
    const Vec3 prev_acc = prev.f / prev_body.mass();
    try {
      out.loops.push_back(evaluate_follower(t, k, states, s, prev_dOmega, prev_acc));
    } catch (const GeometryError& e) {
      throw GeometryError("pair (" + std::to_string(k + 2) + "," + std::to_string(k + 1) + "): " + e.what());
    }
  }
  return out;
}

std::vector<WrenchInput> evaluate_controls(double t, std::span<const RigidBodyState> states,
                                           const Scenario& s) {
  return evaluate_chain(t, states, s).inputs();
}

SampleDiagnostics diagnose(const ChainEvaluation& chain, const Scenario& s) {
  SampleDiagnostics d;
  for (const LoopEvaluation& l : chain.loops) {
    d.B_Omega_d = std::max({d.B_Omega_d, l.desired.Omega_d.norm(), l.Omega_rel_d.norm()});
    d.B_mu = std::max(d.B_mu, l.max_mu);
  }
  std::vector<LoopLyapunov> loops;
  loops.reserve(chain.loops.size());
  for (std::size_t i = 0; i < chain.loops.size(); ++i) {
    const LoopEvaluation& l = chain.loops[i];
    const LoopGains& gains = i == 0 ? s.leader.gains : s.followers[i - 1].gains;
    const BoundConstants bc = spectral_bound_constants(l.att.K);
    const RateConstants rc = rate_constants(bc, l.K_dot);
    d.rates.push_back(rc);
    loops.push_back(loop_lyapunov(l.att, l.pos, s.bodies[i].params, gains, l.att.K.trace(),
                                  LoopBounds{rc.Gamma, rc.B, d.B_Omega_d}));
  }
  d.lyapunov = lyapunov_report(std::move(loops));
  return d;
}

void NormHistory::add(double v, bool first) {
  if (first) initial = v;
  peak = first ? v : std::max(peak, v);
  final = v;
}

SimulationError::SimulationError(Kind kind, double time, const std::string& what)
    : std::runtime_error(what + " (t = " + std::to_string(time) + " s)"), kind_(kind), time_(time) {}

namespace {

bool all_finite(const std::vector<RigidBodyState>& states) {
  return std::all_of(states.begin(), states.end(), [](const RigidBodyState& s) {
    return s.R.matrix().allFinite() && s.x.allFinite() && s.v.allFinite() && s.Omega.allFinite();
  });
}

void record(RunLog& log, double t, const std::vector<RigidBodyState>& states, const Scenario& s) {
  LogSample sample{t, states, evaluate_chain(t, states, s), {}};
  sample.diagnostics = diagnose(sample.chain, s);

  RunSummary& sum = log.summary;
  const bool first = log.samples.empty();
  if (first) sum.loops.resize(sample.chain.loops.size());
  for (std::size_t i = 0; i < sample.chain.loops.size(); ++i) {
    const LoopEvaluation& l = sample.chain.loops[i];
    LoopSummary& ls = sum.loops[i];
    ls.attitude_error.add(l.attitude_error.norm(), first);
    ls.e_Omega.add(l.att.e_Omega.norm(), first);
    ls.e_x.add(l.pos.e_x.norm(), first);
    ls.e_v.add(l.pos.e_v.norm(), first);
    ls.Psi.add(l.att.Psi, first);
    sum.max_moment = std::max(sum.max_moment, l.input.u.norm());
    sum.max_force = std::max(sum.max_force, l.input.f.norm());
  }
  const SampleDiagnostics& d = sample.diagnostics;
  sum.B_Omega_d = std::max(sum.B_Omega_d, d.B_Omega_d);
  sum.B_mu = std::max(sum.B_mu, d.B_mu);
  if (!d.lyapunov.all_positive_definite()) ++sum.indefinite_samples;
  if (!first) {
    const double prev = log.samples.back().diagnostics.lyapunov.V_total;
    if (d.lyapunov.V_total > prev + 1e-8 * std::max(1.0, prev)) ++sum.lyapunov_increases;
  }
  log.samples.push_back(std::move(sample));
}

}  // namespace

RunLog run(const Scenario& s) {
  require_valid(s);
  const std::vector<BodyParams> params = s.params();
  std::vector<RigidBodyState> states = s.initial_states();
  const auto steps = static_cast<std::size_t>(std::llround(s.t_final / s.dt));

  RunLog log;
  log.summary.steps = steps;
  log.samples.reserve(steps / s.decimation + 2);
  const ControlEvaluator control = [&s](double t, std::span<const RigidBodyState> st) {
    return evaluate_controls(t, st, s);
  };

  double t = 0.0;
  try {
    record(log, t, states, s);
    for (std::size_t k = 1; k <= steps; ++k) {
      states = rk4_step(states, params, t, s.dt, control);
      t = static_cast<double>(k) * s.dt;
      if (!all_finite(states)) {
        throw SimulationError(SimulationError::Kind::non_finite, t, "state became non-finite");
      }
      if (k % s.decimation == 0 || k == steps) record(log, t, states, s);
    }
  } catch (const GeometryError& e) {
    throw SimulationError(SimulationError::Kind::geometry, t, e.what());
  } catch (const std::invalid_argument& e) {
    // project_so3 rejects a blown-up attitude before the finiteness check sees it
    throw SimulationError(SimulationError::Kind::non_finite, t, e.what());
  }
  return log;
}

}  // namespace losfc
