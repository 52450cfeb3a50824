#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "losfc/scenario.hpp"

namespace losfc {

/// Everything computed for one control loop at one instant. Loop 0 is the
/// leader; loop i > 0 is the pair (i+1, i) in 1-based spacecraft numbering.
struct LoopEvaluation {
  Rotation desired_attitude;  // R1_d for the leader, Q_{i,i-1}^d for a pair
  Vec3 attitude_error;        // reporting error e_R1 or e_Q from true attitudes
  AttitudeErrorState att{};   // LOS-form Psi and e, e_Omega, weighting matrix K
  Mat3 K_dot = Mat3::Zero();
  PositionErrorState pos{};
  DesiredKinematics desired{};
  Vec3 Omega_rel_d = Vec3::Zero();  // pairs only
  double max_mu = 0.0;              // largest sight-line rate in the measurement set
  WrenchInput input{};
};

struct ChainEvaluation {
  std::vector<LoopEvaluation> loops;
  std::vector<WrenchInput> inputs() const;
};

/// Measurements, errors and controls for every spacecraft, in chain order.
///
/// Loop i only reads the full states of spacecraft 0..i; beacons and common
/// objects contribute their position and velocity alone, as a sight line
/// would. A GeometryError names the offending loop.
ChainEvaluation evaluate_chain(double t, std::span<const RigidBodyState> states, const Scenario& s);

std::vector<WrenchInput> evaluate_controls(double t, std::span<const RigidBodyState> states,
                                           const Scenario& s);

/// Lyapunov terms and run-time bound estimates at one instant.
struct SampleDiagnostics {
  LyapunovReport lyapunov;
  std::vector<RateConstants> rates;  // per loop
  double B_Omega_d = 0.0;            // max desired angular speed over the formation
  double B_mu = 0.0;                 // max sight-line rate over the formation
};

SampleDiagnostics diagnose(const ChainEvaluation& chain, const Scenario& s);

struct LogSample {
  double t;
  std::vector<RigidBodyState> states;
  ChainEvaluation chain;
  SampleDiagnostics diagnostics;
};

struct NormHistory {
  double initial = 0.0;
  double peak = 0.0;
  double final = 0.0;
  void add(double v, bool first);
};

struct LoopSummary {
  NormHistory attitude_error, e_Omega, e_x, e_v, Psi;
};

struct RunSummary {
  std::size_t steps = 0;
  std::vector<LoopSummary> loops;
  /// Consecutive logged samples with V_{k+1} > V_k + 1e-8 max(1, V_k).
  std::size_t lyapunov_increases = 0;
  /// Logged samples where some M or N matrix is not positive definite.
  std::size_t indefinite_samples = 0;
  double B_Omega_d = 0.0;
  double B_mu = 0.0;
  double max_moment = 0.0;
  double max_force = 0.0;
};

struct RunLog {
  std::vector<LogSample> samples;
  RunSummary summary;
};

class SimulationError : public std::runtime_error {
 public:
  enum class Kind { geometry, non_finite };
  SimulationError(Kind kind, double time, const std::string& what);
  Kind kind() const { return kind_; }
  double time() const { return time_; }

 private:
  Kind kind_;
  double time_;
};

/// Integrates the closed loop from t = 0 to t_final with rk4_step and logs
/// every decimation-th step and the final one. Validates the scenario first
/// (ValidationError); aborts with SimulationError on degenerate geometry or a
/// non-finite state.
RunLog run(const Scenario& s);

}  // namespace losfc
