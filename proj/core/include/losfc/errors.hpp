#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "losfc/los.hpp"

namespace losfc {

/// Two positive, distinct weights on a pair of sight-line errors.
///
/// Distinctness is required: with equal weights the bound constants below
/// lose their meaning (the quadratic lower bound degenerates).
template <class Tag>
class LosGainPair {
 public:
  LosGainPair(double first, double second) : first_(first), second_(second) {
    if (!(first > 0.0) || !(second > 0.0) || !std::isfinite(first) || !std::isfinite(second)) {
      throw std::invalid_argument(std::string(Tag::name) + " gains must be positive and finite");
    }
    if (first == second) {
      throw std::invalid_argument(std::string(Tag::name) + " gains must be distinct");
    }
  }

  double first() const { return first_; }
  double second() const { return second_; }
  double sum() const { return first_ + second_; }

  bool operator==(const LosGainPair&) const = default;

 private:
  double first_;
  double second_;
};

struct LeaderGainTag {
  static constexpr const char* name = "leader LOS (k_bA, k_bB)";
};
struct PairGainTag {
  static constexpr const char* name = "pair LOS (k_alpha, k_beta)";
};

/// first = k_bA, second = k_bB.
using LeaderGains = LosGainPair<LeaderGainTag>;
/// first = k_alpha (sight line to the other spacecraft), second = k_beta (common-object normal).
using PairGains = LosGainPair<PairGainTag>;

struct LosError {
  double Psi;
  Vec3 e;
};

struct LosErrorMatrix {
  double Psi;
  Vec3 e;
  Mat3 K;
};

struct AttitudeErrorState {
  double Psi = 0.0;
  Vec3 e = Vec3::Zero();
  Vec3 e_Omega = Vec3::Zero();
  Mat3 K = Mat3::Zero();
};

struct PositionErrorState {
  Vec3 e_x = Vec3::Zero();
  Vec3 e_v = Vec3::Zero();
};

/// Leader error function and vector from body-frame sight lines only.
LosError psi_leader(const UnitVec3& bA, const UnitVec3& bB, const UnitVec3& bA_d,
                    const UnitVec3& bB_d, const LeaderGains& g);

/// Same quantities written with full attitudes; used as an oracle and for diagnostics.
LosErrorMatrix psi_leader_matrix(const Rotation& R1, const Rotation& R1_d, const UnitVec3& sA,
                                 const UnitVec3& sB, const LeaderGains& g);

/// Relative error function and vector from the pair's sight lines only.
LosError psi_pair(const LosPairMeasurements& m, const Rotation& Q21_d, const PairGains& g);

/// Matrix form of the relative error with K21 = k_alpha s21 s21^T + k_beta s213 s213^T.
LosErrorMatrix psi_pair_matrix(const Rotation& R1, const Rotation& R2, const Rotation& Q21_d,
                               const UnitVec3& s21, const UnitVec3& s213, const PairGains& g);

/// k1 s1 s1^T + k2 s2 s2^T
Mat3 weighting_matrix(const UnitVec3& s1, const UnitVec3& s2, double k1, double k2);

/// Time derivative of weighting_matrix when s_i rotates with angular velocity mu_i.
Mat3 weighting_rate(const UnitVec3& s1, const UnitVec3& s2, const Vec3& mu1, const Vec3& mu2,
                    double k1, double k2);

Vec3 angular_velocity_error(const Vec3& Omega, const Vec3& Omega_d);

PositionErrorState position_errors(const Vec3& x, const Vec3& x_d, const Vec3& v, const Vec3& v_d);

/// Constants of the local quadratic bounds psi_lower ||e||^2 <= Psi <= psi_upper ||e||^2,
/// valid while Psi < ceiling.
struct BoundConstants {
  double h1, h2, h3, h4, h5;
  double ceiling;
  double psi_lower;
  double psi_upper;
};

/// Closed-form constants from the gains. They assume sA is normal to sB, so
/// that K1 has eigenvalues (k_bA, k_bB, 0). ceiling must lie in (0, h1);
/// the default is 0.9 h1.
BoundConstants leader_bound_constants(const LeaderGains& g, std::optional<double> psi_ceiling = std::nullopt);

/// The pair weighting directions s21 and s213 are always normal, so the
/// closed form is exact here.
BoundConstants pair_bound_constants(const PairGains& g, std::optional<double> phi_ceiling = std::nullopt);

/// Constants from the eigenvalues of an arbitrary positive semidefinite K.
/// Matches the closed forms when K has eigenvalues (k1, k2, 0); also valid
/// for beacons that are not perpendicular.
BoundConstants spectral_bound_constants(const Mat3& K, std::optional<double> ceiling = std::nullopt);

/// Terms that account for the rotation of the sight lines themselves.
struct RateConstants {
  /// dPsi/dt <= e . e_Omega + Gamma ||e||^2
  double Gamma;
  /// contribution B ||e|| of dK/dt to ||de/dt||
  double B;
};

/// Evaluated from the spectrum of dK/dt at one instant.
RateConstants rate_constants(const BoundConstants& c, const Mat3& K_dot);

}  // namespace losfc
