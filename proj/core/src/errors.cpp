#include "losfc/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace losfc {

LosError psi_leader(const UnitVec3& bA, const UnitVec3& bB, const UnitVec3& bA_d,
                    const UnitVec3& bB_d, const LeaderGains& g) {
  return LosError{
      .Psi = g.first() * (1.0 - bA.dot(bA_d)) + g.second() * (1.0 - bB.dot(bB_d)),
      .e = g.first() * bA.cross(bA_d) + g.second() * bB.cross(bB_d),
  };
}

Mat3 weighting_matrix(const UnitVec3& s1, const UnitVec3& s2, double k1, double k2) {
  return k1 * s1.vec() * s1.vec().transpose() + k2 * s2.vec() * s2.vec().transpose();
}

Mat3 weighting_rate(const UnitVec3& s1, const UnitVec3& s2, const Vec3& mu1, const Vec3& mu2,
                    double k1, double k2) {
  const Mat3 p1 = s1.vec() * s1.vec().transpose();
  const Mat3 p2 = s2.vec() * s2.vec().transpose();
  return k1 * (hat(mu1) * p1 - p1 * hat(mu1)) + k2 * (hat(mu2) * p2 - p2 * hat(mu2));
}

LosErrorMatrix psi_leader_matrix(const Rotation& R1, const Rotation& R1_d, const UnitVec3& sA,
                                 const UnitVec3& sB, const LeaderGains& g) {
  if (!(sA.cross(sB).norm() > kCollinearTolerance)) {
    throw GeometryError("leader beacons A and B are collinear");
  }
  const Mat3 K = weighting_matrix(sA, sB, g.first(), g.second());
  const Mat3& R = R1.matrix();
  const Mat3& Rd = R1_d.matrix();
  return LosErrorMatrix{
      .Psi = (K * (Mat3::Identity() - R * Rd.transpose())).trace(),
      .e = vee(Rd.transpose() * K * R - R.transpose() * K * Rd),
      .K = K,
  };
}

LosError psi_pair(const LosPairMeasurements& m, const Rotation& Q21_d, const PairGains& g) {
  const Mat3& Qd = Q21_d.matrix();
  return LosError{
      .Psi = g.first() * (1.0 + m.b12.dot(Qd * m.b21.vec())) +
             g.second() * (1.0 + m.b123.dot(Qd * m.b213.vec())),
      .e = g.first() * (Qd.transpose() * m.b12.vec()).cross(m.b21.vec()) +
           g.second() * (Qd.transpose() * m.b123.vec()).cross(m.b213.vec()),
  };
}

LosErrorMatrix psi_pair_matrix(const Rotation& R1, const Rotation& R2, const Rotation& Q21_d,
                               const UnitVec3& s21, const UnitVec3& s213, const PairGains& g) {
  const Mat3 K = weighting_matrix(s21, s213, g.first(), g.second());
  const Mat3& A = R1.matrix();
  const Mat3& B = R2.matrix();
  const Mat3& Qd = Q21_d.matrix();
  return LosErrorMatrix{
      .Psi = (K * (Mat3::Identity() - A * Qd * B.transpose())).trace(),
      .e = vee(Qd.transpose() * A.transpose() * K * B - B.transpose() * K * A * Qd),
      .K = K,
  };
}

Vec3 angular_velocity_error(const Vec3& Omega, const Vec3& Omega_d) { return Omega - Omega_d; }

PositionErrorState position_errors(const Vec3& x, const Vec3& x_d, const Vec3& v, const Vec3& v_d) {
  return PositionErrorState{.e_x = x - x_d, .e_v = v - v_d};
}

namespace {

// Pairwise sums and differences over the three index pairs (1,2), (2,3), (3,1).
struct PairStats {
  double min_sum, max_sum, max_diff_sq, min_sum_sq, max_sum_sq;
};

PairStats pair_stats(const std::array<double, 3>& f) {
  PairStats p{1e300, -1e300, 0.0, 1e300, 0.0};
  for (int i = 0; i < 3; ++i) {
    const double a = f[i];
    const double b = f[(i + 1) % 3];
    p.min_sum = std::min(p.min_sum, a + b);
    p.max_sum = std::max(p.max_sum, a + b);
    p.max_diff_sq = std::max(p.max_diff_sq, (a - b) * (a - b));
    p.min_sum_sq = std::min(p.min_sum_sq, (a + b) * (a + b));
    p.max_sum_sq = std::max(p.max_sum_sq, (a + b) * (a + b));
  }
  return p;
}

double resolve_ceiling(std::optional<double> ceiling, double h1) {
  const double c = ceiling.value_or(0.9 * h1);
  if (!(c > 0.0) || !(c < h1)) {
    throw std::invalid_argument("error-function ceiling must lie in (0, h1) = (0, " +
                                std::to_string(h1) + ")");
  }
  return c;
}

BoundConstants finish(double h1, double h2, double h3, double h4, double h5,
                      std::optional<double> ceiling) {
  BoundConstants c{h1, h2, h3, h4, h5, resolve_ceiling(ceiling, h1), 0.0, 0.0};
  c.psi_lower = h1 / (h2 + h3);
  c.psi_upper = h1 * h4 / (h5 * (h1 - c.ceiling));
  return c;
}

BoundConstants closed_form(double k1, double k2, std::optional<double> ceiling) {
  const double h1 = 2.0 * std::min(k1, k2);
  const double h2 = 4.0 * std::max({(k1 - k2) * (k1 - k2), k1 * k1, k2 * k2});
  const double h3 = 4.0 * (k1 + k2) * (k1 + k2);
  const double h4 = 2.0 * (k1 + k2);
  // 4 min(k1^2, k2^2): the smallest squared pairwise sum of F = 2 diag(k1, k2, 0)
  const double h5 = 4.0 * std::min(k1 * k1, k2 * k2);
  return finish(h1, h2, h3, h4, h5, ceiling);
}

std::array<double, 3> eigenvalues(const Mat3& m) {
  Eigen::SelfAdjointEigenSolver<Mat3> eig(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
  const Vec3 ev = eig.eigenvalues();
  return {ev(0), ev(1), ev(2)};
}

}  // namespace

BoundConstants leader_bound_constants(const LeaderGains& g, std::optional<double> psi_ceiling) {
  return closed_form(g.first(), g.second(), psi_ceiling);
}

BoundConstants pair_bound_constants(const PairGains& g, std::optional<double> phi_ceiling) {
  return closed_form(g.first(), g.second(), phi_ceiling);
}

BoundConstants spectral_bound_constants(const Mat3& K, std::optional<double> ceiling) {
  std::array<double, 3> f = eigenvalues(K);
  for (double& v : f) v = 2.0 * std::max(0.0, v);
  const PairStats p = pair_stats(f);
  if (!(p.min_sum > 0.0)) throw std::invalid_argument("weighting matrix has rank below two");
  return finish(p.min_sum, p.max_diff_sq, p.max_sum_sq, p.max_sum, p.min_sum_sq, ceiling);
}

RateConstants rate_constants(const BoundConstants& c, const Mat3& K_dot) {
  std::array<double, 3> f = eigenvalues(K_dot);
  for (double& v : f) v *= 2.0;
  const PairStats p = pair_stats(f);
  // dK/dt is traceless, so some pairwise sums are negative; only positive
  // ones can raise dPsi/dt.
  const double h4 = std::max(0.0, p.max_sum);
  return RateConstants{
      .Gamma = c.h1 * h4 / (c.h5 * (c.h1 - c.ceiling)),
      .B = 2.0 * std::sqrt((2.0 * p.max_diff_sq + p.min_sum_sq) / c.h5),
  };
}

}  // namespace losfc
