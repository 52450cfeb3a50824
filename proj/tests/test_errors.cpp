#include <cmath>

#include <gtest/gtest.h>

#include "losfc/errors.hpp"
#include "test_support.hpp"

namespace losfc {
namespace {

using testing::Rng;

const LeaderGains kLeader(25.0, 25.1);
const PairGains kPair(25.0, 25.1);
const UnitVec3 kE1 = UnitVec3::from_unit(Vec3::UnitX());
const UnitVec3 kE2 = UnitVec3::from_unit(Vec3::UnitY());

LosError leader_from_attitudes(const Rotation& R, const Rotation& Rd, const UnitVec3& sA, const UnitVec3& sB,
                               const LeaderGains& g) {
  return psi_leader(to_body(R, sA), to_body(R, sB), to_body(Rd, sA), to_body(Rd, sB), g);
}

TEST(Gains, MustBePositiveAndDistinct) {
  EXPECT_THROW(LeaderGains(25.0, 25.0), std::invalid_argument);
  EXPECT_THROW(LeaderGains(-1.0, 2.0), std::invalid_argument);
  EXPECT_THROW(PairGains(0.0, 2.0), std::invalid_argument);
  EXPECT_THROW(PairGains(3.0, 3.0), std::invalid_argument);
  EXPECT_DOUBLE_EQ(kPair.sum(), 50.1);
}

TEST(PsiLeader, AlignedIsZero) {
  const UnitVec3 a = UnitVec3::normalize(Vec3(1, 2, 3)), b = UnitVec3::normalize(Vec3(-1, 0, 2));
  const LosError err = psi_leader(a, b, a, b, kLeader);
  EXPECT_NEAR(err.Psi, 0.0, 1e-14);  // k (1 - a.a) with a.a rounded
  EXPECT_EQ(err.e, Vec3::Zero());
}

TEST(PsiLeader, AntipodalIsMaximal) {
  const UnitVec3 a = UnitVec3::normalize(Vec3(1, 2, 3)), b = UnitVec3::normalize(Vec3(-1, 0, 2));
  const LosError err = psi_leader(a, b, -a, -b, kLeader);
  EXPECT_DOUBLE_EQ(err.Psi, 2.0 * (25.0 + 25.1));
  EXPECT_LT(err.e.norm(), 1e-14);
}

TEST(PsiLeader, EqualsMatrixForm) {
  Rng rng(301);
  for (int i = 0; i < 1000; ++i) {
    const Rotation R = rng.rotation(), Rd = rng.rotation();
    const UnitVec3 sA = rng.unit(), sB = rng.unit();
    if (sA.cross(sB).norm() < 1e-3) continue;
    const LosError los = leader_from_attitudes(R, Rd, sA, sB, kLeader);
    const LosErrorMatrix mat = psi_leader_matrix(R, Rd, sA, sB, kLeader);
    ASSERT_NEAR(los.Psi, mat.Psi, 1e-12);
    ASSERT_LT((los.e - mat.e).norm(), 1e-12);
  }
}

TEST(PsiLeaderMatrix, ZeroAtDesired) {
  const Rotation R = exp_so3(Vec3(0.2, 0.4, -1.0));
  const LosErrorMatrix m = psi_leader_matrix(R, R, kE1, kE2, kLeader);
  EXPECT_NEAR(m.Psi, 0.0, 1e-13);
  EXPECT_LT(m.e.norm(), 1e-13);
}

TEST(PsiLeaderMatrix, WeightingMatrixOfAxisBeacons) {
  const LosErrorMatrix m = psi_leader_matrix(Rotation(), Rotation(), kE1, kE2, kLeader);
  EXPECT_EQ(m.K, Vec3(25.0, 25.1, 0.0).asDiagonal().toDenseMatrix());
  EXPECT_DOUBLE_EQ(m.K.trace(), 50.1);
}

TEST(PsiLeaderMatrix, RejectsCollinearBeacons) {
  EXPECT_THROW(psi_leader_matrix(Rotation(), Rotation(), kE1, -kE1, kLeader), GeometryError);
}

TEST(PsiPair, ZeroAtDesiredRelativeAttitude) {
  Rng rng(302);
  for (int i = 0; i < 100; ++i) {
    const testing::PairGeometry g = testing::random_pair_geometry(rng);
    const Rotation Qd = g.R1.transpose() * g.R2;
    const LosError err = psi_pair(g.m, Qd, kPair);
    EXPECT_NEAR(err.Psi, 0.0, 1e-12);
    EXPECT_LT(err.e.norm(), 1e-12);
  }
}

TEST(PsiPair, ComponentsAreBoundedByOne) {
  Rng rng(303);
  for (int i = 0; i < 1000; ++i) {
    const testing::PairGeometry g = testing::random_pair_geometry(rng);
    const Mat3 Qd = rng.rotation().matrix();
    const Vec3 e_alpha = (Qd.transpose() * g.m.b12.vec()).cross(g.m.b21.vec());
    const Vec3 e_beta = (Qd.transpose() * g.m.b123.vec()).cross(g.m.b213.vec());
    ASSERT_LE(e_alpha.norm(), 1.0 + 1e-15);
    ASSERT_LE(e_beta.norm(), 1.0 + 1e-15);
    ASSERT_LE(psi_pair(g.m, Rotation::from_matrix(Qd), kPair).e.norm(), kPair.sum() + 1e-12);
  }
}

TEST(PsiPair, EqualsMatrixForm) {
  Rng rng(304);
  for (int i = 0; i < 1000; ++i) {
    const testing::PairGeometry g = testing::random_pair_geometry(rng);
    const Rotation Qd = rng.rotation();
    const LosError los = psi_pair(g.m, Qd, kPair);
    const LosErrorMatrix mat = psi_pair_matrix(g.R1, g.R2, Qd, g.m.s21, g.m.s213, kPair);
    ASSERT_NEAR(los.Psi, mat.Psi, 1e-12);
    ASSERT_LT((los.e - mat.e).norm(), 1e-12);
    ASSERT_NEAR(mat.K.trace(), kPair.sum(), 1e-12);
  }
}

TEST(AngularVelocityError, Subtracts) {
  EXPECT_EQ(angular_velocity_error(Vec3(1, 1, 1), Vec3(1, 1, 1)), Vec3::Zero());
  EXPECT_EQ(angular_velocity_error(Vec3(1, 2, 3), Vec3(1, 1, 1)), Vec3(0, 1, 2));
  const Vec3 a(0.3, -2, 5), b(1, 7, -0.5);
  EXPECT_EQ(angular_velocity_error(a, b), -angular_velocity_error(b, a));
}

TEST(PositionErrors, Examples) {
  const PositionErrorState zero = position_errors(Vec3(1, 2, 3), Vec3(1, 2, 3), Vec3(4, 5, 6), Vec3(4, 5, 6));
  EXPECT_EQ(zero.e_x, Vec3::Zero());
  EXPECT_EQ(zero.e_v, Vec3::Zero());
  // two-spacecraft run at t = 0: leader at its desired origin, follower one
  // metre and three metres off its desired offset [2, -3 + cos 0, 10]
  EXPECT_EQ(position_errors(Vec3::Zero(), Vec3(std::sin(0.0), 0, -std::sin(0.0)), Vec3::Zero(), Vec3::Zero()).e_x,
            Vec3::Zero());
  EXPECT_EQ(position_errors(Vec3(2, -1, 7), Vec3(2, -3 + std::cos(0.0), 10), Vec3::Zero(), Vec3::Zero()).e_x,
            Vec3(0, 1, -3));
}

TEST(WeightingRate, MatchesFiniteDifference) {
  Rng rng(305);
  for (int i = 0; i < 200; ++i) {
    const UnitVec3 s1 = rng.unit(), s2 = rng.unit();
    const Vec3 mu1 = rng.vec(), mu2 = rng.vec();
    const auto K = [&](double tau) {
      return weighting_matrix(UnitVec3::normalize(exp_so3(tau * mu1) * s1.vec()),
                              UnitVec3::normalize(exp_so3(tau * mu2) * s2.vec()), 3.0, 5.0);
    };
    const Mat3 fd = (K(1e-6) - K(-1e-6)) / 2e-6;
    const Mat3 Kd = weighting_rate(s1, s2, mu1, mu2, 3.0, 5.0);
    ASSERT_LT((fd - Kd).norm(), 1e-8);
    ASSERT_NEAR(Kd.trace(), 0.0, 1e-13);
    ASSERT_LT((Kd - Kd.transpose()).norm(), 1e-14);
  }
}

TEST(LeaderBoundConstants, ValuesForTheStandardGains) {
  const BoundConstants c = leader_bound_constants(kLeader);
  EXPECT_DOUBLE_EQ(c.h1, 50.0);
  EXPECT_DOUBLE_EQ(c.h4, 100.2);
  EXPECT_NEAR(c.h3, 10040.04, 1e-9);
  EXPECT_NEAR(c.h2, 4.0 * 25.1 * 25.1, 1e-12);
  EXPECT_NEAR(c.h5, 4.0 * 25.0 * 25.0, 1e-12);
  EXPECT_DOUBLE_EQ(c.ceiling, 45.0);
  EXPECT_LE(c.h1, c.h4);
}

TEST(LeaderBoundConstants, LowerNeverExceedsUpper) {
  for (double frac = 0.01; frac < 1.0; frac += 0.01) {
    const BoundConstants c = leader_bound_constants(kLeader, frac * 50.0);
    ASSERT_LE(c.psi_lower, c.psi_upper) << frac;
  }
}

TEST(LeaderBoundConstants, RejectsCeilingOutsideRange) {
  EXPECT_THROW(leader_bound_constants(kLeader, 0.0), std::invalid_argument);
  EXPECT_THROW(leader_bound_constants(kLeader, 50.0), std::invalid_argument);
  EXPECT_THROW(leader_bound_constants(kLeader, 60.0), std::invalid_argument);
}

TEST(PairBoundConstants, MirrorsLeaderConstants) {
  const BoundConstants p = pair_bound_constants(kPair);
  const BoundConstants l = leader_bound_constants(kLeader);
  EXPECT_DOUBLE_EQ(p.h1, 50.0);
  EXPECT_EQ(p.psi_lower, l.psi_lower);
  EXPECT_EQ(p.psi_upper, l.psi_upper);
}

TEST(SpectralBoundConstants, MatchClosedFormForNormalDirections) {
  Rng rng(306);
  for (int i = 0; i < 100; ++i) {
    const UnitVec3 a = rng.unit();
    const UnitVec3 b = normalized_cross(a, rng.unit());
    const BoundConstants s = spectral_bound_constants(weighting_matrix(a, b, 25.0, 25.1));
    const BoundConstants c = leader_bound_constants(kLeader);
    EXPECT_NEAR(s.h1, c.h1, 1e-12);
    EXPECT_NEAR(s.h2, c.h2, 1e-9);
    EXPECT_NEAR(s.h3, c.h3, 1e-9);
    EXPECT_NEAR(s.h4, c.h4, 1e-12);
    EXPECT_NEAR(s.h5, c.h5, 1e-9);
  }
}

TEST(QuadraticBounds, LeaderSandwich) {
  Rng rng(307);
  const BoundConstants c = leader_bound_constants(kLeader);
  int checked = 0;
  while (checked < 1000) {
    const Rotation R = rng.rotation();
    const Rotation Rd = rng.near(R, 3.0);
    const LosError err = leader_from_attitudes(R, Rd, kE1, kE2, kLeader);
    if (!(err.Psi < c.ceiling)) continue;
    ++checked;
    const double e2 = err.e.squaredNorm();
    ASSERT_LE(c.psi_lower * e2, err.Psi + 1e-6);
    ASSERT_LE(err.Psi, c.psi_upper * e2 + 1e-6);
    ASSERT_LE(err.e.norm(), kLeader.sum());
  }
}

TEST(QuadraticBounds, LeaderSandwichWithSkewBeacons) {
  Rng rng(308);
  int checked = 0;
  while (checked < 1000) {
    const UnitVec3 sA = rng.unit(), sB = rng.unit();
    if (sA.cross(sB).norm() < 0.1) continue;
    const Rotation R = rng.rotation();
    const Rotation Rd = rng.near(R, 3.0);
    const LosErrorMatrix err = psi_leader_matrix(R, Rd, sA, sB, kLeader);
    const BoundConstants c = spectral_bound_constants(err.K);
    if (!(err.Psi < c.ceiling)) continue;
    ++checked;
    const double e2 = err.e.squaredNorm();
    ASSERT_LE(c.psi_lower * e2, err.Psi + 1e-6);
    ASSERT_LE(err.Psi, c.psi_upper * e2 + 1e-6);
  }
}

TEST(QuadraticBounds, PairSandwich) {
  Rng rng(309);
  const BoundConstants c = pair_bound_constants(kPair);
  int checked = 0;
  while (checked < 1000) {
    const testing::PairGeometry g = testing::random_pair_geometry(rng);
    const Rotation Qd = rng.near(g.R1.transpose() * g.R2, 3.0);
    const LosError err = psi_pair(g.m, Qd, kPair);
    if (!(err.Psi < c.ceiling)) continue;
    ++checked;
    const double e2 = err.e.squaredNorm();
    ASSERT_LE(c.psi_lower * e2, err.Psi + 1e-6);
    ASSERT_LE(err.Psi, c.psi_upper * e2 + 1e-6);
  }
}

TEST(ErrorRate, LeaderDerivativeSplitsIntoAttitudeAndWeightingParts) {
  Rng rng(310);
  for (int i = 0; i < 1000; ++i) {
    double B_Omega_d = 0.0;
    const testing::RateSample s = testing::random_leader_rate_sample(rng, &B_Omega_d);
    // dPsi/dt = e . e_Omega + tr[dK/dt (I - R Rd^T)]; recover the second term from Psi
    const double weighting_part = s.dPsi - s.e.dot(s.e_Omega);
    const BoundConstants c = spectral_bound_constants(s.K);
    const RateConstants r = rate_constants(c, s.K_dot);
    ASSERT_LE(weighting_part, r.Gamma * s.e.squaredNorm() + 1e-6);
  }
}

TEST(ErrorRate, PairDerivativeBoundWithSquaredNorm) {
  Rng rng(311);
  for (int i = 0; i < 1000; ++i) {
    double B_Omega_d = 0.0;
    const testing::RateSample s = testing::random_pair_rate_sample(rng, &B_Omega_d);
    const testing::RateBounds b = testing::rate_bounds(s, B_Omega_d);
    ASSERT_LE(s.dPsi, b.gamma_squared_form + 1e-6);
    ASSERT_LE(s.dPsi, b.gamma_pair_form + 1e-6);
  }
}

// ||E_Omega||_F^2 = tr[A]^2 + tr[K^2] for A = R^T K Rd, which is at most 2 k_bar^2.
TEST(ErrorRate, VectorRateBoundWithFrobeniusCoefficient) {
  Rng rng(312);
  for (int i = 0; i < 2000; ++i) {
    double B_Omega_d = 0.0;
    const testing::RateSample s = i % 2 ? testing::random_pair_rate_sample(rng, &B_Omega_d)
                                        : testing::random_leader_rate_sample(rng, &B_Omega_d);
    const RateConstants r = rate_constants(spectral_bound_constants(s.K), s.K_dot);
    const double bound = std::sqrt(2.0) * s.K.trace() * s.e_Omega.norm() + (B_Omega_d + r.B) * s.e.norm();
    ASSERT_LE(s.de.norm(), bound + 1e-6);
  }
}

TEST(ErrorRate, HalfRootTwoCoefficientIsTooSmallAtZeroAttitudeError) {
  // At R = Rd the error vector moves with E e_Omega, E = tr[K] I - R^T K R,
  // whose largest eigenvalue is tr[K], above tr[K]/sqrt(2).
  const Rotation R = exp_so3(Vec3(0.3, 0.1, -0.2));
  const Vec3 e_Omega = R.transpose() * Vec3::UnitZ();  // body axis normal to both beacons
  const auto e = [&](double tau) {
    return psi_leader_matrix(R * exp_so3(tau * e_Omega), R, kE1, kE2, kLeader).e;
  };
  const double rate = testing::central_difference(e, 1e-6).norm();
  EXPECT_NEAR(rate, kLeader.sum(), 1e-6);
  EXPECT_GT(rate, kLeader.sum() / std::sqrt(2.0));
}

}  // namespace
}  // namespace losfc
