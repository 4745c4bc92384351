#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "pvb/errors.hpp"
#include "pvb/grid_dvr.hpp"
#include "unit/oracles.hpp"

namespace pvb {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(PeriodicGrid, UniformPoints) {
  const Grid g = build_periodic_grid(0.0, 8.0, 4);
  EXPECT_EQ(g.points, (std::vector<double>{0, 2, 4, 6}));
  EXPECT_DOUBLE_EQ(g.weight, 2.0);

  const Grid h = build_periodic_grid(-5.0, 10.0, 5);
  EXPECT_EQ(h.points, (std::vector<double>{-5, -3, -1, 1, 3}));

  const Grid t = build_periodic_grid(0.0, 2 * kPi, 3);
  EXPECT_NEAR(t.points[1], 2 * kPi / 3, 1e-15);
  EXPECT_NEAR(t.points[2], 4 * kPi / 3, 1e-15);
  EXPECT_NEAR(t.weight, 2 * kPi / 3, 1e-15);
}

TEST(PeriodicGrid, Invariants) {
  for (int n : {2, 3, 17, 64, 129}) {
    const Grid g = build_periodic_grid(-3.3, 7.1, n);
    EXPECT_NEAR(g.weight * n, g.length, 1e-14 * g.length);
    for (int m = 1; m < n; ++m) {
      EXPECT_GT(g.points[m], g.points[m - 1]);
      EXPECT_NEAR(g.points[m] - g.points[m - 1], g.length / n, 1e-13);
    }
    EXPECT_GE(g.points.front(), g.x0);
    EXPECT_LT(g.points.back(), g.x0 + g.length);
  }
}

TEST(PeriodicGrid, RejectsBadArguments) {
  EXPECT_THROW(build_periodic_grid(0.0, 0.0, 4), InvalidArgument);
  EXPECT_THROW(build_periodic_grid(0.0, -1.0, 4), InvalidArgument);
  EXPECT_THROW(build_periodic_grid(0.0, 1.0, 1), InvalidArgument);
}

TEST(SincTheta, ThreePointExamples) {
  const Grid g = build_periodic_grid(0.0, 2 * kPi, 3);
  EXPECT_NEAR(sinc_dvr_theta(g, 0, 0.0), 1.0, 1e-15);
  EXPECT_NEAR(sinc_dvr_theta(g, 0, 2 * kPi / 3), 0.0, 1e-15);
  // Brute-force Dirichlet sum over k in {-1, 0, 1}.
  const auto expected = oracle::dirichlet_theta(0.0, 2 * kPi, 3, 0, kPi / 3);
  EXPECT_NEAR(expected.real(), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(sinc_dvr_theta(g, 0, kPi / 3), expected.real(), 1e-15);
}

TEST(SincTheta, MatchesBruteForceSumAndIsReal) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-30.0, 30.0);
  for (int n : {4, 5, 8, 9, 16, 33}) {
    const Grid g = build_periodic_grid(-2.0, 11.0, n);
    for (int trial = 0; trial < 20; ++trial) {
      const double x = u(rng);
      const int m = trial % n;
      const auto ref = oracle::dirichlet_theta(g.x0, g.length, n, m, x);
      EXPECT_NEAR(ref.imag(), 0.0, 1e-13);
      EXPECT_NEAR(sinc_dvr_theta(g, m, x), ref.real(), 1e-12);
    }
  }
}

TEST(SincTheta, RejectsBadIndex) {
  const Grid g = build_periodic_grid(0.0, 1.0, 5);
  EXPECT_THROW(sinc_dvr_theta(g, 5, 0.0), InvalidArgument);
  EXPECT_THROW(sinc_dvr_theta(g, -1, 0.0), InvalidArgument);
}

TEST(SincTheta, PeriodicAtRandomPoints) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int n : {15, 16}) {
    const Grid g = build_periodic_grid(-10.0, 20.0, n);
    for (int i = 0; i < 100; ++i) {
      const double x = u(rng);
      const int m = i % n;
      EXPECT_NEAR(sinc_dvr_theta(g, m, x + g.length), sinc_dvr_theta(g, m, x), 1e-12);
    }
  }
}

TEST(FghKinetic, ThreePointExample) {
  const RealMatrix t = build_fgh_kinetic(build_periodic_grid(0.0, 2 * kPi, 3), 1.0);
  const Eigen::MatrixXcd ref = oracle::fgh_kinetic(2 * kPi, 3, 1.0);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      EXPECT_NEAR(t(i, j), i == j ? 1.0 / 3.0 : -1.0 / 6.0, 1e-14);
      EXPECT_NEAR(t(i, j), ref(i, j).real(), 1e-14);
      EXPECT_NEAR(ref(i, j).imag(), 0.0, 1e-14);
    }
  }
}

TEST(FghKinetic, SinglePointIsZero) {
  const RealMatrix t = fgh_kinetic(2 * kPi, 1, 1.0);
  ASSERT_EQ(t.rows(), 1);
  EXPECT_EQ(t(0, 0), 0.0);
}

TEST(FghKinetic, MatchesBruteForceForEvenAndOdd) {
  for (int n : {6, 7, 16, 25}) {
    const RealMatrix t = fgh_kinetic(9.0, n, 1.7);
    const Eigen::MatrixXcd ref = oracle::fgh_kinetic(9.0, n, 1.7);
    EXPECT_LT((t.cast<std::complex<double>>() - ref).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((t - t.transpose()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(FghKinetic, ScalesWithInverseMass) {
  const Grid g = build_periodic_grid(-4.0, 8.0, 21);
  const RealMatrix t1 = build_fgh_kinetic(g, 1.0);
  const RealMatrix t2 = build_fgh_kinetic(g, 2.0);
  EXPECT_LT((t2 - 0.5 * t1).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_THROW(build_fgh_kinetic(g, 0.0), InvalidArgument);
  EXPECT_THROW(build_fgh_kinetic(g, -1.0), InvalidArgument);
}

TEST(FghKinetic, SpectrumIsExactlyTheFreeParticleSet) {
  for (int n : {9, 31, 64}) {
    const double length = 12.0;
    const double mass = 1.3;
    Eigen::SelfAdjointEigenSolver<RealMatrix> eig(fgh_kinetic(length, n, mass));
    std::vector<double> expected;
    for (double k : grid_wavenumbers(length, n)) expected.push_back(k * k / (2.0 * mass));
    std::sort(expected.begin(), expected.end());
    for (int i = 0; i < n; ++i) EXPECT_NEAR(eig.eigenvalues()[i], expected[i], 1e-10);
  }
}

TEST(LegendreDvr, TwoPointRule) {
  const DvrBasis b = build_legendre_dvr(-1.0, 1.0, 2);
  // Textbook rule: P_2 roots +/- 1/sqrt(3), weights 1.
  EXPECT_NEAR(b.points[0], -1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(b.points[1], 1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(b.weights[0], 1.0, 1e-15);
  EXPECT_NEAR(b.weights[1], 1.0, 1e-15);

  const DvrBasis shifted = build_legendre_dvr(0.0, 2.0, 2);
  EXPECT_NEAR(shifted.points[0], 1.0 - 1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(shifted.points[1], 1.0 + 1.0 / std::sqrt(3.0), 1e-15);
}

TEST(LegendreDvr, WeightsPositiveAndSumToLength) {
  for (int n : {2, 3, 10, 36, 64, 128}) {
    const DvrBasis b = build_legendre_dvr(-1.0, 1.0, n);
    double sum = 0.0;
    for (double w : b.weights) {
      EXPECT_GT(w, 0.0);
      sum += w;
    }
    EXPECT_NEAR(sum, 2.0, 1e-12 * 2.0);
  }
}

TEST(LegendreDvr, IntegratesMonomialsExactly) {
  const double a = -2.0;
  const double b = 3.5;
  for (int n : {2, 5, 12, 24}) {
    const DvrBasis basis = build_legendre_dvr(a, b, n);
    for (int p = 0; p <= 2 * n - 1; ++p) {
      double q = 0.0;
      for (int m = 0; m < n; ++m) q += basis.weights[m] * std::pow(basis.points[m], p);
      const double exact = oracle::monomial_integral(p, a, b);
      EXPECT_NEAR(q, exact, 1e-12 * std::max(1.0, std::abs(exact))) << "n=" << n << " p=" << p;
    }
  }
}

TEST(LegendreDvr, TransformIsOrthogonal) {
  for (int n : {4, 16, 64}) {
    const DvrBasis b = build_legendre_dvr(-3.0, 5.0, n);
    const RealMatrix& u = b.fbr_to_dvr;
    EXPECT_LT((u.transpose() * u - RealMatrix::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(LegendreDvr, RejectsBadArguments) {
  EXPECT_THROW(build_legendre_dvr(1.0, 1.0, 4), InvalidArgument);
  EXPECT_THROW(build_legendre_dvr(2.0, 1.0, 4), InvalidArgument);
  EXPECT_THROW(build_legendre_dvr(0.0, 1.0, 1), InvalidArgument);
}

TEST(DvrTheta, TwoPointLegendreAtOrigin) {
  const DvrBasis b = build_legendre_dvr(-1.0, 1.0, 2);
  // Lagrange polynomial through +/- 1/sqrt(3), evaluated at 0 for the + node.
  const double expected = oracle::lagrange(b.points, 1, 0.0);
  EXPECT_NEAR(expected, 0.5, 1e-15);
  EXPECT_NEAR(dvr_theta_eval(b, 1, 0.0), expected, 1e-14);
}

TEST(DvrTheta, LegendreMatchesLagrangeInterpolant) {
  std::mt19937_64 rng(3);
  const DvrBasis b = build_legendre_dvr(-2.0, 12.0, 12);
  std::uniform_real_distribution<double> u(-2.0, 12.0);
  for (int i = 0; i < 50; ++i) {
    const double x = u(rng);
    const int m = i % 12;
    EXPECT_NEAR(dvr_theta_eval(b, m, x), oracle::lagrange(b.points, m, x), 1e-9);
  }
}

TEST(DvrTheta, CardinalForBothFamilies) {
  for (int n : {2, 3, 8, 16, 31, 64}) {
    const std::vector<DvrBasis> bases = {make_sinc_dvr(build_periodic_grid(-10.0, 20.0, n)),
                                         build_legendre_dvr(-10.0, 10.0, n)};
    for (const auto& basis : bases) {
      for (int m = 0; m < n; ++m) {
        for (int k = 0; k < n; ++k) {
          EXPECT_NEAR(dvr_theta_eval(basis, m, basis.points[k]), m == k ? 1.0 : 0.0, 1e-10)
              << to_string(basis.family) << " n=" << n;
        }
      }
    }
  }
}

TEST(DvrTheta, LegendreOutsideDomainIsDomainError) {
  const DvrBasis b = build_legendre_dvr(-1.0, 1.0, 6);
  EXPECT_THROW(dvr_theta_eval(b, 0, 1.5), DomainError);
  EXPECT_THROW(dvr_theta_eval(b, 0, -1.0001), DomainError);
  EXPECT_THROW(dvr_theta_eval(b, 6, 0.0), InvalidArgument);
  // Sinc family is defined everywhere by periodicity.
  const DvrBasis s = make_sinc_dvr(build_periodic_grid(-1.0, 2.0, 6));
  EXPECT_NO_THROW(dvr_theta_eval(s, 0, 100.0));
}

TEST(KineticMatrix, LegendreIsSymmetricAndPositive) {
  const DvrBasis b = build_legendre_dvr(-5.0, 5.0, 40);
  const RealMatrix t = kinetic_matrix(b, 1.0);
  EXPECT_LT((t - t.transpose()).cwiseAbs().maxCoeff(), 1e-12 * t.cwiseAbs().maxCoeff());
  Eigen::SelfAdjointEigenSolver<RealMatrix> eig(t);
  // The constant is in the polynomial space, so the lowest eigenvalue is zero.
  EXPECT_NEAR(eig.eigenvalues()[0], 0.0, 1e-9 * eig.eigenvalues().maxCoeff());
  EXPECT_GT(eig.eigenvalues()[1], 0.0);
}

TEST(KineticMatrix, LegendreDerivativeQuadratureMatchesAnalyticFbr) {
  // In the FBR, integral of P_1'^2 over (a, b) for the orthonormal P_1 is
  // 3 * 4 / (b - a)^3 * (b - a) = 12 / (b - a)^2.
  const double a = 0.0;
  const double b = 4.0;
  const DvrBasis basis = build_legendre_dvr(a, b, 6);
  const RealMatrix t = kinetic_matrix(basis, 0.5);  // 1/(2m) = 1
  const RealMatrix t_fbr = basis.fbr_to_dvr * t * basis.fbr_to_dvr.transpose();
  EXPECT_NEAR(t_fbr(1, 1), 12.0 / ((b - a) * (b - a)), 1e-12);
  EXPECT_NEAR(t_fbr(0, 0), 0.0, 1e-12);
}

}  // namespace
}  // namespace pvb
