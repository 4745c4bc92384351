#include <cmath>

#include <gtest/gtest.h>

#include "pvb/errors.hpp"
#include "pvb/operators.hpp"

namespace pvb {
namespace {

TEST(Potentials, PointValues) {
  EXPECT_DOUBLE_EQ(eval_potential(Harmonic{1.0}, 2.0), 2.0);
  EXPECT_DOUBLE_EQ(eval_potential(Harmonic{2.0}, 1.0), 2.0);
  EXPECT_DOUBLE_EQ(eval_potential(Morse{10.0, 1.0, 0.0}, 0.0), 0.0);
  EXPECT_NEAR(eval_potential(Morse{10.0, 1.0, 0.0}, 1.0), 10.0 * std::pow(1.0 - std::exp(-1.0), 2),
              1e-14);
  EXPECT_NEAR(eval_potential(Morse{10.0, 1.0, 0.0}, 60.0), 10.0, 1e-12);
  EXPECT_DOUBLE_EQ(eval_potential(QuarticDoubleWell{1.0, 0.1}, 2.0), -4.0 + 1.6);
}

TEST(Potentials, DoubleWellMinima) {
  const QuarticDoubleWell w{1.0, 0.1};
  const double xmin = std::sqrt(w.c2 / (2.0 * w.c4));
  EXPECT_NEAR(eval_potential(w, xmin), -w.c2 * w.c2 / (4.0 * w.c4), 1e-12);
  EXPECT_NEAR(eval_potential(w, -xmin), eval_potential(w, xmin), 1e-14);
}

TEST(Potentials, Validation) {
  EXPECT_THROW(validate(Harmonic{0.0}), InvalidArgument);
  EXPECT_THROW(validate(Morse{-1.0, 1.0, 0.0}), InvalidArgument);
  EXPECT_THROW(validate(Morse{1.0, 0.0, 0.0}), InvalidArgument);
  EXPECT_THROW(validate(QuarticDoubleWell{1.0, 0.0}), InvalidArgument);
  EXPECT_NO_THROW(validate(QuarticDoubleWell{1.0, 0.1}));
}

TEST(Potentials, DefaultDomains) {
  EXPECT_EQ(default_domain(Harmonic{}), std::make_pair(-10.0, 10.0));
  EXPECT_EQ(default_domain(Morse{10.0, 1.0, 1.5}), std::make_pair(-0.5, 13.5));
  EXPECT_EQ(default_domain(QuarticDoubleWell{}), std::make_pair(-6.0, 6.0));
}

TEST(AnalyticLevels, HarmonicLadder) {
  const auto levels = analytic_levels(Harmonic{1.0}, 1.0, 4);
  EXPECT_EQ(levels, (std::vector<double>{0.5, 1.5, 2.5, 3.5}));
  EXPECT_NEAR(analytic_level(Harmonic{1.0}, 4.0, 0), 0.25, 1e-15);
}

TEST(AnalyticLevels, MorseGroundState) {
  // omega0 = a sqrt(2 D / m) = sqrt(20); E0 = omega0 / 2 - omega0^2 / (16 D).
  const double e0 = analytic_level(Morse{10.0, 1.0, 0.0}, 1.0, 0);
  EXPECT_NEAR(e0, std::sqrt(20.0) / 2.0 - 20.0 / 160.0, 1e-14);
  EXPECT_NEAR(e0, 2.11107, 1e-5);
}

TEST(AnalyticLevels, MorseBoundCountAndLimits) {
  // lambda = sqrt(20) = 4.47, bound levels n = 0..3.
  EXPECT_EQ(morse_bound_state_count(Morse{10.0, 1.0, 0.0}, 1.0), 4);
  EXPECT_NO_THROW(analytic_levels(Morse{10.0, 1.0, 0.0}, 1.0, 4));
  EXPECT_THROW(analytic_levels(Morse{10.0, 1.0, 0.0}, 1.0, 5), InvalidArgument);
  EXPECT_EQ(morse_bound_state_count(Morse{0.01, 1.0, 0.0}, 1.0), 0);
}

TEST(AnalyticLevels, DoubleWellNotAvailable) {
  EXPECT_THROW(analytic_level(QuarticDoubleWell{}, 1.0, 0), NotAvailable);
  EXPECT_THROW(analytic_levels(QuarticDoubleWell{}, 1.0, 3), NotAvailable);
}

TEST(Hamiltonian, SymmetricWithPotentialOnDiagonal) {
  const DvrBasis b = make_sinc_dvr(build_periodic_grid(-10.0, 20.0, 33));
  const HamiltonianMatrix h = build_hamiltonian(b, Harmonic{}, 1.0);
  EXPECT_LT((h.matrix - h.matrix.transpose()).cwiseAbs().maxCoeff(), 1e-13);
  const RealMatrix t = kinetic_matrix(b, 1.0);
  for (int m = 0; m < 33; ++m) {
    EXPECT_NEAR(h.matrix(m, m) - t(m, m), 0.5 * b.points[m] * b.points[m], 1e-12);
    EXPECT_DOUBLE_EQ(h.potential[m], 0.5 * b.points[m] * b.points[m]);
  }
}

TEST(Hamiltonian, HarmonicConvergesWithN) {
  double previous = 1.0;
  for (int n : {17, 33, 65}) {
    const DvrBasis b = make_sinc_dvr(build_periodic_grid(-10.0, 20.0, n));
    Eigen::SelfAdjointEigenSolver<RealMatrix> eig(build_hamiltonian(b, Harmonic{}, 1.0).matrix);
    const double err = std::abs(eig.eigenvalues()[0] - 0.5);
    EXPECT_LE(err, previous);
    previous = err;
  }
  EXPECT_LT(previous, 1e-10);
}

TEST(Hamiltonian, LegendreMorseLowLevels) {
  const Morse morse{10.0, 1.0, 0.0};
  const DvrBasis b = build_legendre_dvr(-2.0, 12.0, 64);
  Eigen::SelfAdjointEigenSolver<RealMatrix> eig(build_hamiltonian(b, morse, 1.0).matrix);
  for (int n = 0; n < 4; ++n) {
    EXPECT_NEAR(eig.eigenvalues()[n], analytic_level(morse, 1.0, n), 1e-6) << n;
  }
}

TEST(Hamiltonian, MassScalesOscillatorFrequency) {
  const DvrBasis b = make_sinc_dvr(build_periodic_grid(-10.0, 20.0, 65));
  Eigen::SelfAdjointEigenSolver<RealMatrix> eig(build_hamiltonian(b, Harmonic{}, 4.0).matrix);
  EXPECT_NEAR(eig.eigenvalues()[0], 0.25, 1e-8);
  EXPECT_NEAR(eig.eigenvalues()[1], 0.75, 1e-8);
  EXPECT_THROW(build_hamiltonian(b, Harmonic{}, 0.0), InvalidArgument);
}

}  // namespace
}  // namespace pvb
