#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "micromacro/protocols.hpp"
#include "micromacro/quadrature.hpp"

namespace mm {
namespace {

const double kPiQuarter = std::pow(std::numbers::pi, -0.25);

double integrate(const QuadGrid& g, const std::vector<double>& f) {
  double acc = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) acc += g.weights[i] * f[i];
  return acc;
}

struct Moments {
  double mean;
  double var;
};

Moments moments(const ModeState& s, const QuadGrid& g) {
  const auto rho = density(s, g);
  double m0 = 0.0, m1 = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.points[i];
    m0 += g.weights[i] * rho[i];
    m1 += g.weights[i] * rho[i] * x;
    m2 += g.weights[i] * rho[i] * x * x;
  }
  const double mean = m1 / m0;
  return {mean, m2 / m0 - mean * mean};
}

TEST(Hermite, ClosedFormValues) {
  EXPECT_NEAR(hermite_psi(0, 0.0), kPiQuarter, 1e-15);
  EXPECT_NEAR(hermite_psi(0, 0.0), 0.751126, 1e-6);
  EXPECT_EQ(hermite_psi(1, 0.0), 0.0);
  for (double x : {-1.3, 0.4, 2.2}) {
    const double g = kPiQuarter * std::exp(-0.5 * x * x);
    EXPECT_NEAR(hermite_psi(1, x), g * std::numbers::sqrt2 * x, 1e-14);
    EXPECT_NEAR(hermite_psi(2, x), g * (2.0 * x * x - 1.0) / std::numbers::sqrt2, 1e-14);
    EXPECT_NEAR(hermite_psi(3, x), g * (2.0 * x * x * x - 3.0 * x) / std::sqrt(3.0), 1e-14);
  }
}

TEST(Hermite, NormalizedOnDefaultGrid) {
  for (int n = 0; n <= 60; ++n) {
    const QuadGrid g = QuadGrid::for_photon_number(n);
    std::vector<double> f(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) f[i] = std::pow(hermite_psi(n, g.points[i]), 2);
    EXPECT_NEAR(integrate(g, f), 1.0, 1e-8) << n;
  }
}

TEST(Hermite, FarTailsUnderflowCleanly) {
  EXPECT_EQ(hermite_psi(0, 60.0), 0.0);
  const double v = hermite_psi(400, 60.0);
  EXPECT_TRUE(std::isfinite(v));
  EXPECT_LT(std::abs(v), 1e-100);
  // Large order near the turning point stays finite and bounded.
  const double w = hermite_psi(1000, 20.0);
  EXPECT_TRUE(std::isfinite(w));
  EXPECT_LT(std::abs(w), 1.0);
}

TEST(QuadGrid, ResolvesVacuum) {
  const QuadGrid g = QuadGrid::for_photon_number(0.0);
  std::vector<double> f(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) f[i] = std::exp(-g.points[i] * g.points[i]) / std::sqrt(std::numbers::pi);
  EXPECT_NEAR(integrate(g, f), 1.0, 1e-8);
  EXPECT_EQ(g.size(), 2048u);
}

TEST(QuadGrid, SymmetricAboutZero) {
  const QuadGrid g = QuadGrid::gauss_legendre(5.0, 256);
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_NEAR(g.points[i], -g.points[g.size() - 1 - i], 1e-14);
    EXPECT_NE(g.points[i], 0.0);
  }
}

TEST(Density, VacuumIsGaussian) {
  const QuadGrid g = QuadGrid::for_photon_number(0.0);
  const Moments m = moments(ModeState::vacuum(4), g);
  EXPECT_NEAR(m.mean, 0.0, 1e-12);
  EXPECT_NEAR(m.var, 0.5, 1e-10);
}

TEST(Density, SqueezedVacuumVariance) {
  const double r = 0.5;
  const ModeState s = squeezed_vacuum(r);
  const Moments m = moments(s, QuadGrid::gauss_legendre(14.0, 4096));
  EXPECT_NEAR(m.var, 0.5 * std::exp(2.0 * r), 1e-8);
}

TEST(Density, CoherentIsDisplacedGaussian) {
  const double alpha = 0.9;
  const ModeState s = coherent(alpha, 64);
  const Moments m = moments(s, QuadGrid::for_photon_number(alpha * alpha));
  EXPECT_NEAR(m.mean, std::numbers::sqrt2 * alpha, 1e-9);
  EXPECT_NEAR(m.var, 0.5, 1e-9);
}

TEST(Density, IntegratesToOne) {
  for (const ModeState& s : {coherent(1.5, 64), squeezed_fock(0.8, 1), photon_subtracted_squeezed(3, 1.2).state}) {
    const QuadGrid g = QuadGrid::for_states(std::span(&s, 1));
    EXPECT_NEAR(integrate(g, density(s, g)), 1.0, 1e-8);
  }
}

TEST(Density, ComplexAmplitudes) {
  const ModeState s = coherent(Complex(0.5, 0.8), 64);
  const QuadGrid g = QuadGrid::for_photon_number(1.0);
  const Moments m = moments(s, g);
  EXPECT_NEAR(m.mean, std::numbers::sqrt2 * 0.5, 1e-9);
}

TEST(Density, UnconvergedStateThrows) {
  try {
    density(ModeState::basis(63, 64), QuadGrid::for_photon_number(63));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Convergence);
  }
}

TEST(MeanX, AlgebraicValues) {
  EXPECT_EQ(mean_x(ModeState::vacuum(4)), 0.0);
  EXPECT_NEAR(mean_x(coherent(1.0, 64)), std::numbers::sqrt2, 1e-10);
  EXPECT_NEAR(mean_x(squeezed_vacuum(0.7)), 0.0, 1e-15);
}

TEST(MeanX, MatchesGridIntegration) {
  const PsiPair pair = build_psi_pm(1, 0.5756, 0.6);
  for (const ModeState* s : {&pair.plus, &pair.minus}) {
    const QuadGrid g = QuadGrid::for_states(std::span(s, 1));
    EXPECT_NEAR(mean_x(*s), mean_x_on_grid(*s, g), 1e-7);
  }
}

TEST(DistanceD, BasicCases) {
  const ModeState a = coherent(1.0, 64);
  EXPECT_EQ(distance_D(a, a), 0.0);
  EXPECT_NEAR(distance_D(a, coherent(-1.0, 64)), 2.0, 1e-10);
}

// The mean-distance formula |<x>_+ - <x>_-|/sqrt(2) with x = (a + a^dagger)/sqrt(2)
// gives 2 alpha for |+/-alpha>. The 2 sqrt(2) alpha quoted for coherent cats is
// the plain separation of quadrature means, larger by sqrt(2).
TEST(DistanceD, CoherentPairConventionFactor) {
  for (double alpha : {0.5, 1.0, 2.0}) {
    const ModeState p = coherent(alpha, 64);
    const ModeState m = coherent(-alpha, 64);
    const double d = distance_D(p, m);
    EXPECT_NEAR(d, 2.0 * alpha, 1e-10);
    EXPECT_NEAR(std::abs(mean_x(p) - mean_x(m)), 2.0 * std::numbers::sqrt2 * alpha, 1e-10);
    EXPECT_NEAR(2.0 * std::numbers::sqrt2 * alpha / d, std::numbers::sqrt2, 1e-10);
  }
}

TEST(DistanceD, SymmetricAndDisplacementInvariant) {
  const PsiPair pair = build_psi_pm(2, 0.4, 0.5);
  const double d = distance_D(pair.plus, pair.minus);
  EXPECT_EQ(d, distance_D(pair.minus, pair.plus));
  EXPECT_GE(d, 0.0);
  const ModeState p = displace(0.7, pair.plus, pair.plus.dim());
  const ModeState m = displace(0.7, pair.minus, pair.minus.dim());
  EXPECT_NEAR(distance_D(p, m), d, 1e-9);
}

TEST(HalfLine, SymmetricStates) {
  EXPECT_NEAR(halfline_prob(ModeState::vacuum(4), HalfLine::Positive), 0.5, 1e-12);
  for (double r : {0.2, 1.0}) EXPECT_NEAR(halfline_prob(squeezed_vacuum(r), HalfLine::Positive), 0.5, 1e-9);
}

TEST(HalfLine, CoherentErfFormula) {
  const double alpha = 0.8;
  const ModeState s = coherent(alpha, 64);
  EXPECT_NEAR(halfline_prob(s, HalfLine::Positive), 0.5 * (1.0 + std::erf(std::numbers::sqrt2 * alpha)), 1e-8);
  EXPECT_NEAR(halfline_prob(s, HalfLine::Positive) + halfline_prob(s, HalfLine::Negative), 1.0, 1e-9);
}

TEST(DiscriminationP, SameStateIsChance) {
  const ModeState s = squeezed_fock(0.4, 1);
  EXPECT_NEAR(discrimination_P(s, s), 0.5, 1e-12);
}

TEST(DiscriminationP, CoherentPair) {
  const double alpha = 1.0;
  const double expected = 1.0 - (1.0 - std::erf(std::numbers::sqrt2 * alpha)) / 2.0;
  const ModeState p = coherent(alpha, 64);
  const ModeState m = coherent(-alpha, 64);
  EXPECT_NEAR(discrimination_P(p, m), expected, 1e-8);
  EXPECT_EQ(discrimination_P(p, m), discrimination_P(m, p));
}

TEST(DiscriminationP, BalancedVacuumPairIsScaleInvariant) {
  const double expected = 0.5 * (1.0 + std::sqrt(2.0 / std::numbers::pi));
  double lo = 1.0, hi = 0.0;
  for (double r = 0.1; r <= 1.5 + 1e-12; r += 0.2) {
    const ModeState input = squeezed_vacuum(r);
    const PsiPair pair = psi_pm_from(input, t_balanced(input));
    const double p = discrimination_P(pair.plus, pair.minus);
    EXPECT_NEAR(p, expected, 1e-9) << r;
    lo = std::min(lo, p);
    hi = std::max(hi, p);
  }
  EXPECT_LT(hi - lo, 1e-6);
}

TEST(MacroMeasures, SnuIsTwiceD) {
  const PsiPair pair = build_psi_pm(1, 0.5756462732485115, 0.6);
  const MacroMeasures m = macro_measures(pair.plus, pair.minus);
  EXPECT_EQ(m.snu, 2.0 * m.D);
  EXPECT_GE(m.P, 0.0);
  EXPECT_LE(m.P, 1.0);
}

TEST(DisplacedPhotons, VacuumPair) {
  const ModeState v = ModeState::vacuum(8);
  const DisplacedPhotons d = displaced_photon_discrimination(v, v);
  EXPECT_EQ(d.beta, 0.0);
  EXPECT_NEAR(d.n_plus, 0.0, 1e-15);
  EXPECT_NEAR(d.n_minus, 0.0, 1e-15);
}

TEST(DisplacedPhotons, CoherentPair) {
  const double alpha = 1.3;
  const DisplacedPhotons d = displaced_photon_discrimination(coherent(alpha, 64), coherent(-alpha, 64));
  EXPECT_NEAR(d.n_minus, 0.0, 1e-8);
  EXPECT_NEAR(d.n_plus, 4.0 * alpha * alpha, 1e-8);
  EXPECT_NEAR(d.beta, alpha, 1e-10);
}

TEST(DisplacedPhotons, SingleSubtractionFiveDb) {
  const ModeState input = photon_subtracted_squeezed(1, db_to_r(5.0)).state;
  const PsiPair pair = psi_pm_from(input, t_balanced(input));
  const DisplacedPhotons d = displaced_photon_discrimination(pair.plus, pair.minus);
  const double D = distance_D(pair.plus, pair.minus);
  EXPECT_LT(d.n_minus, 0.5);
  EXPECT_NEAR(d.n_plus, D * D, 0.1 * D * D);
}

}  // namespace
}  // namespace mm
