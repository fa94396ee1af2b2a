#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "micromacro/states.hpp"
#include "test_util.hpp"

namespace mm {
namespace {

using test::max_abs_diff;

TEST(SqueezeParam, DecibelConversion) {
  EXPECT_NEAR(SqueezeParam::from_db(5.0).r(), 0.5756462732485115, 1e-12);
  EXPECT_NEAR(SqueezeParam(0.5756462732485115).db(), 5.0, 1e-12);
  EXPECT_NEAR(db_to_r(r_to_db(1.234)), 1.234, 1e-12);
  EXPECT_THROW(SqueezeParam(-0.1), Error);
}

TEST(SqueezedVacuum, ZeroSqueezingIsVacuum) {
  const ModeState s = squeezed_vacuum(0.0);
  EXPECT_LT(max_abs_diff(s.amplitudes(), ModeState::vacuum(s.dim()).amplitudes()), 1e-15);
}

TEST(SqueezedVacuum, OddAmplitudesVanish) {
  const ModeState s = squeezed_vacuum(0.9);
  for (int n = 1; n < s.dim(); n += 2) EXPECT_LT(std::abs(s[n]), 1e-14);
}

TEST(SqueezedVacuum, MatchesClosedForm) {
  const double r = 0.5;
  const ModeState s = squeezed_vacuum(r);
  for (int k = 0; k <= 6; ++k) EXPECT_NEAR(s[2 * k].real(), test::squeezed_vacuum_coeff(r, k), 1e-9) << k;
  EXPECT_LT(max_abs_diff(s.amplitudes(), test::closed_form_squeezed(r, 0, s.dim()).amplitudes()), 1e-9);
}

TEST(SqueezedVacuum, NormalizedAndConverged) {
  for (double db : {0.0, 3.0, 6.0, 9.0, 12.0}) {
    const ModeState s = squeezed_vacuum(db_to_r(db));
    EXPECT_NEAR(s.squared_norm(), 1.0, 1e-12) << db;
    EXPECT_TRUE(s.converged()) << db;
  }
}

TEST(SqueezedVacuum, AdaptiveTruncationGrows) {
  EXPECT_EQ(adaptive_squeeze_dim(0.1, 0, 128), 128);
  EXPECT_GT(adaptive_squeeze_dim(db_to_r(12.0), 0, 128), 128);
  EXPECT_GT(squeezed_vacuum(db_to_r(12.0)).dim(), 128);
}

TEST(SqueezedVacuum, AntiSqueezesX) {
  // <x^2> = (1 + 2<n> + 2 Re<a^2>)/2 = e^{2r}/2 for the anti-squeezed axis.
  const double r = 0.6;
  const ModeState s = squeezed_vacuum(r);
  double re_a2 = 0.0;
  for (int n = 0; n + 2 < s.dim(); ++n) re_a2 += (std::conj(s[n]) * s[n + 2]).real() * std::sqrt((n + 1.0) * (n + 2.0));
  const double var = 0.5 * (1.0 + 2.0 * mean_photon(s) + 2.0 * re_a2);
  EXPECT_NEAR(var, 0.5 * std::exp(2.0 * r), 1e-9);
}

TEST(SqueezedFock, ZeroSqueezingIsFock) {
  const ModeState s = squeezed_fock(0.0, 3);
  EXPECT_NEAR(std::abs(s[3]), 1.0, 1e-15);
}

TEST(SqueezedFock, OrthogonalToSqueezedVacuum) {
  const int d = 128;
  EXPECT_LT(std::abs(inner(resized(squeezed_vacuum(0.5756, d), d), resized(squeezed_fock(0.5756, 1, d), d))), 1e-12);
}

TEST(SqueezedFock, MatchesClosedForm) {
  const double r = 0.7;
  const ModeState s = squeezed_fock(r, 1);
  EXPECT_LT(max_abs_diff(s.amplitudes(), test::closed_form_squeezed(r, 1, s.dim()).amplitudes()), 1e-9);
  EXPECT_NEAR(mean_photon(s), 1.0 + 3.0 * std::sinh(r) * std::sinh(r), 1e-9);
}

TEST(Displace, PoissonStatistics) {
  const ModeState s = displace(1.0, ModeState::vacuum(8), 64);
  EXPECT_NEAR(mean_photon(s), 1.0, 1e-9);
  for (int n = 0; n < 20; ++n) EXPECT_NEAR(std::norm(s[n]), std::exp(-1.0 - std::lgamma(n + 1.0)), 1e-12);
}

TEST(Displace, ZeroIsIdentity) {
  const ModeState psi = squeezed_fock(0.3, 1, 64);
  EXPECT_LT(max_abs_diff(displace(0.0, psi, 64).amplitudes(), psi.amplitudes()), 1e-14);
}

TEST(Displace, InverseRoundTrip) {
  const ModeState psi = squeezed_fock(0.3, 1, 64);
  const Complex beta(0.7, -0.2);
  const ModeState back = displace(-beta, displace(beta, psi, 64), 64);
  EXPECT_LT(max_abs_diff(back.amplitudes(), psi.amplitudes()), 1e-9);
}

TEST(CatParam, NormConstant) {
  for (double alpha : {0.3, 1.0, 2.0}) {
    const ModeState p = coherent(alpha, 64);
    const ModeState m = coherent(-alpha, 64);
    const double even = ModeState(p.amplitudes() + m.amplitudes()).squared_norm();
    const double odd = ModeState(p.amplitudes() - m.amplitudes()).squared_norm();
    const double ne = CatParam{alpha, Parity::Even}.norm_constant();
    const double no = CatParam{alpha, Parity::Odd}.norm_constant();
    EXPECT_NEAR(1.0 / (ne * ne), even, 1e-12);
    EXPECT_NEAR(1.0 / (no * no), odd, 1e-12);
    EXPECT_NEAR(1.0 / (ne * ne), 2.0 + 2.0 * std::exp(-2.0 * alpha * alpha), 1e-12);
  }
}

TEST(Cat, EvenAtZeroIsVacuum) {
  const ModeState c = cat(0.0, Parity::Even);
  EXPECT_NEAR(std::abs(c[0]), 1.0, 1e-15);
}

TEST(Cat, OddAtZeroIsZeroState) {
  try {
    cat(0.0, Parity::Odd);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ZeroState);
  }
}

TEST(Cat, ParitiesOrthogonal) {
  EXPECT_LT(std::abs(inner(cat(1.1, Parity::Even, 64), cat(1.1, Parity::Odd, 64))), 1e-15);
}

TEST(Cat, EvenDistributionMatchesExpansion) {
  const double alpha = 1.2;
  const ModeState c = cat(alpha, Parity::Even, 64);
  const double n_plus = CatParam{alpha, Parity::Even}.norm_constant();
  const ModeState poisson = test::poisson_coherent(alpha, c.dim());
  for (int n = 0; n < c.dim(); ++n) {
    const double expected = n % 2 == 0 ? 2.0 * n_plus * poisson[n].real() : 0.0;
    EXPECT_NEAR(c[n].real(), expected, 1e-10) << n;
  }
}

TEST(Legendre, LowOrders) {
  const Complex x(0.3, 0.8);
  EXPECT_EQ(legendre(0, x), Complex(1.0));
  EXPECT_EQ(legendre(1, x), x);
  EXPECT_LT(std::abs(legendre(2, x) - (3.0 * x * x - 1.0) / 2.0), 1e-15);
  EXPECT_LT(std::abs(legendre(3, x) - (5.0 * x * x * x - 3.0 * x) / 2.0), 1e-14);
}

TEST(SubtractionNorm, ClosedForms) {
  const double r = 0.6;
  const double s2 = std::sinh(r) * std::sinh(r);
  EXPECT_NEAR(subtraction_norm_inv_sq(0, r), 1.0, 1e-15);
  EXPECT_NEAR(subtraction_norm_inv_sq(1, r), s2, 1e-14);
  EXPECT_NEAR(subtraction_norm_inv_sq(2, r), s2 * (3.0 * s2 + 1.0), 1e-13);
}

TEST(PhotonSubtracted, SingleSubtractionIsSqueezedPhoton) {
  const double r = 0.8;
  const SubtractedState s = photon_subtracted_squeezed(1, r);
  EXPECT_NEAR(fidelity(s.state, squeezed_fock(r, 1)), 1.0, 1e-9);
  EXPECT_NEAR(1.0 / std::sqrt(subtraction_norm_inv_sq(1, r)), 1.0 / std::sinh(r), 1e-12);
}

TEST(PhotonSubtracted, NormCheckSmall) {
  for (int m = 0; m <= 4; ++m)
    for (double r : {0.3, 0.6, 1.2}) EXPECT_LT(photon_subtracted_squeezed(m, r).norm_check, 1e-8) << m << " " << r;
}

TEST(PhotonSubtracted, SecondOrderNumericNorm) {
  const double r = 0.6;
  const ModeState sv = squeezed_vacuum(r);
  const ModeState twice = apply(ladder(sv.dim()), apply(ladder(sv.dim()), sv));
  const double s2 = std::sinh(r) * std::sinh(r);
  EXPECT_NEAR(twice.squared_norm(), s2 * (3.0 * s2 + 1.0), 1e-8);
}

TEST(PhotonSubtracted, ZeroOrderIsSqueezedVacuum) {
  const SubtractedState s = photon_subtracted_squeezed(0, 0.4);
  EXPECT_LT(max_abs_diff(s.state.amplitudes(), squeezed_vacuum(0.4).amplitudes()), 1e-15);
}

TEST(PhotonSubtracted, VacuumSubtractionIsZeroState) {
  try {
    photon_subtracted_squeezed(2, 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ZeroState);
  }
}

TEST(Tmsv, ZeroIsVacuum) {
  const TwoModeState s = tmsv(0.0, 4);
  EXPECT_EQ(s(0, 0), Complex(1.0));
  EXPECT_NEAR(s.squared_norm(), 1.0, 1e-15);
}

TEST(Tmsv, EntropyClosedForm) {
  const double l = 0.5;
  const double l2 = l * l;
  const double expected = -std::log2(1.0 - l2) - l2 / (1.0 - l2) * std::log2(l2);
  EXPECT_NEAR(schmidt_entropy(tmsv(l, 64)), expected, 1e-8);
  const Eigen::VectorXd sv = schmidt_coefficients(tmsv(l, 64));
  for (int n = 1; n < 10; ++n) EXPECT_NEAR(sv[n] / sv[n - 1], l, 1e-12);
}

TEST(Tmsv, ReducedStateIsThermal) {
  const double l = 0.4;
  const DensityOperator rho = partial_trace(tmsv(l, 16), Mode::A);
  for (int n = 0; n < 16; ++n) {
    EXPECT_NEAR(rho.matrix()(n, n).real(), (1.0 - l * l) * std::pow(l, 2 * n), 1e-15);
    for (int k = 0; k < 16; ++k)
      if (k != n) EXPECT_EQ(std::abs(rho.matrix()(n, k)), 0.0);
  }
}

TEST(Tmsv, RejectsUnphysicalLambda) { EXPECT_THROW(tmsv(1.0, 4), Error); }

TEST(Beamsplitter, SplitsSinglePhoton) {
  const double t = 0.3;
  const TwoModeState out = apply(beamsplitter(t, 3, 3), tensor(ModeState::basis(1, 3), ModeState::vacuum(3)));
  EXPECT_NEAR(out(1, 0).real(), std::sqrt(t), 1e-12);
  EXPECT_NEAR(out(0, 1).real(), std::sqrt(1.0 - t), 1e-12);
  EXPECT_NEAR(out.squared_norm(), 1.0, 1e-12);
}

TEST(Beamsplitter, FullTransmissionIsIdentity) {
  EXPECT_LT((beamsplitter(1.0, 3, 4).matrix() - CMatrix::Identity(12, 12)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Beamsplitter, HongOuMandel) {
  // a_A^dag a_B^dag |0> -> (1/2)(a_A^dag + a_B^dag)(-a_A^dag + a_B^dag)|0> = (|0,2> - |2,0>)/sqrt(2)
  const TwoModeState out = apply(beamsplitter(0.5, 3, 3), tensor(ModeState::basis(1, 3), ModeState::basis(1, 3)));
  CMatrix expected = CMatrix::Zero(3, 3);
  expected(0, 2) = 1.0 / std::numbers::sqrt2;
  expected(2, 0) = -1.0 / std::numbers::sqrt2;
  EXPECT_NEAR(fidelity(out, TwoModeState(expected)), 1.0, 1e-12);
  EXPECT_LT(std::abs(out(1, 1)), 1e-12);
}

TEST(Beamsplitter, ConservesPhotonNumber) {
  const TwoModeState in = tensor(coherent(0.6, 32), squeezed_fock(0.2, 1, 32));
  const TwoModeState out = apply(beamsplitter(0.37, in.dim_a(), in.dim_b()), in);
  EXPECT_NEAR(mean_photon(normalize(in).state), mean_photon(normalize(out).state), 1e-10);
}

TEST(Beamsplitter, RejectsBadTransmission) { EXPECT_THROW(beamsplitter(1.5, 2, 2), Error); }

}  // namespace
}  // namespace mm
