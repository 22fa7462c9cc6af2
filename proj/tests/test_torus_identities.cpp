#include <gtest/gtest.h>

#include "pcflow/torus_identities.hpp"
#include "support.hpp"

using namespace pcflow;
using namespace pcflow::test;

TEST(TorusIdentities, SigmaOneIsLaplacian) {
  const ScalarField f = random_torus(2, 32, 8, 1);
  EXPECT_LT(max_abs_diff(sigma_field(f, 1).samples, spectral_laplacian(f).samples), 1e-10);
}

TEST(TorusIdentities, ProductOfSines) {
  const TorusGrid g = TorusGrid::cube(2, 32, 2.0 * std::numbers::pi);
  ScalarField f = ScalarField::zeros(g);
  for (std::size_t p = 0; p < g.size(); ++p) {
    const auto i = g.unflatten(p);
    f.samples[p] = std::sin(g.coordinate(0, i[0])) * std::sin(g.coordinate(1, i[1]));
  }
  EXPECT_LT(residual_sigma1(f).sup(), 1e-12);
  EXPECT_LT(residual_sigma_k(f, 2).sup(), 1e-12);
}

TEST(TorusIdentities, ResidualsVanish) {
  EXPECT_LT(residual_sigma1(random_torus(2, 64, 16, 2)).sup(), 1e-9);
  EXPECT_LT(residual_sigma_k(random_torus(2, 64, 16, 3), 2).sup(), 1e-8);
  EXPECT_LT(residual_sigma_k(random_torus(3, 32, 8, 4), 3).sup(), 1e-7);
  EXPECT_LT(residual_sigma_k(random_torus(3, 16, 4, 5), 2).sup(), 1e-8);
}

TEST(TorusIdentities, FrobeniusPointwise) {
  const ScalarField f = random_torus(3, 16, 4, 6);
  const HessianField a = HessianField::from_spectrum(TorusSpectrum::analyze(f));
  const ScalarField s1 = sigma_field(f, 1), s2 = sigma_field(f, 2);
  for (std::size_t p = 0; p < f.samples.size(); ++p)
    EXPECT_NEAR(s1.samples[p] * s1.samples[p] - 2.0 * s2.samples[p], a.at(p).frobenius_norm2(), 1e-10);
}

TEST(TorusIdentities, SigmaOneMeanStaysZero) {
  const ScalarField f = random_torus(2, 32, 8, 7);
  for (double t : {0.0, 0.01, 0.1}) {
    const ScalarField s1 = sigma_field(heat_propagate(f, t), 1);
    EXPECT_LT(std::abs(s1.mean()), 1e-12);
    const auto e = kernels::extrema(s1.samples);
    EXPECT_LE(e.min, 0.0);
    EXPECT_GE(e.max, 0.0);
  }
}

TEST(TorusIdentities, QuotientMatchesReducedForm) {
  const TorusGrid g = TorusGrid::cube(2, 32, 2.0 * std::numbers::pi);
  ScalarField f = ScalarField::zeros(g);
  for (std::size_t p = 0; p < g.size(); ++p) {
    const auto i = g.unflatten(p);
    f.samples[p] = -std::cos(g.coordinate(0, i[0])) - std::cos(g.coordinate(1, i[1]));
  }
  const QuotientResult q = quotient_residual(f, 0.5);
  ASSERT_FALSE(q.mask_empty);
  EXPECT_LT(q.reduced_gap, 1e-8);
  EXPECT_TRUE(std::isfinite(q.min_g));
  // H = sigma_2 / F is bounded by 1 since sigma_1^2 >= 2 sigma_2
  EXPECT_LE(kernels::extrema(q.H.samples, q.assembled.mask).max, 1.0 + 1e-12);
}

TEST(TorusIdentities, QuotientEmptyMask) {
  const QuotientResult q = quotient_residual(random_torus(2, 16, 4, 8), 1e6);
  EXPECT_TRUE(q.mask_empty);
  EXPECT_THROW(quotient_residual(random_torus(2, 16, 4, 8), 0.0), std::invalid_argument);
  EXPECT_THROW(quotient_residual(random_torus(1, 16, 4, 8), 0.1), std::invalid_argument);
}

TEST(TorusIdentities, OrderOutOfRange) {
  const ScalarField f = random_torus(2, 16, 4, 9);
  EXPECT_THROW(residual_sigma_k(f, 3), std::out_of_range);
  EXPECT_THROW(residual_sigma_k(f, 1), std::out_of_range);
  EXPECT_THROW(sigma_field(f, 0), std::out_of_range);
}
