#include <gtest/gtest.h>

#include <numbers>

#include "pcflow/torus.hpp"
#include "support.hpp"

using namespace pcflow;
using namespace pcflow::test;

namespace {

ScalarField sample(const TorusGrid& g, auto&& fn) {
  ScalarField f = ScalarField::zeros(g);
  for (std::size_t p = 0; p < g.size(); ++p) {
    const auto i = g.unflatten(p);
    f.samples[p] = fn(g.coordinate(0, i[0]), g.dim > 1 ? g.coordinate(1, i[1]) : 0.0);
  }
  return f;
}

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

TEST(Torus, DerivativeOfSine) {
  const double L = 3.0, w = kTwoPi / L;
  const TorusGrid g = TorusGrid::cube(1, 32, L);
  const ScalarField f = sample(g, [&](double x, double) { return std::sin(w * x); });
  const ScalarField d = spectral_derivative(f, axes_index({0}));
  const ScalarField exact = sample(g, [&](double x, double) { return w * std::cos(w * x); });
  EXPECT_LT(max_abs_diff(d.samples, exact.samples), 1e-12);
}

TEST(Torus, SeparableHessian) {
  const TorusGrid g = TorusGrid::cube(2, 32, kTwoPi);
  const ScalarField f = sample(g, [](double x, double y) { return std::sin(x) + std::cos(y); });
  const ScalarField fxx = spectral_derivative(f, axes_index({0, 0}));
  const ScalarField fyy = spectral_derivative(f, axes_index({1, 1}));
  const ScalarField fxy = spectral_derivative(f, axes_index({0, 1}));
  EXPECT_LT(max_abs_diff(fxx.samples, sample(g, [](double x, double) { return -std::sin(x); }).samples), 1e-12);
  EXPECT_LT(max_abs_diff(fyy.samples, sample(g, [](double, double y) { return -std::cos(y); }).samples), 1e-12);
  EXPECT_LT(max_abs_diff(fxy.samples, std::vector<double>(g.size(), 0.0)), 1e-12);
}

TEST(Torus, ModeDecay) {
  const double L = 5.0, w = kTwoPi / L, t = 0.3;
  const TorusGrid g = TorusGrid::cube(2, 32, L);
  const ScalarField f = sample(g, [&](double x, double) { return std::sin(w * x); });
  const ScalarField ft = heat_propagate(f, t);
  const double amp = std::exp(-w * w * t);
  for (std::size_t p = 0; p < g.size(); ++p) EXPECT_NEAR(ft.samples[p], amp * f.samples[p], 1e-10 * amp);
}

TEST(Torus, Semigroup) {
  const ScalarField f = random_torus(2, 32, 8, 1);
  EXPECT_LT(max_abs_diff(heat_propagate(heat_propagate(f, 0.01), 0.02).samples, heat_propagate(f, 0.03).samples), 1e-12);
  EXPECT_EQ(heat_propagate(f, 0.0).samples, f.samples);
  EXPECT_THROW(heat_propagate(f, -1e-3), std::invalid_argument);
}

TEST(Torus, LaplacianMeanIsZero) {
  const ScalarField lap = spectral_laplacian(random_torus(3, 16, 4, 2));
  EXPECT_LT(std::abs(lap.mean()), 1e-12);
}

TEST(Torus, ResampleAndRestrictRoundTrip) {
  const ScalarField f = random_torus(2, 32, 8, 3);
  const TorusSpectrum fine = TorusSpectrum::analyze(f).resampled(128);
  EXPECT_LT(max_abs_diff(fine.synthesize().restricted(32).samples, f.samples), 1e-13);
  EXPECT_EQ(TorusSpectrum::analyze(f).band(), 8);
}

TEST(Torus, PaddedResolution) {
  EXPECT_EQ(padded_resolution(32, 8, 2, false), 32);
  EXPECT_EQ(padded_resolution(32, 8, 2, true), 64);
  EXPECT_EQ(padded_resolution(32, 8, 3, false), 64);
  EXPECT_EQ(padded_resolution(64, 16, 2, false), 64);
  EXPECT_LE(padded_resolution(16, 8, 8, false), 64);
}

TEST(Torus, GridValidation) {
  EXPECT_THROW(TorusGrid::cube(2, 24, 1.0), std::invalid_argument);
  EXPECT_THROW(TorusGrid::cube(5, 16, 1.0), std::invalid_argument);
  EXPECT_THROW(TorusGrid::make(2, 16, {1.0}), std::invalid_argument);
  EXPECT_THROW(TorusGrid::cube(2, 16, 0.0), std::invalid_argument);
  const ScalarField f = random_torus(2, 16, 4, 1);
  EXPECT_THROW(spectral_derivative(f, axes_index({0, 0, 0, 0})), std::invalid_argument);
}
