#include <gtest/gtest.h>

#include "pcflow/sphere.hpp"
#include "pcflow/sphere_calculus.hpp"
#include "support.hpp"

using namespace pcflow;
using namespace pcflow::test;

namespace {

double max_coeff_diff(const SphericalSpectrum& a, const SphericalSpectrum& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.coefficients().size(); ++i) s = std::max(s, std::abs(a.coefficients()[i] - b.coefficients()[i]));
  return s;
}

}  // namespace

TEST(Sphere, RoundTrip) {
  for (int lmax : {8, 33, 64}) {
    const SphericalSpectrum s = random_sphere_spectrum(SphereGrid::make(lmax), lmax, 3);
    const SphericalSpectrum back = sh_analyze(sh_synthesize(s));
    EXPECT_LT(max_coeff_diff(s, back), 1e-10) << lmax;
    EXPECT_FALSE(back.truncated);
  }
}

TEST(Sphere, RealFieldSymmetry) {
  const SphereGrid g = SphereGrid::make(16);
  const SphericalSpectrum s = sh_analyze(SphereField::from_function(g, [](double th, double ph) {
    return std::exp(std::sin(th) * std::cos(ph)) + std::cos(3.0 * th);
  }));
  for (int l = 0; l <= 16; ++l)
    for (int m = 1; m <= l; ++m) {
      const auto neg = s.at(l, -m), pos = s.at(l, m);
      EXPECT_NEAR(std::abs(neg - (m % 2 ? -1.0 : 1.0) * std::conj(pos)), 0.0, 1e-15);
    }
}

TEST(Sphere, Parseval) {
  const SphereGrid g = SphereGrid::make(24, 2.0);
  const SphericalSpectrum s = random_sphere_spectrum(g, 12, 4);
  SphereField sq = sh_synthesize(s);
  for (auto& v : sq.samples) v *= v;
  // integral over S^2(r) is r^2 times the unit-sphere sum
  EXPECT_NEAR(sq.integral() / (g.radius() * g.radius()), s.norm2(), 1e-10 * s.norm2());
}

TEST(Sphere, HarmonicDecayAndSemigroup) {
  const SphereGrid g = SphereGrid::make(20, 1.5);
  const SphericalSpectrum y = sphere_harmonic(g, 4, 3);
  const SphericalSpectrum yt = sphere_heat_propagate(y, 0.2);
  EXPECT_NEAR(yt.at(4, 3).real(), std::exp(-20.0 * 0.2 / (1.5 * 1.5)), 1e-14);
  const SphericalSpectrum r = random_sphere_spectrum(g, 10, 1);
  EXPECT_LT(max_coeff_diff(sphere_heat_propagate(sphere_heat_propagate(r, 0.03), 0.05), sphere_heat_propagate(r, 0.08)), 1e-12);
  EXPECT_THROW(sphere_heat_propagate(r, -0.1), std::invalid_argument);
}

TEST(Sphere, TruncationFlagged) {
  const SphereGrid g = SphereGrid::make(8);
  const SphericalSpectrum s = sh_analyze(SphereField::from_function(g, [](double th, double ph) {
    return std::exp(3.0 * std::sin(th) * std::cos(ph));
  }));
  EXPECT_TRUE(s.truncated);
}

TEST(Sphere, HessianOfCosTheta) {
  const SphereGrid g = SphereGrid::make(32, 1.0);
  const SphericalSpectrum u = sh_analyze(SphereField::from_function(g, [](double th, double) { return std::cos(th); }));
  const CovariantTensorField h = covariant_hessian(u, 2);
  const SphereField tr = metric_trace(h);
  const SphereField lap = sh_synthesize(u.laplacian());
  for (std::size_t p = 0; p < g.size(); ++p) {
    const double c = std::cos(g.theta(static_cast<int>(p / g.nlon())));
    const SymMatrix m = frame_matrix(h, p);
    EXPECT_NEAR(m(0, 0), -c, 1e-8);
    EXPECT_NEAR(m(1, 1), -c, 1e-8);
    EXPECT_NEAR(m(0, 1), 0.0, 1e-8);
    EXPECT_NEAR(tr.samples[p], lap.samples[p], 1e-9);
  }
}

TEST(Sphere, MetricIsParallel) {
  const CovariantTensorField dg = covariant_derivative(metric_tensor(SphereGrid::make(16, 0.7), 2));
  for (std::size_t p = 0; p < dg.grid.size(); ++p)
    for (int c = 0; c < dg.components(); ++c) EXPECT_LT(std::abs(frame_component(dg, p, c)), 1e-9);
}

TEST(Sphere, SigmaOneMeanVanishes) {
  const SphereGrid g = SphereGrid::make(24);
  const SphericalSpectrum u = random_sphere_spectrum(g, 10, 2);
  for (double t : {0.0, 0.05}) EXPECT_LT(std::abs(sh_synthesize(sphere_heat_propagate(u, t).laplacian()).mean()), 1e-10);
}

TEST(Sphere, PolishedExtremaFindPoles) {
  const SphereGrid g = SphereGrid::make(16);
  const SphericalSpectrum u = sh_analyze(SphereField::from_function(g, [](double th, double) { return std::cos(th); }));
  const SphereExtrema e = sphere_polished_extrema(u);
  EXPECT_NEAR(e.max, 1.0, 1e-13);
  EXPECT_NEAR(e.min, -1.0, 1e-13);
}

TEST(Sphere, Validation) {
  EXPECT_THROW(SphereGrid::make(1), std::invalid_argument);
  EXPECT_THROW(SphereGrid::make(200), std::invalid_argument);
  EXPECT_THROW(SphereGrid::make(8, -1.0), std::invalid_argument);
  const CovariantTensorField t4 =
      covariant_derivative(covariant_derivative(covariant_hessian(random_sphere_spectrum(SphereGrid::make(8), 4, 1), 4)));
  EXPECT_EQ(t4.rank, 4);
  EXPECT_THROW(covariant_derivative(t4), std::invalid_argument);
  EXPECT_THROW(covariant_derivative(metric_tensor(SphereGrid::make(8), 0)), std::invalid_argument);
  EXPECT_THROW(rough_laplacian(covariant_derivative(metric_tensor(SphereGrid::make(8), 4))), std::invalid_argument);
}
