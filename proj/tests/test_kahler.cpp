#include <gtest/gtest.h>

#include "pcflow/kahler.hpp"
#include "support.hpp"

using namespace pcflow;
using namespace pcflow::test;

TEST(Kahler, TraceIsQuarterLaplacian) {
  for (int dim : {2, 4}) {
    const ScalarField f = random_torus(dim, dim == 2 ? 32 : 16, 4, 1);
    EXPECT_LT(max_abs_diff(complex_hessian(f).trace().samples, [&] {
                auto l = spectral_laplacian(f).samples;
                for (auto& v : l) v *= 0.25;
                return l;
              }()),
              1e-10);
  }
}

TEST(Kahler, HermitianUnderHeatFlow) {
  const ScalarField f = heat_propagate(random_torus(4, 8, 2, 2), 0.05);
  const HermitianHessianField a = complex_hessian(f);
  for (std::size_t p = 0; p < f.samples.size(); ++p) {
    const HermMatrix h = a.at(p);
    for (int i = 0; i < 2; ++i) EXPECT_LT(std::abs(h(i, i).imag()), 1e-12);
    const auto raw = a.comps[kernels::packed_index(2, 0, 0)][p];
    EXPECT_LT(std::abs(raw.imag()), 1e-12);
  }
}

TEST(Kahler, SigmaTwoResidual) {
  EXPECT_LT(kahler_sigma2_residual(random_torus(4, 16, 4, 3)).sup(), 1e-8);
  EXPECT_THROW(kahler_sigma2_residual(random_torus(2, 16, 4, 3)), std::invalid_argument);
}

TEST(Kahler, RankOneHasNoSigmaTwo) {
  const TorusGrid g = TorusGrid::cube(4, 8, 2.0 * std::numbers::pi);
  ScalarField f = ScalarField::zeros(g);
  for (std::size_t p = 0; p < g.size(); ++p) {
    const auto i = g.unflatten(p);
    f.samples[p] = std::cos(g.coordinate(0, i[0]) - 2.0 * g.coordinate(1, i[1]));
  }
  const HermitianHessianField a = complex_hessian(f);
  for (std::size_t p = 0; p < g.size(); ++p) EXPECT_LT(std::abs(elementary_symmetric(a.at(p), 2)), 1e-10);
  EXPECT_LT(kahler_sigma2_residual(f).sup(), 1e-10);
}

TEST(Kahler, ConditionOnSampledHessians) {
  const Non1FieldCheck c = condition_non1_field_check(random_torus(4, 8, 2, 4), 16);
  EXPECT_TRUE(c.ok);
  ASSERT_EQ(c.cp_values.size(), 16u);
  for (double v : c.cp_values) EXPECT_GE(v, -1e-12);
}

TEST(Shrinking, Classify) {
  EXPECT_EQ(classify(1e-9, 5.0, 10.0), "r0_zero");
  EXPECT_EQ(classify(5.0, 1e-9, 10.0), "r1_zero");
  EXPECT_EQ(classify(1e-9, 1e-9, 10.0), "both");
  EXPECT_EQ(classify(5.0, 5.0, 10.0), "neither");
  EXPECT_EQ(classify(1e-9, 1e-3, 10.0), "neither");
}

TEST(Shrinking, ConformalTimeSemigroup) {
  // the flow from t1 to t2 equals conformal time tau(t2) - tau(t1)
  const SphericalSpectrum u = random_sphere_spectrum(SphereGrid::make(16), 6, 2);
  const double t1 = 0.05, t2 = 0.12, c = 2.0;
  const SphericalSpectrum a = sphere_heat_propagate(sphere_heat_propagate(u, conformal_time(t1, c)),
                                                    conformal_time(t2, c) - conformal_time(t1, c));
  const SphericalSpectrum b = sphere_heat_propagate(u, conformal_time(t2, c));
  for (std::size_t i = 0; i < a.coefficients().size(); ++i)
    EXPECT_LT(std::abs(a.coefficients()[i] - b.coefficients()[i]), 1e-12);
}

TEST(Shrinking, EulerConvergesAtFirstOrder) {
  const SphericalSpectrum u = random_sphere_spectrum(SphereGrid::make(16), 4, 3);
  EXPECT_GE(shrinking_euler_order(u, 0.2, 400, 2.0), 0.95);
}

TEST(Shrinking, AdjudicationVerdict) {
  ShrinkingOptions o;
  for (double rate : {2.0, 1.0}) {
    o.rate = rate;
    const AdjudicationReport r = shrinking_sigma1_adjudication(random_sphere_spectrum(SphereGrid::make(24), 6, 4), o);
    EXPECT_EQ(r.verdict, "r1_zero");
    EXPECT_EQ(r.steps.size(), 21u);
  }
  o.steps = 100;
  EXPECT_THROW(shrinking_sigma1_adjudication(random_sphere_spectrum(SphereGrid::make(24), 6, 4), o), std::out_of_range);
  o.steps = 5;
  EXPECT_THROW(shrinking_sigma1_adjudication(random_sphere_spectrum(SphereGrid::make(24, 2.0), 6, 4), o),
               std::invalid_argument);
}
