#include <gtest/gtest.h>

#include "pcflow/sphere_identities.hpp"
#include "support.hpp"

using namespace pcflow;
using namespace pcflow::test;

TEST(SphereIdentities, CommutationHoldsForLowDegree) {
  for (int l = 1; l <= 4; ++l)
    for (int m = 0; m <= l; ++m) {
      const SphereResidual r = commutation_residual(sphere_harmonic(SphereGrid::make(32, 1.3), l, m));
      EXPECT_LT(r.field.sup(), 1e-7) << l << "," << m;
      EXPECT_FALSE(r.truncated);
    }
}

TEST(SphereIdentities, FlippedCurvatureIsDetected) {
  const SphericalSpectrum u = random_sphere_spectrum(SphereGrid::make(32), 4, 2);
  const double right = commutation_residual(u).field.sup();
  const double flipped = commutation_residual(u, true).field.sup();
  EXPECT_GT(flipped, 1e3 * right);
}

TEST(SphereIdentities, CommutationFlagsUnderResolvedData) {
  EXPECT_TRUE(commutation_residual(random_sphere_spectrum(SphereGrid::make(16), 8, 1)).truncated);
}

TEST(SphereIdentities, SigmaTwoResidual) {
  const SphereGrid g = SphereGrid::make(32);
  const SphericalSpectrum c = sh_analyze(SphereField::from_function(g, [](double th, double) { return std::cos(th); }));
  EXPECT_LT(riemannian_sigma2_residual(c).field.sup(), 1e-7);
  const SphericalSpectrum r = random_sphere_spectrum(SphereGrid::make(48), 8, 5);
  EXPECT_LT(riemannian_sigma2_residual(r).field.sup(), 1e-6);
  EXPECT_LT(sphere_curvature_term_gap(r), 1e-9);
}

TEST(SphereIdentities, SigmaOneResidual) {
  EXPECT_LT(sphere_sigma1_residual(random_sphere_spectrum(SphereGrid::make(24, 2.0), 8, 6)).field.sup(), 1e-9);
}

TEST(SphereFlow, CosThetaMonitors) {
  const SphereGrid g = SphereGrid::make(32);
  const SphericalSpectrum u = sh_analyze(SphereField::from_function(g, [](double th, double) { return std::cos(th); }));
  SphereFlowOptions o;
  o.dt = 1e-3;
  o.steps = 100;
  o.monitors = MonitorSet::parse({"sigma1", "res_sigma2"});
  const MonitorSeries s = sphere_run_flow(u, o);
  ASSERT_EQ(s.rows.size(), 101u);
  for (const auto& row : s.rows) {
    // sigma_1 = -2 e^{-2t} cos(theta)
    EXPECT_NEAR(*row[Column::min_sigma1], -2.0 * std::exp(-2.0 * row.t), 1e-10);
    EXPECT_LT(*row[Column::res_sigma2_sup], 1e-7);
  }
  o.monitors = MonitorSet::parse({"quotient"});
  EXPECT_THROW(sphere_run_flow(u, o), std::invalid_argument);
}
