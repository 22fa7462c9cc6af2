#include <gtest/gtest.h>

#include "pcflow/initial_data.hpp"
#include "support.hpp"

using namespace pcflow;
using namespace pcflow::test;

TEST(InitialData, RandomIsResolutionIndependent) {
  const ScalarField coarse = random_torus(2, 32, 8, 5);
  const ScalarField fine = random_torus(2, 128, 8, 5);
  EXPECT_LT(max_abs_diff(fine.restricted(32).samples, coarse.samples), 1e-13);
  EXPECT_EQ(TorusSpectrum::analyze(coarse).band(), 8);
}

TEST(InitialData, Deterministic) {
  EXPECT_EQ(random_torus(3, 16, 4, 9).samples, random_torus(3, 16, 4, 9).samples);
  EXPECT_NE(random_torus(3, 16, 4, 9).samples, random_torus(3, 16, 4, 10).samples);
}

TEST(InitialData, Presets) {
  const TorusGrid g = TorusGrid::cube(2, 64, 20.0);
  for (const auto& name : initial_presets()) {
    InitialSpec s;
    s.preset = name;
    s.modes = {Mode{{1, 1, 0, 0}, 1.0, 0.0}};
    const ScalarField f = initial_data(g, s);
    ASSERT_EQ(f.samples.size(), g.size()) << name;
    for (double v : f.samples) ASSERT_TRUE(std::isfinite(v)) << name;
  }
  InitialSpec bump;
  bump.preset = "gaussian_bump";
  bump.amplitude = -1.0;
  bump.width = 2.0;
  EXPECT_LT(std::abs(initial_data(g, bump).mean()), 1e-12);
  InitialSpec bad;
  bad.preset = "nope";
  EXPECT_THROW(initial_data(g, bad), std::invalid_argument);
}
