#include <gtest/gtest.h>

#include "pcflow/geomodels.hpp"
#include "support.hpp"

using namespace pcflow;
using namespace pcflow::test;

TEST(Geomodels, SphereRicciIsEinstein) {
  const SphereCurvature r(ModelSn{4, 2.0});
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l) EXPECT_DOUBLE_EQ(r.ricci(k, l), k == l ? 3 * 2.0 : 0.0);
  // sectional curvature of the (0, 1) plane
  EXPECT_DOUBLE_EQ(r.riemann(0, 1, 0, 1), 2.0);
}

TEST(Geomodels, SphereCondition) {
  Rng rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + trial % 5;
    const ModelSn s{n, uniform(rng, 0.5, 3.0)};
    const SymMatrix a = random_sym(rng, n);
    EXPECT_LE(closed_form_gap(a, s), 1e-12 * s.kappa * (1.0 + a.frobenius_norm2()));
    EXPECT_GE(condition_non2_value(a, s), -1e-12);
  }
  // equality exactly on multiples of the identity
  EXPECT_NEAR(condition_non2_value(SymMatrix::identity(3).scaled(2.5), ModelSn{3, 1.0}), 0.0, 1e-12);
}

TEST(Geomodels, ProjectiveCondition) {
  Rng rng(8);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + trial % 4;
    const ModelCPn cp{n, uniform(rng, 0.5, 3.0)};
    const HermMatrix a = random_herm(rng, n);
    EXPECT_LE(closed_form_gap(a, cp), 1e-12 * cp.c * (1.0 + a.frobenius_norm2()));
    EXPECT_GE(condition_non1_value(a, cp), -1e-12);
  }
}

TEST(Geomodels, FlatKahlerContractionVanishes) {
  Rng rng(9);
  const HermMatrix a = random_herm(rng, 2);
  EXPECT_EQ(condition_non1_value(a, KahlerCurvature::flat(2)), 0.0);
}

TEST(Geomodels, ValidateRejectsNonPositive) {
  EXPECT_THROW(validate(ModelSn{2, -1.0}), std::invalid_argument);
  EXPECT_THROW(validate(RoundSphere2{0.0}), std::invalid_argument);
  EXPECT_THROW(validate(FlatTorus{2, {1.0, -1.0}}), std::invalid_argument);
  EXPECT_NO_THROW(validate(ModelCPn{2, 1.0}));
}
