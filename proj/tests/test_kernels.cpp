#include <gtest/gtest.h>

#include "pcflow/kahler.hpp"
#include "pcflow/kernels.hpp"
#include "pcflow/torus_identities.hpp"
#include "support.hpp"

using namespace pcflow;
using namespace pcflow::test;

// The OpenMP kernels must reproduce their serial twins bit for bit.

TEST(Kernels, RealFieldsMatchReference) {
  const TorusSpectrum s = TorusSpectrum::analyze(random_torus(3, 16, 4, 11));
  const HessianField a = HessianField::from_spectrum(s);
  const HessianField la = HessianField::from_spectrum(s.laplacian());
  const ThirdDerivativeField d3 = ThirdDerivativeField::from_spectrum(s);
  const std::size_t n = a.grid.size();
  for (int k = 1; k <= 3; ++k) {
    std::vector<double> x(n), y(n);
    kernels::sigma_field(a.view(), k, x);
    kernels::sigma_field_reference(a.view(), k, y);
    EXPECT_EQ(x, y);
    kernels::sigma_derivative_field(a.view(), la.view(), k, x);
    kernels::sigma_derivative_field_reference(a.view(), la.view(), k, y);
    EXPECT_EQ(x, y);
    kernels::newton_contraction_field(a.view(), d3.view(), k, x);
    kernels::newton_contraction_field_reference(a.view(), d3.view(), k, y);
    EXPECT_EQ(x, y);
  }
  std::vector<double> g1(n, 0.0), ga(n, 0.0), h1(n, 0.0), ha(n, 0.0);
  for (const auto& axis : d3.view().axes) {
    kernels::accumulate_gradient_terms(axis, g1, ga);
    kernels::accumulate_gradient_terms_reference(axis, h1, ha);
  }
  EXPECT_EQ(g1, h1);
  EXPECT_EQ(ga, ha);
}

TEST(Kernels, HermitianFieldsMatchReference) {
  const HermitianHessianField a = complex_hessian(random_torus(4, 8, 2, 12));
  std::vector<double> x(a.grid.size()), y(a.grid.size());
  for (int k = 1; k <= 2; ++k) {
    kernels::sigma_field(a.view(), k, x);
    kernels::sigma_field_reference(a.view(), k, y);
    EXPECT_EQ(x, y);
  }
}

TEST(Kernels, ExtremaWithMask) {
  const std::vector<double> v{3.0, -1.0, 7.0, 2.0, -5.0};
  const std::vector<unsigned char> mask{1, 1, 0, 1, 0};
  const auto e = kernels::extrema(v, mask);
  EXPECT_EQ(e.min, -1.0);
  EXPECT_EQ(e.max, 3.0);
  EXPECT_EQ(e.argmin, 1u);
  EXPECT_EQ(e.argmax, 0u);
  const auto all = kernels::extrema(v);
  EXPECT_EQ(all.min, -5.0);
  EXPECT_EQ(all.max, 7.0);
  EXPECT_EQ(kernels::sup_norm(v), 7.0);
  EXPECT_EQ(kernels::sup_norm(v, mask), 3.0);

  Rng rng(1);
  std::vector<double> big(100000);
  for (auto& b : big) b = uniform(rng);
  const auto p = kernels::extrema(big), r = kernels::extrema_reference(big);
  EXPECT_EQ(p.min, r.min);
  EXPECT_EQ(p.max, r.max);
  EXPECT_EQ(p.argmin, r.argmin);
  EXPECT_EQ(p.argmax, r.argmax);
}

TEST(Kernels, ExtremaFlagsNaN) {
  const std::vector<double> v{1.0, std::nan(""), 2.0};
  EXPECT_TRUE(kernels::extrema(v).any_nan);
  EXPECT_TRUE(kernels::extrema_reference(v).any_nan);
}
