#include <gtest/gtest.h>

#include "support.hpp"

using namespace pcflow;
using namespace pcflow::test;

TEST(Symfun, DiagonalMatchesProductSum) {
  const SymMatrix a = SymMatrix::diagonal({1.0, 2.0, 3.0});
  EXPECT_DOUBLE_EQ(elementary_symmetric(a, 1), 6.0);
  EXPECT_DOUBLE_EQ(elementary_symmetric(a, 2), 11.0);
  EXPECT_DOUBLE_EQ(elementary_symmetric(a, 3), 6.0);
  EXPECT_DOUBLE_EQ(elementary_symmetric(a, 0), 1.0);
}

TEST(Symfun, RandomFiveByFiveMatchesEigenvalueOracle) {
  Rng rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const SymMatrix a = random_sym(rng, 5);
    const double oracle = product_sum(jacobi_eigenvalues(a), 3);
    EXPECT_NEAR(elementary_symmetric(a, 3), oracle, 1e-10 * std::max(1.0, std::abs(oracle)));
  }
}

TEST(Symfun, HermitianMatchesRealEmbedding) {
  // A = X + iY Hermitian acts on R^2n as [[X, -Y], [Y, X]], whose spectrum
  // is that of A doubled.
  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const HermMatrix a = random_herm(rng, 3);
    SymMatrix big(6);
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) {
        big.set(i, j, a(i, j).real());
        big.set(i + 3, j + 3, a(i, j).real());
      }
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) big.set(i, j + 3, -a(i, j).imag());
    std::vector<double> ev = jacobi_eigenvalues(big);
    std::sort(ev.begin(), ev.end());
    const std::vector<double> lambda{ev[0], ev[2], ev[4]};
    for (int k = 1; k <= 3; ++k) EXPECT_NEAR(elementary_symmetric(a, k), product_sum(lambda, k), 1e-9);
  }
}

TEST(Symfun, NewtonTransformIdentities) {
  Rng rng(3);
  for (int n = 2; n <= 6; ++n)
    for (int trial = 0; trial < 100; ++trial) {
      const SymMatrix a = random_sym(rng, n);
      const double scale = std::pow(1.0 + std::sqrt(a.frobenius_norm2()), n);
      for (int k = 1; k <= n; ++k) {
        EXPECT_NEAR(trace_product(newton_transform(a, k - 1), a), k * elementary_symmetric(a, k), 1e-10 * scale);
        EXPECT_NEAR(newton_transform(a, k).trace(), (n - k) * elementary_symmetric(a, k), 1e-10 * scale);
      }
      const SymMatrix tn = newton_transform(a, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) EXPECT_NEAR(tn(i, j), 0.0, 1e-9 * scale);
      const double s1 = elementary_symmetric(a, 1);
      EXPECT_NEAR(s1 * s1 - 2.0 * elementary_symmetric(a, 2), a.frobenius_norm2(), 1e-12 * (1.0 + a.frobenius_norm2()));
    }
}

TEST(Symfun, HermitianSigmaIsReal) {
  Rng rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const HermMatrix a = random_herm(rng, 4);
    SmallMatrix<std::complex<double>> t = SmallMatrix<std::complex<double>>::identity(4);
    for (int k = 1; k <= 4; ++k) {
      const std::complex<double> s = (a.matrix() * t).trace() / static_cast<double>(k);
      EXPECT_LT(std::abs(s.imag()), 1e-12);
      EXPECT_NEAR(s.real(), elementary_symmetric(a, k), 1e-12);
      t = SmallMatrix<std::complex<double>>::identity(4) * s - t * a.matrix();
    }
  }
}

TEST(Symfun, DirectionalDerivativeMatchesFiniteDifference) {
  Rng rng(5);
  const double h = 1e-5;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 5;
    const int k = 1 + trial % n;
    const SymMatrix a = random_sym(rng, n), b = random_sym(rng, n);
    SymMatrix p(n), m(n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        p.set(i, j, a(i, j) + h * b(i, j));
        m.set(i, j, a(i, j) - h * b(i, j));
      }
    const double fd = (elementary_symmetric(p, k) - elementary_symmetric(m, k)) / (2.0 * h);
    const double exact = sigma_directional_derivative(a, b, k);
    EXPECT_NEAR(fd, exact, 1e-6 * std::max(1.0, std::abs(exact)));
  }
}

TEST(Symfun, NewtonTransformDerivativeMatchesFiniteDifference) {
  Rng rng(6);
  const double h = 1e-5;
  for (int k = 1; k <= 4; ++k) {
    const SymMatrix a = random_sym(rng, 4), b = random_sym(rng, 4);
    SymMatrix p(4), m(4);
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j) {
        p.set(i, j, a(i, j) + h * b(i, j));
        m.set(i, j, a(i, j) - h * b(i, j));
      }
    const auto d = newton_transform_derivative(a, b, k);
    const SymMatrix tp = newton_transform(p, k), tm = newton_transform(m, k);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) EXPECT_NEAR(d(i, j), (tp(i, j) - tm(i, j)) / (2.0 * h), 1e-6);
  }
}

TEST(Symfun, GardingMembership) {
  EXPECT_TRUE(garding_membership(SymMatrix::diagonal({1.0, 1.0, 1.0}), 3));
  // sigma_1 = 1 > 0, sigma_2 = -2 < 0
  const SymMatrix a = SymMatrix::diagonal({2.0, 1.0, -2.0 / 3.0 - 1.0});
  EXPECT_TRUE(garding_membership(a, 1));
  EXPECT_FALSE(garding_membership(a, 2));
  EXPECT_FALSE(garding_membership(SymMatrix::diagonal({1.0, -1.0}), 1));
  EXPECT_FALSE(garding_membership(SymMatrix::diagonal({1.0, 1.0}), 1, 5.0));
}

TEST(Symfun, RejectsBadArguments) {
  EXPECT_THROW(SymMatrix(1), std::invalid_argument);
  EXPECT_THROW(SymMatrix(kMaxMatrixDim + 1), std::invalid_argument);
  HermMatrix h(2);
  EXPECT_THROW(h.set(0, 0, {1.0, 0.5}), std::invalid_argument);
  EXPECT_THROW(elementary_symmetric(SymMatrix::identity(3), 4), std::out_of_range);
  EXPECT_THROW(elementary_symmetric(SymMatrix::identity(3), -1), std::out_of_range);
  SmallMatrix<double> m(2);
  m(0, 1) = 1.0;
  EXPECT_THROW(SymMatrix::from_matrix(m), std::invalid_argument);
}
