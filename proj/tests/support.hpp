#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "pcflow/initial_data.hpp"
#include "pcflow/symfun.hpp"

namespace pcflow::test {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo = -1.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline SymMatrix random_sym(Rng& rng, int n) {
  SymMatrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) a.set(i, j, uniform(rng));
  return a;
}

inline HermMatrix random_herm(Rng& rng, int n) {
  HermMatrix a(n);
  for (int i = 0; i < n; ++i) {
    a.set(i, i, {uniform(rng), 0.0});
    for (int j = i + 1; j < n; ++j) a.set(i, j, {uniform(rng), uniform(rng)});
  }
  return a;
}

// Cyclic Jacobi eigenvalues of a real symmetric matrix.
inline std::vector<double> jacobi_eigenvalues(const SymMatrix& s) {
  const int n = s.dim();
  std::vector<std::vector<double>> a(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = s(i, j);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    if (off < 1e-30) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), sn = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - sn * akq;
          a[k][q] = sn * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - sn * aqk;
          a[q][k] = sn * apk + c * aqk;
        }
      }
  }
  std::vector<double> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = a[i][i];
  return ev;
}

// e_k of a list of numbers by the subset recursion.
inline double product_sum(const std::vector<double>& x, int k) {
  std::vector<double> e(k + 1, 0.0);
  e[0] = 1.0;
  for (double v : x)
    for (int j = k; j >= 1; --j) e[j] += v * e[j - 1];
  return e[k];
}

inline ScalarField random_torus(int dim, int n, int band, std::uint64_t seed, double side = 2.0 * std::numbers::pi) {
  InitialSpec spec;
  spec.preset = "random_bandlimited";
  spec.band = band;
  spec.seed = seed;
  return initial_data(TorusGrid::cube(dim, n, side), spec);
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s = std::max(s, std::abs(a[i] - b[i]));
  return s;
}

}  // namespace pcflow::test
