#pragma once

// Pointwise field kernels. Each kernel has an OpenMP implementation and a
// `_reference` serial twin with the same arithmetic; tests require the two
// to agree bit for bit.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "pcflow/symfun.hpp"

namespace pcflow::kernels {

/// Packed position of (i, j), i <= j, in an n x n upper triangle.
inline int packed_index(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  return i * n - i * (i - 1) / 2 + (j - i);
}
inline int packed_size(int n) { return n * (n + 1) / 2; }

/// Self-adjoint matrix field stored as packed upper-triangle components.
template <class Scalar>
struct MatrixFieldView {
  int n = 0;
  std::size_t size = 0;
  std::vector<const Scalar*> comps;

  SelfAdjointMatrix<Scalar> at(std::size_t p) const {
    SelfAdjointMatrix<Scalar> a(n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        Scalar v = comps[packed_index(n, i, j)][p];
        if (i == j) v = Scalar(real_of(v));
        a.set(i, j, v);
      }
    return a;
  }
};

using SymFieldView = MatrixFieldView<double>;
using HermFieldView = MatrixFieldView<std::complex<double>>;

/// Per-axis derivative of a matrix field: axes[i] holds d_i A.
template <class Scalar>
struct GradientFieldView {
  std::vector<MatrixFieldView<Scalar>> axes;
};

using SymGradientView = GradientFieldView<double>;

// sigma_k(A) at every point.
template <class Scalar>
void sigma_field(const MatrixFieldView<Scalar>& a, int k, std::span<double> out);
template <class Scalar>
void sigma_field_reference(const MatrixFieldView<Scalar>& a, int k, std::span<double> out);

// trace(T_{k-1}(A) B) at every point.
template <class Scalar>
void sigma_derivative_field(const MatrixFieldView<Scalar>& a, const MatrixFieldView<Scalar>& b, int k,
                            std::span<double> out);
template <class Scalar>
void sigma_derivative_field_reference(const MatrixFieldView<Scalar>& a, const MatrixFieldView<Scalar>& b, int k,
                                      std::span<double> out);

// sum_i trace(d_i T_{k-1}(A) d_i A) at every point.
template <class Scalar>
void newton_contraction_field(const MatrixFieldView<Scalar>& a, const GradientFieldView<Scalar>& da, int k,
                              std::span<double> out);
template <class Scalar>
void newton_contraction_field_reference(const MatrixFieldView<Scalar>& a, const GradientFieldView<Scalar>& da,
                                        int k, std::span<double> out);

// Accumulates (trace d_i A)^2 into grad_sigma1_sq and trace(d_i A d_i A) into
// grad_a_sq for one axis i.
template <class Scalar>
void accumulate_gradient_terms(const MatrixFieldView<Scalar>& da_axis, std::span<double> grad_sigma1_sq,
                               std::span<double> grad_a_sq);
template <class Scalar>
void accumulate_gradient_terms_reference(const MatrixFieldView<Scalar>& da_axis, std::span<double> grad_sigma1_sq,
                                         std::span<double> grad_a_sq);

struct Extrema {
  double min = 0.0;
  double max = 0.0;
  std::size_t argmin = 0;
  std::size_t argmax = 0;
  bool any_nan = false;
};

/// Extrema over entries with mask[p] != 0 (all entries when mask is empty).
Extrema extrema(std::span<const double> v, std::span<const unsigned char> mask = {});
Extrema extrema_reference(std::span<const double> v, std::span<const unsigned char> mask = {});

/// max |v|.
double sup_norm(std::span<const double> v, std::span<const unsigned char> mask = {});

}  // namespace pcflow::kernels
