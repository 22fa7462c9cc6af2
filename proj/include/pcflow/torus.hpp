#pragma once

// Pseudo-spectral calculus on the flat torus [0, L_1) x ... x [0, L_d).

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

namespace pcflow {

inline constexpr int kMaxTorusDim = 4;

/// Uniform periodic grid with N points per axis (N a power of two).
struct TorusGrid {
  int dim = 2;
  int n = 32;
  std::array<double, kMaxTorusDim> side{};

  /// Validates and builds a grid; `sides` holds one length per axis.
  static TorusGrid make(int dim, int n, const std::vector<double>& sides);
  static TorusGrid cube(int dim, int n, double side);

  std::size_t size() const;
  double spacing(int axis) const { return side[axis] / n; }
  double coordinate(int axis, int index) const { return index * spacing(axis); }
  /// Per-axis indices of a flat row-major node index.
  std::array<int, kMaxTorusDim> unflatten(std::size_t flat) const;
  /// Same grid with `n_new` points per axis.
  TorusGrid with_resolution(int n_new) const;

  friend bool operator==(const TorusGrid&, const TorusGrid&) = default;
};

struct ScalarField {
  TorusGrid grid;
  std::vector<double> samples;

  static ScalarField zeros(const TorusGrid& g) { return {g, std::vector<double>(g.size(), 0.0)}; }
  double mean() const;
  /// Samples of the coarser grid whose nodes are a subset of this grid's.
  ScalarField restricted(int n_coarse) const;
};

/// Derivative orders per axis.
using MultiIndex = std::array<int, kMaxTorusDim>;

inline int total_order(const MultiIndex& mi) { return mi[0] + mi[1] + mi[2] + mi[3]; }
/// Multi-index with one derivative along each listed axis.
MultiIndex axes_index(std::initializer_list<int> axes);

/// Normalized half-spectrum coefficients of a real field:
/// f(x) = sum_k c_k exp(i k . x 2 pi / L).
class TorusSpectrum {
 public:
  static TorusSpectrum analyze(const ScalarField& f);

  const TorusGrid& grid() const { return grid_; }
  ScalarField synthesize() const;

  /// Exact derivative of the trigonometric interpolant. Odd orders along an
  /// axis annihilate that axis's Nyquist mode. Throws for total order > 3.
  TorusSpectrum derivative(const MultiIndex& mi) const;
  TorusSpectrum laplacian() const;
  /// Each mode scaled by exp(-|k|^2 dt); dt < 0 throws.
  TorusSpectrum propagated(double dt) const;

  /// Largest |k_axis| carrying a coefficient above `rel_tol` times the largest one.
  int band(double rel_tol = 1e-12) const;
  /// Trigonometric interpolation onto a finer grid (n_new >= n). Nyquist
  /// content of the source is dropped.
  TorusSpectrum resampled(int n_new) const;

  std::vector<std::complex<double>>& coefficients() { return coeffs_; }
  const std::vector<std::complex<double>>& coefficients() const { return coeffs_; }
  /// Integer wavenumbers of half-spectrum slot `idx`.
  std::array<int, kMaxTorusDim> wavenumbers(std::size_t idx) const;

  static TorusSpectrum zeros(const TorusGrid& g);

 private:
  TorusGrid grid_;
  std::vector<std::complex<double>> coeffs_;
};

ScalarField spectral_derivative(const ScalarField& f, const MultiIndex& mi);
ScalarField heat_propagate(const ScalarField& f, double dt);
ScalarField spectral_laplacian(const ScalarField& f);

/// Smallest power-of-two resolution >= n with degree * band <= N/2
/// (strictly < when `odd_derivative`), capped at 4n.
int padded_resolution(int n, int band, int degree, bool odd_derivative);

}  // namespace pcflow
