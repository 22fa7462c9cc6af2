#include "pcflow/torus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pcflow/fft.hpp"

namespace pcflow {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

std::complex<double> ipow(std::complex<double> z, int p) {
  std::complex<double> r{1.0, 0.0};
  for (int i = 0; i < p; ++i) r *= z;
  return r;
}

}  // namespace

TorusGrid TorusGrid::make(int dim, int n, const std::vector<double>& sides) {
  if (dim < 1 || dim > kMaxTorusDim) throw std::invalid_argument("TorusGrid: dimension must be 1..4");
  if (!is_power_of_two(n) || n < 4) throw std::invalid_argument("TorusGrid: N must be a power of two >= 4");
  if (static_cast<int>(sides.size()) != dim) throw std::invalid_argument("TorusGrid: one side length per axis");
  TorusGrid g;
  g.dim = dim;
  g.n = n;
  for (int a = 0; a < dim; ++a) {
    if (!(sides[a] > 0.0)) throw std::invalid_argument("TorusGrid: side lengths must be positive");
    g.side[a] = sides[a];
  }
  return g;
}

TorusGrid TorusGrid::cube(int dim, int n, double side) { return make(dim, n, std::vector<double>(dim, side)); }

std::size_t TorusGrid::size() const {
  std::size_t s = 1;
  for (int a = 0; a < dim; ++a) s *= static_cast<std::size_t>(n);
  return s;
}

std::array<int, kMaxTorusDim> TorusGrid::unflatten(std::size_t flat) const {
  std::array<int, kMaxTorusDim> idx{};
  for (int a = dim - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(flat % n);
    flat /= n;
  }
  return idx;
}

TorusGrid TorusGrid::with_resolution(int n_new) const {
  TorusGrid g = *this;
  if (!is_power_of_two(n_new) || n_new < 4) throw std::invalid_argument("TorusGrid: N must be a power of two >= 4");
  g.n = n_new;
  return g;
}

double ScalarField::mean() const {
  double s = 0.0;
  for (double v : samples) s += v;
  return s / static_cast<double>(samples.size());
}

ScalarField ScalarField::restricted(int n_coarse) const {
  if (n_coarse > grid.n || grid.n % n_coarse != 0) throw std::invalid_argument("restricted: incompatible resolution");
  const int stride = grid.n / n_coarse;
  ScalarField out = zeros(grid.with_resolution(n_coarse));
  for (std::size_t i = 0; i < out.samples.size(); ++i) {
    const auto idx = out.grid.unflatten(i);
    std::size_t flat = 0;
    for (int a = 0; a < grid.dim; ++a) flat = flat * grid.n + static_cast<std::size_t>(idx[a] * stride);
    out.samples[i] = samples[flat];
  }
  return out;
}

MultiIndex axes_index(std::initializer_list<int> axes) {
  MultiIndex mi{};
  for (int a : axes) ++mi.at(a);
  return mi;
}

TorusSpectrum TorusSpectrum::zeros(const TorusGrid& g) {
  TorusSpectrum s;
  s.grid_ = g;
  s.coeffs_.assign(fft::half_spectrum_size(g.dim, g.n), {0.0, 0.0});
  return s;
}

TorusSpectrum TorusSpectrum::analyze(const ScalarField& f) {
  TorusSpectrum s = zeros(f.grid);
  fft::forward(f.grid.dim, f.grid.n, f.samples, s.coeffs_);
  const double scale = 1.0 / static_cast<double>(f.grid.size());
  for (auto& c : s.coeffs_) c *= scale;
  return s;
}

ScalarField TorusSpectrum::synthesize() const {
  ScalarField f = ScalarField::zeros(grid_);
  fft::inverse(grid_.dim, grid_.n, coeffs_, f.samples);
  return f;
}

std::array<int, kMaxTorusDim> TorusSpectrum::wavenumbers(std::size_t idx) const {
  std::array<int, kMaxTorusDim> k{};
  const int n = grid_.n;
  const int last = n / 2 + 1;
  k[grid_.dim - 1] = static_cast<int>(idx % last);
  idx /= last;
  for (int a = grid_.dim - 2; a >= 0; --a) {
    const int j = static_cast<int>(idx % n);
    idx /= n;
    k[a] = j <= n / 2 ? j : j - n;
  }
  return k;
}

TorusSpectrum TorusSpectrum::derivative(const MultiIndex& mi) const {
  if (total_order(mi) > 3) throw std::invalid_argument("spectral_derivative: order > 3 unsupported");
  for (int a = grid_.dim; a < kMaxTorusDim; ++a)
    if (mi[a] != 0) throw std::invalid_argument("spectral_derivative: axis beyond grid dimension");
  TorusSpectrum out = *this;
  const int nyq = grid_.n / 2;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const auto k = wavenumbers(i);
    std::complex<double> factor{1.0, 0.0};
    for (int a = 0; a < grid_.dim; ++a) {
      if (mi[a] == 0) continue;
      if (std::abs(k[a]) == nyq && mi[a] % 2 == 1) {
        factor = 0.0;
        break;
      }
      const double kappa = 2.0 * std::numbers::pi * k[a] / grid_.side[a];
      factor *= ipow({0.0, kappa}, mi[a]);
    }
    out.coeffs_[i] *= factor;
  }
  return out;
}

TorusSpectrum TorusSpectrum::laplacian() const {
  TorusSpectrum out = *this;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const auto k = wavenumbers(i);
    double k2 = 0.0;
    for (int a = 0; a < grid_.dim; ++a) {
      const double kappa = 2.0 * std::numbers::pi * k[a] / grid_.side[a];
      k2 += kappa * kappa;
    }
    out.coeffs_[i] *= -k2;
  }
  return out;
}

TorusSpectrum TorusSpectrum::propagated(double dt) const {
  if (!(dt >= 0.0)) throw std::invalid_argument("heat_propagate: dt must be >= 0 (no backward heat flow)");
  TorusSpectrum out = *this;
  if (dt == 0.0) return out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const auto k = wavenumbers(i);
    double k2 = 0.0;
    for (int a = 0; a < grid_.dim; ++a) {
      const double kappa = 2.0 * std::numbers::pi * k[a] / grid_.side[a];
      k2 += kappa * kappa;
    }
    out.coeffs_[i] *= std::exp(-k2 * dt);
  }
  return out;
}

int TorusSpectrum::band(double rel_tol) const {
  double cmax = 0.0;
  for (const auto& c : coeffs_) cmax = std::max(cmax, std::abs(c));
  if (cmax == 0.0) return 0;
  int b = 0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (std::abs(coeffs_[i]) <= rel_tol * cmax) continue;
    const auto k = wavenumbers(i);
    for (int a = 0; a < grid_.dim; ++a) b = std::max(b, std::abs(k[a]));
  }
  return b;
}

TorusSpectrum TorusSpectrum::resampled(int n_new) const {
  if (n_new < grid_.n) throw std::invalid_argument("resampled: target must not be coarser");
  if (n_new == grid_.n) return *this;
  TorusSpectrum out = zeros(grid_.with_resolution(n_new));
  const int nyq = grid_.n / 2;
  const int last_new = n_new / 2 + 1;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const auto k = wavenumbers(i);
    bool nyquist = false;
    for (int a = 0; a < grid_.dim; ++a) nyquist = nyquist || std::abs(k[a]) == nyq;
    if (nyquist) continue;
    std::size_t flat = 0;
    for (int a = 0; a < grid_.dim - 1; ++a) flat = flat * n_new + static_cast<std::size_t>(k[a] < 0 ? k[a] + n_new : k[a]);
    flat = flat * last_new + static_cast<std::size_t>(k[grid_.dim - 1]);
    out.coeffs_[flat] = coeffs_[i];
  }
  return out;
}

ScalarField spectral_derivative(const ScalarField& f, const MultiIndex& mi) {
  return TorusSpectrum::analyze(f).derivative(mi).synthesize();
}

ScalarField heat_propagate(const ScalarField& f, double dt) {
  if (!(dt >= 0.0)) throw std::invalid_argument("heat_propagate: dt must be >= 0 (no backward heat flow)");
  if (dt == 0.0) return f;
  return TorusSpectrum::analyze(f).propagated(dt).synthesize();
}

ScalarField spectral_laplacian(const ScalarField& f) { return TorusSpectrum::analyze(f).laplacian().synthesize(); }

int padded_resolution(int n, int band, int degree, bool odd_derivative) {
  int np = n;
  auto resolved = [&](int m) {
    const int need = degree * band;
    return odd_derivative ? need < m / 2 : need <= m / 2;
  };
  while (!resolved(np) && np < 4 * n) np *= 2;
  return np;
}

}  // namespace pcflow
