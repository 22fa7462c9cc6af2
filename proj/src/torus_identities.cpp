#include "pcflow/torus_identities.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace pcflow {

namespace {

int third_index(int n, int a, int b, int c) {
  std::array<int, 3> s{a, b, c};
  std::sort(s.begin(), s.end());
  int idx = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = j; k < n; ++k) {
        if (i == s[0] && j == s[1] && k == s[2]) return idx;
        ++idx;
      }
  throw std::out_of_range("third_index");
}

void check_k(int n, int k, int lo) {
  if (k < lo || k > n) throw std::out_of_range("sigma order k outside [" + std::to_string(lo) + ", n]");
}

std::vector<double> laplacian_of(const std::vector<double>& v, const TorusGrid& g) {
  return spectral_laplacian(ScalarField{g, v}).samples;
}

std::vector<double> gradient_component(const std::vector<double>& v, const TorusGrid& g, int axis) {
  MultiIndex mi{};
  mi[axis] = 1;
  return spectral_derivative(ScalarField{g, v}, mi).samples;
}

ResidualField restrict_residual(std::vector<double> values, const TorusGrid& fine, int n_coarse) {
  ResidualField r;
  r.values = ScalarField{fine, std::move(values)}.restricted(n_coarse).samples;
  return r;
}

// Everything quotient_residual needs, evaluated on one grid.
struct SigmaFields {
  TorusGrid grid;
  HessianField a;
  std::vector<double> sigma1, sigma2, dt_sigma1, dt_sigma2, grad_sigma1_sq;
};

SigmaFields sigma_fields(const TorusSpectrum& s) {
  SigmaFields out{s.grid(), HessianField::from_spectrum(s), {}, {}, {}, {}, {}};
  const std::size_t size = s.grid().size();
  const HessianField la = HessianField::from_spectrum(s.laplacian());
  const ThirdDerivativeField d3 = ThirdDerivativeField::from_spectrum(s);
  out.sigma1.resize(size);
  out.sigma2.resize(size);
  out.dt_sigma1.resize(size);
  out.dt_sigma2.resize(size);
  const auto av = out.a.view();
  const auto lav = la.view();
  kernels::sigma_field(av, 1, out.sigma1);
  kernels::sigma_field(av, 2, out.sigma2);
  kernels::sigma_derivative_field(av, lav, 1, out.dt_sigma1);
  kernels::sigma_derivative_field(av, lav, 2, out.dt_sigma2);
  std::vector<double> grad_a_sq(size, 0.0);
  out.grad_sigma1_sq.assign(size, 0.0);
  const auto dv = d3.view();
  for (const auto& axis : dv.axes) kernels::accumulate_gradient_terms(axis, out.grad_sigma1_sq, grad_a_sq);
  return out;
}

}  // namespace

HessianField HessianField::from_spectrum(const TorusSpectrum& s) {
  HessianField h{s.grid(), {}};
  const int n = s.grid().dim;
  h.comps.resize(kernels::packed_size(n));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) h.comps[kernels::packed_index(n, i, j)] = s.derivative(axes_index({i, j})).synthesize().samples;
  return h;
}

kernels::SymFieldView HessianField::view() const {
  kernels::SymFieldView v;
  v.n = grid.dim;
  v.size = grid.size();
  for (const auto& c : comps) v.comps.push_back(c.data());
  return v;
}

ScalarField HessianField::trace() const {
  ScalarField t = ScalarField::zeros(grid);
  for (int i = 0; i < grid.dim; ++i) {
    const auto& c = comps[kernels::packed_index(grid.dim, i, i)];
    for (std::size_t p = 0; p < t.samples.size(); ++p) t.samples[p] += c[p];
  }
  return t;
}

ThirdDerivativeField ThirdDerivativeField::from_spectrum(const TorusSpectrum& s) {
  ThirdDerivativeField d{s.grid(), {}};
  const int n = s.grid().dim;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = j; k < n; ++k) d.comps.push_back(s.derivative(axes_index({i, j, k})).synthesize().samples);
  return d;
}

kernels::SymGradientView ThirdDerivativeField::view() const {
  kernels::SymGradientView v;
  const int n = grid.dim;
  for (int axis = 0; axis < n; ++axis) {
    kernels::SymFieldView m;
    m.n = n;
    m.size = grid.size();
    m.comps.resize(kernels::packed_size(n));
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) m.comps[kernels::packed_index(n, i, j)] = comps[third_index(n, i, j, axis)].data();
    v.axes.push_back(std::move(m));
  }
  return v;
}

double ThirdDerivativeField::component(int a, int b, int c, std::size_t p) const {
  return comps[third_index(grid.dim, a, b, c)][p];
}

ScalarField sigma_field(const ScalarField& f, int k) {
  check_k(f.grid.dim, k, 1);
  const HessianField a = HessianField::from_spectrum(TorusSpectrum::analyze(f));
  ScalarField out = ScalarField::zeros(f.grid);
  kernels::sigma_field(a.view(), k, out.samples);
  return out;
}

ResidualField residual_sigma1(const ScalarField& f) {
  const TorusSpectrum s = TorusSpectrum::analyze(f);
  const HessianField a = HessianField::from_spectrum(s);
  const HessianField la = HessianField::from_spectrum(s.laplacian());
  const ScalarField sigma1 = a.trace();
  const ScalarField dt_sigma1 = la.trace();
  const ScalarField lap_sigma1 = spectral_laplacian(sigma1);
  ResidualField r;
  r.values.resize(f.samples.size());
  for (std::size_t p = 0; p < r.values.size(); ++p) r.values[p] = dt_sigma1.samples[p] - lap_sigma1.samples[p];
  return r;
}

ScalarField newton_gradient_contraction(const ScalarField& f, int k) {
  check_k(f.grid.dim, k, 1);
  const TorusSpectrum s = TorusSpectrum::analyze(f);
  const HessianField a = HessianField::from_spectrum(s);
  const ThirdDerivativeField d3 = ThirdDerivativeField::from_spectrum(s);
  ScalarField out = ScalarField::zeros(f.grid);
  kernels::newton_contraction_field(a.view(), d3.view(), k, out.samples);
  return out;
}

ResidualField residual_sigma_k(const ScalarField& f, int k) {
  check_k(f.grid.dim, k, 2);
  const TorusSpectrum coarse = TorusSpectrum::analyze(f);
  const int np = padded_resolution(f.grid.n, coarse.band(), k, false);
  const TorusSpectrum s = coarse.resampled(np);
  const TorusGrid& g = s.grid();
  const std::size_t size = g.size();

  const HessianField a = HessianField::from_spectrum(s);
  const HessianField la = HessianField::from_spectrum(s.laplacian());
  const ThirdDerivativeField d3 = ThirdDerivativeField::from_spectrum(s);
  std::vector<double> sigma_k(size), dt_sigma_k(size), contraction(size);
  kernels::sigma_field(a.view(), k, sigma_k);
  kernels::sigma_derivative_field(a.view(), la.view(), k, dt_sigma_k);
  kernels::newton_contraction_field(a.view(), d3.view(), k, contraction);
  const std::vector<double> lap_sigma_k = laplacian_of(sigma_k, g);

  std::vector<double> res(size);
  for (std::size_t p = 0; p < size; ++p) res[p] = (dt_sigma_k[p] - lap_sigma_k[p]) + contraction[p];
  return restrict_residual(std::move(res), g, f.grid.n);
}

double default_quotient_delta(const ScalarField& f) {
  const ScalarField s1 = sigma_field(f, 1);
  return 1e-3 * kernels::extrema(s1.samples).max;
}

QuotientResult quotient_residual(const ScalarField& f, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("quotient_residual: delta must be positive");
  if (f.grid.dim < 2) throw std::invalid_argument("quotient_residual: sigma_2 needs dimension >= 2");
  const TorusSpectrum coarse = TorusSpectrum::analyze(f);
  const int np = padded_resolution(f.grid.n, coarse.band(), 2, true);
  const TorusSpectrum s = coarse.resampled(np);
  const TorusGrid& g = s.grid();
  const std::size_t size = g.size();
  const int n = g.dim;

  const SigmaFields sf = sigma_fields(s);
  std::vector<double> big_f(size);
  for (std::size_t p = 0; p < size; ++p) big_f[p] = 0.5 * sf.sigma1[p] * sf.sigma1[p];

  // Component routes: L sigma_2 and L F from spectral Laplacians, gradients
  // of F and sigma_2 from spectral differentiation of those fields.
  const std::vector<double> lap_sigma2 = laplacian_of(sf.sigma2, g);
  const std::vector<double> lap_f = laplacian_of(big_f, g);
  std::vector<std::vector<double>> grad_f(n), grad_sigma2(n);
  for (int a = 0; a < n; ++a) {
    grad_f[a] = gradient_component(big_f, g, a);
    grad_sigma2[a] = gradient_component(sf.sigma2, g, a);
  }

  std::vector<double> assembled(size, 0.0), reduced(size, 0.0), h(size, 0.0);
  std::vector<unsigned char> mask(size, 0);
  for (std::size_t p = 0; p < size; ++p) {
    if (!(sf.sigma1[p] > delta)) continue;
    mask[p] = 1;
    const double fv = big_f[p];
    const double s2 = sf.sigma2[p];
    const double l_sigma2 = sf.dt_sigma2[p] - lap_sigma2[p];
    const double l_f = sf.sigma1[p] * sf.dt_sigma1[p] - lap_f[p];
    double grad_f_sq = 0.0, grad_s2_dot_f = 0.0, grad_h_dot_f = 0.0;
    for (int a = 0; a < n; ++a) {
      grad_f_sq += grad_f[a][p] * grad_f[a][p];
      grad_s2_dot_f += grad_sigma2[a][p] * grad_f[a][p];
      const double grad_h = grad_sigma2[a][p] / fv - s2 * grad_f[a][p] / (fv * fv);
      grad_h_dot_f += grad_h * grad_f[a][p];
    }
    const double l_h = l_sigma2 / fv - s2 * l_f / (fv * fv) - 2.0 * s2 * grad_f_sq / (fv * fv * fv) +
                       2.0 * grad_s2_dot_f / (fv * fv);
    assembled[p] = l_h - 2.0 * grad_h_dot_f / fv;
    reduced[p] = l_sigma2 / fv + s2 * sf.grad_sigma1_sq[p] / (fv * fv);
    h[p] = s2 / fv;
  }

  QuotientResult out;
  out.delta = delta;
  const int nc = f.grid.n;
  out.F = ScalarField{g, big_f}.restricted(nc);
  out.H = ScalarField{g, h}.restricted(nc);
  out.assembled = restrict_residual(std::move(assembled), g, nc);
  out.reduced = restrict_residual(std::move(reduced), g, nc);
  std::vector<double> mask_d(mask.begin(), mask.end());
  const ScalarField mask_c = ScalarField{g, mask_d}.restricted(nc);
  std::vector<unsigned char> mc(mask_c.samples.size());
  for (std::size_t p = 0; p < mc.size(); ++p) mc[p] = mask_c.samples[p] != 0.0;
  out.assembled.mask = mc;
  out.reduced.mask = mc;
  out.mask_empty = out.assembled.mask_empty();
  if (out.mask_empty) return out;

  out.min_g = out.assembled.min();
  out.min_h = kernels::extrema(out.H.samples, mc).min;
  double gap = 0.0;
  for (std::size_t p = 0; p < mc.size(); ++p)
    if (mc[p]) gap = std::max(gap, std::abs(out.assembled.values[p] - out.reduced.values[p]));
  out.reduced_gap = gap;
  return out;
}

}  // namespace pcflow
