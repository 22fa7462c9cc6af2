#include "pcflow/kahler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pcflow/geomodels.hpp"
#include "pcflow/sphere_calculus.hpp"
#include "pcflow/torus_identities.hpp"

namespace pcflow {

namespace {

int complex_dim(const TorusGrid& g) {
  if (g.dim != 2 && g.dim != 4) throw std::invalid_argument("complex torus needs real dimension 2 or 4");
  return g.dim / 2;
}

HermitianHessianField hermitian_from(const HessianField& h) {
  const int m = complex_dim(h.grid);
  const int n = h.grid.dim;
  HermitianHessianField out{h.grid, m, {}};
  out.comps.resize(kernels::packed_size(m));
  const std::size_t size = h.grid.size();
  const auto real = [&](int a, int b) -> const std::vector<double>& { return h.comps[kernels::packed_index(n, a, b)]; };
  for (int a = 0; a < m; ++a)
    for (int b = a; b < m; ++b) {
      const auto& xx = real(2 * a, 2 * b);
      const auto& yy = real(2 * a + 1, 2 * b + 1);
      const auto& xy = real(2 * a, 2 * b + 1);
      const auto& yx = real(2 * a + 1, 2 * b);
      auto& c = out.comps[kernels::packed_index(m, a, b)];
      c.resize(size);
      for (std::size_t p = 0; p < size; ++p) c[p] = {0.25 * (xx[p] + yy[p]), 0.25 * (xy[p] - yx[p])};
    }
  return out;
}

}  // namespace

kernels::HermFieldView HermitianHessianField::view() const {
  kernels::HermFieldView v;
  v.n = m;
  v.size = grid.size();
  for (const auto& c : comps) v.comps.push_back(c.data());
  return v;
}

ScalarField HermitianHessianField::trace() const {
  ScalarField t = ScalarField::zeros(grid);
  for (int a = 0; a < m; ++a) {
    const auto& c = comps[kernels::packed_index(m, a, a)];
    for (std::size_t p = 0; p < t.samples.size(); ++p) t.samples[p] += c[p].real();
  }
  return t;
}

HermitianHessianField complex_hessian(const TorusSpectrum& s) {
  complex_dim(s.grid());
  return hermitian_from(HessianField::from_spectrum(s));
}

HermitianHessianField complex_hessian(const ScalarField& f) { return complex_hessian(TorusSpectrum::analyze(f)); }

ResidualField kahler_sigma2_residual(const ScalarField& f) {
  if (complex_dim(f.grid) != 2) throw std::invalid_argument("kahler_sigma2_residual: complex dimension must be 2");
  const TorusSpectrum s = TorusSpectrum::analyze(f);
  const std::size_t size = f.grid.size();
  std::vector<double> sigma2(size), dt_sigma2(size);
  {
    const HermitianHessianField a = complex_hessian(s);
    const HermitianHessianField la = complex_hessian(s.laplacian());
    kernels::sigma_field(a.view(), 2, sigma2);
    kernels::sigma_derivative_field(a.view(), la.view(), 2, dt_sigma2);
  }
  std::vector<double> grad_sigma1_sq(size, 0.0), grad_a_sq(size, 0.0);
  for (int axis = 0; axis < f.grid.dim; ++axis) {
    MultiIndex mi{};
    mi[axis] = 1;
    const HermitianHessianField da = complex_hessian(s.derivative(mi));
    kernels::accumulate_gradient_terms(da.view(), grad_sigma1_sq, grad_a_sq);
  }
  const ScalarField lap_sigma2 = spectral_laplacian(ScalarField{f.grid, sigma2});
  ResidualField r;
  r.values.resize(size);
  for (std::size_t p = 0; p < size; ++p)
    r.values[p] = (dt_sigma2[p] - lap_sigma2.samples[p]) - (-grad_sigma1_sq[p] + grad_a_sq[p]);
  return r;
}

Non1FieldCheck condition_non1_field_check(const ScalarField& f, int samples) {
  if (samples < 1) throw std::invalid_argument("condition_non1_field_check: samples must be positive");
  const HermitianHessianField a = complex_hessian(f);
  const KahlerCurvature flat = KahlerCurvature::flat(a.m);
  const ModelCPn cp{a.m, 1.0};
  Non1FieldCheck out;
  const std::size_t size = f.grid.size();
  for (int i = 0; i < samples; ++i) {
    const std::size_t p = (static_cast<std::size_t>(i) * size) / static_cast<std::size_t>(samples);
    const HermMatrix h = a.at(p);
    out.flat_values.push_back(condition_non1_value(h, flat));
    out.cp_values.push_back(condition_non1_value(h, cp));
    out.ok = out.ok && out.flat_values.back() == 0.0;
  }
  return out;
}

std::string classify(double sup_r0, double sup_r1, double sup_sigma1) {
  const bool z0 = sup_r0 < kAdjudicationZero;
  const bool z1 = sup_r1 < kAdjudicationZero;
  const double big = kAdjudicationNonzero * sup_sigma1;
  if (z0 && z1) return "both";
  if (z0 && sup_r1 > big) return "r0_zero";
  if (z1 && sup_r0 > big) return "r1_zero";
  return "neither";
}

double conformal_time(double t, double rate) { return -std::log1p(-rate * t) / rate; }

AdjudicationReport shrinking_sigma1_adjudication(const SphericalSpectrum& u0, const ShrinkingOptions& opts) {
  if (!(opts.dt > 0.0) || opts.steps < 0) throw std::invalid_argument("shrinking flow: dt must be positive and steps >= 0");
  if (!(opts.rate > 0.0)) throw std::invalid_argument("shrinking flow: rate must be positive");
  if (!(opts.steps * opts.dt < opts.horizon) || !(opts.rate * opts.horizon < 1.0))
    throw std::out_of_range("shrinking flow: run reaches the horizon t = " + std::to_string(opts.horizon));
  const SphereGrid& g = u0.grid();
  if (g.radius() != 1.0) throw std::invalid_argument("shrinking flow: base sphere must have radius 1");
  const double c = opts.rate;

  AdjudicationReport report;
  report.rate = c;
  for (int i = 0; i <= opts.steps; ++i) {
    const double t = i * opts.dt;
    const double s = 1.0 - c * t;
    const SphericalSpectrum u = sphere_heat_propagate(u0, conformal_time(t, c));
    const CovariantTensorField hess = covariant_hessian(u, 2);
    const SphereField trace0 = metric_trace(hess);

    SphereField sigma1 = trace0;
    for (double& v : sigma1.samples) v /= s;
    const SphereField dt_sigma1 = sh_synthesize(u.scaled_by_degree([&](int l) {
      const double lam = double(l) * (l + 1);
      return -lam * (c - lam) / (s * s);
    }));
    const SphereField lap_sigma1 = sh_synthesize(sh_analyze(sigma1).laplacian());

    AdjudicationStep step;
    step.t = t;
    for (std::size_t p = 0; p < g.size(); ++p) {
      const double r0 = dt_sigma1.samples[p] - lap_sigma1.samples[p] / s;
      const double contraction = c * trace0.samples[p] / (s * s);
      step.sup_r0 = std::max(step.sup_r0, std::abs(r0));
      step.sup_r1 = std::max(step.sup_r1, std::abs(r0 - contraction));
      step.sup_sigma1 = std::max(step.sup_sigma1, std::abs(sigma1.samples[p]));
    }
    step.verdict = classify(step.sup_r0, step.sup_r1, step.sup_sigma1);
    report.steps.push_back(step);
  }
  report.verdict = report.steps.empty() ? "none" : report.steps.front().verdict;
  for (const auto& st : report.steps)
    if (st.verdict != report.verdict) report.verdict = "mixed";
  return report;
}

double shrinking_euler_order(const SphericalSpectrum& u0, double t_end, int n, double rate) {
  if (n < 1 || !(t_end > 0.0) || !(rate * t_end < 1.0)) throw std::invalid_argument("shrinking_euler_order: bad arguments");
  const SphericalSpectrum exact = sphere_heat_propagate(u0, conformal_time(t_end, rate));
  const auto euler_error = [&](int steps) {
    const double h = t_end / steps;
    double err2 = 0.0;
    for (int l = 0; l <= u0.lmax(); ++l) {
      const double lam = double(l) * (l + 1);
      double factor = 1.0;
      for (int k = 0; k < steps; ++k) factor *= 1.0 - h * lam / (1.0 - rate * k * h);
      for (int m = 0; m <= l; ++m) err2 += (m == 0 ? 1.0 : 2.0) * std::norm(factor * u0.at(l, m) - exact.at(l, m));
    }
    return std::sqrt(err2);
  };
  return std::log2(euler_error(n) / euler_error(2 * n));
}

}  // namespace pcflow
