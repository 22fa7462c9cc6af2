#include "pcflow/sphere_identities.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pcflow/geomodels.hpp"
#include "pcflow/kernels.hpp"
#include "pcflow/sphere_calculus.hpp"

namespace pcflow {

namespace {

double hessian_scale(const CovariantTensorField& hess) {
  double s = 0.0;
  for (std::size_t p = 0; p < hess.grid.size(); ++p) {
    const SymMatrix a = frame_matrix(hess, p);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) s = std::max(s, std::abs(a(i, j)));
  }
  return s;
}

double kappa_of(const SphereGrid& g) { return 1.0 / (g.radius() * g.radius()); }

// Frame gradient of a scalar spectrum at every node.
std::vector<std::array<double, 2>> frame_gradient(const SphericalSpectrum& s) {
  const SphereGrid& g = s.grid();
  const auto pd = node_derivatives(s, 1);
  std::vector<std::array<double, 2>> out(pd.size());
  const double r = g.radius();
  for (std::size_t p = 0; p < pd.size(); ++p) {
    const double st = std::sin(g.theta(static_cast<int>(p / g.nlon())));
    out[p] = {pd[p][1][0] / r, pd[p][0][1] / (r * st)};
  }
  return out;
}

}  // namespace

SphereResidual commutation_residual(const SphericalSpectrum& u, bool flipped) {
  const SphereGrid& g = u.grid();
  const CovariantTensorField hess = covariant_hessian(u, 4);
  const CovariantTensorField hess_lap = covariant_hessian(u.laplacian(), 2);
  const CovariantTensorField rough = rough_laplacian(hess);
  const SphereCurvature curv(ModelSn{2, kappa_of(g)});

  SphereResidual out;
  out.truncated = u.truncated || 4 * u.degree() > g.lmax();
  out.scale = hessian_scale(hess);
  out.field.values.resize(g.size());
  for (std::size_t p = 0; p < g.size(); ++p) {
    const SymMatrix a = frame_matrix(hess, p);
    double worst = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        double curvature = 0.0;
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l) {
            const double rm = flipped ? curv.riemann(k, i, j, l) : curv.riemann(i, k, j, l);
            curvature += 2.0 * rm * a(k, l);
          }
        for (int l = 0; l < 2; ++l) curvature -= curv.ricci(i, l) * a(j, l) + curv.ricci(j, l) * a(i, l);
        const int c = 2 * i + j;
        const double v = frame_component(hess_lap, p, c) - (frame_component(rough, p, c) + curvature);
        if (std::abs(v) > std::abs(worst)) worst = v;
      }
    out.field.values[p] = worst;
  }
  return out;
}

SphereResidual sphere_sigma1_residual(const SphericalSpectrum& u) {
  const SphereGrid& g = u.grid();
  const SphereField dt_sigma1 = metric_trace(covariant_hessian(u.laplacian(), 2));
  const SphereField sigma1 = metric_trace(covariant_hessian(u, 2));
  const SphericalSpectrum s1 = sh_analyze(sigma1);
  const SphereField lap_sigma1 = sh_synthesize(s1.laplacian());
  SphereResidual out;
  out.truncated = u.truncated || s1.truncated;
  out.field.values.resize(g.size());
  for (std::size_t p = 0; p < g.size(); ++p) {
    out.field.values[p] = dt_sigma1.samples[p] - lap_sigma1.samples[p];
    out.scale = std::max(out.scale, std::abs(sigma1.samples[p]));
  }
  return out;
}

SphereField sphere_sigma2_field(const SphericalSpectrum& u) {
  const CovariantTensorField hess = covariant_hessian(u, 2);
  SphereField f = SphereField::zeros(u.grid());
  for (std::size_t p = 0; p < f.samples.size(); ++p) f.samples[p] = elementary_symmetric(frame_matrix(hess, p), 2);
  return f;
}

SphereResidual riemannian_sigma2_residual(const SphericalSpectrum& u) {
  const SphereGrid& g = u.grid();
  const CovariantTensorField hess = covariant_hessian(u, 3);
  const CovariantTensorField grad_hess = covariant_derivative(hess);
  const CovariantTensorField dt_a = covariant_hessian(u.laplacian(), 2);
  const ModelSn space{2, kappa_of(g)};

  SphereField sigma2 = SphereField::zeros(g);
  SphereField sigma1 = SphereField::zeros(g);
  for (std::size_t p = 0; p < g.size(); ++p) {
    const SymMatrix a = frame_matrix(hess, p);
    sigma1.samples[p] = a.trace();
    sigma2.samples[p] = elementary_symmetric(a, 2);
  }
  const SphericalSpectrum s2 = sh_analyze(sigma2);
  const SphericalSpectrum s1 = sh_analyze(sigma1);
  const SphereField lap_sigma2 = sh_synthesize(s2.laplacian());
  const auto grad_sigma1 = frame_gradient(s1);

  SphereResidual out;
  out.truncated = u.truncated || s2.truncated || s1.truncated;
  out.scale = hessian_scale(hess);
  out.field.values.resize(g.size());
  for (std::size_t p = 0; p < g.size(); ++p) {
    const SymMatrix a = frame_matrix(hess, p);
    const SymMatrix b = frame_matrix(dt_a, p);
    const double dt_sigma2 = sigma_directional_derivative(a, b, 2);
    double grad_a_sq = 0.0;
    for (int c = 0; c < 8; ++c) {
      const double v = frame_component(grad_hess, p, c);
      grad_a_sq += v * v;
    }
    const double grad_s1_sq = grad_sigma1[p][0] * grad_sigma1[p][0] + grad_sigma1[p][1] * grad_sigma1[p][1];
    const double rhs = -grad_s1_sq + grad_a_sq + condition_non2_value(a, space);
    out.field.values[p] = (dt_sigma2 - lap_sigma2.samples[p]) - rhs;
  }
  return out;
}

double sphere_curvature_term_gap(const SphericalSpectrum& u) {
  const SphereGrid& g = u.grid();
  const CovariantTensorField hess = covariant_hessian(u, 2);
  const ModelSn space{2, kappa_of(g)};
  double gap = 0.0;
  for (std::size_t p = 0; p < g.size(); ++p) {
    const SymMatrix a = frame_matrix(hess, p);
    const double s1 = a.trace();
    const double direct = space.kappa * (4.0 * a.matrix().frobenius_norm2() - 2.0 * s1 * s1);
    gap = std::max(gap, std::abs(condition_non2_value(a, space) - direct));
  }
  return gap;
}

MonitorSeries sphere_run_flow(const SphericalSpectrum& u0, const SphereFlowOptions& opts) {
  if (!(opts.dt > 0.0)) throw std::invalid_argument("sphere_run_flow: dt must be positive");
  if (opts.steps < 0) throw std::invalid_argument("sphere_run_flow: steps must be >= 0");
  if (opts.monitors.needs_quotient()) throw std::invalid_argument("sphere_run_flow: H and quotient monitors are torus-only");
  MonitorSeries series;
  if (opts.steps == 0) return series;
  for (int i = 0; i <= opts.steps; ++i) {
    const double t = i * opts.dt;
    const SphericalSpectrum u = sphere_heat_propagate(u0, t);
    MonitorRow row;
    row.t = t;
    if (opts.monitors.sigma1) {
      const SphereExtrema e = sphere_polished_extrema(u.laplacian());
      row[Column::min_sigma1] = e.min;
      row[Column::max_sigma1] = e.max;
    }
    if (opts.monitors.sigma2) row[Column::min_sigma2] = kernels::extrema(sphere_sigma2_field(u).samples).min;
    if (opts.monitors.res_sigma1) row[Column::res_sigma1_sup] = sphere_sigma1_residual(u).field.sup();
    if (opts.monitors.res_sigma2) row[Column::res_sigma2_sup] = riemannian_sigma2_residual(u).field.sup();
    check_finite(row, series);
    series.append(row);
  }
  return series;
}

}  // namespace pcflow
