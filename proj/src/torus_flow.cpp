#include "pcflow/torus_flow.hpp"

#include <stdexcept>

#include "pcflow/extrema.hpp"
#include "pcflow/kernels.hpp"
#include "pcflow/torus_identities.hpp"

namespace pcflow {

MonitorRow torus_monitor_row(const ScalarField& f, double t, const MonitorSet& monitors, double delta) {
  MonitorRow row;
  row.t = t;
  if (monitors.sigma1) {
    const PolishedExtrema e = polished_extrema(TorusSpectrum::analyze(f).laplacian());
    row[Column::min_sigma1] = e.min;
    row[Column::max_sigma1] = e.max;
  }
  if (monitors.sigma2) row[Column::min_sigma2] = kernels::extrema(sigma_field(f, 2).samples).min;
  if (monitors.res_sigma1) row[Column::res_sigma1_sup] = residual_sigma1(f).sup();
  if (monitors.res_sigma2) row[Column::res_sigma2_sup] = residual_sigma_k(f, 2).sup();
  if (monitors.needs_quotient()) {
    const QuotientResult q = quotient_residual(f, delta);
    if (!q.mask_empty) {
      if (monitors.H) row[Column::min_H] = q.min_h;
      if (monitors.quotient) row[Column::quotient_min] = q.min_g;
    }
  }
  return row;
}

MonitorSeries run_flow(const ScalarField& f0, const TorusFlowOptions& opts) {
  if (!(opts.dt > 0.0)) throw std::invalid_argument("run_flow: dt must be positive");
  if (opts.steps < 0) throw std::invalid_argument("run_flow: steps must be >= 0");
  MonitorSeries series;
  if (opts.steps == 0) return series;
  double delta = opts.delta;
  if (!(delta > 0.0) && opts.monitors.needs_quotient()) delta = default_quotient_delta(f0);
  const TorusSpectrum s0 = TorusSpectrum::analyze(f0);
  for (int i = 0; i <= opts.steps; ++i) {
    const double t = i * opts.dt;
    const ScalarField f = s0.propagated(t).synthesize();
    const MonitorRow row = torus_monitor_row(f, t, opts.monitors, delta);
    check_finite(row, series);
    series.append(row);
  }
  return series;
}

}  // namespace pcflow
