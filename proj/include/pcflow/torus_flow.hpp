#pragma once

#include "pcflow/monitor.hpp"
#include "pcflow/torus.hpp"

namespace pcflow {

struct TorusFlowOptions {
  double dt = 1e-3;
  int steps = 100;
  MonitorSet monitors;
  double delta = 0.0;  // quotient mask threshold; <= 0 selects the default from f0
};

/// Records monitors at t = i * dt, i = 0..steps, with u(t) obtained by the
/// exact propagator applied to the spectrum of f0. steps = 0 records nothing.
MonitorSeries run_flow(const ScalarField& f0, const TorusFlowOptions& opts);

/// Monitor row for the field `f` at time `t`.
MonitorRow torus_monitor_row(const ScalarField& f, double t, const MonitorSet& monitors, double delta);

}  // namespace pcflow
