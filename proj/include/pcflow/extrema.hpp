#pragma once

// Extrema of band-limited fields between grid nodes. Grid minima of a heat
// solution can tick down by roundoff-sized amounts when the continuum
// minimiser drifts between nodes, so monitors refine the best nodes with a
// damped Newton iteration on the spectral interpolant.

#include "pcflow/torus.hpp"

namespace pcflow {

struct PolishedExtrema {
  double min = 0.0;
  double max = 0.0;
  bool any_nan = false;
};

/// Extrema of the trigonometric interpolant of `s`, never worse than the grid extrema.
PolishedExtrema polished_extrema(const TorusSpectrum& s, int candidates = 8);

}  // namespace pcflow
