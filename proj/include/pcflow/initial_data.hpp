#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "pcflow/torus.hpp"

namespace pcflow {

/// amplitude * sin(2 pi k.x / L + phase)
struct Mode {
  std::array<int, kMaxTorusDim> k{};
  double amplitude = 1.0;
  double phase = 0.0;
};

struct InitialSpec {
  std::string preset = "single_mode";
  std::vector<Mode> modes;       // single_mode uses the first entry
  double amplitude = 1.0;
  double width = 1.0;            // gaussian_bump standard deviation
  double alpha = 0.5;            // radial_profile exponent
  double window_inner = 0.75;    // radial window, as fractions of the half box
  double window_outer = 0.95;
  std::uint64_t seed = 0;
  int band = 4;                  // random_bandlimited
};

/// Names accepted by `initial_data`.
const std::vector<std::string>& initial_presets();

/// Deterministic initial field. Unknown presets throw std::invalid_argument.
ScalarField initial_data(const TorusGrid& grid, const InitialSpec& spec);

}  // namespace pcflow
