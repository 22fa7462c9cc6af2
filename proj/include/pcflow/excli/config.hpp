#pragma once

// Experiment configuration: a sectioned ini file.
//
//   [experiment]  id (required), steps = 100, dt = 1e-3, seed = 0,
//                 output_dir = "" (empty: <output root>/<id>), snapshots = false
//   [geometry]    type (required: flat_torus | round_sphere | shrinking_sphere |
//                 flat_complex_torus), resolution (required: N, or L_max on
//                 spheres), dim = 2 (flat_torus), m = 2 (flat_complex_torus),
//                 side = 2 pi (one length, or one per axis, comma separated),
//                 radius = 1 (round_sphere), rate = 2 (shrinking_sphere)
//   [initial]     preset (required), band = resolution / 4, amplitude = 1,
//                 modes = "k1,k2[,k3]:amplitude[:phase]; ...", width = 1,
//                 alpha = 0.5, window_inner = 0.75, window_outer = 0.95,
//                 l = 1, m = 0 (sphere harmonic preset)
//   [monitors]    names = sigma1, delta = 0 (0: 1e-3 * max sigma_1)
//   [debug]       flip_curvature = false
//
// Torus presets: single_mode, sum_of_modes, gaussian_bump, radial_profile,
// random_bandlimited, constant. Sphere presets: cos_theta, harmonic,
// random_bandlimited, constant.

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "pcflow/geomodels.hpp"
#include "pcflow/initial_data.hpp"
#include "pcflow/monitor.hpp"

namespace pcflow::excli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class GeometryKind { flat_torus, round_sphere, shrinking_sphere, flat_complex_torus };

struct ExperimentConfig {
  std::string id;
  GeometryKind kind = GeometryKind::flat_torus;
  GeometryModel geometry;
  int resolution = 0;
  int band = 0;
  double dt = 1e-3;
  int steps = 100;
  std::uint64_t seed = 0;
  InitialSpec initial;  // preset, seed and band are kept in sync with the fields above
  int sphere_l = 1;
  int sphere_m = 0;
  MonitorSet monitors;
  double delta = 0.0;
  bool flip_curvature = false;
  bool snapshots = false;
  std::string output_dir;

  bool is_torus() const { return kind == GeometryKind::flat_torus || kind == GeometryKind::flat_complex_torus; }
  /// Real dimension of the torus grid.
  int torus_dim() const;
  std::vector<double> sides() const;
  double radius() const;
  double rate() const;
  /// Same experiment at another resolution.
  ExperimentConfig at_resolution(int res) const;

  double shrink_rate = 2.0;  // shrinking_sphere only
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Stable multi-line dump of every field, used for golden tests.
std::string describe(const ExperimentConfig& c);
std::string kind_name(GeometryKind k);

}  // namespace pcflow::excli
