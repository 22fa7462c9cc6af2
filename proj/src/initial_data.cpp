#include "pcflow/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace pcflow {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

ScalarField from_function(const TorusGrid& g, auto&& fn) {
  ScalarField f = ScalarField::zeros(g);
  std::array<double, kMaxTorusDim> x{};
  for (std::size_t p = 0; p < f.samples.size(); ++p) {
    const auto idx = g.unflatten(p);
    for (int a = 0; a < g.dim; ++a) x[a] = g.coordinate(a, idx[a]);
    f.samples[p] = fn(x);
  }
  return f;
}

ScalarField modes_field(const TorusGrid& g, const std::vector<Mode>& modes) {
  return from_function(g, [&](const std::array<double, kMaxTorusDim>& x) {
    double v = 0.0;
    for (const Mode& m : modes) {
      double arg = m.phase;
      for (int a = 0; a < g.dim; ++a) arg += kTwoPi * m.k[a] * x[a] / g.side[a];
      v += m.amplitude * std::sin(arg);
    }
    return v;
  });
}

void subtract_mean(ScalarField& f) {
  const double m = f.mean();
  for (double& v : f.samples) v -= m;
}

// C-infinity step: 1 for s <= 0, 0 for s >= 1.
double smooth_step_down(double s) {
  if (s <= 0.0) return 1.0;
  if (s >= 1.0) return 0.0;
  const auto h = [](double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; };
  return h(1.0 - s) / (h(1.0 - s) + h(s));
}

ScalarField gaussian_bump(const TorusGrid& g, const InitialSpec& spec) {
  if (!(spec.width > 0.0)) throw std::invalid_argument("gaussian_bump: width must be positive");
  // Sum over the nearest periodic images keeps the bump smooth across the seam.
  ScalarField f = from_function(g, [&](const std::array<double, kMaxTorusDim>& x) {
    double v = 0.0;
    const int images = g.dim <= 2 ? 2 : 1;
    std::array<int, kMaxTorusDim> lo{}, hi{};
    for (int a = 0; a < g.dim; ++a) {
      lo[a] = -images;
      hi[a] = images;
    }
    std::array<int, kMaxTorusDim> s = lo;
    while (true) {
      double r2 = 0.0;
      for (int a = 0; a < g.dim; ++a) {
        const double d = x[a] - 0.5 * g.side[a] + s[a] * g.side[a];
        r2 += d * d;
      }
      v += std::exp(-0.5 * r2 / (spec.width * spec.width));
      int a = 0;
      for (; a < g.dim; ++a) {
        if (++s[a] <= hi[a]) break;
        s[a] = lo[a];
      }
      if (a == g.dim) break;
    }
    return spec.amplitude * v;
  });
  subtract_mean(f);
  return f;
}

ScalarField radial_profile(const TorusGrid& g, const InitialSpec& spec) {
  if (!(spec.alpha > 0.0)) throw std::invalid_argument("radial_profile: alpha must be positive");
  if (!(spec.window_inner < spec.window_outer)) throw std::invalid_argument("radial_profile: window_inner must be below window_outer");
  double half = g.side[0];
  for (int a = 0; a < g.dim; ++a) half = std::min(half, 0.5 * g.side[a]);
  const double r_in = spec.window_inner * half;
  const double r_out = spec.window_outer * half;
  return from_function(g, [&](const std::array<double, kMaxTorusDim>& x) {
    double r2 = 0.0;
    for (int a = 0; a < g.dim; ++a) {
      const double d = x[a] - 0.5 * g.side[a];
      r2 += d * d;
    }
    const double w = smooth_step_down((std::sqrt(r2) - r_in) / (r_out - r_in));
    return -spec.amplitude * std::pow(1.0 + r2, -spec.alpha) * w;
  });
}

// Coefficients are drawn over the wavenumber box [-band, band]^d in a fixed
// order, so the same seed gives the same function at every resolution.
ScalarField random_bandlimited(const TorusGrid& g, const InitialSpec& spec) {
  if (spec.band < 1 || spec.band >= g.n / 2) throw std::invalid_argument("random_bandlimited: band must lie in [1, N/2)");
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  TorusSpectrum s = TorusSpectrum::zeros(g);
  auto& c = s.coefficients();
  const int d = g.dim;
  const int last = g.n / 2 + 1;
  const auto slot = [&](const std::array<int, kMaxTorusDim>& k) {
    std::size_t flat = 0;
    for (int a = 0; a < d - 1; ++a) flat = flat * g.n + static_cast<std::size_t>(k[a] < 0 ? k[a] + g.n : k[a]);
    return flat * last + static_cast<std::size_t>(k[d - 1]);
  };
  std::array<int, kMaxTorusDim> k{};
  for (int a = 0; a < d; ++a) k[a] = -spec.band;
  k[d - 1] = 0;
  double mass = 0.0;
  while (true) {
    // On the k_last = 0 plane only the lexicographically positive half is
    // drawn; its mirror is the conjugate.
    int lead = 0;
    for (int a = 0; a < d && lead == 0; ++a) lead = k[a];
    if (lead != 0 && !(k[d - 1] == 0 && lead < 0)) {
      double k2 = 0.0;
      for (int a = 0; a < d; ++a) k2 += double(k[a]) * k[a];
      const double re = uni(rng);
      const double im = uni(rng);
      const std::complex<double> z = std::complex<double>(re, im) / (1.0 + k2);
      c[slot(k)] = z;
      mass += 2.0 * std::abs(z);
      if (k[d - 1] == 0) {
        std::array<int, kMaxTorusDim> neg{};
        for (int a = 0; a < d; ++a) neg[a] = -k[a];
        c[slot(neg)] = std::conj(z);
      }
    }
    int a = d - 1;
    for (; a >= 0; --a) {
      if (++k[a] <= spec.band) break;
      k[a] = a == d - 1 ? 0 : -spec.band;
    }
    if (a < 0) break;
  }
  if (mass > 0.0)
    for (auto& z : c) z *= spec.amplitude / mass;
  return s.synthesize();
}

}  // namespace

const std::vector<std::string>& initial_presets() {
  static const std::vector<std::string> names{"single_mode", "sum_of_modes", "gaussian_bump", "radial_profile",
                                              "random_bandlimited", "constant"};
  return names;
}

ScalarField initial_data(const TorusGrid& grid, const InitialSpec& spec) {
  if (spec.preset == "single_mode") {
    if (spec.modes.empty()) throw std::invalid_argument("single_mode: no mode given");
    return modes_field(grid, {spec.modes.front()});
  }
  if (spec.preset == "sum_of_modes") {
    if (spec.modes.empty()) throw std::invalid_argument("sum_of_modes: no modes given");
    return modes_field(grid, spec.modes);
  }
  if (spec.preset == "gaussian_bump") return gaussian_bump(grid, spec);
  if (spec.preset == "radial_profile") return radial_profile(grid, spec);
  if (spec.preset == "random_bandlimited") return random_bandlimited(grid, spec);
  if (spec.preset == "constant") return {grid, std::vector<double>(grid.size(), spec.amplitude)};
  throw std::invalid_argument("unknown initial preset '" + spec.preset + "'");
}

}  // namespace pcflow
