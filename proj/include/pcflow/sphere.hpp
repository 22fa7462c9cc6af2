#pragma once

// Spherical-harmonic calculus on the round 2-sphere of radius r.
// Y_lm(theta, phi) = Theta_lm(theta) e^{i m phi} / sqrt(2 pi), with Theta_lm
// orthonormal on [0, pi] against sin(theta) and carrying the Condon-Shortley
// phase; Theta_{l,-m} = (-1)^m Theta_lm. Coefficients are normalised on the
// unit sphere, so sum |a_lm|^2 = integral of u^2 over S^2(1).

#include <array>
#include <complex>
#include <memory>
#include <vector>

namespace pcflow {

class SpherePlan;

struct SphereGrid {
  std::shared_ptr<const SpherePlan> plan;

  static SphereGrid make(int lmax, double radius = 1.0);

  int lmax() const;
  double radius() const;
  int nlat() const;
  int nlon() const;
  std::size_t size() const;
  double theta(int j) const;
  double phi(int k) const;
  double weight(int j) const;  // Gauss-Legendre weight in cos(theta)
  std::size_t index(int j, int k) const { return static_cast<std::size_t>(j) * nlon() + k; }

  friend bool operator==(const SphereGrid& a, const SphereGrid& b);
};

struct SphereField {
  SphereGrid grid;
  std::vector<double> samples;  // row-major (theta, phi)

  static SphereField zeros(const SphereGrid& g) { return {g, std::vector<double>(g.size(), 0.0)}; }
  static SphereField from_function(const SphereGrid& g, auto&& fn) {
    SphereField f = zeros(g);
    for (int j = 0; j < g.nlat(); ++j)
      for (int k = 0; k < g.nlon(); ++k) f.samples[g.index(j, k)] = fn(g.theta(j), g.phi(k));
    return f;
  }
  /// Area-weighted integral over S^2(r).
  double integral() const;
  double mean() const;
};

/// a_lm for m >= 0; negative orders follow from real-field symmetry.
class SphericalSpectrum {
 public:
  static SphericalSpectrum zeros(const SphereGrid& g);

  const SphereGrid& grid() const { return grid_; }
  int lmax() const { return grid_.lmax(); }
  std::complex<double>& at(int l, int m);
  std::complex<double> at(int l, int m) const;  // any |m| <= l
  /// Set when analysis found content beyond degree lmax.
  bool truncated = false;

  /// Highest degree with a coefficient above rel_tol times the largest.
  int degree(double rel_tol = 1e-12) const;
  double norm2() const;  // sum over all m of |a_lm|^2

  SphericalSpectrum laplacian() const;                 // -l(l+1)/r^2
  SphericalSpectrum heat_propagated(double t) const;   // exp(-l(l+1) t / r^2)
  SphericalSpectrum scaled_by_degree(auto&& fn) const {
    SphericalSpectrum out = *this;
    for (int l = 0; l <= lmax(); ++l)
      for (int m = 0; m <= l; ++m) out.at(l, m) *= fn(l);
    return out;
  }

  std::vector<std::complex<double>>& coefficients() { return coeffs_; }
  const std::vector<std::complex<double>>& coefficients() const { return coeffs_; }

 private:
  SphereGrid grid_;
  std::vector<std::complex<double>> coeffs_;
};

SphericalSpectrum sh_analyze(const SphereField& f);
SphereField sh_synthesize(const SphericalSpectrum& s);

/// exp(-l(l+1) t / r^2) scaling; t < 0 throws.
SphericalSpectrum sphere_heat_propagate(const SphericalSpectrum& s, double t);

/// Derivatives d_theta^a d_phi^b u for a + b <= 4, indexed [a][b].
using PointDerivatives = std::array<std::array<double, 5>, 5>;

/// Derivatives at every grid node, up to total order `order` (<= 4).
std::vector<PointDerivatives> node_derivatives(const SphericalSpectrum& s, int order);

/// Derivatives at an arbitrary point (theta in [0, pi]).
PointDerivatives point_derivatives(const SphericalSpectrum& s, double theta, double phi, int order);

/// Random real spectrum with degrees 1..lmax_data, deterministic in seed.
SphericalSpectrum random_sphere_spectrum(const SphereGrid& g, int lmax_data, unsigned long long seed);

/// Real field Re(Y_lm) (m >= 0) scaled so the coefficient a_lm is one
/// (plus its mirror for m > 0).
SphericalSpectrum sphere_harmonic(const SphereGrid& g, int l, int m);

struct SphereExtrema {
  double min = 0.0;
  double max = 0.0;
  bool any_nan = false;
};

/// Extrema of the spectral interpolant: grid candidates and both poles,
/// refined by damped Newton in (theta, phi).
SphereExtrema sphere_polished_extrema(const SphericalSpectrum& s, int candidates = 8);

}  // namespace pcflow
