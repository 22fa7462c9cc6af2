#include "pcflow/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace pcflow {

namespace {

constexpr double kPi = std::numbers::pi;
const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * kPi);

std::size_t tri(int l, int m) { return static_cast<std::size_t>(l) * (l + 1) / 2 + m; }

// Gauss-Legendre nodes x_j (descending, so theta ascends) and weights.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    double p0 = 1.0, p1 = z;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (z * p1 - p0) / (z * z - 1.0);
    x[i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

// Theta_lm(theta) for 0 <= m <= l <= lmax, packed by tri(l, m).
void legendre_table(int lmax, double c, double s, double* out) {
  out[tri(0, 0)] = 1.0 / std::sqrt(2.0);
  for (int m = 1; m <= lmax; ++m) out[tri(m, m)] = -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s * out[tri(m - 1, m - 1)];
  for (int m = 0; m < lmax; ++m) out[tri(m + 1, m)] = std::sqrt(2.0 * m + 3.0) * c * out[tri(m, m)];
  for (int m = 0; m <= lmax; ++m)
    for (int l = m + 2; l <= lmax; ++l) {
      const double a = std::sqrt((4.0 * l * l - 1.0) / (double(l) * l - double(m) * m));
      const double b = std::sqrt((double(l - 1) * (l - 1) - double(m) * m) / (4.0 * (l - 1) * (l - 1) - 1.0));
      out[tri(l, m)] = a * (c * out[tri(l - 1, m)] - b * out[tri(l - 2, m)]);
    }
}

// Theta_{l,mu} for any integer mu.
double theta_lm(const double* table, int l, int mu) {
  if (std::abs(mu) > l) return 0.0;
  if (mu >= 0) return table[tri(l, mu)];
  return (mu % 2 == 0 ? 1.0 : -1.0) * table[tri(l, -mu)];
}

// d^a/dtheta^a Theta_lm as sum_d c[d + 4] Theta_{l, m + d}.
using Ladder = std::array<double, 9>;
Ladder ladder(int l, int m, int a) {
  Ladder c{};
  c[4] = 1.0;
  for (int step = 0; step < a; ++step) {
    Ladder next{};
    for (int d = -step; d <= step; ++d) {
      const double v = c[d + 4];
      if (v == 0.0) continue;
      const int mu = m + d;
      const double up = std::sqrt(std::max(0.0, double(l - mu) * (l + mu + 1)));
      const double dn = std::sqrt(std::max(0.0, double(l + mu) * (l - mu + 1)));
      next[d + 5] += 0.5 * v * up;
      next[d + 3] -= 0.5 * v * dn;
    }
    c = next;
  }
  return c;
}

// Row Fourier coefficients F[a][m] = sum_l a_lm d^a Theta_lm at one theta.
std::vector<std::array<std::complex<double>, 5>> row_coefficients(const SphericalSpectrum& s, const double* table,
                                                                  int order) {
  const int lmax = s.lmax();
  std::vector<std::array<std::complex<double>, 5>> f(lmax + 1);
  for (int l = 0; l <= lmax; ++l)
    for (int m = 0; m <= l; ++m) {
      const std::complex<double> a = s.at(l, m);
      if (a == 0.0) continue;
      for (int o = 0; o <= order; ++o) {
        const Ladder c = ladder(l, m, o);
        double v = 0.0;
        for (int d = -o; d <= o; ++d)
          if (c[d + 4] != 0.0) v += c[d + 4] * theta_lm(table, l, m + d);
        f[m][o] += a * v;
      }
    }
  return f;
}

PointDerivatives combine(const std::vector<std::array<std::complex<double>, 5>>& f, double phi, int order) {
  PointDerivatives d{};
  const int lmax = static_cast<int>(f.size()) - 1;
  for (int a = 0; a <= order; ++a) d[a][0] = f[0][a].real() * kInvSqrt2Pi;
  for (int m = 1; m <= lmax; ++m) {
    const std::complex<double> e = std::polar(1.0, m * phi);
    for (int a = 0; a <= order; ++a) {
      const std::complex<double> base = f[m][a] * e;
      std::complex<double> im_pow(1.0, 0.0);
      for (int b = 0; a + b <= order; ++b) {
        d[a][b] += 2.0 * kInvSqrt2Pi * (base * im_pow).real();
        im_pow *= std::complex<double>(0.0, double(m));
      }
    }
  }
  return d;
}

}  // namespace

class SpherePlan {
 public:
  SpherePlan(int lmax, double radius) : lmax_(lmax), radius_(radius) {
    const int nlat = lmax + 1;
    std::vector<double> x;
    gauss_legendre(nlat, x, weights_);
    theta_.resize(nlat);
    table_.resize(static_cast<std::size_t>(nlat) * tri(lmax + 1, 0));
    for (int j = 0; j < nlat; ++j) {
      theta_[j] = std::acos(x[j]);
      legendre_table(lmax, x[j], std::sqrt(1.0 - x[j] * x[j]), row_table(j));
    }
  }

  int lmax_;
  double radius_;
  std::vector<double> theta_, weights_, table_;

  double* row_table(int j) { return table_.data() + static_cast<std::size_t>(j) * tri(lmax_ + 1, 0); }
  const double* row_table(int j) const { return table_.data() + static_cast<std::size_t>(j) * tri(lmax_ + 1, 0); }
};

SphereGrid SphereGrid::make(int lmax, double radius) {
  if (lmax < 2 || lmax > 128) throw std::invalid_argument("SphereGrid: lmax must lie in [2, 128]");
  if (!(radius > 0.0)) throw std::invalid_argument("SphereGrid: radius must be positive");
  static std::mutex mu;
  static std::unordered_map<long long, std::weak_ptr<const SpherePlan>> cache;
  const long long key = static_cast<long long>(lmax) ^ (static_cast<long long>(std::hash<double>{}(radius)) << 8);
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it != cache.end())
    if (auto p = it->second.lock(); p && p->lmax_ == lmax && p->radius_ == radius) return SphereGrid{p};
  auto p = std::make_shared<const SpherePlan>(lmax, radius);
  cache[key] = p;
  return SphereGrid{p};
}

int SphereGrid::lmax() const { return plan->lmax_; }
double SphereGrid::radius() const { return plan->radius_; }
int SphereGrid::nlat() const { return plan->lmax_ + 1; }
int SphereGrid::nlon() const { return 2 * (plan->lmax_ + 1); }
std::size_t SphereGrid::size() const { return static_cast<std::size_t>(nlat()) * nlon(); }
double SphereGrid::theta(int j) const { return plan->theta_[j]; }
double SphereGrid::phi(int k) const { return 2.0 * kPi * k / nlon(); }
double SphereGrid::weight(int j) const { return plan->weights_[j]; }

bool operator==(const SphereGrid& a, const SphereGrid& b) {
  return a.plan == b.plan || (a.lmax() == b.lmax() && a.radius() == b.radius());
}

double SphereField::integral() const {
  const double r = grid.radius();
  double acc = 0.0;
  for (int j = 0; j < grid.nlat(); ++j) {
    double row = 0.0;
    for (int k = 0; k < grid.nlon(); ++k) row += samples[grid.index(j, k)];
    acc += grid.weight(j) * row;
  }
  return acc * (2.0 * kPi / grid.nlon()) * r * r;
}

double SphereField::mean() const {
  const double r = grid.radius();
  return integral() / (4.0 * kPi * r * r);
}

SphericalSpectrum SphericalSpectrum::zeros(const SphereGrid& g) {
  SphericalSpectrum s;
  s.grid_ = g;
  s.coeffs_.assign(tri(g.lmax() + 1, 0), {0.0, 0.0});
  return s;
}

std::complex<double>& SphericalSpectrum::at(int l, int m) {
  if (l < 0 || l > lmax() || m < 0 || m > l) throw std::out_of_range("SphericalSpectrum::at");
  return coeffs_[tri(l, m)];
}

std::complex<double> SphericalSpectrum::at(int l, int m) const {
  if (l < 0 || l > lmax() || std::abs(m) > l) throw std::out_of_range("SphericalSpectrum::at");
  if (m >= 0) return coeffs_[tri(l, m)];
  return (m % 2 == 0 ? 1.0 : -1.0) * std::conj(coeffs_[tri(l, -m)]);
}

int SphericalSpectrum::degree(double rel_tol) const {
  double peak = 0.0;
  for (const auto& c : coeffs_) peak = std::max(peak, std::abs(c));
  int deg = 0;
  for (int l = 0; l <= lmax(); ++l)
    for (int m = 0; m <= l; ++m)
      if (std::abs(coeffs_[tri(l, m)]) > rel_tol * peak) deg = l;
  return deg;
}

double SphericalSpectrum::norm2() const {
  double acc = 0.0;
  for (int l = 0; l <= lmax(); ++l)
    for (int m = 0; m <= l; ++m) acc += (m == 0 ? 1.0 : 2.0) * std::norm(coeffs_[tri(l, m)]);
  return acc;
}

SphericalSpectrum SphericalSpectrum::laplacian() const {
  const double r2 = grid_.radius() * grid_.radius();
  return scaled_by_degree([&](int l) { return -double(l) * (l + 1) / r2; });
}

SphericalSpectrum SphericalSpectrum::heat_propagated(double t) const { return sphere_heat_propagate(*this, t); }

SphericalSpectrum sphere_heat_propagate(const SphericalSpectrum& s, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("sphere_heat_propagate: t must be >= 0");
  const double r2 = s.grid().radius() * s.grid().radius();
  SphericalSpectrum out = s.scaled_by_degree([&](int l) { return std::exp(-double(l) * (l + 1) * t / r2); });
  out.truncated = s.truncated;
  return out;
}

SphericalSpectrum sh_analyze(const SphereField& f) {
  const SphereGrid& g = f.grid;
  if (f.samples.size() != g.size()) throw std::invalid_argument("sh_analyze: sample count mismatch");
  const int lmax = g.lmax();
  const int nlon = g.nlon();
  SphericalSpectrum s = SphericalSpectrum::zeros(g);
  std::vector<std::complex<double>> row(lmax + 1);
  std::vector<std::complex<double>> twiddle(static_cast<std::size_t>(nlon) * (lmax + 1));
  for (int k = 0; k < nlon; ++k)
    for (int m = 0; m <= lmax; ++m) twiddle[static_cast<std::size_t>(k) * (lmax + 1) + m] = std::polar(1.0, -m * g.phi(k));
  const double dphi = 2.0 * kPi / nlon;
  for (int j = 0; j < g.nlat(); ++j) {
    std::fill(row.begin(), row.end(), std::complex<double>{});
    for (int k = 0; k < nlon; ++k) {
      const double v = f.samples[g.index(j, k)];
      const auto* tw = &twiddle[static_cast<std::size_t>(k) * (lmax + 1)];
      for (int m = 0; m <= lmax; ++m) row[m] += v * tw[m];
    }
    const double* table = g.plan->row_table(j);
    const double wj = g.weight(j) * dphi * kInvSqrt2Pi;
    for (int l = 0; l <= lmax; ++l)
      for (int m = 0; m <= l; ++m) s.at(l, m) += wj * table[tri(l, m)] * row[m];
  }
  for (int l = 0; l <= lmax; ++l) s.at(l, 0).imag(0.0);
  // Content above lmax is invisible to the quadrature; detect it by round trip.
  const SphereField back = sh_synthesize(s);
  double peak = 0.0, err = 0.0;
  for (std::size_t p = 0; p < f.samples.size(); ++p) {
    peak = std::max(peak, std::abs(f.samples[p]));
    err = std::max(err, std::abs(f.samples[p] - back.samples[p]));
  }
  s.truncated = err > 1e-9 * (1.0 + peak);
  return s;
}

SphereField sh_synthesize(const SphericalSpectrum& s) {
  const SphereGrid& g = s.grid();
  SphereField f = SphereField::zeros(g);
  for (int j = 0; j < g.nlat(); ++j) {
    const auto rc = row_coefficients(s, g.plan->row_table(j), 0);
    for (int k = 0; k < g.nlon(); ++k) f.samples[g.index(j, k)] = combine(rc, g.phi(k), 0)[0][0];
  }
  return f;
}

std::vector<PointDerivatives> node_derivatives(const SphericalSpectrum& s, int order) {
  if (order < 0 || order > 4) throw std::out_of_range("node_derivatives: order must lie in [0, 4]");
  const SphereGrid& g = s.grid();
  std::vector<PointDerivatives> out(g.size());
  const auto n = static_cast<std::ptrdiff_t>(g.nlat());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    const auto rc = row_coefficients(s, g.plan->row_table(static_cast<int>(j)), order);
    for (int k = 0; k < g.nlon(); ++k) out[g.index(static_cast<int>(j), k)] = combine(rc, g.phi(k), order);
  }
  return out;
}

PointDerivatives point_derivatives(const SphericalSpectrum& s, double theta, double phi, int order) {
  if (order < 0 || order > 4) throw std::out_of_range("point_derivatives: order must lie in [0, 4]");
  std::vector<double> table(tri(s.lmax() + 1, 0));
  legendre_table(s.lmax(), std::cos(theta), std::sin(theta), table.data());
  return combine(row_coefficients(s, table.data(), order), phi, order);
}

SphericalSpectrum random_sphere_spectrum(const SphereGrid& g, int lmax_data, unsigned long long seed) {
  if (lmax_data < 1 || lmax_data > g.lmax()) throw std::invalid_argument("random_sphere_spectrum: degree out of range");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  SphericalSpectrum s = SphericalSpectrum::zeros(g);
  for (int l = 1; l <= lmax_data; ++l)
    for (int m = 0; m <= l; ++m) {
      const double re = uni(rng);
      const double im = m == 0 ? 0.0 : uni(rng);
      s.at(l, m) = std::complex<double>(re, im) / (l + 1.0);
    }
  return s;
}

SphericalSpectrum sphere_harmonic(const SphereGrid& g, int l, int m) {
  SphericalSpectrum s = SphericalSpectrum::zeros(g);
  s.at(l, m) = 1.0;
  return s;
}

namespace {

// Reflects (theta, phi) back into theta in [0, pi].
void wrap(double& theta, double& phi) {
  theta = std::fmod(theta, 2.0 * kPi);
  if (theta < 0.0) theta += 2.0 * kPi;
  if (theta > kPi) {
    theta = 2.0 * kPi - theta;
    phi += kPi;
  }
  phi = std::fmod(phi, 2.0 * kPi);
  if (phi < 0.0) phi += 2.0 * kPi;
}

double descend_sphere(const SphericalSpectrum& s, double sign, double theta, double phi) {
  PointDerivatives d = point_derivatives(s, theta, phi, 2);
  double v = sign * d[0][0];
  for (int it = 0; it < 50; ++it) {
    const double g0 = sign * d[1][0], g1 = sign * d[0][1];
    const double h00 = sign * d[2][0], h01 = sign * d[1][1], h11 = sign * d[0][2];
    const double hn = std::max({std::abs(h00), std::abs(h01), std::abs(h11)});
    double mu = 0.0;
    bool moved = false;
    for (int tries = 0; tries < 40; ++tries) {
      const double a = h00 + mu, b = h01, c = h11 + mu;
      const double det = a * c - b * b;
      if (a > 0.0 && det > 0.0) {
        double tn = theta - (c * g0 - b * g1) / det;
        double pn = phi - (a * g1 - b * g0) / det;
        wrap(tn, pn);
        const PointDerivatives dn = point_derivatives(s, tn, pn, 2);
        if (sign * dn[0][0] < v) {
          theta = tn;
          phi = pn;
          d = dn;
          v = sign * dn[0][0];
          moved = true;
          break;
        }
      }
      mu = mu == 0.0 ? 1e-10 * (1.0 + hn) : 4.0 * mu;
    }
    if (!moved) break;
  }
  return v;
}

double sphere_refine(const SphericalSpectrum& s, const std::vector<double>& samples, double sign, int candidates) {
  const SphereGrid& g = s.grid();
  std::vector<std::size_t> order(samples.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto key = [&](std::size_t p) { return sign * samples[p]; };
  const std::size_t k = std::min<std::size_t>(candidates, order.size());
  std::partial_sort(order.begin(), order.begin() + k, order.end(),
                    [&](std::size_t a, std::size_t b) { return key(a) < key(b) || (key(a) == key(b) && a < b); });
  double best = key(order[0]);
  for (double pole : {0.0, kPi}) best = std::min(best, sign * point_derivatives(s, pole, 0.0, 0)[0][0]);
  for (std::size_t c = 0; c < k; ++c) {
    const int j = static_cast<int>(order[c] / g.nlon());
    const int kk = static_cast<int>(order[c] % g.nlon());
    best = std::min(best, descend_sphere(s, sign, g.theta(j), g.phi(kk)));
  }
  for (double pole : {0.0, kPi}) best = std::min(best, descend_sphere(s, sign, pole, 0.0));
  return sign * best;
}

}  // namespace

SphereExtrema sphere_polished_extrema(const SphericalSpectrum& s, int candidates) {
  const SphereField f = sh_synthesize(s);
  SphereExtrema e;
  for (double v : f.samples) e.any_nan = e.any_nan || std::isnan(v);
  if (e.any_nan) {
    e.min = e.max = std::numeric_limits<double>::quiet_NaN();
    return e;
  }
  e.min = sphere_refine(s, f.samples, 1.0, candidates);
  e.max = sphere_refine(s, f.samples, -1.0, candidates);
  return e;
}

}  // namespace pcflow
