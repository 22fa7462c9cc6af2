#include "pcflow/extrema.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <numeric>
#include <vector>

namespace pcflow {

namespace {

constexpr int D = kMaxTorusDim;

struct Jet {
  double value = 0.0;
  std::array<double, D> grad{};
  std::array<std::array<double, D>, D> hess{};
};

struct TrigSeries {
  int dim = 0;
  std::vector<std::array<double, D>> kappa;
  std::vector<std::complex<double>> coeff;

  double value(const std::array<double, D>& x) const {
    double v = 0.0;
    for (std::size_t m = 0; m < coeff.size(); ++m) {
      double th = 0.0;
      for (int a = 0; a < dim; ++a) th += kappa[m][a] * x[a];
      v += (coeff[m] * std::polar(1.0, th)).real();
    }
    return v;
  }

  Jet jet(const std::array<double, D>& x) const {
    Jet j;
    for (std::size_t m = 0; m < coeff.size(); ++m) {
      double th = 0.0;
      for (int a = 0; a < dim; ++a) th += kappa[m][a] * x[a];
      const std::complex<double> e = coeff[m] * std::polar(1.0, th);
      j.value += e.real();
      for (int a = 0; a < dim; ++a) {
        j.grad[a] -= kappa[m][a] * e.imag();
        for (int b = 0; b < dim; ++b) j.hess[a][b] -= kappa[m][a] * kappa[m][b] * e.real();
      }
    }
    return j;
  }
};

TrigSeries series_of(const TorusSpectrum& s, double sign) {
  TrigSeries t;
  const TorusGrid& g = s.grid();
  t.dim = g.dim;
  const auto& c = s.coefficients();
  const int last_nyq = g.n / 2;
  double peak = 0.0;
  for (const auto& z : c) peak = std::max(peak, std::abs(z));
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (std::abs(c[i]) <= 1e-15 * peak) continue;
    const auto k = s.wavenumbers(i);
    const int kl = k[g.dim - 1];
    const double w = (kl == 0 || kl == last_nyq) ? 1.0 : 2.0;
    std::array<double, D> kap{};
    for (int a = 0; a < g.dim; ++a) kap[a] = 2.0 * std::numbers::pi * k[a] / g.side[a];
    t.kappa.push_back(kap);
    t.coeff.push_back(sign * w * c[i]);
  }
  return t;
}

// Solves (H + mu I) d = -g by Cholesky; false when not positive definite.
bool damped_step(const Jet& j, int n, double mu, std::array<double, D>& d) {
  double l[D][D] = {};
  for (int i = 0; i < n; ++i)
    for (int k = 0; k <= i; ++k) {
      double s = j.hess[i][k] + (i == k ? mu : 0.0);
      for (int p = 0; p < k; ++p) s -= l[i][p] * l[k][p];
      if (i == k) {
        if (!(s > 0.0)) return false;
        l[i][i] = std::sqrt(s);
      } else {
        l[i][k] = s / l[k][k];
      }
    }
  std::array<double, D> y{};
  for (int i = 0; i < n; ++i) {
    double s = -j.grad[i];
    for (int p = 0; p < i; ++p) s -= l[i][p] * y[p];
    y[i] = s / l[i][i];
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = y[i];
    for (int p = i + 1; p < n; ++p) s -= l[p][i] * d[p];
    d[i] = s / l[i][i];
  }
  return true;
}

double descend(const TrigSeries& t, std::array<double, D> x) {
  const int n = t.dim;
  Jet j = t.jet(x);
  for (int it = 0; it < 50; ++it) {
    double hnorm = 0.0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) hnorm = std::max(hnorm, std::abs(j.hess[a][b]));
    double mu = 0.0;
    bool moved = false;
    for (int tries = 0; tries < 40; ++tries) {
      std::array<double, D> d{};
      if (damped_step(j, n, mu, d)) {
        std::array<double, D> xn = x;
        for (int a = 0; a < n; ++a) xn[a] += d[a];
        const double vn = t.value(xn);
        if (vn < j.value) {
          x = xn;
          moved = true;
          break;
        }
      }
      mu = mu == 0.0 ? 1e-10 * (1.0 + hnorm) : 4.0 * mu;
    }
    if (!moved) break;
    j = t.jet(x);
  }
  return j.value;
}

double refine_min(const TorusSpectrum& s, const std::vector<double>& samples, double sign, int candidates) {
  const TorusGrid& g = s.grid();
  std::vector<std::size_t> order(samples.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto key = [&](std::size_t p) { return sign * samples[p]; };
  const std::size_t k = std::min<std::size_t>(candidates, order.size());
  std::partial_sort(order.begin(), order.begin() + k, order.end(),
                    [&](std::size_t a, std::size_t b) { return key(a) < key(b) || (key(a) == key(b) && a < b); });
  const TrigSeries t = series_of(s, sign);
  double best = key(order[0]);
  if (t.coeff.empty()) return sign * best;
  for (std::size_t c = 0; c < k; ++c) {
    const auto idx = g.unflatten(order[c]);
    std::array<double, D> x{};
    for (int a = 0; a < g.dim; ++a) x[a] = g.coordinate(a, idx[a]);
    best = std::min(best, descend(t, x));
  }
  return sign * best;
}

}  // namespace

PolishedExtrema polished_extrema(const TorusSpectrum& s, int candidates) {
  const std::vector<double> samples = s.synthesize().samples;
  PolishedExtrema e;
  for (double v : samples) e.any_nan = e.any_nan || std::isnan(v);
  if (e.any_nan) {
    e.min = e.max = std::numeric_limits<double>::quiet_NaN();
    return e;
  }
  e.min = refine_min(s, samples, 1.0, candidates);
  e.max = refine_min(s, samples, -1.0, candidates);
  return e;
}

}  // namespace pcflow
