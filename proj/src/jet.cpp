#include "pcflow/jet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pcflow {

namespace {

constexpr double kBinom[5][5] = {
    {1, 0, 0, 0, 0}, {1, 1, 0, 0, 0}, {1, 2, 1, 0, 0}, {1, 3, 3, 1, 0}, {1, 4, 6, 4, 1}};

void check_order(int order) {
  if (order < 0 || order > 4) throw std::out_of_range("Jet: order must lie in [0, 4]");
}

Jet trig(double theta, int order, int shift) {
  check_order(order);
  Jet j;
  j.order = order;
  // d^a sin(theta + shift pi/2) = sin(theta + (a + shift) pi/2)
  const double s = std::sin(theta), c = std::cos(theta);
  const double cyc[4] = {s, c, -s, -c};
  for (int a = 0; a <= order; ++a) j.d[a][0] = cyc[(a + shift) % 4];
  return j;
}

}  // namespace

Jet Jet::constant(double v, int order) {
  check_order(order);
  Jet j;
  j.order = order;
  j.d[0][0] = v;
  return j;
}

Jet Jet::from(const PointDerivatives& pd, int order) {
  check_order(order);
  Jet j;
  j.order = order;
  for (int a = 0; a <= order; ++a)
    for (int b = 0; a + b <= order; ++b) j.d[a][b] = pd[a][b];
  return j;
}

Jet Jet::sin_theta(double theta, int order) { return trig(theta, order, 0); }
Jet Jet::cos_theta(double theta, int order) { return trig(theta, order, 1); }

Jet Jet::dtheta() const {
  if (order == 0) throw std::logic_error("Jet: no derivative data left");
  Jet j;
  j.order = order - 1;
  for (int a = 0; a <= j.order; ++a)
    for (int b = 0; a + b <= j.order; ++b) j.d[a][b] = d[a + 1][b];
  return j;
}

Jet Jet::dphi() const {
  if (order == 0) throw std::logic_error("Jet: no derivative data left");
  Jet j;
  j.order = order - 1;
  for (int a = 0; a <= j.order; ++a)
    for (int b = 0; a + b <= j.order; ++b) j.d[a][b] = d[a][b + 1];
  return j;
}

Jet Jet::reciprocal() const {
  if (d[0][0] == 0.0) throw std::domain_error("Jet: reciprocal of zero");
  Jet h;
  h.order = order;
  const double inv = 1.0 / d[0][0];
  for (int n = 0; n <= order; ++n)
    for (int a = 0; a <= n; ++a) {
      const int b = n - a;
      if (n == 0) {
        h.d[0][0] = inv;
        continue;
      }
      double acc = 0.0;
      for (int i = 0; i <= a; ++i)
        for (int k = 0; k <= b; ++k) {
          if (i == 0 && k == 0) continue;
          acc += kBinom[a][i] * kBinom[b][k] * d[i][k] * h.d[a - i][b - k];
        }
      h.d[a][b] = -inv * acc;
    }
  return h;
}

Jet& Jet::operator+=(const Jet& o) {
  order = std::min(order, o.order);
  for (int a = 0; a <= order; ++a)
    for (int b = 0; a + b <= order; ++b) d[a][b] += o.d[a][b];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  order = std::min(order, o.order);
  for (int a = 0; a <= order; ++a)
    for (int b = 0; a + b <= order; ++b) d[a][b] -= o.d[a][b];
  return *this;
}

Jet& Jet::operator*=(double s) {
  for (auto& row : d)
    for (double& v : row) v *= s;
  return *this;
}

Jet operator+(Jet a, const Jet& b) { return a += b; }
Jet operator-(Jet a, const Jet& b) { return a -= b; }
Jet operator*(double s, Jet a) { return a *= s; }

Jet operator*(const Jet& x, const Jet& y) {
  Jet r;
  r.order = std::min(x.order, y.order);
  for (int a = 0; a <= r.order; ++a)
    for (int b = 0; a + b <= r.order; ++b) {
      double acc = 0.0;
      for (int i = 0; i <= a; ++i)
        for (int k = 0; k <= b; ++k) acc += kBinom[a][i] * kBinom[b][k] * x.d[i][k] * y.d[a - i][b - k];
      r.d[a][b] = acc;
    }
  return r;
}

}  // namespace pcflow
