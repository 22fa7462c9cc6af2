#pragma once

// Truncated bivariate Taylor data in (theta, phi) at a point: d[a][b] holds
// d_theta^a d_phi^b f for a + b <= order (order <= 4).

#include <array>

#include "pcflow/sphere.hpp"

namespace pcflow {

struct Jet {
  int order = 0;
  std::array<std::array<double, 5>, 5> d{};

  static Jet constant(double v, int order);
  static Jet from(const PointDerivatives& pd, int order);
  /// sin(theta) and cos(theta) as jets in theta.
  static Jet sin_theta(double theta, int order);
  static Jet cos_theta(double theta, int order);

  double value() const { return d[0][0]; }
  Jet dtheta() const;
  Jet dphi() const;
  Jet derivative(int axis) const { return axis == 0 ? dtheta() : dphi(); }
  Jet reciprocal() const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(double s);
};

Jet operator+(Jet a, const Jet& b);
Jet operator-(Jet a, const Jet& b);
Jet operator*(const Jet& a, const Jet& b);
Jet operator*(double s, Jet a);

}  // namespace pcflow
