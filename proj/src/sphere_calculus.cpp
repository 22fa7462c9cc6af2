#include "pcflow/sphere_calculus.hpp"

#include <cmath>
#include <stdexcept>

namespace pcflow {

namespace {

struct Christoffel {
  Jet theta_phiphi;  // Gamma^theta_{phi phi} = -sin cos
  Jet phi_thetaphi;  // Gamma^phi_{theta phi} = cot
};

Christoffel christoffel(double theta, int order) {
  const Jet s = Jet::sin_theta(theta, order);
  const Jet c = Jet::cos_theta(theta, order);
  return {-1.0 * (s * c), c * s.reciprocal()};
}

// Gamma^m_{k a}
const Jet* gamma(const Christoffel& ch, int m, int k, int a) {
  if (m == 0 && k == 1 && a == 1) return &ch.theta_phiphi;
  if (m == 1 && ((k == 0 && a == 1) || (k == 1 && a == 0))) return &ch.phi_thetaphi;
  return nullptr;
}

int node_row(const SphereGrid& g, std::size_t node) { return static_cast<int>(node / g.nlon()); }

}  // namespace

CovariantTensorField scalar_tensor(const SphericalSpectrum& s, int order) {
  CovariantTensorField t{s.grid(), 0, {}};
  const auto pd = node_derivatives(s, order);
  t.comps.reserve(pd.size());
  for (const auto& d : pd) t.comps.push_back(Jet::from(d, order));
  return t;
}

CovariantTensorField metric_tensor(const SphereGrid& g, int order) {
  CovariantTensorField t{g, 2, std::vector<Jet>(g.size() * 4)};
  const double r2 = g.radius() * g.radius();
  for (std::size_t p = 0; p < g.size(); ++p) {
    const Jet s = Jet::sin_theta(g.theta(node_row(g, p)), order);
    t.at(p, 0) = Jet::constant(r2, order);
    t.at(p, 1) = Jet::constant(0.0, order);
    t.at(p, 2) = Jet::constant(0.0, order);
    t.at(p, 3) = r2 * (s * s);
  }
  return t;
}

CovariantTensorField covariant_derivative(const CovariantTensorField& t) {
  if (t.rank > 3) throw std::invalid_argument("covariant_derivative: rank above 3 unsupported");
  if (t.order() < 1) throw std::invalid_argument("covariant_derivative: no jet order left");
  const SphereGrid& g = t.grid;
  const int r = t.rank;
  const int nin = t.components();
  CovariantTensorField out{g, r + 1, std::vector<Jet>(g.size() * nin * 2)};
  const int order = t.order() - 1;
  const auto n = static_cast<std::ptrdiff_t>(g.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t pp = 0; pp < n; ++pp) {
    const auto p = static_cast<std::size_t>(pp);
    const Christoffel ch = christoffel(g.theta(node_row(g, p)), order);
    for (int c = 0; c < nin; ++c)
      for (int k = 0; k < 2; ++k) {
        Jet v = t.at(p, c).derivative(k);
        for (int s = 0; s < r; ++s) {
          const int bit = r - 1 - s;
          const int a = (c >> bit) & 1;
          for (int m = 0; m < 2; ++m) {
            const Jet* gm = gamma(ch, m, k, a);
            if (!gm) continue;
            const int cm = (c & ~(1 << bit)) | (m << bit);
            v -= *gm * t.at(p, cm);
          }
        }
        out.at(p, 2 * c + k) = v;
      }
  }
  return out;
}

CovariantTensorField covariant_hessian(const SphericalSpectrum& s, int order) {
  return covariant_derivative(covariant_derivative(scalar_tensor(s, order)));
}

CovariantTensorField rough_laplacian(const CovariantTensorField& t) {
  if (t.rank > 2) throw std::invalid_argument("rough_laplacian: rank above 2 unsupported");
  const CovariantTensorField dd = covariant_derivative(covariant_derivative(t));
  const SphereGrid& g = t.grid;
  const int nin = t.components();
  const int order = dd.order();
  const double r2 = g.radius() * g.radius();
  CovariantTensorField out{g, t.rank, std::vector<Jet>(g.size() * nin)};
  for (std::size_t p = 0; p < g.size(); ++p) {
    const Jet s = Jet::sin_theta(g.theta(node_row(g, p)), order);
    const Jet g11 = (r2 * (s * s)).reciprocal();
    for (int c = 0; c < nin; ++c)
      out.at(p, c) = (1.0 / r2) * dd.at(p, 4 * c + 0) + g11 * dd.at(p, 4 * c + 3);
  }
  return out;
}

SphereField metric_trace(const CovariantTensorField& t) {
  if (t.rank != 2) throw std::invalid_argument("metric_trace: rank-2 field required");
  const SphereGrid& g = t.grid;
  SphereField f = SphereField::zeros(g);
  const double r2 = g.radius() * g.radius();
  for (std::size_t p = 0; p < g.size(); ++p) {
    const double s = std::sin(g.theta(node_row(g, p)));
    f.samples[p] = t.at(p, 0).value() / r2 + t.at(p, 3).value() / (r2 * s * s);
  }
  return f;
}

double frame_component(const CovariantTensorField& t, std::size_t node, int comp) {
  const SphereGrid& g = t.grid;
  const double r = g.radius();
  const double hphi = r * std::sin(g.theta(node_row(g, node)));
  double scale = 1.0;
  for (int s = 0; s < t.rank; ++s) scale *= ((comp >> s) & 1) ? hphi : r;
  return t.at(node, comp).value() / scale;
}

SymMatrix frame_matrix(const CovariantTensorField& t, std::size_t node) {
  if (t.rank != 2) throw std::invalid_argument("frame_matrix: rank-2 field required");
  SymMatrix a(2);
  a.set(0, 0, frame_component(t, node, 0));
  a.set(0, 1, 0.5 * (frame_component(t, node, 1) + frame_component(t, node, 2)));
  a.set(1, 1, frame_component(t, node, 3));
  return a;
}

}  // namespace pcflow
