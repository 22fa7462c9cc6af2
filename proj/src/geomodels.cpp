#include "pcflow/geomodels.hpp"

#include <cmath>
#include <stdexcept>

namespace pcflow {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

void require_sides(const std::vector<double>& sides, std::size_t count) {
  require(sides.size() == count, "geometry: one side length per axis required");
  for (double s : sides) require(s > 0.0 && std::isfinite(s), "geometry: side lengths must be positive");
}

double delta(int i, int j) { return i == j ? 1.0 : 0.0; }

}  // namespace

void validate(const GeometryModel& g) {
  std::visit(
      [](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FlatTorus>) {
          require(v.n >= 1 && v.n <= 4, "flat torus: dimension must be 1..4");
          require_sides(v.side_lengths, v.n);
        } else if constexpr (std::is_same_v<T, RoundSphere2>) {
          require(v.radius > 0.0, "round sphere: radius must be positive");
        } else if constexpr (std::is_same_v<T, ShrinkingSphere>) {
          require(v.radius0 > 0.0, "shrinking sphere: radius must be positive");
        } else if constexpr (std::is_same_v<T, FlatComplexTorus>) {
          require(v.m >= 1 && v.m <= 2, "flat complex torus: complex dimension must be 1 or 2");
          require_sides(v.side_lengths, 2 * v.m);
        } else if constexpr (std::is_same_v<T, ModelSn>) {
          require(v.n >= 2 && v.n <= kMaxMatrixDim, "S^n: dimension out of range");
          require(v.kappa > 0.0, "S^n: kappa must be positive");
        } else {
          require(v.n >= 1 && v.n <= 4, "CP^n: dimension out of range");
          require(v.c > 0.0, "CP^n: c must be positive");
        }
      },
      g);
}

std::string geometry_name(const GeometryModel& g) {
  static const char* names[] = {"flat_torus", "round_sphere", "shrinking_sphere", "flat_complex_torus", "model_sn",
                                "model_cpn"};
  return names[g.index()];
}

SphereCurvature::SphereCurvature(const ModelSn& space) : n_(space.n), kappa_(space.kappa) { validate(space); }

double SphereCurvature::riemann(int i, int k, int j, int l) const {
  return kappa_ * (delta(i, j) * delta(k, l) - delta(i, l) * delta(k, j));
}

double SphereCurvature::ricci(int k, int l) const {
  double s = 0.0;
  for (int i = 0; i < n_; ++i) s += riemann(i, k, i, l);
  return s;
}

KahlerCurvature::KahlerCurvature(const ModelCPn& space) : m_(space.n), c_(space.c) { validate(space); }

KahlerCurvature KahlerCurvature::flat(int m) {
  require(m >= 1 && m <= 4, "flat Kaehler curvature: dimension out of range");
  return KahlerCurvature(m, 0.0);
}

double KahlerCurvature::riemann(int a, int b, int c, int d) const {
  return c_ * (delta(a, b) * delta(c, d) + delta(a, d) * delta(c, b));
}

double KahlerCurvature::ricci(int a, int b) const {
  double s = 0.0;
  for (int c = 0; c < m_; ++c) s += riemann(a, b, c, c);
  return s;
}

double condition_non2_value(const SymMatrix& a, const ModelSn& space) {
  if (a.dim() != space.n) throw std::invalid_argument("condition_non2_value: dimension mismatch");
  const SphereCurvature r(space);
  const int n = a.dim();
  double quartic = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) quartic += a(i, j) * r.riemann(i, k, j, l) * a(k, l);
  double ricci_term = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) ricci_term += a(i, j) * r.ricci(j, l) * a(i, l);
  return -2.0 * quartic + 2.0 * ricci_term;
}

double condition_non2_closed_form(const SymMatrix& a, const ModelSn& space) {
  if (a.dim() != space.n) throw std::invalid_argument("condition_non2_closed_form: dimension mismatch");
  const double s1 = a.trace();
  return space.kappa * (2.0 * space.n * a.frobenius_norm2() - 2.0 * s1 * s1);
}

double condition_non1_value(const HermMatrix& a, const KahlerCurvature& r) {
  if (a.dim() != r.dim()) throw std::invalid_argument("condition_non1_value: dimension mismatch");
  const int m = a.dim();
  // u_{b a'} = a(b,a); u_{c' d} = u_{d c'} = a(d,c); u_{s b'} = a(s,b).
  std::complex<double> quartic{};
  for (int al = 0; al < m; ++al)
    for (int be = 0; be < m; ++be)
      for (int ga = 0; ga < m; ++ga)
        for (int de = 0; de < m; ++de) quartic += a(be, al) * r.riemann(al, be, ga, de) * a(de, ga);
  std::complex<double> ricci_term{};
  for (int al = 0; al < m; ++al)
    for (int be = 0; be < m; ++be)
      for (int s = 0; s < m; ++s) ricci_term += a(be, al) * r.ricci(al, s) * a(s, be);
  return (-quartic + ricci_term).real();
}

double condition_non1_value(const HermMatrix& a, const ModelCPn& space) {
  return condition_non1_value(a, KahlerCurvature(space));
}

double condition_non1_closed_form(const HermMatrix& a, const ModelCPn& space) {
  if (a.dim() != space.n) throw std::invalid_argument("condition_non1_closed_form: dimension mismatch");
  const double tr = a.trace();
  return space.c * (space.n * a.frobenius_norm2() - tr * tr);
}

double closed_form_gap(const SymMatrix& a, const ModelSn& space) {
  return std::abs(condition_non2_value(a, space) - condition_non2_closed_form(a, space));
}

double closed_form_gap(const HermMatrix& a, const ModelCPn& space) {
  return std::abs(condition_non1_value(a, space) - condition_non1_closed_form(a, space));
}

}  // namespace pcflow
