#include "pcflow/symfun.hpp"

#include <string>

namespace pcflow {

namespace {

template <class Scalar>
void check_order(const SelfAdjointMatrix<Scalar>& a, int k, int lo, const char* what) {
  if (k < lo || k > a.dim())
    throw std::out_of_range(std::string(what) + ": k=" + std::to_string(k) + " outside [" + std::to_string(lo) +
                            ", " + std::to_string(a.dim()) + "]");
}

// Runs the recursion up to T_k, returning T_k and filling sigma_1..sigma_k.
template <class Scalar>
SmallMatrix<Scalar> newton_recursion(const SmallMatrix<Scalar>& a, int k, double* sigmas) {
  const int n = a.dim();
  SmallMatrix<Scalar> t = SmallMatrix<Scalar>::identity(n);
  for (int j = 1; j <= k; ++j) {
    SmallMatrix<Scalar> m = t * a;
    const double s = real_of(m.trace()) / j;
    if (sigmas) sigmas[j - 1] = s;
    t = SmallMatrix<Scalar>::identity(n) * Scalar(s) - m;
  }
  return t;
}

}  // namespace

template <class Scalar>
double elementary_symmetric(const SelfAdjointMatrix<Scalar>& a, int k) {
  check_order(a, k, 0, "elementary_symmetric");
  if (k == 0) return 1.0;
  std::array<double, kMaxMatrixDim> s{};
  newton_recursion(a.matrix(), k, s.data());
  return s[k - 1];
}

template <class Scalar>
SigmaVector sigma_vector(const SelfAdjointMatrix<Scalar>& a) {
  SigmaVector v;
  v.values.resize(a.dim());
  newton_recursion(a.matrix(), a.dim(), v.values.data());
  return v;
}

template <class Scalar>
SelfAdjointMatrix<Scalar> newton_transform(const SelfAdjointMatrix<Scalar>& a, int k) {
  check_order(a, k, 0, "newton_transform");
  return SelfAdjointMatrix<Scalar>::symmetrized(newton_recursion(a.matrix(), k, nullptr));
}

template <class Scalar>
double sigma_directional_derivative(const SelfAdjointMatrix<Scalar>& a, const SelfAdjointMatrix<Scalar>& b, int k) {
  if (a.dim() != b.dim()) throw std::invalid_argument("sigma_directional_derivative: dimension mismatch");
  check_order(a, k, 1, "sigma_directional_derivative");
  const SmallMatrix<Scalar> t = newton_recursion(a.matrix(), k - 1, nullptr);
  return real_of((t * b.matrix()).trace());
}

template <class Scalar>
SmallMatrix<Scalar> newton_transform_derivative(const SelfAdjointMatrix<Scalar>& a,
                                                const SelfAdjointMatrix<Scalar>& da, int k) {
  if (a.dim() != da.dim()) throw std::invalid_argument("newton_transform_derivative: dimension mismatch");
  check_order(a, k, 0, "newton_transform_derivative");
  const int n = a.dim();
  const SmallMatrix<Scalar>& am = a.matrix();
  const SmallMatrix<Scalar>& dam = da.matrix();
  SmallMatrix<Scalar> t = SmallMatrix<Scalar>::identity(n);
  SmallMatrix<Scalar> dt(n);
  for (int j = 1; j <= k; ++j) {
    const SmallMatrix<Scalar> m = t * am;
    const double s = real_of(m.trace()) / j;
    const double ds = real_of((t * dam).trace());
    SmallMatrix<Scalar> dnext = SmallMatrix<Scalar>::identity(n) * Scalar(ds) - dt * am - t * dam;
    t = SmallMatrix<Scalar>::identity(n) * Scalar(s) - m;
    dt = dnext;
  }
  return dt;
}

template <class Scalar>
bool garding_membership(const SelfAdjointMatrix<Scalar>& a, int k, double eps) {
  check_order(a, k, 1, "garding_membership");
  std::array<double, kMaxMatrixDim> s{};
  newton_recursion(a.matrix(), k, s.data());
  for (int j = 0; j < k; ++j)
    if (!(s[j] > eps)) return false;
  return true;
}

template <class Scalar>
double trace_product(const SelfAdjointMatrix<Scalar>& x, const SelfAdjointMatrix<Scalar>& y) {
  if (x.dim() != y.dim()) throw std::invalid_argument("trace_product: dimension mismatch");
  double s = 0.0;
  for (int i = 0; i < x.dim(); ++i)
    for (int j = 0; j < x.dim(); ++j) s += real_of(x(i, j) * y(j, i));
  return s;
}

#define PCFLOW_INSTANTIATE(S)                                                                                   \
  template double elementary_symmetric(const SelfAdjointMatrix<S>&, int);                                      \
  template SigmaVector sigma_vector(const SelfAdjointMatrix<S>&);                                              \
  template SelfAdjointMatrix<S> newton_transform(const SelfAdjointMatrix<S>&, int);                            \
  template double sigma_directional_derivative(const SelfAdjointMatrix<S>&, const SelfAdjointMatrix<S>&, int); \
  template SmallMatrix<S> newton_transform_derivative(const SelfAdjointMatrix<S>&, const SelfAdjointMatrix<S>&, \
                                                      int);                                                    \
  template bool garding_membership(const SelfAdjointMatrix<S>&, int, double);                                  \
  template double trace_product(const SelfAdjointMatrix<S>&, const SelfAdjointMatrix<S>&);

PCFLOW_INSTANTIATE(double)
PCFLOW_INSTANTIATE(std::complex<double>)

#undef PCFLOW_INSTANTIATE

}  // namespace pcflow
