#include "pcflow/kernels.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pcflow::kernels {

namespace {

template <class Scalar>
double newton_contraction_at(const MatrixFieldView<Scalar>& a, const GradientFieldView<Scalar>& da, int k,
                             std::size_t p) {
  const SelfAdjointMatrix<Scalar> ap = a.at(p);
  double acc = 0.0;
  for (const auto& axis : da.axes) {
    const SelfAdjointMatrix<Scalar> dap = axis.at(p);
    const SmallMatrix<Scalar> dt = newton_transform_derivative(ap, dap, k - 1);
    acc += real_of((dt * dap.matrix()).trace());
  }
  return acc;
}

template <class Scalar>
void check_sizes(const MatrixFieldView<Scalar>& a, std::span<double> out) {
  if (out.size() != a.size) throw std::invalid_argument("kernels: output size mismatch");
}

}  // namespace

template <class Scalar>
void sigma_field(const MatrixFieldView<Scalar>& a, int k, std::span<double> out) {
  check_sizes(a, out);
  const auto n = static_cast<std::ptrdiff_t>(a.size);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t p = 0; p < n; ++p) out[p] = elementary_symmetric(a.at(p), k);
}

template <class Scalar>
void sigma_field_reference(const MatrixFieldView<Scalar>& a, int k, std::span<double> out) {
  check_sizes(a, out);
  for (std::size_t p = 0; p < a.size; ++p) out[p] = elementary_symmetric(a.at(p), k);
}

template <class Scalar>
void sigma_derivative_field(const MatrixFieldView<Scalar>& a, const MatrixFieldView<Scalar>& b, int k,
                            std::span<double> out) {
  check_sizes(a, out);
  const auto n = static_cast<std::ptrdiff_t>(a.size);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t p = 0; p < n; ++p) out[p] = sigma_directional_derivative(a.at(p), b.at(p), k);
}

template <class Scalar>
void sigma_derivative_field_reference(const MatrixFieldView<Scalar>& a, const MatrixFieldView<Scalar>& b, int k,
                                      std::span<double> out) {
  check_sizes(a, out);
  for (std::size_t p = 0; p < a.size; ++p) out[p] = sigma_directional_derivative(a.at(p), b.at(p), k);
}

template <class Scalar>
void newton_contraction_field(const MatrixFieldView<Scalar>& a, const GradientFieldView<Scalar>& da, int k,
                              std::span<double> out) {
  check_sizes(a, out);
  const auto n = static_cast<std::ptrdiff_t>(a.size);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t p = 0; p < n; ++p) out[p] = newton_contraction_at(a, da, k, p);
}

template <class Scalar>
void newton_contraction_field_reference(const MatrixFieldView<Scalar>& a, const GradientFieldView<Scalar>& da,
                                        int k, std::span<double> out) {
  check_sizes(a, out);
  for (std::size_t p = 0; p < a.size; ++p) out[p] = newton_contraction_at(a, da, k, p);
}

template <class Scalar>
void accumulate_gradient_terms(const MatrixFieldView<Scalar>& da_axis, std::span<double> grad_sigma1_sq,
                               std::span<double> grad_a_sq) {
  check_sizes(da_axis, grad_sigma1_sq);
  check_sizes(da_axis, grad_a_sq);
  const auto n = static_cast<std::ptrdiff_t>(da_axis.size);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t p = 0; p < n; ++p) {
    const auto d = da_axis.at(p);
    const double tr = d.trace();
    grad_sigma1_sq[p] += tr * tr;
    grad_a_sq[p] += trace_product(d, d);
  }
}

template <class Scalar>
void accumulate_gradient_terms_reference(const MatrixFieldView<Scalar>& da_axis, std::span<double> grad_sigma1_sq,
                                         std::span<double> grad_a_sq) {
  check_sizes(da_axis, grad_sigma1_sq);
  check_sizes(da_axis, grad_a_sq);
  for (std::size_t p = 0; p < da_axis.size; ++p) {
    const auto d = da_axis.at(p);
    const double tr = d.trace();
    grad_sigma1_sq[p] += tr * tr;
    grad_a_sq[p] += trace_product(d, d);
  }
}

Extrema extrema(std::span<const double> v, std::span<const unsigned char> mask) {
  const bool use_mask = !mask.empty();
  const Extrema init{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(), 0, 0, false};
  Extrema e = init;
  const auto n = static_cast<std::ptrdiff_t>(v.size());
#pragma omp parallel
  {
    Extrema local = init;
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t p = 0; p < n; ++p) {
      if (use_mask && !mask[p]) continue;
      const double x = v[p];
      if (std::isnan(x)) {
        local.any_nan = true;
        continue;
      }
      if (x < local.min) local = {x, local.max, static_cast<std::size_t>(p), local.argmax, local.any_nan};
      if (x > local.max) local = {local.min, x, local.argmin, static_cast<std::size_t>(p), local.any_nan};
    }
#pragma omp critical(pcflow_extrema)
    {
      // Ties resolve to the lowest index so the result is schedule independent.
      if (local.min < e.min || (local.min == e.min && local.argmin < e.argmin)) {
        e.min = local.min;
        e.argmin = local.argmin;
      }
      if (local.max > e.max || (local.max == e.max && local.argmax < e.argmax)) {
        e.max = local.max;
        e.argmax = local.argmax;
      }
      e.any_nan = e.any_nan || local.any_nan;
    }
  }
  return e;
}

Extrema extrema_reference(std::span<const double> v, std::span<const unsigned char> mask) {
  Extrema e{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(), 0, 0, false};
  for (std::size_t p = 0; p < v.size(); ++p) {
    if (!mask.empty() && !mask[p]) continue;
    if (std::isnan(v[p])) {
      e.any_nan = true;
      continue;
    }
    if (v[p] < e.min) {
      e.min = v[p];
      e.argmin = p;
    }
    if (v[p] > e.max) {
      e.max = v[p];
      e.argmax = p;
    }
  }
  return e;
}

double sup_norm(std::span<const double> v, std::span<const unsigned char> mask) {
  double s = 0.0;
  const auto n = static_cast<std::ptrdiff_t>(v.size());
  const bool use_mask = !mask.empty();
  bool nan = false;
#pragma omp parallel for reduction(max : s) reduction(|| : nan) schedule(static)
  for (std::ptrdiff_t p = 0; p < n; ++p) {
    if (use_mask && !mask[p]) continue;
    if (std::isnan(v[p])) nan = true;
    s = std::max(s, std::abs(v[p]));
  }
  return nan ? std::numeric_limits<double>::quiet_NaN() : s;
}

#define PCFLOW_KERNELS(S)                                                                                          \
  template void sigma_field(const MatrixFieldView<S>&, int, std::span<double>);                                   \
  template void sigma_field_reference(const MatrixFieldView<S>&, int, std::span<double>);                         \
  template void sigma_derivative_field(const MatrixFieldView<S>&, const MatrixFieldView<S>&, int,                 \
                                       std::span<double>);                                                        \
  template void sigma_derivative_field_reference(const MatrixFieldView<S>&, const MatrixFieldView<S>&, int,       \
                                                 std::span<double>);                                              \
  template void newton_contraction_field(const MatrixFieldView<S>&, const GradientFieldView<S>&, int,             \
                                         std::span<double>);                                                      \
  template void newton_contraction_field_reference(const MatrixFieldView<S>&, const GradientFieldView<S>&, int,   \
                                                   std::span<double>);                                            \
  template void accumulate_gradient_terms(const MatrixFieldView<S>&, std::span<double>, std::span<double>);       \
  template void accumulate_gradient_terms_reference(const MatrixFieldView<S>&, std::span<double>, std::span<double>);

PCFLOW_KERNELS(double)
PCFLOW_KERNELS(std::complex<double>)

#undef PCFLOW_KERNELS

}  // namespace pcflow::kernels
