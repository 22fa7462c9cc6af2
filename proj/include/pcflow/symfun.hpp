#pragma once

// Elementary symmetric functions and Newton transformations of small
// self-adjoint matrices (real symmetric or complex Hermitian).

#include <array>
#include <complex>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace pcflow {

inline constexpr int kMaxMatrixDim = 8;

template <class Scalar>
struct is_complex : std::false_type {};
template <class T>
struct is_complex<std::complex<T>> : std::true_type {};

inline double conj_of(double x) { return x; }
inline std::complex<double> conj_of(std::complex<double> z) { return std::conj(z); }
inline double real_of(double x) { return x; }
inline double real_of(std::complex<double> z) { return z.real(); }

/// Dense n x n matrix with inline storage, n <= kMaxMatrixDim.
template <class Scalar>
class SmallMatrix {
 public:
  SmallMatrix() = default;
  explicit SmallMatrix(int n) : n_(n) {
    if (n < 0 || n > kMaxMatrixDim) throw std::invalid_argument("SmallMatrix: dimension out of range");
  }

  static SmallMatrix identity(int n) {
    SmallMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = Scalar(1);
    return m;
  }

  int dim() const { return n_; }
  Scalar& operator()(int i, int j) { return a_[i * kMaxMatrixDim + j]; }
  const Scalar& operator()(int i, int j) const { return a_[i * kMaxMatrixDim + j]; }

  Scalar trace() const {
    Scalar s{};
    for (int i = 0; i < n_; ++i) s += (*this)(i, i);
    return s;
  }

  SmallMatrix& operator+=(const SmallMatrix& o) {
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) (*this)(i, j) += o(i, j);
    return *this;
  }
  SmallMatrix& operator-=(const SmallMatrix& o) {
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) (*this)(i, j) -= o(i, j);
    return *this;
  }
  SmallMatrix& operator*=(Scalar s) {
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) (*this)(i, j) *= s;
    return *this;
  }

  friend SmallMatrix operator+(SmallMatrix a, const SmallMatrix& b) { return a += b; }
  friend SmallMatrix operator-(SmallMatrix a, const SmallMatrix& b) { return a -= b; }
  friend SmallMatrix operator*(SmallMatrix a, Scalar s) { return a *= s; }
  friend SmallMatrix operator*(Scalar s, SmallMatrix a) { return a *= s; }

  friend SmallMatrix operator*(const SmallMatrix& a, const SmallMatrix& b) {
    SmallMatrix c(a.n_);
    for (int i = 0; i < a.n_; ++i)
      for (int k = 0; k < a.n_; ++k) {
        const Scalar aik = a(i, k);
        for (int j = 0; j < a.n_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  SmallMatrix adjoint() const {
    SmallMatrix t(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) t(i, j) = conj_of((*this)(j, i));
    return t;
  }

  /// Sum of |a_ij|^2.
  double frobenius_norm2() const {
    double s = 0.0;
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) s += std::norm((*this)(i, j));
    return s;
  }

 private:
  int n_ = 0;
  std::array<Scalar, kMaxMatrixDim * kMaxMatrixDim> a_{};
};

/// Real symmetric (Scalar = double) or complex Hermitian matrix. The
/// self-adjointness invariant is exact: every mutator writes both halves.
template <class Scalar>
class SelfAdjointMatrix {
 public:
  static constexpr bool kComplex = is_complex<Scalar>::value;
  static constexpr int kMinDim = kComplex ? 1 : 2;
  static constexpr int kMaxDim = kComplex ? 4 : kMaxMatrixDim;

  SelfAdjointMatrix() = default;
  explicit SelfAdjointMatrix(int n) : m_(check_dim(n)) {}

  static SelfAdjointMatrix identity(int n) {
    SelfAdjointMatrix a(n);
    for (int i = 0; i < n; ++i) a.set(i, i, Scalar(1));
    return a;
  }

  static SelfAdjointMatrix diagonal(const std::vector<double>& d) {
    SelfAdjointMatrix a(static_cast<int>(d.size()));
    for (int i = 0; i < a.dim(); ++i) a.set(i, i, Scalar(d[i]));
    return a;
  }

  /// Validates exact self-adjointness of a full matrix.
  static SelfAdjointMatrix from_matrix(const SmallMatrix<Scalar>& m) {
    SelfAdjointMatrix a(m.dim());
    for (int i = 0; i < m.dim(); ++i)
      for (int j = 0; j < m.dim(); ++j)
        if (m(i, j) != conj_of(m(j, i)))
          throw std::invalid_argument("SelfAdjointMatrix: input is not self-adjoint");
    a.m_ = m;
    return a;
  }

  /// Averages the matrix with its adjoint.
  static SelfAdjointMatrix symmetrized(const SmallMatrix<Scalar>& m) {
    SelfAdjointMatrix a(m.dim());
    for (int i = 0; i < m.dim(); ++i) {
      a.m_(i, i) = Scalar(real_of(m(i, i)));
      for (int j = i + 1; j < m.dim(); ++j) a.set(i, j, 0.5 * (m(i, j) + conj_of(m(j, i))));
    }
    return a;
  }

  int dim() const { return m_.dim(); }
  const Scalar& operator()(int i, int j) const { return m_(i, j); }

  /// Writes entry (i,j) and its mirror conj(v) at (j,i).
  void set(int i, int j, Scalar v) {
    if (i == j) {
      if constexpr (kComplex)
        if (v.imag() != 0.0) throw std::invalid_argument("HermMatrix: diagonal entries must be real");
      m_(i, i) = v;
    } else {
      m_(i, j) = v;
      m_(j, i) = conj_of(v);
    }
  }

  const SmallMatrix<Scalar>& matrix() const { return m_; }
  double frobenius_norm2() const { return m_.frobenius_norm2(); }
  double trace() const { return real_of(m_.trace()); }

  SelfAdjointMatrix scaled(double s) const {
    SelfAdjointMatrix a = *this;
    a.m_ *= Scalar(s);
    return a;
  }

 private:
  static SmallMatrix<Scalar> check_dim(int n) {
    if (n < kMinDim || n > kMaxDim) throw std::invalid_argument("SelfAdjointMatrix: dimension out of range");
    return SmallMatrix<Scalar>(n);
  }

  SmallMatrix<Scalar> m_;
};

using SymMatrix = SelfAdjointMatrix<double>;
using HermMatrix = SelfAdjointMatrix<std::complex<double>>;

/// values[k-1] = sigma_k(A), k = 1..n.
struct SigmaVector {
  std::vector<double> values;
  double operator[](int k) const { return k == 0 ? 1.0 : values.at(k - 1); }
};

// The functions below are instantiated for SymMatrix and HermMatrix.

/// sigma_k(A), sigma_0 = 1. Computed from the Newton-transform recursion
/// sigma_j = trace(A T_{j-1}) / j, never from eigenvalues.
template <class Scalar>
double elementary_symmetric(const SelfAdjointMatrix<Scalar>& a, int k);

template <class Scalar>
SigmaVector sigma_vector(const SelfAdjointMatrix<Scalar>& a);

/// T_k(A) = sigma_k I - sigma_{k-1} A + ... + (-1)^k A^k via T_k = sigma_k I - T_{k-1} A.
template <class Scalar>
SelfAdjointMatrix<Scalar> newton_transform(const SelfAdjointMatrix<Scalar>& a, int k);

/// trace(T_{k-1}(A) B) = d/ds sigma_k(A + sB) at s = 0.
template <class Scalar>
double sigma_directional_derivative(const SelfAdjointMatrix<Scalar>& a, const SelfAdjointMatrix<Scalar>& b, int k);

/// Derivative of T_k along dA: dT_k = (d sigma_k) I - dT_{k-1} A - T_{k-1} dA,
/// with d sigma_k = trace(T_{k-1} dA).
template <class Scalar>
SmallMatrix<Scalar> newton_transform_derivative(const SelfAdjointMatrix<Scalar>& a,
                                                const SelfAdjointMatrix<Scalar>& da, int k);

/// sigma_j(A) > eps for every j = 1..k.
template <class Scalar>
bool garding_membership(const SelfAdjointMatrix<Scalar>& a, int k, double eps = 0.0);

/// Real part of trace(X Y) for self-adjoint X, Y.
template <class Scalar>
double trace_product(const SelfAdjointMatrix<Scalar>& x, const SelfAdjointMatrix<Scalar>& y);

}  // namespace pcflow
