#pragma once

// Complex-Hessian calculus on flat complex tori (real axes x1, y1, x2, y2)
// and the shrinking-sphere testbed for the trace evolution along
// Kaehler-Ricci flow.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "pcflow/kernels.hpp"
#include "pcflow/residual.hpp"
#include "pcflow/sphere.hpp"
#include "pcflow/torus.hpp"

namespace pcflow {

/// Packed upper triangle of u_{a b'}.
struct HermitianHessianField {
  TorusGrid grid;
  int m = 1;
  std::vector<std::vector<std::complex<double>>> comps;

  kernels::HermFieldView view() const;
  HermMatrix at(std::size_t p) const { return view().at(p); }
  /// sum_a u_{a a'}, real.
  ScalarField trace() const;
};

/// u_{a b'} = 1/4 [(u_{x_a x_b} + u_{y_a y_b}) + i (u_{x_a y_b} - u_{y_a x_b})].
/// The grid dimension must be 2m with m in {1, 2}.
HermitianHessianField complex_hessian(const ScalarField& f);
HermitianHessianField complex_hessian(const TorusSpectrum& s);

/// (d_t - Delta) sigma_2(A) + |grad sigma_1|^2 - sum_i trace(d_i A d_i A), real
/// gradients and real Laplacian, d_t A = complex Hessian of Delta u. m = 2 only.
ResidualField kahler_sigma2_residual(const ScalarField& f);

struct Non1FieldCheck {
  bool ok = true;
  std::vector<double> flat_values;  // zero-curvature contraction at each sample
  std::vector<double> cp_values;    // same Hessians on CP^m(c = 1)
};

/// Evaluates condition (non1) at `samples` evenly spaced nodes.
Non1FieldCheck condition_non1_field_check(const ScalarField& f, int samples);

struct ShrinkingOptions {
  double dt = 0.01;
  int steps = 20;
  double rate = 2.0;  // g(t) = (1 - rate t) g_0
  double horizon = 0.25;
};

struct AdjudicationStep {
  double t = 0.0;
  double sup_r0 = 0.0;
  double sup_r1 = 0.0;
  double sup_sigma1 = 0.0;
  std::string verdict;
};

struct AdjudicationReport {
  double rate = 2.0;
  std::vector<AdjudicationStep> steps;
  /// Common verdict of every step, or "mixed".
  std::string verdict;
};

/// Thresholds for calling a residual zero or clearly nonzero.
inline constexpr double kAdjudicationZero = 1e-6;
inline constexpr double kAdjudicationNonzero = 1e-2;

std::string classify(double sup_r0, double sup_r1, double sup_sigma1);

/// u(t) = heat_0(u_0, tau(t)), tau = -log(1 - rate t) / rate. Reports
/// r0 = (d_t - Delta_g(t)) sigma_1 and r1 = r0 - rho^{ij} u_ij with
/// rho = -d_t g, at t = i dt, i = 0..steps. Throws past the horizon.
AdjudicationReport shrinking_sigma1_adjudication(const SphericalSpectrum& u0, const ShrinkingOptions& opts);

/// Conformal time of the shrinking flow.
double conformal_time(double t, double rate);

/// Observed order of explicit Euler for u_t = s(t)^-1 Delta_0 u against the
/// conformal-time solution at time T, from step counts n and 2n.
double shrinking_euler_order(const SphericalSpectrum& u0, double t_end, int n, double rate);

}  // namespace pcflow
