#pragma once

// Evolution identities of the Hessian on the fixed round sphere S^2(r).

#include "pcflow/monitor.hpp"
#include "pcflow/residual.hpp"
#include "pcflow/sphere.hpp"

namespace pcflow {

struct SphereResidual {
  ResidualField field;     // per node; the largest-magnitude frame component for tensor identities
  double scale = 0.0;      // sup of the frame Hessian, for relative comparisons
  bool truncated = false;  // input degree above the resolved budget
};

/// Hess(Delta u) - [rough Laplacian of Hess u + 2 R_{ikjl} u_kl - R_il u_jl - R_jl u_il],
/// frame components. `flipped` swaps in the index placement R_{kijl}, which
/// reverses the sign of the Riemann contraction.
SphereResidual commutation_residual(const SphericalSpectrum& u, bool flipped = false);

/// (d_t - Delta) sigma_1 with d_t sigma_1 = trace Hess(Delta u).
SphereResidual sphere_sigma1_residual(const SphericalSpectrum& u);

/// (d_t - Delta) sigma_2 - [-|grad sigma_1|^2 + |grad A|^2 - 2 u_ij R_ikjl u_kl + 2 u_ij R_jl u_il]
/// with d_t A = Hess(Delta u) and Delta sigma_2 taken spectrally.
SphereResidual riemannian_sigma2_residual(const SphericalSpectrum& u);

/// sup over nodes of |frame curvature contraction - kappa (4 |A|^2 - 2 sigma_1^2)|.
double sphere_curvature_term_gap(const SphericalSpectrum& u);

/// sigma_2 of the frame Hessian at every node.
SphereField sphere_sigma2_field(const SphericalSpectrum& u);

struct SphereFlowOptions {
  double dt = 1e-3;
  int steps = 100;
  MonitorSet monitors;
};

/// Rows at t = i dt, i = 0..steps (none for steps = 0). Supported monitors:
/// sigma1, sigma2, res_sigma1, res_sigma2.
MonitorSeries sphere_run_flow(const SphericalSpectrum& u0, const SphereFlowOptions& opts);

}  // namespace pcflow
