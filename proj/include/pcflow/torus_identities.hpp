#pragma once

// Hessian fields on the flat torus and residuals of the flat-space
// evolution identities for sigma_k of the Hessian under the heat flow.

#include <optional>
#include <vector>

#include "pcflow/kernels.hpp"
#include "pcflow/residual.hpp"
#include "pcflow/torus.hpp"

namespace pcflow {

/// Packed upper-triangle second derivatives u_ij.
struct HessianField {
  TorusGrid grid;
  std::vector<std::vector<double>> comps;

  static HessianField from_spectrum(const TorusSpectrum& s);
  kernels::SymFieldView view() const;
  SymMatrix at(std::size_t p) const { return view().at(p); }
  ScalarField trace() const;
};

/// Third derivatives u_ijk (fully symmetric), exposed per axis as d_i A.
struct ThirdDerivativeField {
  TorusGrid grid;
  std::vector<std::vector<double>> comps;  // one per sorted triple a <= b <= c

  static ThirdDerivativeField from_spectrum(const TorusSpectrum& s);
  kernels::SymGradientView view() const;
  double component(int a, int b, int c, std::size_t p) const;
};

/// sigma_k of the Hessian at every node.
ScalarField sigma_field(const ScalarField& f, int k);

/// (d_t - Delta) sigma_1 with d_t sigma_1 = trace(Delta A).
ResidualField residual_sigma1(const ScalarField& f);

/// sum_i trace(d_i T_{k-1}(A) d_i A).
ScalarField newton_gradient_contraction(const ScalarField& f, int k);

/// (d_t - Delta) sigma_k + sum_i trace(d_i T_{k-1}(A) d_i A), with
/// d_t sigma_k = trace(T_{k-1}(A) Delta A). Products are evaluated on a
/// padded grid wide enough to hold sigma_k without aliasing.
ResidualField residual_sigma_k(const ScalarField& f, int k);

struct QuotientResult {
  bool mask_empty = true;
  double delta = 0.0;
  ScalarField F;                    // sigma_1^2 / 2
  ScalarField H;                    // sigma_2 / F on the mask, 0 elsewhere
  ResidualField assembled;          // G from the quotient rule, masked
  ResidualField reduced;            // L sigma_2 / F + sigma_2 |grad sigma_1|^2 / F^2, masked
  double min_g = 0.0;
  double min_h = 0.0;
  double reduced_gap = 0.0;         // sup over mask of |assembled - reduced|
};

/// G = (d_t - Delta) H - 2 <grad H, grad F> / F on {sigma_1 > delta}. The sign
/// of G is reported, not assumed. An empty mask yields mask_empty = true.
QuotientResult quotient_residual(const ScalarField& f, double delta);

/// Default quotient threshold: 1e-3 * max sigma_1.
double default_quotient_delta(const ScalarField& f);

}  // namespace pcflow
