#pragma once

// Covariant tensor fields on S^2(r) in (theta, phi) coordinates. Each
// component at each node carries a jet, so repeated covariant derivatives
// stay exact for band-limited input.

#include <vector>

#include "pcflow/jet.hpp"
#include "pcflow/sphere.hpp"
#include "pcflow/symfun.hpp"

namespace pcflow {

struct CovariantTensorField {
  SphereGrid grid;
  int rank = 0;
  std::vector<Jet> comps;  // node-major; component index sum_s i_s 2^(rank-1-s)

  int components() const { return 1 << rank; }
  const Jet& at(std::size_t node, int comp) const { return comps[node * components() + comp]; }
  Jet& at(std::size_t node, int comp) { return comps[node * components() + comp]; }
  /// Remaining jet order (uniform over the field).
  int order() const { return comps.empty() ? 0 : comps.front().order; }
};

/// u as a rank-0 field with jets of the given order.
CovariantTensorField scalar_tensor(const SphericalSpectrum& s, int order = 4);
/// g = r^2 (d theta^2 + sin^2 theta d phi^2).
CovariantTensorField metric_tensor(const SphereGrid& g, int order);

/// Appends the derivative index last: (nabla T)_{i_1..i_r k}. Accepts rank <= 3.
CovariantTensorField covariant_derivative(const CovariantTensorField& t);
/// Hess u = nabla nabla u.
CovariantTensorField covariant_hessian(const SphericalSpectrum& s, int order = 4);
/// g^{kl} nabla_k nabla_l T for rank <= 2.
CovariantTensorField rough_laplacian(const CovariantTensorField& t);
/// g^{ij} T_ij as node values.
SphereField metric_trace(const CovariantTensorField& t);

/// Orthonormal-frame value T(e_i1, ..., e_ir) at a node, e_theta = d_theta / r,
/// e_phi = d_phi / (r sin theta).
double frame_component(const CovariantTensorField& t, std::size_t node, int comp);
/// Rank-2 field in the orthonormal frame, symmetrised.
SymMatrix frame_matrix(const CovariantTensorField& t, std::size_t node);

}  // namespace pcflow
