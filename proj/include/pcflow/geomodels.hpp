#pragma once

// Constant-curvature model geometries and the curvature-condition
// contractions evaluated on them.

#include <array>
#include <string>
#include <variant>
#include <vector>

#include "pcflow/symfun.hpp"

namespace pcflow {

struct FlatTorus {
  int n = 2;
  std::vector<double> side_lengths;
};
struct RoundSphere2 {
  double radius = 1.0;
};
struct ShrinkingSphere {
  double radius0 = 1.0;
};
struct FlatComplexTorus {
  int m = 2;
  std::vector<double> side_lengths;
};
/// Round S^n with sectional curvature kappa; algebraic only.
struct ModelSn {
  int n = 2;
  double kappa = 1.0;
};
/// CP^n with Fubini-Study holomorphic curvature scale c; algebraic only.
struct ModelCPn {
  int n = 1;
  double c = 1.0;
};

using GeometryModel = std::variant<FlatTorus, RoundSphere2, ShrinkingSphere, FlatComplexTorus, ModelSn, ModelCPn>;

/// Throws std::invalid_argument if a positivity invariant is violated.
void validate(const GeometryModel& g);
std::string geometry_name(const GeometryModel& g);

/// Riemann tensor of S^n(kappa) in an orthonormal frame:
///   R_{ikjl} = kappa (g_ij g_kl - g_il g_kj),
/// so that R_{ikil} summed over i is the Ricci tensor (n-1) kappa g_kl and
/// sectional curvatures are +kappa.
class SphereCurvature {
 public:
  explicit SphereCurvature(const ModelSn& space);

  int dim() const { return n_; }
  double kappa() const { return kappa_; }
  double riemann(int i, int k, int j, int l) const;
  /// Contraction sum_i R_{ikil}.
  double ricci(int k, int l) const;

 private:
  int n_;
  double kappa_;
};

/// Curvature of a constant holomorphic sectional curvature Kaehler space in
/// a unitary frame: R_{a b' c d'} = c (g_{ab'} g_{cd'} + g_{ad'} g_{cb'}).
/// c = 0 is the flat complex torus.
class KahlerCurvature {
 public:
  explicit KahlerCurvature(const ModelCPn& space);
  static KahlerCurvature flat(int m);

  int dim() const { return m_; }
  double c() const { return c_; }
  double riemann(int a, int b, int c, int d) const;
  /// Contraction sum_c R_{a b' c c'}.
  double ricci(int a, int b) const;

 private:
  KahlerCurvature(int m, double c) : m_(m), c_(c) {}
  int m_;
  double c_;
};

/// -2 u_ij R_ikjl u_kl + 2 u_ij R_jl u_il, summed over every index tuple.
double condition_non2_value(const SymMatrix& a, const ModelSn& space);
/// kappa (2n |A|^2 - 2 sigma_1^2).
double condition_non2_closed_form(const SymMatrix& a, const ModelSn& space);

/// -u_{b a'} R_{a b' c d'} u_{c' d} + u_{b a'} R_{a s'} u_{s b'}, brute force.
double condition_non1_value(const HermMatrix& a, const KahlerCurvature& curvature);
double condition_non1_value(const HermMatrix& a, const ModelCPn& space);
/// c (n |A|^2 - (trace A)^2).
double condition_non1_closed_form(const HermMatrix& a, const ModelCPn& space);

/// |brute force - closed form|.
double closed_form_gap(const SymMatrix& a, const ModelSn& space);
double closed_form_gap(const HermMatrix& a, const ModelCPn& space);

}  // namespace pcflow
