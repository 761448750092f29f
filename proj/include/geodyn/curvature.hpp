// geodyn - Riemann, Ricci, scalar curvature, and Bianchi residuals.
//
// Tensor ordering (canonical throughout the library, docs/conventions.md):
//   riemann_mixed(k,i,j,l) = R^k_ijl
//                          = d_i Gamma^k_jl - d_j Gamma^k_il
//                            + Gamma^k_ip Gamma^p_jl - Gamma^k_jp Gamma^p_il
// so (i,j) is the antisymmetric pair and l the argument index:
// [nabla_i, nabla_j] v^k = R^k_ijl v^l.  Lowering goes into the third slot:
//   riemann_low(i,j,k,l) = g_kp R^p_ijl.

#ifndef GEODYN_CURVATURE_HPP
#define GEODYN_CURVATURE_HPP

#include "geodyn/connection.hpp"
#include "geodyn/metric.hpp"

namespace geodyn {

struct CurvaturePack {
  Vec point;
  Tensor4 riemann_mixed;  // (k,i,j,l) = R^k_ijl
  Tensor4 riemann_low;    // (i,j,k,l) = R_ijkl
  Mat ricci;              // R_ik = g^{jl} R_ijkl
  Mat ricci_mixed;        // R_i^j = g^{jk} R_ik
  double scalar = 0.0;    // g^{jk} R_jk
  double ricci_mixed_det = 0.0;
  double ricci_mixed_trace = 0.0;
  int dim() const { return ricci.n; }
};

// dGamma is taken from the analytic Christoffel jet, not finite differences.
Tensor4 riemann_mixed(const ChristoffelJet& cj);
Tensor4 riemann_mixed(const MetricSpec& spec, const Vec& point);

Tensor4 lower_riemann(const Tensor4& mixed, const Mat& g);

CurvaturePack curvature(const MetricSpec& spec, const Vec& point);

// Max violation of R_ijkl = -R_jikl = -R_ijlk = R_klij over all entries.
double riemann_symmetry_residual(const Tensor4& low);

// max_k |R^k_ijl + R^k_jli + R^k_lij| over all (i,j,l).
double first_bianchi_residual(const Tensor4& mixed);

// Cyclic sum of covariant derivatives of R (dR by central finite differences
// of riemann_mixed, step eps^{1/3} scaled per coordinate).  Throws
// StencilOutOfDomain if a stencil point violates a guard.
double second_bianchi_residual(const MetricSpec& spec, const Vec& point);

// Max-abs difference of nabla_i nabla_j v^l - nabla_j nabla_i v^l and
// R^l_ijk v^k, both sides assembled independently.
double commutator_curvature_residual(const VectorFieldSpec& field, const MetricSpec& spec,
                                     const Vec& point);

}  // namespace geodyn

#endif
