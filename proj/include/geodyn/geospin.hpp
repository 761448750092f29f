// geodyn - geospin matrix and the identities tying it to the metric.
//
// For a velocity v at a point, the geospin matrix is the connection form
// evaluated on v:  w_mixed(i,j) = W_i^j = Gamma^j_ik v^k.  Two companions:
//   w_lower(i,k) = Gamma^j_ik v_j   (symmetric in i,k for Levi-Civita)
//   w_star(i,j)  = g_ki W_j^k       (stored exactly as written: row i from
//                                    the metric, column j from W)
// Only the symmetric part of w_star enters any identity checked here.

#ifndef GEODYN_GEOSPIN_HPP
#define GEODYN_GEOSPIN_HPP

#include "geodyn/connection.hpp"
#include "geodyn/metric.hpp"

namespace geodyn {

struct GeospinMatrix {
  Vec point;
  Vec v;        // contravariant velocity
  Vec v_low;    // v_k = g_kl v^l
  Mat g;
  Mat w_mixed;  // (i,j) = W_i^j
  Mat w_lower;  // (i,k) = W_ik
  Mat w_star;   // (i,j) = W*_ij
  int dim() const { return g.n; }
};

GeospinMatrix geospin(const MetricSpec& spec, const Vec& point, const Vec& v);
GeospinMatrix geospin(const MetricJet& jet, const Christoffel& chr, const Vec& v);

// Diagonal of W plus the two trace routes that the diagonal sums to:
// trace_via_dg = 1/2 g^{rp} d_i g_rp v^i, trace_via_wstar = the same through
// the symmetric part of W*.
struct GeospinDiagonal {
  Vec diagonal;           // W_k^k entrywise, no sum
  double trace_of_w;      // sum of diagonal
  double trace_via_dg;
  double trace_via_wstar;
};
GeospinDiagonal diagonal_elements(const GeospinMatrix& gm, const MetricJet& jet,
                                  const Mat& g_inv);

// q^k = W_i^k v^i (the contraction that matches -dv^k/dt on geodesics) and
// the invariant Q = q^k v_k.  q_transpose is the other contraction
// W_k^j v^j, reported alongside; the two coincide only when W is symmetric.
struct GeometricAcceleration {
  Vec q;
  Vec q_transpose;
  double invariant_q;  // Q = q^k v_k
};
GeometricAcceleration geometric_acceleration(const GeospinMatrix& gm);

// |Q - 1/2 v^l v^j v^i d_i g_jl|, the independent route to the invariant.
double acceleration_invariant_residual(const GeospinMatrix& gm, const MetricJet& jet);

// max_{i,j} |d_k g_ij v^k - (W*_ji + W*_ij)|
double velocity_gradient_identity_residual(const GeospinMatrix& gm, const MetricJet& jet);

// max_i |2 W_i^k v_k - v^l v^j d_i g_jl|
double contraction_identity_residual(const GeospinMatrix& gm, const MetricJet& jet);

// Compares nabla_k v^j assembled from Gamma directly against the geospin
// rewrite d_k v^j + W_k^j (W built from the field's own value), and the
// 1-form variant d_k v_j - W_kj.  Two code paths, algebraically identical.
double covariant_rewrite_residual(const VectorFieldSpec& field, const MetricSpec& spec,
                                  const Vec& point);

}  // namespace geodyn

#endif
