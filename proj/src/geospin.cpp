// geodyn - geospin matrix construction and identity residuals.

#include "geodyn/geospin.hpp"

#include <cmath>

namespace geodyn {

GeospinMatrix geospin(const MetricJet& jet, const Christoffel& chr, const Vec& v) {
  const int n = jet.dim();
  if (static_cast<int>(v.size()) != n) throw DimensionMismatch("velocity dimension mismatch");
  GeospinMatrix gm;
  gm.point = jet.point;
  gm.v = v;
  gm.g = jet.g;
  gm.v_low = mat_vec(jet.g, v);

  gm.w_mixed = connection_form(chr, v);

  gm.w_lower = Mat(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += chr.gamma(j, i, k) * gm.v_low[j];
      gm.w_lower(i, k) = s;
    }

  gm.w_star = Mat(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += jet.g(k, i) * gm.w_mixed(j, k);
      gm.w_star(i, j) = s;
    }
  return gm;
}

GeospinMatrix geospin(const MetricSpec& spec, const Vec& point, const Vec& v) {
  MetricJet jet = metric_jet(spec, point);
  return geospin(jet, christoffel(jet), v);
}

GeospinDiagonal diagonal_elements(const GeospinMatrix& gm, const MetricJet& jet,
                                  const Mat& g_inv) {
  const int n = gm.dim();
  GeospinDiagonal out;
  out.diagonal.resize(static_cast<std::size_t>(n));
  out.trace_of_w = 0.0;
  for (int k = 0; k < n; ++k) {
    out.diagonal[k] = gm.w_mixed(k, k);
    out.trace_of_w += gm.w_mixed(k, k);
  }

  out.trace_via_dg = 0.0;
  for (int i = 0; i < n; ++i)
    for (int r = 0; r < n; ++r)
      for (int p = 0; p < n; ++p)
        out.trace_via_dg += 0.5 * g_inv(r, p) * jet.dg(i, r, p) * gm.v[i];

  out.trace_via_wstar = 0.0;
  for (int r = 0; r < n; ++r)
    for (int p = 0; p < n; ++p)
      out.trace_via_wstar += 0.5 * g_inv(r, p) * (gm.w_star(r, p) + gm.w_star(p, r));
  return out;
}

GeometricAcceleration geometric_acceleration(const GeospinMatrix& gm) {
  const int n = gm.dim();
  GeometricAcceleration out;
  out.q.assign(static_cast<std::size_t>(n), 0.0);
  out.q_transpose.assign(static_cast<std::size_t>(n), 0.0);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      out.q[k] += gm.w_mixed(i, k) * gm.v[i];
      out.q_transpose[k] += gm.w_mixed(k, i) * gm.v[i];
    }
  out.invariant_q = 0.0;
  for (int k = 0; k < n; ++k) out.invariant_q += out.q[k] * gm.v_low[k];
  return out;
}

double acceleration_invariant_residual(const GeospinMatrix& gm, const MetricJet& jet) {
  const int n = gm.dim();
  double q_direct = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l)
        q_direct += 0.5 * gm.v[l] * gm.v[j] * gm.v[i] * jet.dg(i, j, l);
  return std::fabs(geometric_acceleration(gm).invariant_q - q_direct);
}

double velocity_gradient_identity_residual(const GeospinMatrix& gm, const MetricJet& jet) {
  const int n = gm.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double lhs = 0.0;
      for (int k = 0; k < n; ++k) lhs += jet.dg(k, i, j) * gm.v[k];
      double rhs = gm.w_star(j, i) + gm.w_star(i, j);
      worst = std::max(worst, std::fabs(lhs - rhs));
    }
  return worst;
}

double contraction_identity_residual(const GeospinMatrix& gm, const MetricJet& jet) {
  const int n = gm.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    double lhs = 0.0;
    for (int k = 0; k < n; ++k) lhs += 2.0 * gm.w_mixed(i, k) * gm.v_low[k];
    double rhs = 0.0;
    for (int l = 0; l < n; ++l)
      for (int j = 0; j < n; ++j) rhs += gm.v[l] * gm.v[j] * jet.dg(i, j, l);
    worst = std::max(worst, std::fabs(lhs - rhs));
  }
  return worst;
}

double covariant_rewrite_residual(const VectorFieldSpec& field, const MetricSpec& spec,
                                  const Vec& point) {
  if (field.dim != spec.dim) throw DimensionMismatch("field dimension mismatch");
  const int n = spec.dim;
  MetricJet jet = metric_jet(spec, point);
  Christoffel chr = christoffel(jet);

  Vec v(static_cast<std::size_t>(n));
  Mat dv(n);
  for (int j = 0; j < n; ++j) {
    Jet2 jj = eval_jet2(*field.components[static_cast<std::size_t>(j)], point);
    v[j] = jj.value;
    for (int i = 0; i < n; ++i) dv(i, j) = jj.grad[i];
  }
  GeospinMatrix gm = geospin(jet, chr, v);

  double worst = 0.0;
  // Vector route: d_k v^j + Gamma^j_kp v^p  vs  d_k v^j + W_k^j.
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) {
      double direct = dv(k, j);
      for (int p = 0; p < n; ++p) direct += chr.gamma(j, k, p) * v[p];
      double rewrite = dv(k, j) + gm.w_mixed(k, j);
      worst = std::max(worst, std::fabs(direct - rewrite));
    }

  // 1-form route on the lowered field: d_k v_j - Gamma^p_kj v_p  vs
  // d_k v_j - W_kj.  d(v_j) needs the metric jet: v_j = g_jl v^l.
  Mat dv_low(n);  // (k,j) = d_k v_j
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int l = 0; l < n; ++l) s += jet.dg(k, j, l) * v[l] + jet.g(j, l) * dv(k, l);
      dv_low(k, j) = s;
    }
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) {
      double direct = dv_low(k, j);
      for (int p = 0; p < n; ++p) direct -= chr.gamma(p, k, j) * gm.v_low[p];
      double rewrite = dv_low(k, j) - gm.w_lower(k, j);
      worst = std::max(worst, std::fabs(direct - rewrite));
    }
  return worst;
}

}  // namespace geodyn
