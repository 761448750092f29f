// geodyn - curvature tensors and identity residuals.

#include "geodyn/curvature.hpp"

#include <cmath>

namespace geodyn {

Tensor4 riemann_mixed(const ChristoffelJet& cj) {
  const int n = cj.chr.dim();
  const Tensor3& gm = cj.chr.gamma;
  const Tensor4& dg = cj.dgamma;
  Tensor4 r(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < i; ++j)
        for (int l = 0; l < n; ++l) {
          double s = dg(i, k, j, l) - dg(j, k, i, l);
          for (int p = 0; p < n; ++p)
            s += gm(k, i, p) * gm(p, j, l) - gm(k, j, p) * gm(p, i, l);
          r(k, i, j, l) = s;
          r(k, j, i, l) = -s;  // antisymmetric pair, diagonal stays 0
        }
  return r;
}

Tensor4 riemann_mixed(const MetricSpec& spec, const Vec& point) {
  return riemann_mixed(christoffel_jet(spec, point));
}

Tensor4 lower_riemann(const Tensor4& mixed, const Mat& g) {
  const int n = mixed.n;
  Tensor4 low(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double s = 0.0;
          for (int p = 0; p < n; ++p) s += g(k, p) * mixed(p, i, j, l);
          low(i, j, k, l) = s;
        }
  return low;
}

CurvaturePack curvature(const MetricSpec& spec, const Vec& point) {
  MetricJet jet = metric_jet(spec, point);
  Mat ginv = inverse_metric(jet.g);
  const int n = jet.dim();

  CurvaturePack pack;
  pack.point = point;
  pack.riemann_mixed = riemann_mixed(christoffel_jet(jet));
  pack.riemann_low = lower_riemann(pack.riemann_mixed, jet.g);

  pack.ricci = Mat(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      double s = 0.0;
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) s += ginv(j, l) * pack.riemann_low(i, j, k, l);
      pack.ricci(i, k) = s;
    }

  pack.ricci_mixed = Mat(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += ginv(j, k) * pack.ricci(i, k);
      pack.ricci_mixed(i, j) = s;
    }

  pack.scalar = 0.0;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) pack.scalar += ginv(j, k) * pack.ricci(j, k);

  pack.ricci_mixed_det = determinant(pack.ricci_mixed);
  pack.ricci_mixed_trace = 0.0;
  for (int i = 0; i < n; ++i) pack.ricci_mixed_trace += pack.ricci_mixed(i, i);
  return pack;
}

double riemann_symmetry_residual(const Tensor4& low) {
  const int n = low.n;
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double r = low(i, j, k, l);
          worst = std::max(worst, std::fabs(r + low(j, i, k, l)));
          worst = std::max(worst, std::fabs(r + low(i, j, l, k)));
          worst = std::max(worst, std::fabs(r - low(k, l, i, j)));
        }
  return worst;
}

double first_bianchi_residual(const Tensor4& mixed) {
  const int n = mixed.n;
  double worst = 0.0;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) {
          double s = mixed(k, i, j, l) + mixed(k, j, l, i) + mixed(k, l, i, j);
          worst = std::max(worst, std::fabs(s));
        }
  return worst;
}

namespace {

double fd_step(double x) {
  static const double cbrt_eps = std::cbrt(2.220446049250313e-16);
  return cbrt_eps * std::max(1.0, std::fabs(x));
}

// nabla_m R^k_ijl given the tensor, its partial derivatives dR(m,·), and Gamma.
double covariant_derivative_riemann(const Tensor4& r, const std::vector<Tensor4>& dr,
                                    const Tensor3& gm, int m, int k, int i, int j, int l) {
  const int n = r.n;
  double s = dr[static_cast<std::size_t>(m)](k, i, j, l);
  for (int p = 0; p < n; ++p) {
    s += gm(k, m, p) * r(p, i, j, l);
    s -= gm(p, m, i) * r(k, p, j, l);
    s -= gm(p, m, j) * r(k, i, p, l);
    s -= gm(p, m, l) * r(k, i, j, p);
  }
  return s;
}

}  // namespace

double second_bianchi_residual(const MetricSpec& spec, const Vec& point) {
  const int n = spec.dim;
  Tensor4 r = riemann_mixed(spec, point);
  Tensor3 gm = christoffel(spec, point).gamma;

  std::vector<Tensor4> dr;
  dr.reserve(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) {
    double h = fd_step(point[m]);
    Vec plus = point, minus = point;
    plus[m] += h;
    minus[m] -= h;
    if (!spec.in_domain(plus) || !spec.in_domain(minus))
      throw StencilOutOfDomain("finite-difference stencil leaves the chart domain");
    Tensor4 rp = riemann_mixed(spec, plus);
    Tensor4 rm = riemann_mixed(spec, minus);
    Tensor4 d(n);
    for (std::size_t idx = 0; idx < d.a.size(); ++idx)
      d.a[idx] = (rp.a[idx] - rm.a[idx]) / (2.0 * h);
    dr.push_back(std::move(d));
  }

  // Cyclic over (m,i,j): derivative index plus the antisymmetric pair.
  double worst = 0.0;
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int m = 0; m < n; ++m)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            double s = covariant_derivative_riemann(r, dr, gm, m, k, i, j, l) +
                       covariant_derivative_riemann(r, dr, gm, i, k, j, m, l) +
                       covariant_derivative_riemann(r, dr, gm, j, k, m, i, l);
            worst = std::max(worst, std::fabs(s));
          }
  return worst;
}

double commutator_curvature_residual(const VectorFieldSpec& field, const MetricSpec& spec,
                                     const Vec& point) {
  if (field.dim != spec.dim) throw DimensionMismatch("field dimension mismatch");
  const int n = spec.dim;
  ChristoffelJet cj = christoffel_jet(spec, point);
  const Tensor3& gm = cj.chr.gamma;
  Tensor4 r = riemann_mixed(cj);

  Vec v(static_cast<std::size_t>(n));
  Mat dv(n);       // dv(i,j) = d_i v^j
  Tensor3 ddv(n);  // ddv(i,j,l) = d_i d_j v^l
  for (int l = 0; l < n; ++l) {
    Jet2 jet = eval_jet2(*field.components[static_cast<std::size_t>(l)], point);
    v[l] = jet.value;
    for (int i = 0; i < n; ++i) {
      dv(i, l) = jet.grad[i];
      for (int j = 0; j < n; ++j) ddv(i, j, l) = jet.hess(i, j);
    }
  }

  // First covariant derivative: N(j,l) = nabla_j v^l.
  Mat N(n);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) {
      double s = dv(j, l);
      for (int k = 0; k < n; ++k) s += gm(l, j, k) * v[k];
      N(j, l) = s;
    }

  // Second: nabla_i N(j,l) = d_i N(j,l) + Gamma^l_ip N(j,p) - Gamma^p_ij N(p,l)
  // with d_i N(j,l) = d_i d_j v^l + dGamma^l_jk v^k + Gamma^l_jk d_i v^k.
  auto second = [&](int i, int j, int l) {
    double s = ddv(i, j, l);
    for (int k = 0; k < n; ++k)
      s += cj.dgamma(i, l, j, k) * v[k] + gm(l, j, k) * dv(i, k);
    for (int p = 0; p < n; ++p) s += gm(l, i, p) * N(j, p) - gm(p, i, j) * N(p, l);
    return s;
  };

  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        double lhs = second(i, j, l) - second(j, i, l);
        double rhs = 0.0;
        for (int k = 0; k < n; ++k) rhs += r(l, i, j, k) * v[k];
        worst = std::max(worst, std::fabs(lhs - rhs));
      }
  return worst;
}

}  // namespace geodyn
