// geodyn - small dense linear algebra (no external dependency).
//
// Matrices are square row-major doubles; dimensions here are chart
// dimensions (2..4 typically), so everything is plain O(n^3) with partial
// pivoting.  Tensor3/Tensor4 are flat index helpers for connection and
// curvature coefficients.

#ifndef GEODYN_LINALG_HPP
#define GEODYN_LINALG_HPP

#include <cmath>
#include <cstddef>
#include <vector>

#include "geodyn/errors.hpp"

namespace geodyn {

using Vec = std::vector<double>;

struct Mat {
  int n = 0;
  std::vector<double> a;

  Mat() = default;
  explicit Mat(int dim) : n(dim), a(static_cast<std::size_t>(dim) * dim, 0.0) {}
  static Mat identity(int dim) {
    Mat m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
};

inline Mat operator+(const Mat& x, const Mat& y) {
  Mat r(x.n);
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.a[i] + y.a[i];
  return r;
}

inline Mat operator-(const Mat& x, const Mat& y) {
  Mat r(x.n);
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.a[i] - y.a[i];
  return r;
}

inline Mat operator*(double s, const Mat& x) {
  Mat r(x.n);
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = s * x.a[i];
  return r;
}

inline Mat mat_mul(const Mat& x, const Mat& y) {
  Mat r(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int k = 0; k < x.n; ++k) {
      double xik = x(i, k);
      if (xik == 0.0) continue;
      for (int j = 0; j < x.n; ++j) r(i, j) += xik * y(k, j);
    }
  return r;
}

inline Vec mat_vec(const Mat& m, const Vec& v) {
  Vec r(static_cast<std::size_t>(m.n), 0.0);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) r[i] += m(i, j) * v[j];
  return r;
}

inline double max_abs(const Mat& m) {
  double r = 0.0;
  for (double x : m.a) r = std::max(r, std::fabs(x));
  return r;
}

inline double max_abs(const Vec& v) {
  double r = 0.0;
  for (double x : v) r = std::max(r, std::fabs(x));
  return r;
}

// Infinity norm (max absolute row sum).
inline double norm_inf(const Mat& m) {
  double r = 0.0;
  for (int i = 0; i < m.n; ++i) {
    double s = 0.0;
    for (int j = 0; j < m.n; ++j) s += std::fabs(m(i, j));
    r = std::max(r, s);
  }
  return r;
}

namespace detail {

// LU decomposition with partial pivoting; returns false on exact singularity.
// lu holds L (unit diagonal, below) and U (diagonal and above); perm_sign is
// the permutation parity for the determinant.
inline bool lu_decompose(Mat& lu, std::vector<int>& piv, double& perm_sign) {
  const int n = lu.n;
  piv.resize(static_cast<std::size_t>(n));
  perm_sign = 1.0;
  for (int i = 0; i < n; ++i) piv[i] = i;
  for (int c = 0; c < n; ++c) {
    int p = c;
    double best = std::fabs(lu(c, c));
    for (int r = c + 1; r < n; ++r)
      if (std::fabs(lu(r, c)) > best) {
        best = std::fabs(lu(r, c));
        p = r;
      }
    if (best == 0.0) return false;
    if (p != c) {
      for (int j = 0; j < n; ++j) std::swap(lu(p, j), lu(c, j));
      std::swap(piv[p], piv[c]);
      perm_sign = -perm_sign;
    }
    for (int r = c + 1; r < n; ++r) {
      lu(r, c) /= lu(c, c);
      for (int j = c + 1; j < n; ++j) lu(r, j) -= lu(r, c) * lu(c, j);
    }
  }
  return true;
}

}  // namespace detail

inline double determinant(const Mat& m) {
  Mat lu = m;
  std::vector<int> piv;
  double sign = 0.0;
  if (!detail::lu_decompose(lu, piv, sign)) return 0.0;
  double d = sign;
  for (int i = 0; i < m.n; ++i) d *= lu(i, i);
  return d;
}

// Plain LU inverse; callers wanting the metric degeneracy policy should use
// inverse_metric() from metric.hpp instead.
inline Mat inverse(const Mat& m) {
  const int n = m.n;
  Mat lu = m;
  std::vector<int> piv;
  double sign = 0.0;
  if (!detail::lu_decompose(lu, piv, sign)) throw DegenerateMetric(0.0);
  Mat inv(n);
  Vec col(static_cast<std::size_t>(n));
  for (int rhs = 0; rhs < n; ++rhs) {
    for (int i = 0; i < n; ++i) col[i] = piv[i] == rhs ? 1.0 : 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < i; ++j) col[i] -= lu(i, j) * col[j];
    for (int i = n - 1; i >= 0; --i) {
      for (int j = i + 1; j < n; ++j) col[i] -= lu(i, j) * col[j];
      col[i] /= lu(i, i);
    }
    for (int i = 0; i < n; ++i) inv(i, rhs) = col[i];
  }
  return inv;
}

struct Tensor3 {
  int n = 0;
  std::vector<double> a;
  Tensor3() = default;
  explicit Tensor3(int dim)
      : n(dim), a(static_cast<std::size_t>(dim) * dim * dim, 0.0) {}
  double& operator()(int i, int j, int k) {
    return a[(static_cast<std::size_t>(i) * n + j) * n + k];
  }
  double operator()(int i, int j, int k) const {
    return a[(static_cast<std::size_t>(i) * n + j) * n + k];
  }
};

struct Tensor4 {
  int n = 0;
  std::vector<double> a;
  Tensor4() = default;
  explicit Tensor4(int dim)
      : n(dim), a(static_cast<std::size_t>(dim) * dim * dim * dim, 0.0) {}
  double& operator()(int i, int j, int k, int l) {
    return a[((static_cast<std::size_t>(i) * n + j) * n + k) * n + l];
  }
  double operator()(int i, int j, int k, int l) const {
    return a[((static_cast<std::size_t>(i) * n + j) * n + k) * n + l];
  }
};

inline double max_abs(const Tensor3& t) {
  double r = 0.0;
  for (double x : t.a) r = std::max(r, std::fabs(x));
  return r;
}

inline double max_abs(const Tensor4& t) {
  double r = 0.0;
  for (double x : t.a) r = std::max(r, std::fabs(x));
  return r;
}

}  // namespace geodyn

#endif
