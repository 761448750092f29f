// geodyn - second-order forward-mode jets.
//
// A Jet2 carries a value together with its exact gradient and Hessian with
// respect to the n chart coordinates.  Arithmetic propagates both orders at
// once (the collapsed form of evaluating with nested dual numbers), so
// metric derivatives feeding the connection and curvature are exact to
// machine precision rather than finite-differenced.
//
// The Hessian is stored dense n*n and is kept symmetric by construction:
// every rule below writes h(k,l) and h(l,k) from the same expression.

#ifndef GEODYN_JET_HPP
#define GEODYN_JET_HPP

#include <cmath>
#include <cstddef>
#include <vector>

#include "geodyn/errors.hpp"
#include "geodyn/linalg.hpp"

namespace geodyn {

struct Jet2 {
  double value = 0.0;
  Vec grad;   // n entries, d/dx^k
  Mat hess;   // n*n entries, d2/dx^k dx^l

  Jet2() = default;
  explicit Jet2(int n) : grad(static_cast<std::size_t>(n), 0.0), hess(n) {}

  int dim() const { return static_cast<int>(grad.size()); }

  static Jet2 constant(double c, int n) {
    Jet2 j(n);
    j.value = c;
    return j;
  }

  // Coordinate seed: value x, unit gradient in slot k.
  static Jet2 variable(double x, int k, int n) {
    Jet2 j(n);
    j.value = x;
    j.grad[static_cast<std::size_t>(k)] = 1.0;
    return j;
  }

  bool is_constant() const {
    for (double g : grad)
      if (g != 0.0) return false;
    for (double h : hess.a)
      if (h != 0.0) return false;
    return true;
  }
};

inline Jet2 operator+(const Jet2& a, const Jet2& b) {
  Jet2 r(a.dim());
  r.value = a.value + b.value;
  for (int k = 0; k < r.dim(); ++k) r.grad[k] = a.grad[k] + b.grad[k];
  for (std::size_t i = 0; i < r.hess.a.size(); ++i) r.hess.a[i] = a.hess.a[i] + b.hess.a[i];
  return r;
}

inline Jet2 operator-(const Jet2& a, const Jet2& b) {
  Jet2 r(a.dim());
  r.value = a.value - b.value;
  for (int k = 0; k < r.dim(); ++k) r.grad[k] = a.grad[k] - b.grad[k];
  for (std::size_t i = 0; i < r.hess.a.size(); ++i) r.hess.a[i] = a.hess.a[i] - b.hess.a[i];
  return r;
}

inline Jet2 operator-(const Jet2& a) {
  Jet2 r(a.dim());
  r.value = -a.value;
  for (int k = 0; k < r.dim(); ++k) r.grad[k] = -a.grad[k];
  for (std::size_t i = 0; i < r.hess.a.size(); ++i) r.hess.a[i] = -a.hess.a[i];
  return r;
}

// Product rule at both orders:
//   (fg)'  = f'g + fg'
//   (fg)'' = f''g + f'g' + g'f' + fg''
inline Jet2 operator*(const Jet2& a, const Jet2& b) {
  const int n = a.dim();
  Jet2 r(n);
  r.value = a.value * b.value;
  for (int k = 0; k < n; ++k) r.grad[k] = a.grad[k] * b.value + a.value * b.grad[k];
  for (int k = 0; k < n; ++k)
    for (int l = k; l < n; ++l) {
      double h = a.hess(k, l) * b.value + a.value * b.hess(k, l) +
                 a.grad[k] * b.grad[l] + a.grad[l] * b.grad[k];
      r.hess(k, l) = h;
      r.hess(l, k) = h;
    }
  return r;
}

// Chain rule for a scalar function given f(x), f'(x), f''(x) at a.value.
inline Jet2 jet_chain(const Jet2& a, double f0, double f1, double f2) {
  const int n = a.dim();
  // Constants short-circuit so that e.g. sqrt(4) never touches f1/f2.
  if (a.is_constant()) return Jet2::constant(f0, n);
  Jet2 r(n);
  r.value = f0;
  for (int k = 0; k < n; ++k) r.grad[k] = f1 * a.grad[k];
  for (int k = 0; k < n; ++k)
    for (int l = k; l < n; ++l) {
      double h = f1 * a.hess(k, l) + f2 * a.grad[k] * a.grad[l];
      r.hess(k, l) = h;
      r.hess(l, k) = h;
    }
  return r;
}

inline Jet2 jet_inv(const Jet2& a) {
  if (a.value == 0.0) throw DomainError("division by zero");
  double iv = 1.0 / a.value;
  return jet_chain(a, iv, -iv * iv, 2.0 * iv * iv * iv);
}

inline Jet2 operator/(const Jet2& a, const Jet2& b) { return a * jet_inv(b); }

inline Jet2 jet_sin(const Jet2& a) {
  return jet_chain(a, std::sin(a.value), std::cos(a.value), -std::sin(a.value));
}

inline Jet2 jet_cos(const Jet2& a) {
  return jet_chain(a, std::cos(a.value), -std::sin(a.value), -std::cos(a.value));
}

inline Jet2 jet_tan(const Jet2& a) {
  double t = std::tan(a.value);
  double s = 1.0 + t * t;  // sec^2
  return jet_chain(a, t, s, 2.0 * t * s);
}

inline Jet2 jet_exp(const Jet2& a) {
  double e = std::exp(a.value);
  return jet_chain(a, e, e, e);
}

inline Jet2 jet_ln(const Jet2& a) {
  if (a.value <= 0.0) throw DomainError("ln of non-positive value");
  double iv = 1.0 / a.value;
  return jet_chain(a, std::log(a.value), iv, -iv * iv);
}

inline Jet2 jet_sqrt(const Jet2& a) {
  if (a.value < 0.0) throw DomainError("sqrt of negative value");
  if (a.is_constant()) return Jet2::constant(std::sqrt(a.value), a.dim());
  if (a.value == 0.0) throw DomainError("sqrt derivative undefined at zero");
  double s = std::sqrt(a.value);
  return jet_chain(a, s, 0.5 / s, -0.25 / (s * a.value));
}

// |x| with the kink convention sign(0) = 0.
inline Jet2 jet_abs(const Jet2& a) {
  double sgn = a.value > 0.0 ? 1.0 : (a.value < 0.0 ? -1.0 : 0.0);
  return jet_chain(a, std::fabs(a.value), sgn, 0.0);
}

// Power: general exponent goes through exp(b ln a) and therefore needs a
// positive base.  Constant exponents additionally cover base <= 0 where the
// real result exists (integer exponents, and x^c at x = 0 with c >= 0 where
// the derivatives stay finite).  Non-integer exponent on a negative base is
// a DomainError: we stay in the reals.
inline Jet2 jet_pow(const Jet2& a, const Jet2& b) {
  const int n = a.dim();
  if (b.is_constant()) {
    double c = b.value;
    if (a.is_constant()) {
      double v = std::pow(a.value, c);
      if (!std::isfinite(v)) throw DomainError("pow outside real domain");
      return Jet2::constant(v, n);
    }
    if (c == 0.0) return Jet2::constant(1.0, n);
    if (a.value < 0.0 && std::nearbyint(c) != c)
      throw DomainError("non-integer power of negative base");
    double f0 = std::pow(a.value, c);
    double f1 = c * std::pow(a.value, c - 1.0);
    double f2 = c * (c - 1.0) * std::pow(a.value, c - 2.0);
    if (c == 1.0) f2 = 0.0;  // pow(0, -1) guard for the linear case
    if (!std::isfinite(f0) || !std::isfinite(f1) || !std::isfinite(f2))
      throw DomainError("pow derivative outside real domain");
    return jet_chain(a, f0, f1, f2);
  }
  if (a.value <= 0.0) throw DomainError("variable power of non-positive base");
  return jet_exp(b * jet_ln(a));
}

}  // namespace geodyn

#endif
