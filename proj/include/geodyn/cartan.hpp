// geodyn - structural-equation checks at the form level and along geodesics.
//
// Wedge convention (docs/conventions.md): for 1-forms,
// (alpha ^ beta)(X,Y) = alpha(X) beta(Y) - alpha(Y) beta(X), no 1/2; higher
// degrees use the matching shuffle sums.  Coordinate coframe omega^i = dx^i,
// connection form omega_i^j = Gamma^j_ik dx^k.
//
// With those conventions the curvature 2-form coefficient on (e_a, e_b) at
// entry (i,j) equals riemann_mixed(j, a, b, i) for a symmetric connection;
// that permutation is frozen here and asserted by the tests.  The torsion
// 2-form evaluates to -T^i_ab on (e_a, e_b), so the frozen sign between the
// two sides of the first structural equation is sigma = -1.

#ifndef GEODYN_CARTAN_HPP
#define GEODYN_CARTAN_HPP

#include <string>
#include <vector>

#include "geodyn/curvature.hpp"
#include "geodyn/geodesic.hpp"
#include "geodyn/geospin.hpp"

namespace geodyn {

// Everything the pointwise form checks need: connection coefficients, their
// first derivatives, torsion, and the curvature tensor in the canonical
// ordering.  dgamma is analytic for metric connections and central
// finite-differenced for custom coefficient connections.
struct FormFrame {
  Vec point;
  Tensor3 gamma;
  Tensor4 dgamma;
  Tensor3 torsion_t;
  Tensor4 riemann;
  bool levi_civita = false;
  int dim() const { return gamma.n; }
};

FormFrame form_frame(const MetricSpec& spec, const Vec& point);
FormFrame form_frame(const CustomConnection& conn, const Vec& point);

// |Theta^i(e_a,e_b) - sigma T^i_ab| maximized over i, with Theta^i the
// first structural equation's left side and sigma the frozen sign.
double torsion_form_check(const FormFrame& frame, int a, int b);

// Residual matrix over (i,j) of the second structural equation's left side
// against the frozen permutation of the curvature tensor.
Mat curvature_form_check(const FormFrame& frame, int a, int b);

struct BianchiFormResidual {
  double torsion_bianchi = 0.0;    // d Theta^i = omega^j ^ Omega_j^i - Theta^j ^ omega_j^i
  double curvature_bianchi = 0.0;  // d Omega_i^j = omega_i^k ^ Omega_k^j - Omega_i^k ^ omega_k^j
  bool vacuous = false;            // dimension < 3: no 3-forms
};
BianchiFormResidual bianchi_form_check(const MetricSpec& spec, const Vec& point, int a, int b,
                                       int c);

// Dynamical variables along a geodesic: velocity, acceleration (from the
// geodesic right-hand side), geospin matrix, and its total time derivative
// alpha_i^j = d_l Gamma^j_ik v^l v^k + Gamma^j_ik a^k.
struct DynState {
  Vec x;
  Vec v;
  Vec a;
  Mat w;
  Mat alpha;
};
DynState dyn_state(const MetricSpec& spec, const GeodesicState& state);

struct IdentityResult {
  std::string identity;
  std::string interpretation;  // "form-level" or "scalar-dynamical"
  double max_residual = 0.0;
  bool asserted = false;       // true: must vanish within tolerance
  double tolerance = 0.0;      // meaningful when asserted
  long samples = 0;
  std::string notes;
};

struct StructuralReport {
  std::vector<IdentityResult> entries;
  bool asserted_pass(double* worst = nullptr) const;
  std::string to_json(int float_digits = 17) const;
};

// Per-sample residuals of the dynamical rewriting of the structural
// equations, with every wedge between dynamical variables read as the
// ordinary contracted product and the dt factors divided out.  Only the
// geodesic residual a + Wv and the antisymmetry contraction
// 1/2 R^j_ikl v^k v^l are asserted; the rest are measured and reported.
StructuralReport geometrodynamics_residuals(const MetricSpec& spec, const Trajectory& traj);

}  // namespace geodyn

#endif
