// geodyn - Christoffel symbols, connection form, torsion, covariant derivatives.
//
// Index convention (see docs/conventions.md): gamma(k,i,j) = Gamma^k_ij with
// i the covariant-derivative index, i.e. nabla_i v^j = d_i v^j + Gamma^j_ik v^k.
// The connection 1-form is omega_i^j = Gamma^j_ik dx^k.

#ifndef GEODYN_CONNECTION_HPP
#define GEODYN_CONNECTION_HPP

#include <string>
#include <vector>

#include "geodyn/metric.hpp"

namespace geodyn {

struct Christoffel {
  Vec point;
  Tensor3 gamma;  // (k, i, j) = Gamma^k_ij
  bool symmetric_lower = false;
  int dim() const { return gamma.n; }
};

// Christoffel symbols together with their exact first derivatives,
// dgamma(m,k,i,j) = d_m Gamma^k_ij, assembled by the chain rule from the
// metric jet (no finite differences).
struct ChristoffelJet {
  Christoffel chr;
  Tensor4 dgamma;
};

// A connection given directly by coefficient expressions, not derived from
// any metric.  No symmetry in the lower indices is required, so torsion can
// be nonzero.
struct CustomConnection {
  std::string name;
  int dim = 0;
  std::vector<ExprPtr> gamma;  // dense (k,i,j), entries may be null (= 0)
  std::vector<std::string> guard_sources;
  std::vector<ExprPtr> guards;
  std::vector<std::string> variables;
  std::vector<std::pair<double, double>> sample_box;

  std::size_t slot(int k, int i, int j) const {
    return (static_cast<std::size_t>(k) * dim + i) * dim + j;
  }
  bool in_domain(const Vec& x, std::string* violated = nullptr) const;
};

CustomConnection load_connection_file(const std::string& path);
CustomConnection parse_connection_json(const std::string& text);

// Levi-Civita connection of the metric:
//   Gamma^k_ij = 1/2 g^{kl} (d_i g_jl + d_j g_il - d_l g_ij).
Christoffel christoffel(const MetricSpec& spec, const Vec& point);
Christoffel christoffel(const MetricJet& jet);

ChristoffelJet christoffel_jet(const MetricSpec& spec, const Vec& point);
ChristoffelJet christoffel_jet(const MetricJet& jet);

Christoffel evaluate_connection(const CustomConnection& conn, const Vec& point);

// Connection matrix of the 1-form evaluated on X: result(i,j) = Gamma^j_ik X^k.
Mat connection_form(const Christoffel& chr, const Vec& x_dir);

// Metric-compatibility residual, residual(k,i,j) = d_k g_ij - g_lj Gamma^l_ki
// - g_il Gamma^l_kj.  Vanishes for the Levi-Civita connection.
Tensor3 compatibility_residual(const MetricSpec& spec, const Vec& point);
Tensor3 compatibility_residual(const MetricJet& jet, const Christoffel& chr);

// T^k_ij = Gamma^k_ij - Gamma^k_ji (natural frame).
Tensor3 torsion(const Christoffel& chr);

struct VectorFieldSpec {
  int dim = 0;
  std::vector<ExprPtr> components;  // v^j as expressions over the chart
};

// Builds the n-dimensional reference field used by the verification suite:
// v^i = sin(x^{i+1}) for i < n, v^n = cos(x^1).  For n = 2 this is
// (sin x2, cos x1).
VectorFieldSpec standard_test_field(int dim);

// result(i,j) = nabla_i v^j = d_i v^j + Gamma^j_ik v^k
Mat covariant_derivative_vector(const VectorFieldSpec& field, const MetricSpec& spec,
                                const Vec& point);

// result(i,j) = nabla_i v_j = d_i v_j - Gamma^k_ij v_k; the field is given by
// its covariant components.
Mat covariant_derivative_oneform(const VectorFieldSpec& field, const MetricSpec& spec,
                                 const Vec& point);

}  // namespace geodyn

#endif
