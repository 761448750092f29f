// geodyn - chart-local metric definitions and their derivative jets.

#ifndef GEODYN_METRIC_HPP
#define GEODYN_METRIC_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "geodyn/expr.hpp"
#include "geodyn/linalg.hpp"
#include "geodyn/rng.hpp"

namespace geodyn {

// One chart, one metric.  Components are stored as a symmetric lower
// triangle of expression trees; g_ij and g_ji share the same tree by
// construction.  Domain guards are expressions that must evaluate > 0 at
// every valid point (coordinate singularities are excluded a priori rather
// than detected at runtime).
struct MetricSpec {
  std::string name;
  int dim = 0;
  bool pseudo = false;                         // indefinite signature allowed
  std::vector<ExprPtr> components;             // lower triangle, see tri_index
  std::vector<std::string> guard_sources;      // original guard text, for messages
  std::vector<ExprPtr> guards;
  std::vector<std::string> variables;          // coordinate names, size dim
  std::vector<std::pair<double, double>> sample_box;  // per-coordinate sampling range

  static std::size_t tri_index(int i, int j) {
    if (j > i) std::swap(i, j);
    return static_cast<std::size_t>(i) * (i + 1) / 2 + j;
  }
  const ExprPtr& component(int i, int j) const { return components[tri_index(i, j)]; }

  // True when every guard is > 0 at x; the first violated guard's source
  // text is written to *violated when given.
  bool in_domain(const Vec& x, std::string* violated = nullptr) const;
  void require_in_domain(const Vec& x) const;  // throws OutOfDomain
};

// Value plus first and second coordinate derivatives of the metric at a
// point.  dg(k,i,j) = d g_ij / d x^k;  d2g(l,k,i,j) = d2 g_ij / dx^l dx^k.
struct MetricJet {
  Vec point;
  Mat g;
  Tensor3 dg;
  Tensor4 d2g;
  int dim() const { return g.n; }
};

// Built-in catalog.  Names: euclidean(n), polar2, sphere(r),
// sphere-stereographic(r), poincare-half-plane, torus(R,a), minkowski(n),
// schwarzschild(rs), sphere-cross-line.
MetricSpec builtin(const std::string& name, const std::map<std::string, double>& params = {});

struct CatalogEntry {
  std::string name;
  std::string params;  // human-readable parameter list with defaults
  std::string summary;
};
const std::vector<CatalogEntry>& catalog();

// Custom metric files (JSON; schema in docs/metric-file-format.md).
MetricSpec load_metric_file(const std::string& path);
MetricSpec parse_metric_json(const std::string& text);

Mat metric_at(const MetricSpec& spec, const Vec& point);

// Inverse with the degeneracy policy: rejects |det g| <= 1e-12 * (max|g_ij|)^n.
// The returned matrix is symmetrized.
Mat inverse_metric(const Mat& g);

MetricJet metric_jet(const MetricSpec& spec, const Vec& point);

// Rejection-samples a guard-satisfying point inside the spec's sample box.
// With margin > 0 the point additionally keeps every axis-aligned neighbour
// at distance margin inside the domain (room for finite-difference stencils).
Vec sample_point(const MetricSpec& spec, Rng& rng, double margin = 0.0);

// Velocity with components uniform in [-1, 1].
Vec sample_velocity(int dim, Rng& rng);

}  // namespace geodyn

#endif
