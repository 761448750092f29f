// geodyn - built-in metric catalog, custom metric files, metric evaluation.

#include "geodyn/metric.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace geodyn {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double get_param(const std::map<std::string, double>& params, const std::string& key,
                 double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

struct Builder {
  MetricSpec spec;
  std::map<std::string, int> aliases;

  Builder(std::string name, int dim, std::vector<std::string> vars) {
    spec.name = std::move(name);
    spec.dim = dim;
    spec.variables = std::move(vars);
    if (spec.variables.empty())
      for (int i = 0; i < dim; ++i) spec.variables.push_back("x" + std::to_string(i + 1));
    for (int i = 0; i < dim; ++i) aliases[spec.variables[static_cast<std::size_t>(i)]] = i;
    spec.components.assign(static_cast<std::size_t>(dim) * (dim + 1) / 2, nullptr);
  }

  void comp(int i, int j, const std::string& src) {
    spec.components[MetricSpec::tri_index(i, j)] = parse(src, spec.dim, aliases);
  }

  void guard(const std::string& src) {
    spec.guard_sources.push_back(src);
    spec.guards.push_back(parse(src, spec.dim, aliases));
  }

  void box(std::vector<std::pair<double, double>> b) { spec.sample_box = std::move(b); }
};

int int_param(const std::map<std::string, double>& params, const std::string& key,
              double fallback) {
  double v = get_param(params, key, fallback);
  if (v < 1 || std::nearbyint(v) != v) throw BadParam("parameter '" + key + "' must be a positive integer");
  return static_cast<int>(v);
}

double positive_param(const std::map<std::string, double>& params, const std::string& key,
                      double fallback) {
  double v = get_param(params, key, fallback);
  if (!(v > 0.0)) throw BadParam("parameter '" + key + "' must be > 0");
  return v;
}

}  // namespace

bool MetricSpec::in_domain(const Vec& x, std::string* violated) const {
  if (static_cast<int>(x.size()) != dim) throw DimensionMismatch("point dimension mismatch");
  for (std::size_t i = 0; i < guards.size(); ++i) {
    double v;
    try {
      v = eval_scalar(*guards[i], x);
    } catch (const DomainError&) {
      v = -1.0;
    }
    if (!(v > 0.0)) {
      if (violated) *violated = guard_sources[i];
      return false;
    }
  }
  return true;
}

void MetricSpec::require_in_domain(const Vec& x) const {
  std::string which;
  if (!in_domain(x, &which)) throw OutOfDomain(which);
}

MetricSpec builtin(const std::string& name, const std::map<std::string, double>& params) {
  if (name == "euclidean") {
    int n = int_param(params, "n", 2);
    Builder b(name, n, {});
    for (int i = 0; i < n; ++i) b.comp(i, i, "1");
    std::vector<std::pair<double, double>> box(static_cast<std::size_t>(n), {-2.0, 2.0});
    b.box(box);
    return b.spec;
  }
  if (name == "polar2") {
    Builder b(name, 2, {"r", "theta"});
    b.comp(0, 0, "1");
    b.comp(1, 1, "r^2");
    b.guard("r");
    b.box({{0.25, 3.0}, {0.0, 6.283185307179586}});
    return b.spec;
  }
  if (name == "sphere") {
    double r = positive_param(params, "r", 1.0);
    Builder b(name, 2, {"theta", "phi"});
    b.comp(0, 0, num(r * r));
    b.comp(1, 1, num(r * r) + "*sin(theta)^2");
    b.guard("sin(theta)");
    b.box({{0.3, 2.8}, {0.0, 6.283185307179586}});
    return b.spec;
  }
  if (name == "sphere-stereographic") {
    double r = positive_param(params, "r", 1.0);
    Builder b(name, 2, {"x", "y"});
    std::string lambda = "4*" + num(r * r * r * r) + "/((" + num(r * r) + "+x^2+y^2)^2)";
    b.comp(0, 0, lambda);
    b.comp(1, 1, lambda);
    b.box({{-2.0, 2.0}, {-2.0, 2.0}});
    return b.spec;
  }
  if (name == "poincare-half-plane") {
    Builder b(name, 2, {"x", "y"});
    b.comp(0, 0, "1/y^2");
    b.comp(1, 1, "1/y^2");
    b.guard("y");
    b.box({{-2.0, 2.0}, {0.5, 3.0}});
    return b.spec;
  }
  if (name == "torus") {
    double R = positive_param(params, "R", 2.0);
    double a = positive_param(params, "a", 0.5);
    if (!(R > a)) throw BadParam("torus requires R > a > 0");
    Builder b(name, 2, {"theta", "phi"});
    b.comp(0, 0, num(a * a));
    b.comp(1, 1, "(" + num(R) + "+" + num(a) + "*cos(theta))^2");
    b.guard(num(R) + "+" + num(a) + "*cos(theta)");
    b.box({{0.0, 6.283185307179586}, {0.0, 6.283185307179586}});
    return b.spec;
  }
  if (name == "minkowski") {
    int n = int_param(params, "n", 4);
    Builder b(name, n, {});
    b.spec.pseudo = true;
    b.comp(0, 0, "-1");
    for (int i = 1; i < n; ++i) b.comp(i, i, "1");
    std::vector<std::pair<double, double>> box(static_cast<std::size_t>(n), {-2.0, 2.0});
    b.box(box);
    return b.spec;
  }
  if (name == "schwarzschild") {
    double rs = positive_param(params, "rs", 1.0);
    Builder b(name, 4, {"t", "r", "theta", "phi"});
    b.spec.pseudo = true;
    std::string f = "(1-" + num(rs) + "/r)";
    b.comp(0, 0, "-" + f);
    b.comp(1, 1, "1/" + f);
    b.comp(2, 2, "r^2");
    b.comp(3, 3, "r^2*sin(theta)^2");
    b.guard("r-" + num(rs));
    b.guard("sin(theta)");
    b.box({{-1.0, 1.0}, {1.5 * rs, 8.0 * rs}, {0.3, 2.8}, {0.0, 6.283185307179586}});
    return b.spec;
  }
  if (name == "sphere-cross-line") {
    Builder b(name, 3, {"theta", "phi", "z"});
    b.comp(0, 0, "1");
    b.comp(1, 1, "sin(theta)^2");
    b.comp(2, 2, "1");
    b.guard("sin(theta)");
    b.box({{0.3, 2.8}, {0.0, 6.283185307179586}, {-2.0, 2.0}});
    return b.spec;
  }
  throw UnknownMetric(name);
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = {
      {"euclidean", "n=2", "flat metric, identity components"},
      {"polar2", "", "flat plane in polar coordinates (r, theta)"},
      {"sphere", "r=1", "round sphere of radius r in (theta, phi)"},
      {"sphere-stereographic", "r=1", "round sphere of radius r, stereographic chart (x, y)"},
      {"poincare-half-plane", "", "hyperbolic upper half-plane (x, y), curvature -1"},
      {"torus", "R=2 a=0.5", "torus of radii R > a in (theta, phi)"},
      {"minkowski", "n=4", "flat pseudo-Riemannian metric diag(-1, 1, ...)"},
      {"schwarzschild", "rs=1", "Schwarzschild exterior in (t, r, theta, phi)"},
      {"sphere-cross-line", "", "unit sphere times a line, (theta, phi, z)"},
  };
  return entries;
}

namespace {

using nlohmann::json;

json parse_json_or_throw(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw SchemaError("invalid JSON");
  return j;
}

std::pair<int, int> parse_pair_key(const std::string& key, int dim) {
  int i = 0, j = 0;
  if (std::sscanf(key.c_str(), "%d,%d", &i, &j) != 2 || i < 1 || j < 1 || i > dim || j > dim)
    throw SchemaError("bad component key '" + key + "'");
  return {i - 1, j - 1};
}

}  // namespace

MetricSpec parse_metric_json(const std::string& text) {
  json j = parse_json_or_throw(text);
  if (!j.is_object()) throw SchemaError("metric file must be a JSON object");
  if (j.value("version", 1) != 1) throw SchemaError("unsupported metric file version");
  if (!j.contains("name") || !j["name"].is_string()) throw SchemaError("missing 'name'");
  if (!j.contains("dim") || !j["dim"].is_number_integer()) throw SchemaError("missing 'dim'");
  int dim = j["dim"].get<int>();
  if (dim < 1) throw SchemaError("'dim' must be positive");

  std::vector<std::string> vars;
  if (j.contains("variables")) {
    if (!j["variables"].is_array() || static_cast<int>(j["variables"].size()) != dim)
      throw SchemaError("'variables' must list one name per dimension");
    for (const auto& v : j["variables"]) vars.push_back(v.get<std::string>());
  }

  Builder b(j["name"].get<std::string>(), dim, vars);
  b.spec.pseudo = j.value("signature", std::string("riemannian")) == "pseudo";

  if (!j.contains("components") || !j["components"].is_object())
    throw SchemaError("missing 'components' map");
  std::map<std::size_t, std::string> seen;
  for (const auto& [key, val] : j["components"].items()) {
    auto [ci, cj] = parse_pair_key(key, dim);
    if (!val.is_string()) throw SchemaError("component '" + key + "' must be an expression string");
    std::string src = val.get<std::string>();
    std::size_t slot = MetricSpec::tri_index(ci, cj);
    auto prev = seen.find(slot);
    if (prev != seen.end() && prev->second != src)
      throw SchemaError("components '" + key + "' and its transpose disagree (metric must be symmetric)");
    seen[slot] = src;
    try {
      b.comp(ci, cj, src);
    } catch (const Error& e) {
      throw SchemaError("component '" + key + "': " + e.what());
    }
  }

  if (j.contains("guards")) {
    if (!j["guards"].is_array()) throw SchemaError("'guards' must be an array of expression strings");
    for (const auto& g : j["guards"]) {
      try {
        b.guard(g.get<std::string>());
      } catch (const Error& e) {
        throw SchemaError(std::string("guard: ") + e.what());
      }
    }
  }

  if (j.contains("sample_box")) {
    if (!j["sample_box"].is_array() || static_cast<int>(j["sample_box"].size()) != dim)
      throw SchemaError("'sample_box' must list one [lo, hi] per dimension");
    std::vector<std::pair<double, double>> box;
    for (const auto& entry : j["sample_box"]) {
      if (!entry.is_array() || entry.size() != 2) throw SchemaError("bad 'sample_box' entry");
      double lo = entry[0].get<double>(), hi = entry[1].get<double>();
      if (!(lo < hi)) throw SchemaError("'sample_box' entries need lo < hi");
      box.emplace_back(lo, hi);
    }
    b.box(std::move(box));
  } else {
    b.box(std::vector<std::pair<double, double>>(static_cast<std::size_t>(dim), {-1.0, 1.0}));
  }
  return b.spec;
}

MetricSpec load_metric_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open metric file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_metric_json(buf.str());
}

Mat metric_at(const MetricSpec& spec, const Vec& point) {
  spec.require_in_domain(point);
  Mat g(spec.dim);
  for (int i = 0; i < spec.dim; ++i)
    for (int j = 0; j <= i; ++j) {
      const ExprPtr& c = spec.component(i, j);
      double v = c ? eval_scalar(*c, point) : 0.0;
      if (!std::isfinite(v)) throw DomainError("metric component not finite");
      g(i, j) = v;
      g(j, i) = v;
    }
  return g;
}

Mat inverse_metric(const Mat& g) {
  double scale = max_abs(g);
  double tol = 1e-12 * std::pow(scale, g.n);
  double det = determinant(g);
  if (std::fabs(det) <= tol) throw DegenerateMetric(det);
  Mat inv = inverse(g);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < i; ++j) {
      double s = 0.5 * (inv(i, j) + inv(j, i));
      inv(i, j) = s;
      inv(j, i) = s;
    }
  return inv;
}

MetricJet metric_jet(const MetricSpec& spec, const Vec& point) {
  spec.require_in_domain(point);
  const int n = spec.dim;
  MetricJet out;
  out.point = point;
  out.g = Mat(n);
  out.dg = Tensor3(n);
  out.d2g = Tensor4(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      const ExprPtr& c = spec.component(i, j);
      if (!c) continue;
      Jet2 jet = eval_jet2(*c, point);
      if (!std::isfinite(jet.value)) throw DomainError("metric component not finite");
      out.g(i, j) = jet.value;
      out.g(j, i) = jet.value;
      for (int k = 0; k < n; ++k) {
        out.dg(k, i, j) = jet.grad[k];
        out.dg(k, j, i) = jet.grad[k];
        for (int l = 0; l < n; ++l) {
          out.d2g(k, l, i, j) = jet.hess(k, l);
          out.d2g(k, l, j, i) = jet.hess(k, l);
        }
      }
    }
  return out;
}

Vec sample_point(const MetricSpec& spec, Rng& rng, double margin) {
  if (spec.sample_box.size() != static_cast<std::size_t>(spec.dim))
    throw Error("metric '" + spec.name + "' has no sample box");
  for (int attempt = 0; attempt < 10000; ++attempt) {
    Vec x(static_cast<std::size_t>(spec.dim));
    for (int k = 0; k < spec.dim; ++k)
      x[k] = rng.uniform(spec.sample_box[k].first, spec.sample_box[k].second);
    if (!spec.in_domain(x)) continue;
    if (margin > 0.0) {
      bool interior = true;
      for (int k = 0; k < spec.dim && interior; ++k) {
        Vec lo = x, hi = x;
        lo[k] -= margin;
        hi[k] += margin;
        interior = spec.in_domain(lo) && spec.in_domain(hi);
      }
      if (!interior) continue;
    }
    return x;
  }
  throw Error("could not sample an in-domain point for metric '" + spec.name + "'");
}

Vec sample_velocity(int dim, Rng& rng) {
  Vec v(static_cast<std::size_t>(dim));
  for (int k = 0; k < dim; ++k) v[k] = rng.uniform(-1.0, 1.0);
  return v;
}

}  // namespace geodyn
