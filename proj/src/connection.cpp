// geodyn - connection coefficients and covariant derivatives.

#include "geodyn/connection.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace geodyn {

Christoffel christoffel(const MetricJet& jet) {
  const int n = jet.dim();
  Mat ginv = inverse_metric(jet.g);
  Christoffel chr;
  chr.point = jet.point;
  chr.gamma = Tensor3(n);
  chr.symmetric_lower = true;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) {
        double s = 0.0;
        for (int l = 0; l < n; ++l)
          s += ginv(k, l) * (jet.dg(i, j, l) + jet.dg(j, i, l) - jet.dg(l, i, j));
        s *= 0.5;
        chr.gamma(k, i, j) = s;
        chr.gamma(k, j, i) = s;
      }
  return chr;
}

Christoffel christoffel(const MetricSpec& spec, const Vec& point) {
  return christoffel(metric_jet(spec, point));
}

ChristoffelJet christoffel_jet(const MetricJet& jet) {
  const int n = jet.dim();
  Mat ginv = inverse_metric(jet.g);

  // d_m g^{kl} = -g^{ka} (d_m g_ab) g^{bl}
  Tensor3 dginv(n);
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) {
        double s = 0.0;
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) s += ginv(k, a) * jet.dg(m, a, b) * ginv(b, l);
        dginv(m, k, l) = -s;
      }

  ChristoffelJet out;
  out.chr = christoffel(jet);
  out.dgamma = Tensor4(n);
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
          double s = 0.0;
          for (int l = 0; l < n; ++l) {
            double bracket = jet.dg(i, j, l) + jet.dg(j, i, l) - jet.dg(l, i, j);
            double dbracket =
                jet.d2g(m, i, j, l) + jet.d2g(m, j, i, l) - jet.d2g(m, l, i, j);
            s += dginv(m, k, l) * bracket + ginv(k, l) * dbracket;
          }
          s *= 0.5;
          out.dgamma(m, k, i, j) = s;
          out.dgamma(m, k, j, i) = s;
        }
  return out;
}

ChristoffelJet christoffel_jet(const MetricSpec& spec, const Vec& point) {
  return christoffel_jet(metric_jet(spec, point));
}

bool CustomConnection::in_domain(const Vec& x, std::string* violated) const {
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

Christoffel evaluate_connection(const CustomConnection& conn, const Vec& point) {
  std::string which;
  if (!conn.in_domain(point, &which)) throw OutOfDomain(which);
  const int n = conn.dim;
  Christoffel chr;
  chr.point = point;
  chr.gamma = Tensor3(n);
  chr.symmetric_lower = false;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const ExprPtr& e = conn.gamma[conn.slot(k, i, j)];
        chr.gamma(k, i, j) = e ? eval_scalar(*e, point) : 0.0;
      }
  return chr;
}

namespace {

using nlohmann::json;

std::array<int, 3> parse_triple_key(const std::string& key, int dim) {
  int k = 0, i = 0, j = 0;
  if (std::sscanf(key.c_str(), "%d,%d,%d", &k, &i, &j) != 3 || k < 1 || i < 1 || j < 1 ||
      k > dim || i > dim || j > dim)
    throw SchemaError("bad gamma key '" + key + "'");
  return {k - 1, i - 1, j - 1};
}

}  // namespace

CustomConnection parse_connection_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw SchemaError("invalid JSON");
  if (!j.is_object()) throw SchemaError("connection file must be a JSON object");
  if (j.value("version", 1) != 1) throw SchemaError("unsupported connection file version");
  if (!j.contains("name") || !j["name"].is_string()) throw SchemaError("missing 'name'");
  if (!j.contains("dim") || !j["dim"].is_number_integer()) throw SchemaError("missing 'dim'");

  CustomConnection conn;
  conn.name = j["name"].get<std::string>();
  conn.dim = j["dim"].get<int>();
  if (conn.dim < 1) throw SchemaError("'dim' must be positive");
  const int n = conn.dim;

  std::map<std::string, int> aliases;
  if (j.contains("variables")) {
    if (!j["variables"].is_array() || static_cast<int>(j["variables"].size()) != n)
      throw SchemaError("'variables' must list one name per dimension");
    for (const auto& v : j["variables"]) conn.variables.push_back(v.get<std::string>());
  } else {
    for (int i = 0; i < n; ++i) conn.variables.push_back("x" + std::to_string(i + 1));
  }
  for (int i = 0; i < n; ++i) aliases[conn.variables[static_cast<std::size_t>(i)]] = i;

  conn.gamma.assign(static_cast<std::size_t>(n) * n * n, nullptr);
  if (!j.contains("gamma") || !j["gamma"].is_object())
    throw SchemaError("missing 'gamma' map");
  for (const auto& [key, val] : j["gamma"].items()) {
    auto [k, i, jj] = parse_triple_key(key, n);
    if (!val.is_string()) throw SchemaError("gamma '" + key + "' must be an expression string");
    try {
      conn.gamma[conn.slot(k, i, jj)] = parse(val.get<std::string>(), n, aliases);
    } catch (const Error& e) {
      throw SchemaError("gamma '" + key + "': " + e.what());
    }
  }

  if (j.contains("guards")) {
    if (!j["guards"].is_array()) throw SchemaError("'guards' must be an array");
    for (const auto& g : j["guards"]) {
      std::string src = g.get<std::string>();
      try {
        conn.guards.push_back(parse(src, n, aliases));
      } catch (const Error& e) {
        throw SchemaError(std::string("guard: ") + e.what());
      }
      conn.guard_sources.push_back(src);
    }
  }

  if (j.contains("sample_box")) {
    if (!j["sample_box"].is_array() || static_cast<int>(j["sample_box"].size()) != n)
      throw SchemaError("'sample_box' must list one [lo, hi] per dimension");
    for (const auto& entry : j["sample_box"]) {
      if (!entry.is_array() || entry.size() != 2) throw SchemaError("bad 'sample_box' entry");
      conn.sample_box.emplace_back(entry[0].get<double>(), entry[1].get<double>());
    }
  } else {
    conn.sample_box.assign(static_cast<std::size_t>(n), {-1.0, 1.0});
  }
  return conn;
}

CustomConnection load_connection_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open connection file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_connection_json(buf.str());
}

Mat connection_form(const Christoffel& chr, const Vec& x_dir) {
  const int n = chr.dim();
  if (static_cast<int>(x_dir.size()) != n)
    throw DimensionMismatch("direction dimension mismatch");
  Mat w(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += chr.gamma(j, i, k) * x_dir[k];
      w(i, j) = s;
    }
  return w;
}

Tensor3 compatibility_residual(const MetricJet& jet, const Christoffel& chr) {
  const int n = jet.dim();
  Tensor3 res(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = jet.dg(k, i, j);
        for (int l = 0; l < n; ++l)
          s -= jet.g(l, j) * chr.gamma(l, k, i) + jet.g(i, l) * chr.gamma(l, k, j);
        res(k, i, j) = s;
      }
  return res;
}

Tensor3 compatibility_residual(const MetricSpec& spec, const Vec& point) {
  MetricJet jet = metric_jet(spec, point);
  return compatibility_residual(jet, christoffel(jet));
}

Tensor3 torsion(const Christoffel& chr) {
  const int n = chr.dim();
  Tensor3 t(n);
  if (chr.symmetric_lower) return t;  // exactly zero by construction
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) t(k, i, j) = chr.gamma(k, i, j) - chr.gamma(k, j, i);
  return t;
}

VectorFieldSpec standard_test_field(int dim) {
  VectorFieldSpec field;
  field.dim = dim;
  for (int i = 0; i < dim; ++i) {
    std::string src = i + 1 < dim ? "sin(x" + std::to_string(i + 2) + ")" : "cos(x1)";
    field.components.push_back(parse(src, dim));
  }
  return field;
}

Mat covariant_derivative_vector(const VectorFieldSpec& field, const MetricSpec& spec,
                                const Vec& point) {
  if (field.dim != spec.dim) throw DimensionMismatch("field dimension mismatch");
  const int n = spec.dim;
  Christoffel chr = christoffel(spec, point);
  Vec v(static_cast<std::size_t>(n));
  Mat dv(n);  // dv(i,j) = d_i v^j
  for (int j = 0; j < n; ++j) {
    Jet2 jet = eval_jet2(*field.components[static_cast<std::size_t>(j)], point);
    v[j] = jet.value;
    for (int i = 0; i < n; ++i) dv(i, j) = jet.grad[i];
  }
  Mat nabla(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = dv(i, j);
      for (int k = 0; k < n; ++k) s += chr.gamma(j, i, k) * v[k];
      nabla(i, j) = s;
    }
  return nabla;
}

Mat covariant_derivative_oneform(const VectorFieldSpec& field, const MetricSpec& spec,
                                 const Vec& point) {
  if (field.dim != spec.dim) throw DimensionMismatch("field dimension mismatch");
  const int n = spec.dim;
  Christoffel chr = christoffel(spec, point);
  Vec v(static_cast<std::size_t>(n));
  Mat dv(n);
  for (int j = 0; j < n; ++j) {
    Jet2 jet = eval_jet2(*field.components[static_cast<std::size_t>(j)], point);
    v[j] = jet.value;
    for (int i = 0; i < n; ++i) dv(i, j) = jet.grad[i];
  }
  Mat nabla(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = dv(i, j);
      for (int k = 0; k < n; ++k) s -= chr.gamma(k, i, j) * v[k];
      nabla(i, j) = s;
    }
  return nabla;
}

}  // namespace geodyn
