// geodyn command-line front end.
//
// Subcommands: metrics list, curvature, geodesic, verify, residuals,
// expm-demo.  Exit codes: 0 success, 1 asserted-identity failure, 2 invalid
// input (bad metric, bad file, point out of domain), 3 domain exit during
// integration, 4 step limit exceeded.

#include <cstdio>
#include <ctime>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "geodyn/cartan.hpp"
#include "geodyn/curvature.hpp"
#include "geodyn/geodesic.hpp"
#include "geodyn/verify.hpp"

namespace {

using namespace geodyn;

constexpr int kExitOk = 0;
constexpr int kExitAssertFailed = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitDomainExit = 3;
constexpr int kExitMaxSteps = 4;

struct OutputOptions {
  std::string format = "pretty";  // pretty | csv | jsonl
  bool no_header = false;
  int digits() const { return format == "pretty" ? 6 : 17; }
};

std::string fmt_double(double v, int digits) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

void print_header(const OutputOptions& out, const std::string& command) {
  if (out.no_header) return;
  char stamp[64];
  std::time_t now = std::time(nullptr);
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  std::printf("# geodyn %s generated=%s\n", command.c_str(), stamp);
}

double parse_double(const std::string& text) {
  std::size_t used = 0;
  double v = std::stod(text, &used);
  if (used != text.size()) throw BadParam("bad number '" + text + "'");
  return v;
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(parse_double(item));
  }
  return out;
}

struct MetricOptions {
  std::string name;
  std::string file;
  std::vector<std::string> params;

  MetricSpec resolve() const {
    if (!file.empty()) return load_metric_file(file);
    if (name.empty()) throw BadParam("no metric selected (use --metric or --metric-file)");
    std::map<std::string, double> kv;
    for (const std::string& p : params) {
      auto eq = p.find('=');
      if (eq == std::string::npos) throw BadParam("bad --param '" + p + "', expected key=value");
      kv[p.substr(0, eq)] = parse_double(p.substr(eq + 1));
    }
    return builtin(name, kv);
  }
};

void add_metric_options(CLI::App* cmd, MetricOptions& opts) {
  cmd->add_option("--metric", opts.name, "built-in metric name (see `metrics list`)");
  cmd->add_option("--metric-file", opts.file, "custom metric JSON file");
  cmd->add_option("--param", opts.params, "metric parameter key=value (repeatable)");
}

void add_output_options(CLI::App* cmd, OutputOptions& out) {
  cmd->add_option("--format", out.format, "pretty | csv | jsonl")
      ->check(CLI::IsMember({"pretty", "csv", "jsonl"}));
  cmd->add_flag("--no-header", out.no_header, "suppress the timestamp header line");
}

void print_matrix(const std::string& label, const Mat& m, int digits) {
  std::printf("%s:\n", label.c_str());
  for (int i = 0; i < m.n; ++i) {
    std::printf(" ");
    for (int j = 0; j < m.n; ++j) std::printf(" %12s", fmt_double(m(i, j), digits).c_str());
    std::printf("\n");
  }
}

std::string json_matrix(const Mat& m, int digits) {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < m.n; ++i) {
    if (i) os << ",";
    os << "[";
    for (int j = 0; j < m.n; ++j) {
      if (j) os << ",";
      os << fmt_double(m(i, j), digits);
    }
    os << "]";
  }
  os << "]";
  return os.str();
}

std::string json_vector(const Vec& v, int digits) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ",";
    os << fmt_double(v[i], digits);
  }
  os << "]";
  return os.str();
}

int cmd_curvature(const MetricOptions& mopts, const std::string& at, const OutputOptions& out) {
  MetricSpec spec = mopts.resolve();
  Vec point = parse_doubles(at);
  if (static_cast<int>(point.size()) != spec.dim)
    throw BadParam("--at needs " + std::to_string(spec.dim) + " coordinates");

  Christoffel chr = christoffel(spec, point);
  CurvaturePack pack = curvature(spec, point);
  const int n = spec.dim;
  const int digits = out.digits();

  print_header(out, "curvature metric=" + spec.name);
  if (out.format == "pretty") {
    std::printf("metric %s at (", spec.name.c_str());
    for (int i = 0; i < n; ++i) std::printf("%s%s", i ? ", " : "", fmt_double(point[i], digits).c_str());
    std::printf(")\n");
    std::printf("christoffel (nonzero):\n");
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (chr.gamma(k, i, j) != 0.0)
            std::printf("  Gamma^%d_%d%d = %s\n", k + 1, i + 1, j + 1,
                        fmt_double(chr.gamma(k, i, j), digits).c_str());
    std::printf("riemann mixed (nonzero):\n");
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int l = 0; l < n; ++l)
            if (pack.riemann_mixed(k, i, j, l) != 0.0)
              std::printf("  R^%d_%d%d%d = %s\n", k + 1, i + 1, j + 1, l + 1,
                          fmt_double(pack.riemann_mixed(k, i, j, l), digits).c_str());
    std::printf("riemann lowered (nonzero):\n");
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l)
            if (pack.riemann_low(i, j, k, l) != 0.0)
              std::printf("  R_%d%d%d%d = %s\n", i + 1, j + 1, k + 1, l + 1,
                          fmt_double(pack.riemann_low(i, j, k, l), digits).c_str());
    print_matrix("ricci", pack.ricci, digits);
    print_matrix("ricci mixed", pack.ricci_mixed, digits);
    std::printf("scalar R = %s\n", fmt_double(pack.scalar, digits).c_str());
    std::printf("det(R^i_j) = %s  trace(R^i_j) = %s\n",
                fmt_double(pack.ricci_mixed_det, digits).c_str(),
                fmt_double(pack.ricci_mixed_trace, digits).c_str());
  } else if (out.format == "csv") {
    std::printf("quantity,value\n");
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          std::printf("gamma[%d][%d][%d],%s\n", k + 1, i + 1, j + 1,
                      fmt_double(chr.gamma(k, i, j), digits).c_str());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            std::printf("riemann_mixed[%d][%d][%d][%d],%s\n", i + 1, j + 1, k + 1, l + 1,
                        fmt_double(pack.riemann_mixed(i, j, k, l), digits).c_str());
            std::printf("riemann_lowered[%d][%d][%d][%d],%s\n", i + 1, j + 1, k + 1, l + 1,
                        fmt_double(pack.riemann_low(i, j, k, l), digits).c_str());
          }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        std::printf("ricci[%d][%d],%s\n", i + 1, j + 1, fmt_double(pack.ricci(i, j), digits).c_str());
    std::printf("scalar,%s\n", fmt_double(pack.scalar, digits).c_str());
    std::printf("ricci_mixed_det,%s\n", fmt_double(pack.ricci_mixed_det, digits).c_str());
    std::printf("ricci_mixed_trace,%s\n", fmt_double(pack.ricci_mixed_trace, digits).c_str());
  } else {
    auto json_rank4 = [&](const Tensor4& t) {
      std::ostringstream os;
      os << "[";
      for (int i = 0; i < n; ++i) {
        if (i) os << ",";
        os << "[";
        for (int j = 0; j < n; ++j) {
          if (j) os << ",";
          Mat slice(n);
          for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) slice(k, l) = t(i, j, k, l);
          os << json_matrix(slice, digits);
        }
        os << "]";
      }
      os << "]";
      return os.str();
    };
    std::ostringstream os;
    os << "{\"metric\":\"" << spec.name << "\",\"point\":" << json_vector(point, digits);
    os << ",\"gamma\":[";
    for (int k = 0; k < n; ++k) {
      if (k) os << ",";
      Mat slice(n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) slice(i, j) = chr.gamma(k, i, j);
      os << json_matrix(slice, digits);
    }
    os << "],\"riemann_mixed\":" << json_rank4(pack.riemann_mixed)
       << ",\"riemann_lowered\":" << json_rank4(pack.riemann_low)
       << ",\"ricci\":" << json_matrix(pack.ricci, digits)
       << ",\"ricci_mixed\":" << json_matrix(pack.ricci_mixed, digits)
       << ",\"scalar\":" << fmt_double(pack.scalar, digits)
       << ",\"ricci_mixed_det\":" << fmt_double(pack.ricci_mixed_det, digits)
       << ",\"ricci_mixed_trace\":" << fmt_double(pack.ricci_mixed_trace, digits) << "}";
    std::printf("%s\n", os.str().c_str());
  }
  return kExitOk;
}

void print_trajectory(const MetricSpec& spec, const Trajectory& traj, const OutputOptions& out) {
  const int n = spec.dim;
  const int digits = out.digits();
  if (out.format == "csv" || out.format == "pretty") {
    std::printf("t");
    for (int i = 0; i < n; ++i) std::printf(",x%d", i + 1);
    for (int i = 0; i < n; ++i) std::printf(",v%d", i + 1);
    std::printf(",speed2,Q\n");
    for (const TrajectorySample& s : traj.samples) {
      std::printf("%s", fmt_double(s.t, digits).c_str());
      for (int i = 0; i < n; ++i) std::printf(",%s", fmt_double(s.x[i], digits).c_str());
      for (int i = 0; i < n; ++i) std::printf(",%s", fmt_double(s.v[i], digits).c_str());
      std::printf(",%s,%s\n", fmt_double(s.speed2, digits).c_str(),
                  fmt_double(s.q_invariant, digits).c_str());
    }
  } else {
    for (const TrajectorySample& s : traj.samples)
      std::printf("{\"t\":%s,\"x\":%s,\"v\":%s,\"speed2\":%s,\"Q\":%s}\n",
                  fmt_double(s.t, digits).c_str(), json_vector(s.x, digits).c_str(),
                  json_vector(s.v, digits).c_str(), fmt_double(s.speed2, digits).c_str(),
                  fmt_double(s.q_invariant, digits).c_str());
  }
}

int cmd_geodesic(const MetricOptions& mopts, const std::string& x0s, const std::string& v0s,
                 const IntegratorConfig& config, const OutputOptions& out) {
  MetricSpec spec = mopts.resolve();
  GeodesicState s0;
  s0.x = parse_doubles(x0s);
  s0.v = parse_doubles(v0s);
  if (static_cast<int>(s0.x.size()) != spec.dim || static_cast<int>(s0.v.size()) != spec.dim)
    throw BadParam("--x0/--v0 need " + std::to_string(spec.dim) + " components");

  print_header(out, "geodesic metric=" + spec.name);
  Trajectory traj = integrate(spec, s0, config);
  print_trajectory(spec, traj, out);
  SpeedReport rep = conserved_speed_report(traj, spec);
  std::printf("# summary samples=%zu steps=%ld speed2_drift=%s q_accel_residual=%s domain_exit=%d\n",
              traj.samples.size(), traj.steps_taken, fmt_double(rep.max_speed_drift, 17).c_str(),
              fmt_double(rep.max_q_accel_residual, 17).c_str(), traj.domain_exit ? 1 : 0);
  if (traj.domain_exit) {
    std::printf("# domain exit at guard '%s'\n", traj.exit_guard.c_str());
    return kExitDomainExit;
  }
  return kExitOk;
}

void print_report(const StructuralReport& report, const OutputOptions& out) {
  const int digits = out.digits();
  if (out.format == "jsonl") {
    for (const IdentityResult& e : report.entries) {
      std::ostringstream os;
      os << "{\"identity\":\"" << e.identity << "\",\"interpretation\":\"" << e.interpretation
         << "\",\"max_residual\":" << fmt_double(e.max_residual, digits)
         << ",\"asserted\":" << (e.asserted ? "true" : "false");
      if (e.asserted) os << ",\"tolerance\":" << fmt_double(e.tolerance, digits);
      os << ",\"samples\":" << e.samples;
      if (!e.notes.empty()) os << ",\"notes\":\"" << e.notes << "\"";
      os << "}";
      std::printf("%s\n", os.str().c_str());
    }
    return;
  }
  if (out.format == "csv") {
    std::printf("identity,interpretation,max_residual,asserted,tolerance,samples,status\n");
    for (const IdentityResult& e : report.entries)
      std::printf("%s,%s,%s,%d,%s,%ld,%s\n", e.identity.c_str(), e.interpretation.c_str(),
                  fmt_double(e.max_residual, digits).c_str(), e.asserted ? 1 : 0,
                  e.asserted ? fmt_double(e.tolerance, digits).c_str() : "",
                  e.samples,
                  !e.asserted ? "reported" : (e.max_residual <= e.tolerance ? "pass" : "FAIL"));
    return;
  }
  std::printf("%-28s %-17s %-12s %-10s %s\n", "identity", "interpretation", "max_residual",
              "tolerance", "status");
  for (const IdentityResult& e : report.entries) {
    std::string status =
        !e.asserted ? "reported" : (e.max_residual <= e.tolerance ? "pass" : "FAIL");
    std::printf("%-28s %-17s %-12s %-10s %s\n", e.identity.c_str(), e.interpretation.c_str(),
                fmt_double(e.max_residual, digits).c_str(),
                e.asserted ? fmt_double(e.tolerance, digits).c_str() : "-", status.c_str());
    if (!e.notes.empty() && !e.asserted) std::printf("  note: %s\n", e.notes.c_str());
  }
}

int cmd_verify(const MetricOptions& mopts, const std::string& connection_file,
               const VerifyOptions& vopts, const OutputOptions& out) {
  StructuralReport report;
  std::string subject;
  if (!connection_file.empty()) {
    CustomConnection conn = load_connection_file(connection_file);
    subject = conn.name;
    report = run_connection_suite(conn, vopts);
    bool skipped = false;
    for (const IdentityResult& e : report.entries)
      if (!e.asserted && e.identity == "curvature_form") skipped = true;
    print_header(out, "verify connection=" + subject);
    print_report(report, out);
    if (skipped && out.format == "pretty")
      std::printf("# curvature-vs-metric checks skipped: no metric behind this connection\n");
  } else {
    MetricSpec spec = mopts.resolve();
    subject = spec.name;
    report = run_identity_suite(spec, vopts);
    print_header(out, "verify metric=" + subject);
    print_report(report, out);
  }
  double worst = 0.0;
  if (!report.asserted_pass(&worst)) {
    std::printf("# FAIL: asserted identities out of tolerance:\n");
    for (const IdentityResult& e : report.entries)
      if (e.asserted && !(e.max_residual <= e.tolerance))
        std::printf("#   %s max_residual=%s tolerance=%s\n", e.identity.c_str(),
                    fmt_double(e.max_residual, 17).c_str(), fmt_double(e.tolerance, 17).c_str());
    return kExitAssertFailed;
  }
  return kExitOk;
}

int cmd_residuals(const MetricOptions& mopts, const std::string& x0s, const std::string& v0s,
                  const IntegratorConfig& config, const OutputOptions& out) {
  MetricSpec spec = mopts.resolve();
  GeodesicState s0;
  s0.x = parse_doubles(x0s);
  s0.v = parse_doubles(v0s);
  if (static_cast<int>(s0.x.size()) != spec.dim || static_cast<int>(s0.v.size()) != spec.dim)
    throw BadParam("--x0/--v0 need " + std::to_string(spec.dim) + " components");

  print_header(out, "residuals metric=" + spec.name);
  Trajectory traj = integrate(spec, s0, config);
  StructuralReport report = geometrodynamics_residuals(spec, traj);
  std::printf("%s\n", report.to_json(out.digits()).c_str());
  if (traj.domain_exit) return kExitDomainExit;
  return report.asserted_pass() ? kExitOk : kExitAssertFailed;
}

int cmd_expm_demo(const std::string& entries, const std::string& v0s, const std::string& u0s,
                  double t, const OutputOptions& out) {
  std::vector<Vec> rows;
  std::stringstream ss(entries);
  std::string row;
  while (std::getline(ss, row, ';'))
    if (!row.empty()) rows.push_back(parse_doubles(row));
  const int n = static_cast<int>(rows.size());
  if (n == 0) throw BadParam("--w needs rows like \"0,-1;1,0\"");
  Mat w(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n) throw BadParam("--w must be square");
    for (int j = 0; j < n; ++j) w(i, j) = rows[i][j];
  }
  Vec v0 = v0s.empty() ? Vec(static_cast<std::size_t>(n), 1.0) : parse_doubles(v0s);
  Vec u0 = u0s.empty() ? Vec(static_cast<std::size_t>(n), 0.0) : parse_doubles(u0s);
  if (static_cast<int>(v0.size()) != n || static_cast<int>(u0.size()) != n)
    throw BadParam("--v0/--u0 need " + std::to_string(n) + " components");

  const int digits = out.digits();
  print_header(out, "expm-demo");
  Mat e = expm(-t * w);
  Vec vt = constant_w_velocity(w, v0, t);
  Vec ut = constant_w_position(w, v0, u0, t);
  if (out.format == "jsonl") {
    std::printf("{\"t\":%s,\"expm_minus_wt\":%s,\"v\":%s,\"u\":%s}\n", fmt_double(t, digits).c_str(),
                json_matrix(e, digits).c_str(), json_vector(vt, digits).c_str(),
                json_vector(ut, digits).c_str());
  } else {
    print_matrix("expm(-W t)", e, digits);
    std::printf("v(t) =");
    for (int i = 0; i < n; ++i) std::printf(" %s", fmt_double(vt[i], digits).c_str());
    std::printf("\nu(t) =");
    for (int i = 0; i < n; ++i) std::printf(" %s", fmt_double(ut[i], digits).c_str());
    std::printf("\n");
  }
  return kExitOk;
}

const std::vector<std::string>& tolerance_names() {
  static const std::vector<std::string> names = {
      "metric_inverse",      "compatibility",       "torsion_free",
      "riemann_symmetries",  "bianchi_first",       "bianchi_second",
      "commutator",          "geospin_lower_symmetry", "geospin_velocity_gradient",
      "geospin_contraction", "geospin_diagonal",    "geospin_q_invariant",
      "covariant_rewrite",   "torsion_form",        "curvature_form",
      "bianchi_form"};
  return names;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geodyn: differential-geometry computations and identity verification"};
  app.require_subcommand(1);

  CLI::App* metrics = app.add_subcommand("metrics", "metric catalog utilities");
  metrics->require_subcommand(1);
  CLI::App* metrics_list = metrics->add_subcommand("list", "print the built-in catalog");

  MetricOptions curvature_metric;
  std::string curvature_at;
  OutputOptions curvature_out;
  CLI::App* curvature_cmd = app.add_subcommand("curvature", "tensors at a point");
  add_metric_options(curvature_cmd, curvature_metric);
  curvature_cmd->add_option("--at", curvature_at, "point coordinates a,b,...")->required();
  add_output_options(curvature_cmd, curvature_out);

  MetricOptions geodesic_metric;
  std::string geo_x0, geo_v0, geo_method = "rk4";
  IntegratorConfig geo_config;
  OutputOptions geo_out;
  CLI::App* geodesic_cmd = app.add_subcommand("geodesic", "integrate a geodesic");
  add_metric_options(geodesic_cmd, geodesic_metric);
  geodesic_cmd->add_option("--x0", geo_x0, "initial point")->required();
  geodesic_cmd->add_option("--v0", geo_v0, "initial velocity")->required();
  geodesic_cmd->add_option("--t-end", geo_config.t_end, "integration end time")->required();
  geodesic_cmd->add_option("--dt", geo_config.dt, "RK4 step / RK45 initial step");
  geodesic_cmd->add_option("--method", geo_method, "rk4 | rk45")
      ->check(CLI::IsMember({"rk4", "rk45"}));
  geodesic_cmd->add_option("--abs-tol", geo_config.abs_tol, "RK45 absolute tolerance");
  geodesic_cmd->add_option("--rel-tol", geo_config.rel_tol, "RK45 relative tolerance");
  geodesic_cmd->add_option("--max-steps", geo_config.max_steps, "step limit");
  geodesic_cmd->add_option("--stride", geo_config.sample_stride, "record every k-th step");
  add_output_options(geodesic_cmd, geo_out);

  MetricOptions verify_metric;
  std::string verify_connection;
  VerifyOptions verify_opts;
  OutputOptions verify_out;
  std::map<std::string, double> tol_values;
  std::map<std::string, CLI::Option*> tol_options;
  CLI::App* verify_cmd = app.add_subcommand("verify", "run the identity suite");
  add_metric_options(verify_cmd, verify_metric);
  verify_cmd->add_option("--connection-file", verify_connection,
                         "custom connection JSON file (torsion checks only)");
  verify_cmd->add_option("--samples", verify_opts.samples, "sample points per identity");
  verify_cmd->add_option("--seed", verify_opts.seed, "sampling seed");
  for (const std::string& name : tolerance_names()) {
    std::string flag = "--tol-" + name;
    for (char& c : flag)
      if (c == '_') c = '-';
    tol_options[name] = verify_cmd->add_option(flag, tol_values[name], "tolerance override for " + name);
  }
  add_output_options(verify_cmd, verify_out);

  MetricOptions residuals_metric;
  std::string res_x0, res_v0, res_method = "rk4";
  IntegratorConfig res_config;
  OutputOptions res_out;
  CLI::App* residuals_cmd =
      app.add_subcommand("residuals", "geodesic run with the structural-equation report");
  add_metric_options(residuals_cmd, residuals_metric);
  residuals_cmd->add_option("--x0", res_x0, "initial point")->required();
  residuals_cmd->add_option("--v0", res_v0, "initial velocity")->required();
  residuals_cmd->add_option("--t-end", res_config.t_end, "integration end time")->required();
  residuals_cmd->add_option("--dt", res_config.dt, "RK4 step / RK45 initial step");
  residuals_cmd->add_option("--method", res_method, "rk4 | rk45")
      ->check(CLI::IsMember({"rk4", "rk45"}));
  residuals_cmd->add_option("--stride", res_config.sample_stride, "record every k-th step");
  add_output_options(residuals_cmd, res_out);

  std::string expm_w, expm_v0, expm_u0;
  double expm_t = 1.0;
  OutputOptions expm_out;
  CLI::App* expm_cmd = app.add_subcommand("expm-demo", "constant-W closed-form solution");
  expm_cmd->add_option("--w", expm_w, "matrix rows \"0,-1;1,0\"")->required();
  expm_cmd->add_option("--v0", expm_v0, "initial velocity");
  expm_cmd->add_option("--u0", expm_u0, "initial position");
  expm_cmd->add_option("--t", expm_t, "time");
  add_output_options(expm_cmd, expm_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  try {
    if (metrics_list->parsed()) {
      std::printf("%-22s %-12s %s\n", "name", "params", "summary");
      for (const CatalogEntry& e : catalog())
        std::printf("%-22s %-12s %s\n", e.name.c_str(), e.params.c_str(), e.summary.c_str());
      return kExitOk;
    }
    if (curvature_cmd->parsed())
      return cmd_curvature(curvature_metric, curvature_at, curvature_out);
    if (geodesic_cmd->parsed()) {
      geo_config.method = geo_method == "rk45" ? IntegratorConfig::Method::RK45
                                               : IntegratorConfig::Method::RK4;
      return cmd_geodesic(geodesic_metric, geo_x0, geo_v0, geo_config, geo_out);
    }
    if (verify_cmd->parsed()) {
      for (const auto& [name, opt] : tol_options)
        if (opt->count() > 0) verify_opts.tolerance_overrides[name] = tol_values[name];
      return cmd_verify(verify_metric, verify_connection, verify_opts, verify_out);
    }
    if (residuals_cmd->parsed()) {
      res_config.method = res_method == "rk45" ? IntegratorConfig::Method::RK45
                                               : IntegratorConfig::Method::RK4;
      return cmd_residuals(residuals_metric, res_x0, res_v0, res_config, res_out);
    }
    if (expm_cmd->parsed()) return cmd_expm_demo(expm_w, expm_v0, expm_u0, expm_t, expm_out);
  } catch (const MaxStepsExceeded& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitMaxSteps;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitBadInput;
  }
  return kExitOk;
}
