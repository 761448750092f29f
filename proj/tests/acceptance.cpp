// Acceptance suite: one line per criterion, PASS/FAIL with the worst
// measured value against the pinned tolerance.  Exit status is the number
// of failed criteria.

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "geodyn/cartan.hpp"
#include "geodyn/curvature.hpp"
#include "geodyn/geodesic.hpp"
#include "geodyn/verify.hpp"
#include "oracles.hpp"

using namespace geodyn;

namespace {

constexpr double kPi = 3.141592653589793;

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {
      "euclidean",           "polar2",    "sphere",        "sphere-stereographic",
      "poincare-half-plane", "torus",     "minkowski",     "schwarzschild",
      "sphere-cross-line"};
  return names;
}

struct GeodesicRun {
  const char* metric;
  Vec x0, v0;
};

const std::vector<GeodesicRun>& geodesic_runs() {
  static const std::vector<GeodesicRun> runs = {
      {"euclidean", {0.0, 0.0}, {1.0, 0.5}},
      {"polar2", {1.0, 0.0}, {0.0, 1.0}},
      {"sphere", {kPi / 2.0, 0.0}, {0.3, 1.0}},
      {"sphere-stereographic", {0.5, 0.0}, {0.0, 1.0}},
      {"poincare-half-plane", {0.0, 1.0}, {0.0, 1.0}},
      {"torus", {0.0, 0.0}, {0.0, 1.0}},
      {"minkowski", {0.0, 0.0, 0.0, 0.0}, {1.0, 0.2, 0.3, 0.1}},
      {"schwarzschild", {0.0, 6.0, kPi / 2.0, 0.0}, {1.0, 0.0, 0.0, 0.04811252243246881}},
      {"sphere-cross-line", {kPi / 2.0, 0.0, 0.0}, {0.0, 1.0, 0.3}},
  };
  return runs;
}

struct Tracker {
  double worst = 0.0;
  bool ok = true;
  void feed(double value, double tol) {
    worst = std::max(worst, value);
    if (!(value <= tol)) ok = false;
  }
};

// ---- criterion 1: Christoffel against FD oracle and closed forms ----------

bool criterion_christoffel(std::string& detail) {
  Tracker fd_t, closed_t;
  for (const char* name : {"sphere", "polar2", "poincare-half-plane"}) {
    MetricSpec spec = builtin(name);
    Rng rng(1001);
    for (int s = 0; s < 50; ++s) {
      Vec x = sample_point(spec, rng);
      Christoffel chr = christoffel(spec, x);
      Tensor3 oracle = oracles::fd_christoffel(spec, x);
      for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j)
            fd_t.feed(std::fabs(chr.gamma(k, i, j) - oracle(k, i, j)), 1e-7);
      if (std::string(name) == "sphere") {
        closed_t.feed(std::fabs(chr.gamma(0, 1, 1) + std::sin(x[0]) * std::cos(x[0])), 1e-11);
        closed_t.feed(std::fabs(chr.gamma(1, 0, 1) - std::cos(x[0]) / std::sin(x[0])), 1e-11);
      } else if (std::string(name) == "polar2") {
        closed_t.feed(std::fabs(chr.gamma(0, 1, 1) + x[0]), 1e-11);
        closed_t.feed(std::fabs(chr.gamma(1, 0, 1) - 1.0 / x[0]), 1e-11);
      } else {
        closed_t.feed(std::fabs(chr.gamma(0, 0, 1) + 1.0 / x[1]), 1e-11);
        closed_t.feed(std::fabs(chr.gamma(1, 0, 0) - 1.0 / x[1]), 1e-11);
      }
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "fd-oracle worst %.3g (tol 1e-7), closed-form worst %.3g (tol 1e-11)",
                fd_t.worst, closed_t.worst);
  detail = buf;
  return fd_t.ok && closed_t.ok;
}

// ---- criterion 2: metric compatibility ------------------------------------

bool criterion_compatibility(std::string& detail) {
  Tracker t;
  for (const std::string& name : catalog_names()) {
    MetricSpec spec = builtin(name);
    Rng rng(1002);
    for (int s = 0; s < 100; ++s) {
      Vec x = sample_point(spec, rng);
      t.feed(max_abs(compatibility_residual(spec, x)), 1e-11);
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "worst %.3g (tol 1e-11), 9 metrics x 100 points", t.worst);
  detail = buf;
  return t.ok;
}

// ---- criterion 3: curvature scalars ----------------------------------------

bool criterion_scalars(std::string& detail) {
  Tracker t;
  for (const char* name : {"sphere", "sphere-stereographic"}) {
    MetricSpec spec = builtin(name, {{"r", 1.0}});
    Rng rng(1003);
    for (int s = 0; s < 50; ++s)
      t.feed(std::fabs(curvature(spec, sample_point(spec, rng)).scalar - 2.0), 1e-8);
  }
  {
    MetricSpec spec = builtin("poincare-half-plane");
    Rng rng(1004);
    for (int s = 0; s < 50; ++s)
      t.feed(std::fabs(curvature(spec, sample_point(spec, rng)).scalar + 2.0), 1e-8);
  }
  for (const char* name : {"euclidean", "polar2", "minkowski"}) {
    MetricSpec spec = builtin(name);
    Rng rng(1005);
    for (int s = 0; s < 50; ++s)
      t.feed(std::fabs(curvature(spec, sample_point(spec, rng)).scalar), 1e-10);
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "worst deviation %.3g (tol 1e-8 curved, 1e-10 flat)", t.worst);
  detail = buf;
  return t.ok;
}

// ---- criterion 4: Riemann symmetries and both Bianchi identities ----------

bool criterion_bianchi(std::string& detail) {
  Tracker sym_t, b2_t;
  for (const std::string& name : catalog_names()) {
    MetricSpec spec = builtin(name);
    Rng rng(1006);
    int points = spec.dim >= 4 ? 10 : 20;
    for (int s = 0; s < points; ++s) {
      Vec x = sample_point(spec, rng, 1e-3);
      CurvaturePack pack = curvature(spec, x);
      sym_t.feed(riemann_symmetry_residual(pack.riemann_low), 1e-10);
      sym_t.feed(first_bianchi_residual(pack.riemann_mixed), 1e-10);
      b2_t.feed(second_bianchi_residual(spec, x), 1e-6);
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "algebraic worst %.3g (tol 1e-10), second worst %.3g (tol 1e-6)",
                sym_t.worst, b2_t.worst);
  detail = buf;
  return sym_t.ok && b2_t.ok;
}

// ---- criterion 5: commutator identity --------------------------------------

bool criterion_commutator(std::string& detail) {
  MetricSpec spec = builtin("sphere", {{"r", 1.0}});
  VectorFieldSpec field = standard_test_field(2);
  Tracker t;
  Rng rng(1007);
  for (int s = 0; s < 20; ++s)
    t.feed(commutator_curvature_residual(field, spec, sample_point(spec, rng)), 1e-8);
  char buf[96];
  std::snprintf(buf, sizeof buf, "worst %.3g (tol 1e-8), sphere(1), 20 points", t.worst);
  detail = buf;
  return t.ok;
}

// ---- criterion 6: geospin identities ---------------------------------------

bool criterion_geospin(std::string& detail) {
  Tracker sym_t, id_t;
  for (const std::string& name : catalog_names()) {
    MetricSpec spec = builtin(name);
    Rng rng(1008);
    for (int s = 0; s < 100; ++s) {
      Vec x = sample_point(spec, rng);
      Vec v = sample_velocity(spec.dim, rng);
      MetricJet jet = metric_jet(spec, x);
      Mat ginv = inverse_metric(jet.g);
      GeospinMatrix gm = geospin(jet, christoffel(jet), v);
      for (int i = 0; i < spec.dim; ++i)
        for (int k = 0; k < spec.dim; ++k)
          sym_t.feed(std::fabs(gm.w_lower(i, k) - gm.w_lower(k, i)), 1e-12);
      id_t.feed(velocity_gradient_identity_residual(gm, jet), 1e-11);
      id_t.feed(contraction_identity_residual(gm, jet), 1e-11);
      GeospinDiagonal diag = diagonal_elements(gm, jet, ginv);
      id_t.feed(std::fabs(diag.trace_via_dg - diag.trace_via_wstar), 1e-11);
      id_t.feed(std::fabs(diag.trace_of_w - diag.trace_via_dg), 1e-11);
      id_t.feed(acceleration_invariant_residual(gm, jet), 1e-11);
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof buf,
                "lowered-symmetry worst %.3g (tol 1e-12), identity worst %.3g (tol 1e-11)",
                sym_t.worst, id_t.worst);
  detail = buf;
  return sym_t.ok && id_t.ok;
}

// ---- criterion 7: geodesic integration -------------------------------------

bool criterion_integration(std::string& detail) {
  bool ok = true;
  // Equator advance.
  MetricSpec sphere = builtin("sphere", {{"r", 1.0}});
  IntegratorConfig config;
  config.t_end = kPi;
  config.dt = 1e-3;
  Trajectory traj = integrate(sphere, {0.0, {kPi / 2.0, 0.0}, {0.0, 1.0}}, config);
  double phi_err = std::fabs(traj.samples.back().x[1] - kPi);
  ok = ok && phi_err <= 1e-8;
  ok = ok && conserved_speed_report(traj, sphere).max_speed_drift <= 1e-8;

  // Speed conservation across the catalog, t in [0, 10], dt = 1e-3.
  double worst_drift = 0.0;
  for (const GeodesicRun& run : geodesic_runs()) {
    MetricSpec spec = builtin(run.metric);
    IntegratorConfig cfg;
    cfg.t_end = 10.0;
    cfg.dt = 1e-3;
    cfg.sample_stride = 20;
    Trajectory tr = integrate(spec, {0.0, run.x0, run.v0}, cfg);
    if (tr.domain_exit) ok = false;
    double drift = conserved_speed_report(tr, spec).max_speed_drift;
    worst_drift = std::max(worst_drift, drift);
    if (!(drift <= 1e-8)) ok = false;
  }

  // RK4 order ratio under step halving.
  GeodesicState s0{0.0, {kPi / 2.0, 0.0}, {0.6, 0.8}};
  Vec p0{1.0, 0.0, 0.0}, u{0.0, 0.8, -0.6};
  auto exact_chart = [&](double t) {
    Vec p(3);
    for (int i = 0; i < 3; ++i) p[i] = std::cos(t) * p0[i] + std::sin(t) * u[i];
    return Vec{std::acos(p[2]), std::atan2(p[1], p[0])};
  };
  auto endpoint_error = [&](double dt) {
    IntegratorConfig cfg;
    cfg.t_end = 1.0;
    cfg.dt = dt;
    Trajectory tr = integrate(sphere, s0, cfg);
    Vec exact = exact_chart(1.0);
    return std::hypot(tr.samples.back().x[0] - exact[0], tr.samples.back().x[1] - exact[1]);
  };
  double ratio = endpoint_error(0.02) / endpoint_error(0.01);
  ok = ok && ratio >= 12.0 && ratio <= 20.0;

  char buf[128];
  std::snprintf(buf, sizeof buf, "phi err %.3g, worst drift %.3g (tol 1e-8), order ratio %.1f",
                phi_err, worst_drift, ratio);
  detail = buf;
  return ok;
}

// ---- criterion 8: constant-W closed forms ----------------------------------

bool criterion_constant_w(std::string& detail) {
  bool ok = true;
  double worst = 0.0;

  Mat rot(2);
  rot(0, 1) = -1.0;
  rot(1, 0) = 1.0;
  Mat diag(2);
  diag(0, 0) = 0.4;
  diag(1, 1) = -0.9;
  for (const Mat& w : {rot, diag}) {
    for (double t : {0.5, 1.0, 2.0, 3.5, 5.0}) {
      Vec closed = constant_w_velocity(w, {1.0, -0.5}, t);
      Vec numeric = oracles::rk4_linear(w, {1.0, -0.5}, t, 5e-4);
      for (int i = 0; i < 2; ++i) worst = std::max(worst, std::fabs(closed[i] - numeric[i]));
    }
  }
  ok = ok && worst <= 1e-8;

  // Position series derivative against the velocity solution.
  double worst_deriv = 0.0;
  Vec v0{0.7, -0.3}, u0{1.0, 1.0};
  for (double t : {0.5, 1.5, 3.0}) {
    double h = 1e-2;
    for (int comp = 0; comp < 2; ++comp) {
      double um2 = constant_w_position(rot, v0, u0, t - 2 * h)[comp];
      double um1 = constant_w_position(rot, v0, u0, t - h)[comp];
      double up1 = constant_w_position(rot, v0, u0, t + h)[comp];
      double up2 = constant_w_position(rot, v0, u0, t + 2 * h)[comp];
      double deriv = (um2 - 8.0 * um1 + 8.0 * up1 - up2) / (12.0 * h);
      worst_deriv = std::max(worst_deriv,
                             std::fabs(deriv - constant_w_velocity(rot, v0, t)[comp]));
    }
  }
  ok = ok && worst_deriv <= 1e-9;

  // u-hat(0, t) = 0 exactly: with W = 0 the position is u0 + v0 t bit for bit.
  Mat zero(2);
  Vec u = constant_w_position(zero, {0.3, -0.7}, {2.0, 1.0}, 4.0);
  bool exact = u[0] == 2.0 + 0.3 * 4.0 && u[1] == 1.0 + (-0.7) * 4.0;
  ok = ok && exact;

  char buf[128];
  std::snprintf(buf, sizeof buf,
                "expm-vs-rk4 worst %.3g (tol 1e-8), derivative worst %.3g (tol 1e-9), uhat0 %s",
                worst, worst_deriv, exact ? "exact" : "NOT exact");
  detail = buf;
  return ok;
}

// ---- criterion 9: form-level structural equations ---------------------------

bool criterion_forms(std::string& detail) {
  Tracker curv_t, tors_t, bianchi_t;
  for (const std::string& name : catalog_names()) {
    MetricSpec spec = builtin(name);
    Rng rng(1009);
    for (int s = 0; s < 50; ++s) {
      Vec x = sample_point(spec, rng);
      FormFrame frame = form_frame(spec, x);
      for (int a = 0; a < spec.dim; ++a)
        for (int b = a + 1; b < spec.dim; ++b) {
          curv_t.feed(max_abs(curvature_form_check(frame, a, b)), 1e-9);
          tors_t.feed(torsion_form_check(frame, a, b), 1e-14);
        }
    }
  }
  // Synthetic torsionful connection reproduces T on both sides.
  CustomConnection twist = parse_connection_json(
      R"({"name":"twist","dim":2,"gamma":{"1,1,2":"1"},"sample_box":[[-1,1],[-1,1]]})");
  FormFrame frame = form_frame(twist, {0.2, 0.1});
  tors_t.feed(torsion_form_check(frame, 0, 1), 1e-14);
  bool twist_ok = std::fabs(frame.torsion_t(0, 0, 1) - 1.0) <= 1e-14;

  // 3-form checks on the n = 3 catalog entry.
  MetricSpec prod = builtin("sphere-cross-line");
  Rng rng(1010);
  for (int s = 0; s < 20; ++s) {
    Vec x = sample_point(prod, rng, 1e-3);
    BianchiFormResidual r = bianchi_form_check(prod, x, 0, 1, 2);
    bianchi_t.feed(r.torsion_bianchi, 1e-5);
    bianchi_t.feed(r.curvature_bianchi, 1e-5);
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "curvature-form worst %.3g (tol 1e-9), torsion-form worst %.3g (tol 1e-14), "
                "3-form worst %.3g (tol 1e-5)",
                curv_t.worst, tors_t.worst, bianchi_t.worst);
  detail = buf;
  return curv_t.ok && tors_t.ok && bianchi_t.ok && twist_ok;
}

// ---- criterion 10: geometrodynamics report ----------------------------------

bool criterion_geometrodynamics(std::string& detail) {
  bool ok = true;
  double worst_geo = 0.0, worst_rhs = 0.0;
  for (const GeodesicRun& run : geodesic_runs()) {
    MetricSpec spec = builtin(run.metric);
    IntegratorConfig cfg;
    cfg.t_end = 2.0;
    cfg.dt = 1e-2;
    cfg.sample_stride = 5;
    Trajectory tr = integrate(spec, {0.0, run.x0, run.v0}, cfg);
    StructuralReport rep = geometrodynamics_residuals(spec, tr);
    for (const IdentityResult& e : rep.entries) {
      if (e.identity == "R_geo") {
        worst_geo = std::max(worst_geo, e.max_residual);
        if (!(e.max_residual <= 1e-9)) ok = false;
      }
      if (e.identity == "curvature_rhs_contraction") {
        worst_rhs = std::max(worst_rhs, e.max_residual);
        if (!(e.max_residual <= 1e-13)) ok = false;
      }
      if (e.identity == "R_curv" && e.asserted) ok = false;  // measured, never asserted
    }
  }

  // Interpretation-gap measurement on the flat-polar radial geodesic:
  // (alpha - W W)(theta,theta) = -2/r(t)^2.
  MetricSpec polar = builtin("polar2");
  IntegratorConfig cfg;
  cfg.t_end = 2.0;
  cfg.dt = 1e-3;
  cfg.sample_stride = 50;
  Trajectory tr = integrate(polar, {0.0, {2.0, 0.0}, {1.0, 0.0}}, cfg);
  double worst_gap = 0.0;
  for (const TrajectorySample& s : tr.samples) {
    DynState ds = dyn_state(polar, {s.t, s.x, s.v});
    Mat ww = mat_mul(ds.w, ds.w);
    double measured = ds.alpha(1, 1) - ww(1, 1);
    worst_gap = std::max(worst_gap, std::fabs(measured + 2.0 / (s.x[0] * s.x[0])));
  }
  ok = ok && worst_gap <= 1e-8;

  char buf[160];
  std::snprintf(buf, sizeof buf,
                "R_geo worst %.3g (tol 1e-9), rhs-contraction worst %.3g (tol 1e-13), "
                "flat-polar gap dev %.3g (tol 1e-8)",
                worst_geo, worst_rhs, worst_gap);
  detail = buf;
  return ok;
}

// ---- criterion 11: CLI determinism and exit codes ---------------------------

struct CliResult {
  int exit_code;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  std::string cmd = std::string(GEODYN_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

bool criterion_cli(std::string& detail) {
  std::string args = "verify --metric sphere --samples 30 --seed 0 --format jsonl --no-header";
  CliResult a = run_cli(args);
  CliResult b = run_cli(args);
  bool deterministic = a.exit_code == 0 && b.exit_code == 0 && !a.out.empty() && a.out == b.out;

  CliResult bad_point = run_cli("curvature --metric polar2 --at 0,1");
  CliResult plunge = run_cli(
      "geodesic --metric schwarzschild --x0 0,3,1.5707963267948966,0 --v0 1,-0.5,0,0 "
      "--t-end 40 --dt 0.001 --stride 100 --no-header --format csv");
  std::string asym_path = "/tmp/geodyn_acceptance_asym.json";
  {
    std::ofstream f(asym_path);
    f << R"({"name":"broken","dim":2,"components":{"1,2":"x1","2,1":"x2"}})";
  }
  CliResult bad_file = run_cli("verify --metric-file " + asym_path + " --samples 5");

  bool codes = bad_point.exit_code == 2 && plunge.exit_code == 3 && bad_file.exit_code == 2;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "deterministic=%s, exit codes: out-of-domain=%d plunge=%d bad-file=%d",
                deterministic ? "yes" : "NO", bad_point.exit_code, plunge.exit_code,
                bad_file.exit_code);
  detail = buf;
  return deterministic && codes;
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    const char* title;
    std::function<bool(std::string&)> fn;
  };
  const std::vector<Criterion> criteria = {
      {1, "Christoffel correctness", criterion_christoffel},
      {2, "metric compatibility", criterion_compatibility},
      {3, "curvature scalar values", criterion_scalars},
      {4, "Riemann symmetries and Bianchi identities", criterion_bianchi},
      {5, "covariant-derivative commutator", criterion_commutator},
      {6, "geospin identities", criterion_geospin},
      {7, "geodesic integration", criterion_integration},
      {8, "constant-W closed forms", criterion_constant_w},
      {9, "Cartan form-level checks", criterion_forms},
      {10, "geometrodynamics report", criterion_geometrodynamics},
      {11, "CLI determinism and exit codes", criterion_cli},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    std::string detail;
    bool ok = false;
    try {
      ok = c.fn(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    std::printf("criterion %2d %s: %s (%s)\n", c.number, ok ? "PASS" : "FAIL", c.title,
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failed;
  }
  std::printf("acceptance: %zu/%zu criteria passed\n", criteria.size() - failed,
              criteria.size());
  return failed;
}
