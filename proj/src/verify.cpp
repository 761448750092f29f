// geodyn - identity suite implementation.

#include "geodyn/verify.hpp"

#include <cmath>

namespace geodyn {

namespace {

// Margin keeping finite-difference stencils inside the guards.
constexpr double kInteriorMargin = 1e-3;

double tol_or(const VerifyOptions& opts, const std::string& name, double fallback) {
  auto it = opts.tolerance_overrides.find(name);
  return it == opts.tolerance_overrides.end() ? fallback : it->second;
}

struct Worst {
  double value = 0.0;
  void feed(double x) { value = std::max(value, x); }
};

}  // namespace

StructuralReport run_identity_suite(const MetricSpec& spec, const VerifyOptions& opts) {
  const int n = spec.dim;
  if (opts.samples < 1) throw Error("need at least one sample");
  Rng rng(opts.seed);
  VectorFieldSpec field = standard_test_field(n);

  Worst compat, inverse_id, symmetries, bianchi1, bianchi2, commutator, torsion_free;
  Worst gs_lower_sym, gs_eq_grad, gs_contraction, gs_diag, gs_qinv, gs_rewrite;
  Worst form_torsion, form_curv, form_bianchi;
  bool bianchi_form_vacuous = n < 3;

  for (int s = 0; s < opts.samples; ++s) {
    Vec x = sample_point(spec, rng, kInteriorMargin);
    Vec v = sample_velocity(n, rng);

    MetricJet jet = metric_jet(spec, x);
    Mat ginv = inverse_metric(jet.g);
    Christoffel chr = christoffel(jet);

    Mat gg = mat_mul(jet.g, ginv);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        inverse_id.feed(std::fabs(gg(i, j) - (i == j ? 1.0 : 0.0)));

    compat.feed(max_abs(compatibility_residual(jet, chr)));
    torsion_free.feed(max_abs(torsion(chr)));

    CurvaturePack pack = curvature(spec, x);
    symmetries.feed(riemann_symmetry_residual(pack.riemann_low));
    bianchi1.feed(first_bianchi_residual(pack.riemann_mixed));
    bianchi2.feed(second_bianchi_residual(spec, x));
    commutator.feed(commutator_curvature_residual(field, spec, x));

    GeospinMatrix gm = geospin(jet, chr, v);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        gs_lower_sym.feed(std::fabs(gm.w_lower(i, k) - gm.w_lower(k, i)));
    gs_eq_grad.feed(velocity_gradient_identity_residual(gm, jet));
    gs_contraction.feed(contraction_identity_residual(gm, jet));
    GeospinDiagonal diag = diagonal_elements(gm, jet, ginv);
    gs_diag.feed(std::fabs(diag.trace_of_w - diag.trace_via_dg));
    gs_diag.feed(std::fabs(diag.trace_of_w - diag.trace_via_wstar));
    gs_qinv.feed(acceleration_invariant_residual(gm, jet));
    gs_rewrite.feed(covariant_rewrite_residual(field, spec, x));

    FormFrame frame = form_frame(spec, x);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        form_torsion.feed(torsion_form_check(frame, a, b));
        form_curv.feed(max_abs(curvature_form_check(frame, a, b)));
      }
    if (!bianchi_form_vacuous)
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
          for (int c = b + 1; c < n; ++c) {
            BianchiFormResidual bf = bianchi_form_check(spec, x, a, b, c);
            form_bianchi.feed(bf.torsion_bianchi);
            form_bianchi.feed(bf.curvature_bianchi);
          }
  }

  long count = opts.samples;
  StructuralReport rep;
  auto add = [&](const std::string& name, double value, double tol, const std::string& interp,
                 const std::string& notes = "") {
    rep.entries.push_back({name, interp, value, true, tol_or(opts, name, tol), count, notes});
  };
  add("metric_inverse", inverse_id.value, 1e-12, "form-level", "g g^{-1} = I");
  add("compatibility", compat.value, 1e-11, "form-level",
      "d_k g_ij = g_lj Gamma^l_ki + g_il Gamma^l_kj");
  add("torsion_free", torsion_free.value, 0.0, "form-level");
  add("riemann_symmetries", symmetries.value, 1e-10, "form-level");
  add("bianchi_first", bianchi1.value, 1e-10, "form-level");
  add("bianchi_second", bianchi2.value, 1e-6, "form-level", "dR by finite differences");
  add("commutator", commutator.value, 1e-8, "form-level",
      "[nabla_i, nabla_j] v = R v with the standard test field");
  add("geospin_lower_symmetry", gs_lower_sym.value, 1e-12, "scalar-dynamical");
  add("geospin_velocity_gradient", gs_eq_grad.value, 1e-11, "scalar-dynamical",
      "d_k g_ij v^k = W*_ji + W*_ij");
  add("geospin_contraction", gs_contraction.value, 1e-11, "scalar-dynamical",
      "2 W_i^k v_k = v^l v^j d_i g_jl");
  add("geospin_diagonal", gs_diag.value, 1e-11, "scalar-dynamical",
      "trace of W via d(g) and via W*");
  add("geospin_q_invariant", gs_qinv.value, 1e-11, "scalar-dynamical",
      "Q = q v = 1/2 vvv d(g)");
  add("covariant_rewrite", gs_rewrite.value, 1e-12, "scalar-dynamical",
      "nabla v via Gamma versus via W");
  add("torsion_form", form_torsion.value, 1e-12, "form-level");
  add("curvature_form", form_curv.value, 1e-9, "form-level",
      "structure-equation coefficients against the curvature tensor");
  if (bianchi_form_vacuous) {
    rep.entries.push_back({"bianchi_form", "form-level", 0.0, false, 0.0, count,
                           "vacuous (no 3-forms in dimension 2)"});
  } else {
    add("bianchi_form", form_bianchi.value, 1e-5, "form-level",
        "d of the 2-form coefficients by finite differences");
  }
  return rep;
}

StructuralReport run_connection_suite(const CustomConnection& conn, const VerifyOptions& opts) {
  const int n = conn.dim;
  if (opts.samples < 1) throw Error("need at least one sample");
  Rng rng(opts.seed);

  Worst form_torsion, torsion_def;
  for (int s = 0; s < opts.samples; ++s) {
    Vec x(static_cast<std::size_t>(n));
    for (int attempt = 0;; ++attempt) {
      for (int k = 0; k < n; ++k)
        x[k] = rng.uniform(conn.sample_box[k].first, conn.sample_box[k].second);
      if (conn.in_domain(x)) break;
      if (attempt > 10000) throw Error("could not sample an in-domain point");
    }
    FormFrame frame = form_frame(conn, x);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) form_torsion.feed(torsion_form_check(frame, a, b));
    // T antisymmetry by construction.
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          torsion_def.feed(std::fabs(frame.torsion_t(k, i, j) + frame.torsion_t(k, j, i)));
  }

  long count = opts.samples;
  StructuralReport rep;
  rep.entries.push_back({"torsion_form", "form-level", form_torsion.value, true,
                         opts.tolerance_overrides.count("torsion_form")
                             ? opts.tolerance_overrides.at("torsion_form")
                             : 1e-14,
                         count, "both sides reproduce T^i_ab"});
  rep.entries.push_back({"torsion_antisymmetry", "form-level", torsion_def.value, true, 0.0,
                         count, ""});
  rep.entries.push_back({"curvature_form", "form-level", 0.0, false, 0.0, 0,
                         "skipped: connection has no metric to compare curvature against"});
  return rep;
}

}  // namespace geodyn
