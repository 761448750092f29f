// geodyn - geodesic integration, matrix exponential, constant-W solutions.

#include "geodyn/geodesic.hpp"

#include <cmath>

#include "geodyn/connection.hpp"
#include "geodyn/geospin.hpp"

namespace geodyn {

namespace {

// Flattened phase-space vector (x, v) for the steppers.
Vec pack(const Vec& x, const Vec& v) {
  Vec y(x.size() + v.size());
  std::copy(x.begin(), x.end(), y.begin());
  std::copy(v.begin(), v.end(), y.begin() + static_cast<long>(x.size()));
  return y;
}

struct Rhs {
  const MetricSpec& spec;
  int n;

  Vec operator()(const Vec& y) const {
    Vec x(y.begin(), y.begin() + n);
    Vec v(y.begin() + n, y.end());
    spec.require_in_domain(x);
    Christoffel chr = christoffel(spec, x);
    Vec dy(y.size());
    for (int k = 0; k < n; ++k) dy[k] = v[k];
    for (int k = 0; k < n; ++k) {
      double a = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a += chr.gamma(k, i, j) * v[i] * v[j];
      dy[n + k] = -a;
    }
    return dy;
  }
};

Vec axpy(const Vec& y, double h, const Vec& k) {
  Vec r(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) r[i] = y[i] + h * k[i];
  return r;
}

Vec rk4_step(const Rhs& f, const Vec& y, double h) {
  Vec k1 = f(y);
  Vec k2 = f(axpy(y, 0.5 * h, k1));
  Vec k3 = f(axpy(y, 0.5 * h, k2));
  Vec k4 = f(axpy(y, h, k3));
  Vec r(y.size());
  for (std::size_t i = 0; i < y.size(); ++i)
    r[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return r;
}

// Fehlberg 4(5) pair; returns the 5th-order update and the embedded error.
void rkf45_step(const Rhs& f, const Vec& y, double h, Vec& y5, Vec& err) {
  Vec k1 = f(y);
  Vec k2 = f(axpy(y, h * 0.25, k1));
  Vec s3(y.size());
  for (std::size_t i = 0; i < y.size(); ++i)
    s3[i] = y[i] + h * (3.0 / 32.0 * k1[i] + 9.0 / 32.0 * k2[i]);
  Vec k3 = f(s3);
  Vec s4(y.size());
  for (std::size_t i = 0; i < y.size(); ++i)
    s4[i] = y[i] + h * (1932.0 / 2197.0 * k1[i] - 7200.0 / 2197.0 * k2[i] +
                        7296.0 / 2197.0 * k3[i]);
  Vec k4 = f(s4);
  Vec s5(y.size());
  for (std::size_t i = 0; i < y.size(); ++i)
    s5[i] = y[i] + h * (439.0 / 216.0 * k1[i] - 8.0 * k2[i] + 3680.0 / 513.0 * k3[i] -
                        845.0 / 4104.0 * k4[i]);
  Vec k5 = f(s5);
  Vec s6(y.size());
  for (std::size_t i = 0; i < y.size(); ++i)
    s6[i] = y[i] + h * (-8.0 / 27.0 * k1[i] + 2.0 * k2[i] - 3544.0 / 2565.0 * k3[i] +
                        1859.0 / 4104.0 * k4[i] - 11.0 / 40.0 * k5[i]);
  Vec k6 = f(s6);

  y5.resize(y.size());
  err.resize(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    double y4i = y[i] + h * (25.0 / 216.0 * k1[i] + 1408.0 / 2565.0 * k3[i] +
                             2197.0 / 4104.0 * k4[i] - 1.0 / 5.0 * k5[i]);
    y5[i] = y[i] + h * (16.0 / 135.0 * k1[i] + 6656.0 / 12825.0 * k3[i] +
                        28561.0 / 56430.0 * k4[i] - 9.0 / 50.0 * k5[i] + 2.0 / 55.0 * k6[i]);
    err[i] = y5[i] - y4i;
  }
}

}  // namespace

std::pair<Vec, Vec> geodesic_rhs(const MetricSpec& spec, const GeodesicState& state) {
  Rhs f{spec, spec.dim};
  Vec dy = f(pack(state.x, state.v));
  Vec dx(dy.begin(), dy.begin() + spec.dim);
  Vec dv(dy.begin() + spec.dim, dy.end());
  return {dx, dv};
}

namespace {

TrajectorySample make_sample(const MetricSpec& spec, double t, const Vec& x, const Vec& v) {
  const int n = spec.dim;
  MetricJet jet = metric_jet(spec, x);
  TrajectorySample s;
  s.t = t;
  s.x = x;
  s.v = v;
  s.speed2 = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s.speed2 += jet.g(i, j) * v[i] * v[j];
  // Q = 1/2 v^l v^j v^i d_i g_jl
  s.q_invariant = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l)
        s.q_invariant += 0.5 * v[l] * v[j] * v[i] * jet.dg(i, j, l);
  return s;
}

}  // namespace

Trajectory integrate(const MetricSpec& spec, const GeodesicState& state0,
                     const IntegratorConfig& config) {
  if (!(config.dt > 0.0)) throw Error("dt must be positive");
  if (!(config.t_end > state0.t)) throw Error("t_end must exceed the initial time");
  if (!(config.abs_tol > 0.0) || !(config.rel_tol > 0.0))
    throw Error("tolerances must be positive");
  if (config.sample_stride < 1) throw Error("sample stride must be at least 1");

  const int n = spec.dim;
  spec.require_in_domain(state0.x);
  Rhs f{spec, n};

  Trajectory traj;
  traj.samples.push_back(make_sample(spec, state0.t, state0.x, state0.v));

  double t = state0.t;
  Vec y = pack(state0.x, state0.v);
  auto record = [&](double tt, const Vec& yy) {
    if (tt <= traj.samples.back().t) return;  // keep t strictly increasing
    Vec x(yy.begin(), yy.begin() + n);
    Vec v(yy.begin() + n, yy.end());
    traj.samples.push_back(make_sample(spec, tt, x, v));
  };

  if (config.method == IntegratorConfig::Method::RK4) {
    long step = 0;
    while (t < config.t_end - 1e-15 * std::max(1.0, std::fabs(config.t_end))) {
      if (++step > config.max_steps) throw MaxStepsExceeded("step limit reached");
      double h = std::min(config.dt, config.t_end - t);
      Vec y_next;
      try {
        y_next = rk4_step(f, y, h);
        Vec x_next(y_next.begin(), y_next.begin() + n);
        spec.require_in_domain(x_next);
      } catch (const OutOfDomain& e) {
        traj.domain_exit = true;
        traj.exit_guard = e.guard;
        record(t, y);  // last valid state, whatever the stride
        break;
      } catch (const DegenerateMetric&) {
        // Ill-conditioning just short of a guard (e.g. a horizon) ends the
        // trajectory the same way a guard crossing does.
        traj.domain_exit = true;
        traj.exit_guard = "metric degenerate";
        record(t, y);
        break;
      }
      y = std::move(y_next);
      t += h;
      ++traj.steps_taken;
      if (traj.steps_taken % config.sample_stride == 0 ||
          t >= config.t_end - 1e-12 * std::max(1.0, std::fabs(config.t_end)))
        record(t, y);
    }
    return traj;
  }

  // Adaptive RK45: shrink on error rejection, and shrink toward the boundary
  // when a stage evaluation leaves the domain.
  double h = std::min(config.dt, config.t_end - t);
  long step = 0;
  int domain_shrinks = 0;
  while (t < config.t_end - 1e-15 * std::max(1.0, std::fabs(config.t_end))) {
    if (++step > config.max_steps) throw MaxStepsExceeded("step limit reached");
    h = std::min(h, config.t_end - t);
    Vec y5, err;
    std::string guard;
    bool out = false;
    try {
      rkf45_step(f, y, h, y5, err);
      Vec x_next(y5.begin(), y5.begin() + n);
      std::string which;
      if (!spec.in_domain(x_next, &which)) {
        out = true;
        guard = which;
      }
    } catch (const OutOfDomain& e) {
      out = true;
      guard = e.guard;
    } catch (const DegenerateMetric&) {
      out = true;
      guard = "metric degenerate";
    }
    if (out) {
      if (++domain_shrinks > 60) {
        traj.domain_exit = true;
        traj.exit_guard = guard;
        record(t, y);
        break;
      }
      h *= 0.5;
      continue;
    }
    domain_shrinks = 0;

    double norm2 = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      double scale = config.abs_tol +
                     config.rel_tol * std::max(std::fabs(y[i]), std::fabs(y5[i]));
      double e = err[i] / scale;
      norm2 += e * e;
    }
    double err_norm = std::sqrt(norm2 / static_cast<double>(y.size()));
    if (err_norm <= 1.0) {
      t += h;
      y = std::move(y5);
      ++traj.steps_taken;
      if (traj.steps_taken % config.sample_stride == 0 ||
          t >= config.t_end - 1e-12 * std::max(1.0, std::fabs(config.t_end)))
        record(t, y);
    } else {
      ++traj.steps_rejected;
    }
    double factor = err_norm > 0.0 ? 0.9 * std::pow(err_norm, -0.2) : 5.0;
    h *= std::min(5.0, std::max(0.2, factor));
  }
  return traj;
}

SpeedReport conserved_speed_report(const Trajectory& traj, const MetricSpec& spec) {
  if (traj.samples.empty()) throw Error("empty trajectory");
  const int n = spec.dim;
  SpeedReport rep{0.0, 0.0, 0.0};
  double speed0 = traj.samples.front().speed2;
  for (const TrajectorySample& s : traj.samples) {
    rep.max_speed_drift = std::max(rep.max_speed_drift, std::fabs(s.speed2 - speed0));
    GeodesicState st{s.t, s.x, s.v};
    auto [dx, dv] = geodesic_rhs(spec, st);
    MetricJet jet = metric_jet(spec, s.x);
    double gav = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) gav += jet.g(i, j) * dv[i] * s.v[j];
    rep.max_q_accel_residual =
        std::max(rep.max_q_accel_residual, std::fabs(s.q_invariant + gav));
    // a from the direct Gamma contraction vs q from the geospin assembly.
    GeospinMatrix gm = geospin(jet, christoffel(jet), s.v);
    Vec q = geometric_acceleration(gm).q;
    for (int k = 0; k < n; ++k)
      rep.max_accel_vs_q = std::max(rep.max_accel_vs_q, std::fabs(dv[k] + q[k]));
  }
  return rep;
}

Mat expm(const Mat& m) {
  const int n = m.n;
  for (double x : m.a)
    if (!std::isfinite(x)) throw OverflowError("non-finite matrix entry");

  double norm = norm_inf(m);
  if (norm > 350.0) throw OverflowError("matrix norm too large for expm");

  int squarings = 0;
  Mat a = m;
  while (norm_inf(a) > 0.5) {
    a = 0.5 * a;
    ++squarings;
  }

  // exp(a) by Taylor; at ||a|| <= 1/2 thirty terms are far below 1e-16.
  Mat result = Mat::identity(n);
  Mat term = Mat::identity(n);
  for (int k = 1; k <= 30; ++k) {
    term = (1.0 / k) * mat_mul(term, a);
    result = result + term;
    if (norm_inf(term) < 1e-20 * std::max(1.0, norm_inf(result))) break;
  }
  for (int s = 0; s < squarings; ++s) result = mat_mul(result, result);

  for (double x : result.a)
    if (!std::isfinite(x)) throw OverflowError("expm overflowed");
  return result;
}

Vec constant_w_velocity(const Mat& w0, const Vec& v0, double t) {
  return mat_vec(expm(-t * w0), v0);
}

Vec constant_w_position(const Mat& w0, const Vec& v0, const Vec& u0, double t) {
  const int n = w0.n;
  if (static_cast<int>(v0.size()) != n || static_cast<int>(u0.size()) != n)
    throw DimensionMismatch("constant_w_position dimension mismatch");

  Vec u = u0;
  Vec term(v0);
  for (double& c : term) c *= t;  // m = 0 term: v0 t
  for (int m = 0;; ++m) {
    for (int i = 0; i < n; ++i) u[i] += term[i];
    if (max_abs(term) < 1e-15 && m > 0) break;
    if (m >= 500) throw SeriesNotConverged("position series did not converge in 500 terms");
    Vec next = mat_vec(w0, term);
    double c = -t / static_cast<double>(m + 2);
    for (int i = 0; i < n; ++i) next[i] *= c;
    term = std::move(next);
    if (max_abs(term) == 0.0) break;  // nilpotent or zero W0: series is exact
  }
  return u;
}

}  // namespace geodyn
