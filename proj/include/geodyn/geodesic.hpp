// geodyn - geodesic integration and the constant-coefficient closed forms.
//
// The geodesic system is integrated first-order in (x, v):
//   dx^k/dt = v^k
//   dv^k/dt = -Gamma^k_ij v^i v^j   ( = -W_j^k v^j, the two assemblies agree
//                                     for the symmetric connection)
// with t an affine parameter throughout.  Leaving the chart domain is a
// reported terminal event, not an error.

#ifndef GEODYN_GEODESIC_HPP
#define GEODYN_GEODESIC_HPP

#include <string>
#include <vector>

#include "geodyn/metric.hpp"

namespace geodyn {

struct GeodesicState {
  double t = 0.0;
  Vec x;
  Vec v;
};

struct TrajectorySample {
  double t;
  Vec x;
  Vec v;
  double speed2;  // g_ij v^i v^j
  double q_invariant;  // Q = q^k v_k
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  bool domain_exit = false;
  std::string exit_guard;
  long steps_taken = 0;
  long steps_rejected = 0;  // RK45 only
};

struct IntegratorConfig {
  enum class Method { RK4, RK45 };
  Method method = Method::RK4;
  double dt = 1e-3;        // RK4 fixed step, RK45 initial step
  double abs_tol = 1e-10;  // RK45
  double rel_tol = 1e-10;  // RK45
  double t_end = 1.0;
  long max_steps = 20000000;
  int sample_stride = 1;   // record every k-th accepted step
};

// (dx/dt, dv/dt) at the state; throws OutOfDomain outside the guards.
std::pair<Vec, Vec> geodesic_rhs(const MetricSpec& spec, const GeodesicState& state);

Trajectory integrate(const MetricSpec& spec, const GeodesicState& state0,
                     const IntegratorConfig& config);

struct SpeedReport {
  double max_speed_drift;       // max |speed2(t) - speed2(0)|
  double max_q_accel_residual;  // max |Q + g_ij a^i v^j|
  double max_accel_vs_q;        // max |a^k + q^k|
};
SpeedReport conserved_speed_report(const Trajectory& traj, const MetricSpec& spec);

// Matrix exponential by scaling and squaring with a truncated Taylor series.
Mat expm(const Mat& m);

// v(t) = expm(-W0 t) v0, the solution of dv/dt = -W0 v (column convention).
Vec constant_w_velocity(const Mat& w0, const Vec& v0, double t);

// u(t) = u0 + integral_0^t expm(-W0 s) v0 ds, summed term by term
// ( sum_m (-W0)^m t^{m+1}/(m+1)! v0 ); no inversion, so singular W0 is fine.
// The nonlinear part vanishes identically for W0 = 0.
Vec constant_w_position(const Mat& w0, const Vec& v0, const Vec& u0, double t);

}  // namespace geodyn

#endif
