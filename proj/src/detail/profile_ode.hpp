#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include <boost/numeric/odeint/stepper/runge_kutta4.hpp>

namespace conestab::detail {

using State = std::array<double, 2>;

/// y'' + ((h−1)cot t − (k−1)tan t) y' + q y = 0 as a first-order system.
struct ProfileOde {
  int k = 1;
  int h = 1;
  double q = 0.0;

  double drift(double t) const {
    double p = 0.0;
    if (h > 1) p += (h - 1) / std::tan(t);
    if (k > 1) p -= (k - 1) * std::tan(t);
    return p;
  }

  /// y'' from the equation, with the regular limit at t = 0.
  double second(double t, double y, double dy) const {
    if (t == 0.0) return -q * y / h;
    return -drift(t) * dy - q * y;
  }

  void operator()(const State& x, State& dx, double t) const {
    dx[0] = x[1];
    dx[1] = -drift(t) * x[1] - q * x[0];
  }
};

/// Where integration starts: the axis itself when it is regular (h = 1),
/// otherwise just off it.
inline double start_time(int h) { return h > 1 ? 1e-4 : 0.0; }

/// Even series 1 + c2 t² + c4 t⁴ at the axis.
inline State series_state(const ProfileOde& ode, double t) {
  const double k = ode.k;
  const double h = ode.h;
  const double c2 = -ode.q / (2.0 * h);
  const double c4 = c2 * (2.0 * ((h - 1.0) / 3.0 + k - 1.0) - ode.q) / (4.0 * (h + 2.0));
  const double t2 = t * t;
  return {1.0 + c2 * t2 + c4 * t2 * t2, 2.0 * c2 * t + 4.0 * c4 * t2 * t};
}

/// Step sizes graded toward the singular ends t = 0 (h > 1) and t = π/2 (k > 1).
struct StepRule {
  double base = 0.0;
  double rho = 0.0;
  int k = 1;
  int h = 1;

  StepRule(double base_, int k_, int h_)
      : base(base_), rho(std::min(10.0 * base_, 0.25)), k(k_), h(h_) {}

  double operator()(double t) const {
    double s = base;
    if (h > 1) s = std::min(s, rho * t);
    if (k > 1) s = std::min(s, rho * std::max(std::numbers::pi / 2 - t, 0.0));
    return s;
  }
};

inline void rk4_step(const ProfileOde& ode, State& x, double t, double dt) {
  static thread_local boost::numeric::odeint::runge_kutta4<State> stepper;
  stepper.do_step(ode, x, t, dt);
}

/// Advances (t, x) to `target` with graded steps, landing on it exactly.
inline void advance(const ProfileOde& ode, const StepRule& rule, double& t, State& x,
                    double target) {
  while (t < target) {
    double dt = rule(t);
    if (dt <= 0.0) dt = target - t;
    if (t + dt >= target || target - (t + dt) < 1e-3 * dt) dt = target - t;
    rk4_step(ode, x, t, dt);
    t = (target - t == dt) ? target : t + dt;
  }
}

/// Finds s ∈ (0, dt] with component `c` of one RK4 step from (t, x) equal to
/// zero, by bisection. The sign at s = 0 must differ from the sign at dt.
inline double zero_in_step(const ProfileOde& ode, double t, const State& x, double dt, int c) {
  const double s0 = x[c];
  double lo = 0.0;
  double hi = dt;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, t); ++it) {
    const double mid = 0.5 * (lo + hi);
    State y = x;
    rk4_step(ode, y, t, mid);
    if ((y[c] > 0.0) == (s0 > 0.0))
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace conestab::detail
