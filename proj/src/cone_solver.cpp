#include "conestab/cone_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "conestab/errors.hpp"
#include "detail/profile_ode.hpp"

namespace conestab {

using detail::ProfileOde;
using detail::State;
using detail::StepRule;

// ---------------------------------------------------------------------------
// SampledProfile

SampledProfile::SampledProfile(std::vector<Sample> samples) : samples_(std::move(samples)) {
  if (samples_.size() < 2) throw Error(ErrorKind::usage, "a sampled profile needs two samples");
  step_ = (samples_.back().t - samples_.front().t) / static_cast<double>(samples_.size() - 1);
}

std::size_t SampledProfile::cell(double t) const {
  const double span = t_end() - t_begin();
  if (t < t_begin() - 1e-12 * span || t > t_end() + 1e-12 * span)
    throw Error(ErrorKind::out_of_domain, "profile evaluated outside its sampled interval");
  const double pos = (t - t_begin()) / step_;
  const auto last = samples_.size() - 2;
  if (pos <= 0.0) return 0;
  return std::min(static_cast<std::size_t>(pos), last);
}

namespace {

/// Power-basis coefficients in s ∈ [0, 1] of the quintic Hermite interpolant.
std::array<double, 6> quintic(const SampledProfile::Sample& a, const SampledProfile::Sample& b,
                              double h) {
  const double a0 = a.y;
  const double a1 = h * a.dy;
  const double a2 = 0.5 * h * h * a.d2y;
  const double A = b.y - (a0 + a1 + a2);
  const double B = h * b.dy - (a1 + 2.0 * a2);
  const double C = h * h * b.d2y - 2.0 * a2;
  return {a0, a1, a2, 10.0 * A - 4.0 * B + 0.5 * C, -15.0 * A + 7.0 * B - C,
          6.0 * A - 3.0 * B + 0.5 * C};
}

}  // namespace

double SampledProfile::value(double t) const {
  const auto i = cell(t);
  const auto c = quintic(samples_[i], samples_[i + 1], step_);
  const double s = (t - samples_[i].t) / step_;
  return ((((c[5] * s + c[4]) * s + c[3]) * s + c[2]) * s + c[1]) * s + c[0];
}

double SampledProfile::derivative(double t) const {
  // Cubic Hermite on (y', y'') rather than differentiating the quintic,
  // which would lose a factor 1/step in rounding.
  const auto i = cell(t);
  const auto& a = samples_[i];
  const auto& b = samples_[i + 1];
  const double s = (t - a.t) / step_;
  const double s2 = s * s;
  const double s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * a.dy + (s3 - 2 * s2 + s) * step_ * a.d2y +
         (-2 * s3 + 3 * s2) * b.dy + (s3 - s2) * step_ * b.d2y;
}

// ---------------------------------------------------------------------------
// Cross-section ODE

double profile_drift(int k, int h, double t) { return ProfileOde{k, h, 0.0}.drift(t); }

ConeSolution solve_cross_section(int k, int h, const ConeSolveOptions& options) {
  if (k < 1 || h < 1) throw Error(ErrorKind::usage, "k and h must be positive");
  if (options.samples < 8) throw Error(ErrorKind::usage, "need at least 8 profile samples");
  if (!(options.tol > 0.0) && !(options.base_step > 0.0))
    throw Error(ErrorKind::usage, "tol must be positive");
  const ProfileOde ode{k, h, static_cast<double>(k + h - 1)};
  const double base = options.base_step > 0.0 ? options.base_step
                                              : 0.05 * std::pow(options.tol, 0.25);
  const StepRule rule(base, k, h);
  const double t_stop = k > 1 ? std::numbers::pi / 2 - 1e-9 : std::numbers::pi / 2 + 0.5;

  double t = detail::start_time(h);
  State x = detail::series_state(ode, t);
  double theta = std::numeric_limits<double>::quiet_NaN();
  while (t < t_stop) {
    const double dt = std::min(rule(t), t_stop - t);
    if (!(dt > 0.0)) break;
    State y = x;
    detail::rk4_step(ode, y, t, dt);
    if (!std::isfinite(y[0])) break;
    if (y[0] <= 0.0) {
      theta = t + detail::zero_in_step(ode, t, x, dt, 0);
      break;
    }
    x = y;
    t += dt;
  }
  if (!std::isfinite(theta))
    throw Error(ErrorKind::no_zero_found,
                "profile has no zero before the cone degenerates (k=" + std::to_string(k) +
                    ", h=" + std::to_string(h) + ")");

  // Second pass landing on the uniform sample grid.
  const int N = options.samples;
  std::vector<SampledProfile::Sample> samples(static_cast<std::size_t>(N));
  t = detail::start_time(h);
  x = detail::series_state(ode, t);
  for (int j = 0; j < N; ++j) {
    const double tj = j == N - 1 ? theta : theta * j / (N - 1);
    State here;
    if (tj <= t) {
      here = detail::series_state(ode, tj);
    } else {
      detail::advance(ode, rule, t, x, tj);
      here = x;
    }
    samples[j] = {tj, here[0], here[1], 0.0};
  }
  const double c = -1.0 / samples.back().dy;
  if (!(c > 0.0)) throw Error(ErrorKind::no_convergence, "profile slope at the zero is not negative");
  for (auto& s : samples) {
    s.y *= c;
    s.dy *= c;
    s.d2y = ode.second(s.t, s.y, s.dy);
  }
  samples.back().y = 0.0;

  ConeSolution sol;
  sol.k = k;
  sol.h = h;
  sol.theta_star = theta;
  sol.normalization = c;
  sol.profile = SampledProfile(std::move(samples));
  sol.base_step = base;
  return sol;
}

// ---------------------------------------------------------------------------
// Boundary data and Hessian field

BoundaryData boundary_data(const ConeSolution& cone) {
  BoundaryData bd;
  bd.theta = cone.theta_star;
  const int k = cone.k;
  const int h = cone.h;
  const int n = cone.n();
  if (cone.is_half_space()) {
    bd.H = 0.0;
    bd.kappas = Spectrum({{0.0, n - 2}});
    bd.hessian_spectrum = Spectrum({{0.0, n}});
    return bd;
  }
  const double tn = std::tan(bd.theta);
  const double ct = 1.0 / tn;
  bd.H = (k - 1) * tn - (h - 1) * ct;
  bd.kappas = Spectrum({{tn, k - 1}, {-ct, h - 1}});
  bd.hessian_spectrum = Spectrum({{tn, k - 1}, {-ct, h - 1}, {0.0, 1}, {-bd.H, 1}});
  if (h == 1) {
    bd.normalized_exact = ExactSpectrum(
        {{Rational(Integer(1), Integer(k - 1)), k - 1}, {Rational(0), 1}, {Rational(-1), 1}});
  }
  return bd;
}

HessianFamilies hessian_families(const ConeSolution& cone, double t) {
  const double th = cone.theta_star;
  if (t < 0.0 || t > th * (1.0 + 1e-12))
    throw Error(ErrorKind::out_of_domain, "t outside [0, θ*]");
  t = std::min(t, th);
  const double phi = cone.profile.value(t);
  const double dphi = cone.profile.derivative(t);
  HessianFamilies f;
  f.lambda_y = cone.k > 1 ? phi - dphi * std::tan(t) : 0.0;
  if (cone.h > 1) {
    if (t < 1e-8) {
      const double d2 = -static_cast<double>(cone.n() - 1) * phi / cone.h;
      f.lambda_z = phi + d2;
    } else {
      f.lambda_z = phi + dphi / std::tan(t);
    }
  }
  f.lambda_p = -(cone.k - 1) * f.lambda_y - (cone.h - 1) * f.lambda_z;
  return f;
}

Spectrum to_spectrum(const ConeSolution& cone, const HessianFamilies& fam) {
  return Spectrum({{0.0, 1},
                   {fam.lambda_y, cone.k - 1},
                   {fam.lambda_z, cone.h - 1},
                   {fam.lambda_p, 1}});
}

Spectrum hessian_field(const ConeSolution& cone, double t) {
  if (!(t > 0.0 && t < cone.theta_star))
    throw Error(ErrorKind::out_of_domain, "hessian_field needs t in the open interval (0, θ*)");
  return to_spectrum(cone, hessian_families(cone, t));
}

// ---------------------------------------------------------------------------
// Interior inequality

std::vector<std::vector<double>> fd_weights(double x0, const std::vector<double>& nodes,
                                            int max_order) {
  const int n = static_cast<int>(nodes.size()) - 1;
  const int m = max_order;
  std::vector<std::vector<double>> c(static_cast<std::size_t>(m + 1),
                                     std::vector<double>(nodes.size(), 0.0));
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i <= n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int kk = mn; kk >= 1; --kk)
          c[kk][i] = c1 * (kk * c[kk - 1][i - 1] - c5 * c[kk][i - 1]) / c2;
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (int kk = mn; kk >= 1; --kk) c[kk][j] = (c4 * c[kk][j] - kk * c[kk - 1][j]) / c3;
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

namespace {

/// Identifies the smooth branch of f at a family triple: the sign pattern
/// for the signed weight, the top family for the max weight.
int branch_signature(const WeightSpec& spec, const ConeSolution& cone, const HessianFamilies& f) {
  switch (spec.kind) {
    case WeightKind::frobenius: return 0;
    case WeightKind::signed_norm: {
      if (spec.a == 1) return 0;
      int sig = 0;
      if (cone.k > 1 && f.lambda_y < 0) sig |= 1;
      if (cone.h > 1 && f.lambda_z < 0) sig |= 2;
      if (f.lambda_p < 0) sig |= 4;
      return sig;
    }
    case WeightKind::max_eigenvalue: {
      double best = 0.0;  // the radial eigenvalue
      int which = 0;
      if (cone.k > 1 && f.lambda_y > best) { best = f.lambda_y; which = 1; }
      if (cone.h > 1 && f.lambda_z > best) { best = f.lambda_z; which = 2; }
      if (f.lambda_p > best) which = 3;
      return which;
    }
  }
  return 0;
}

}  // namespace

InteriorCheckResult interior_inequality_check(const ConeSolution& cone, const WeightSpec& spec,
                                              int gridN) {
  InteriorCheckResult res;
  if (cone.is_half_space()) {
    res.skipped = true;
    return res;
  }
  if (gridN < 16) throw Error(ErrorKind::usage, "gridN must be at least 16");
  const int n = cone.n();
  const double th = cone.theta_star;
  const double dt = th / gridN;

  // ŵ on t_i = i·dt, i = 0..gridN; even in t about the axis.
  std::vector<double> w(static_cast<std::size_t>(gridN + 1));
  std::vector<int> sig(w.size());
  std::vector<bool> smooth(w.size());
  for (int i = 0; i <= gridN; ++i) {
    const double t = i == gridN ? th : i * dt;
    const auto fam = hessian_families(cone, t);
    const auto lam = to_spectrum(cone, fam).expanded();
    w[i] = eval_weight(spec, lam);
    sig[i] = branch_signature(spec, cone, fam);
    // The radial eigenvalue is identically zero along the section, so it
    // never moves f off a smooth branch; only the families are guarded.
    const auto families = Spectrum({{fam.lambda_y, cone.k - 1},
                                    {fam.lambda_z, cone.h - 1},
                                    {fam.lambda_p, 1}}).expanded();
    smooth[i] = is_guarded_smooth(spec, families);
  }

  const auto central = fd_weights(0.0, {-2.0 * dt, -dt, 0.0, dt, 2.0 * dt}, 2);
  res.min_margin = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= gridN; ++i) {
    std::vector<int> idx;
    std::vector<std::vector<double>> wts;
    const std::vector<std::vector<double>>* weights = &central;
    std::vector<std::vector<double>> local;
    if (i + 2 <= gridN) {
      idx = {std::abs(i - 2), std::abs(i - 1), i, i + 1, i + 2};
    } else {
      std::vector<double> nodes;
      for (int j = gridN - 5; j <= gridN; ++j) {
        idx.push_back(j);
        nodes.push_back((j - i) * dt);
      }
      local = fd_weights(0.0, nodes, 2);
      weights = &local;
    }
    bool ok = true;
    for (int j : idx) ok = ok && smooth[j] && sig[j] == sig[i];
    if (!ok) {
      ++res.points_guarded;
      continue;
    }
    double w0 = w[i], w1 = 0.0, w2 = 0.0;
    for (std::size_t s = 0; s < idx.size(); ++s) {
      w1 += (*weights)[1][s] * w[idx[s]];
      w2 += (*weights)[2][s] * w[idx[s]];
    }
    const double t = i == gridN ? th : i * dt;
    const double p = profile_drift(cone.k, cone.h, t);
    const double lap = w2 + p * w1 - (n - 3.0) * w0;
    const double margin = w0 * lap - (2.0 / (n - 1.0)) * (w0 * w0 + w1 * w1) -
                          2.0 * (n - 2.0) / (n - 1.0) * w0 * w0;
    res.scale = std::max(res.scale, w0 * w0 + w1 * w1 + std::abs(w0 * w2) + std::abs(w0 * p * w1));
    ++res.points_checked;
    if (margin < res.min_margin) {
      res.min_margin = margin;
      res.argmin_t = t;
    }
  }
  if (res.points_checked == 0)
    throw Error(ErrorKind::all_points_guarded, "every grid point lies in the guard band");
  return res;
}

}  // namespace conestab
