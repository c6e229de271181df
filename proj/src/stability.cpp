#include "conestab/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>

#include "conestab/errors.hpp"
#include "detail/profile_ode.hpp"

namespace conestab {

using detail::ProfileOde;
using detail::State;
using detail::StepRule;

std::string to_string(SpectralMethod m) {
  return m == SpectralMethod::finite_difference ? "finite-difference" : "shooting";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::stable: return "stable";
    case Verdict::unstable: return "unstable";
    case Verdict::marginal: return "marginal";
  }
  return "?";
}

namespace {

using Gauss8 = boost::math::quadrature::gauss<double, 8>;

double density(int k, int h, double t) {
  return std::pow(std::cos(t), k - 1) * std::pow(std::sin(t), h - 1);
}

double threshold_of(int n) { return (n - 2.0) * (n - 2.0) / 4.0; }

/// Integrates ψ'' + pψ' − Λψ = 0 from the axis to θ* and returns (ψ, ψ') there.
State shoot(const ConeSolution& cone, double Lambda, double base) {
  const ProfileOde ode{cone.k, cone.h, -Lambda};
  const StepRule rule(base, cone.k, cone.h);
  double t = detail::start_time(cone.h);
  State x = detail::series_state(ode, t);
  detail::advance(ode, rule, t, x, cone.theta_star);
  return x;
}

/// Ground state for a given Λ, sampled on the profile grid and scaled to max 1.
SampledProfile ground_state(const ConeSolution& cone, double Lambda) {
  const ProfileOde ode{cone.k, cone.h, -Lambda};
  const StepRule rule(cone.base_step, cone.k, cone.h);
  const auto& grid = cone.profile.samples();
  std::vector<SampledProfile::Sample> out(grid.size());
  double t = detail::start_time(cone.h);
  State x = detail::series_state(ode, t);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double tj = grid[j].t;
    State here;
    if (tj <= t) {
      here = detail::series_state(ode, tj);
    } else {
      detail::advance(ode, rule, t, x, tj);
      here = x;
    }
    out[j] = {tj, here[0], here[1], 0.0};
  }
  double top = 0.0;
  for (const auto& s : out) top = std::max(top, std::abs(s.y));
  for (auto& s : out) {
    s.y /= top;
    s.dy /= top;
    s.d2y = ode.second(s.t, s.y, s.dy);
  }
  return SampledProfile(std::move(out));
}

double shoot_lambda(const ConeSolution& cone, double H, double base) {
  auto mismatch = [&](double L) {
    const State x = shoot(cone, L, base);
    if (!(x[0] > 0.0)) throw Error(ErrorKind::no_convergence, "shooting lost positivity");
    return x[1] / x[0] - H;
  };
  if (mismatch(0.0) >= 0.0) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  int grow = 0;
  while (mismatch(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
    if (++grow > 60) throw Error(ErrorKind::no_convergence, "no bracket for the Robin mismatch");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mismatch(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

/// P1 elements with lumped mass: returns Λ on an N-cell mesh.
double fd_lambda(const ConeSolution& cone, double H, int N) {
  const double th = cone.theta_star;
  const double dt = th / N;
  std::vector<double> mass(static_cast<std::size_t>(N + 1), 0.0);
  std::vector<double> diag(static_cast<std::size_t>(N + 1), 0.0);
  std::vector<double> off(static_cast<std::size_t>(N), 0.0);
  for (int e = 0; e < N; ++e) {
    const double a = e * dt;
    const double b = e + 1 == N ? th : (e + 1) * dt;
    const double len = b - a;
    const double jint = Gauss8::integrate([&](double t) { return density(cone.k, cone.h, t); }, a, b);
    const double left = Gauss8::integrate(
        [&](double t) { return density(cone.k, cone.h, t) * (b - t) / len; }, a, b);
    diag[e] += jint / (len * len);
    diag[e + 1] += jint / (len * len);
    off[e] = -jint / (len * len);
    mass[e] += left;
    mass[e + 1] += jint - left;
  }
  diag[N] -= H * density(cone.k, cone.h, th);
  for (int i = 0; i <= N; ++i) diag[i] /= mass[i];
  for (int i = 0; i < N; ++i) off[i] /= std::sqrt(mass[i] * mass[i + 1]);
  return -smallest_tridiagonal_eigenvalue(diag, off);
}

}  // namespace

int sturm_count(const std::vector<double>& diag, const std::vector<double>& off, double x) {
  int count = 0;
  double d = 1.0;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    const double b2 = i == 0 ? 0.0 : off[i - 1] * off[i - 1];
    d = diag[i] - x - (i == 0 ? 0.0 : b2 / d);
    if (d == 0.0) d = -std::numeric_limits<double>::epsilon() * (std::abs(diag[i]) + std::abs(x) + 1.0);
    if (d < 0.0) ++count;
  }
  return count;
}

double smallest_tridiagonal_eigenvalue(const std::vector<double>& diag,
                                       const std::vector<double>& off) {
  if (diag.empty() || off.size() + 1 != diag.size())
    throw Error(ErrorKind::usage, "tridiagonal sizes do not match");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    const double r = (i > 0 ? std::abs(off[i - 1]) : 0.0) + (i < off.size() ? std::abs(off[i]) : 0.0);
    lo = std::min(lo, diag[i] - r);
    hi = std::max(hi, diag[i] + r);
  }
  hi = std::min(hi, diag.front());  // Rayleigh quotient of e_0 bounds the minimum
  for (int it = 0; it < 300; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (sturm_count(diag, off, mid) >= 1)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

SpectralResult rayleigh_lambda(const ConeSolution& cone, SpectralMethod method, int gridN) {
  if (gridN < 64) throw Error(ErrorKind::usage, "gridN must be at least 64");
  const double H = boundary_data(cone).H;
  SpectralResult res;
  res.method = method;
  res.gridN = gridN;
  res.H = H;
  double coarse = 0.0;
  double fine = 0.0;
  if (method == SpectralMethod::finite_difference) {
    coarse = fd_lambda(cone, H, gridN);
    fine = fd_lambda(cone, H, 2 * gridN);
    res.Lambda = fine + (fine - coarse) / 3.0;
    res.convergence_estimate = std::abs(fine - coarse) / 3.0;
  } else {
    coarse = shoot_lambda(cone, H, cone.base_step);
    fine = shoot_lambda(cone, H, 0.5 * cone.base_step);
    res.Lambda = fine + (fine - coarse) / 15.0;
    res.convergence_estimate = std::abs(fine - coarse) / 15.0;
  }
  if (cone.is_half_space()) res.Lambda = std::max(res.Lambda, 0.0);
  res.psi = ground_state(cone, res.Lambda);
  return res;
}

// ---------------------------------------------------------------------------
// Verdict

const WeightWindow* StabilityReport::window_for(const WeightSpec& w) const {
  for (const auto& ww : windows)
    if (ww.weight == w) return &ww;
  return nullptr;
}

namespace {

BoundaryFunctionalResult functional_for(const ConeSolution& cone, const BoundaryData& bd,
                                        const WeightSpec& weight) {
  if (bd.normalized_exact) {
    auto r = boundary_functional(weight, *bd.normalized_exact, Rational(1));
    r.H = bd.H;
    return r;
  }
  (void)cone;
  return boundary_functional(weight, bd.hessian_spectrum, bd.H);
}

}  // namespace

StabilityReport stability_verdict(const ConeSolution& cone, const StabilityOptions& options) {
  StabilityReport rep;
  rep.k = cone.k;
  rep.h = cone.h;
  rep.n = cone.n();
  rep.theta_star = cone.theta_star;
  rep.tol = options.tol;
  rep.selected_weight = options.weight;
  const auto bd = boundary_data(cone);
  rep.H = bd.H;

  const auto fd = rayleigh_lambda(cone, SpectralMethod::finite_difference, options.gridN);
  const auto sh = rayleigh_lambda(cone, SpectralMethod::shooting, options.gridN);
  rep.Lambda_fd = fd.Lambda;
  rep.Lambda_shoot = sh.Lambda;
  rep.Lambda = sh.Lambda;
  rep.convergence_estimate = std::max(sh.convergence_estimate, std::abs(fd.Lambda - sh.Lambda));
  rep.methods_agree = std::abs(fd.Lambda - sh.Lambda) <= 1e-6 * std::max(1.0, sh.Lambda);
  if (!rep.methods_agree) {
    std::ostringstream os;
    os.precision(12);
    os << "finite-difference and shooting disagree: " << fd.Lambda << " vs " << sh.Lambda;
    throw Error(ErrorKind::no_convergence, os.str());
  }

  rep.threshold = threshold_of(rep.n);
  if (rep.Lambda > rep.threshold + options.tol)
    rep.verdict = Verdict::unstable;
  else if (rep.Lambda < rep.threshold - options.tol)
    rep.verdict = Verdict::stable;
  else
    rep.verdict = Verdict::marginal;

  if (cone.is_half_space()) {
    rep.consistency_detail = "flat boundary: no boundary functional";
    return rep;
  }

  std::vector<WeightSpec> weights{WeightSpec::frobenius(), WeightSpec::signed_norm(4),
                                  WeightSpec::max_eigenvalue()};
  if (std::find(weights.begin(), weights.end(), options.weight) == weights.end())
    weights.push_back(options.weight);
  bool any_strict = false;
  std::string strict_weights;
  for (const auto& w : weights) {
    WeightWindow ww{w, functional_for(cone, bd, w), {}};
    ww.window = subsolution_window(ww.boundary, rep.n);
    if (ww.window.nonempty && ww.window.strict) {
      any_strict = true;
      strict_weights += (strict_weights.empty() ? "" : ", ") + to_string(w);
    }
    rep.windows.push_back(std::move(ww));
  }
  const auto& frob = rep.windows[0].boundary;
  rep.L = frob.L;
  rep.B_a4 = rep.windows[1].boundary.B;
  rep.criterion37_fired = criterion37(frob.L, rep.n, frob.L_exact);

  if (rep.criterion37_fired || any_strict) {
    rep.consistent = rep.verdict == Verdict::unstable;
    rep.consistency_detail = std::string(rep.criterion37_fired ? "criterion37 fires" : "") +
                             (rep.criterion37_fired && any_strict ? "; " : "") +
                             (any_strict ? "strict window for " + strict_weights : "") +
                             (rep.consistent ? "; spectral verdict unstable"
                                             : "; spectral verdict is " + to_string(rep.verdict));
    if (!rep.consistent) throw Error(ErrorKind::consistency_violation, rep.consistency_detail);
  } else {
    rep.consistency_detail = "no subsolution certificate; nothing to cross-check";
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Positive solution

PositiveSolution positive_solution(const ConeSolution& cone, const SpectralResult& spectral) {
  const int n = cone.n();
  const double thr = threshold_of(n);
  const double Lambda = spectral.Lambda;
  if (Lambda > thr)
    throw Error(ErrorKind::unstable_cone, "Λ exceeds (n−2)²/4; no positive solution exists");
  PositiveSolution out;
  out.decay_exponent = -(n - 2.0) / 2.0 + std::sqrt(std::max(thr - Lambda, 0.0));
  out.psi = spectral.psi;

  // (Jψ')' − ΛJψ from 4th-order differences of the sampled ψ'.
  const auto& s = out.psi.samples();
  const std::size_t N = s.size();
  const double dt = s[1].t - s[0].t;
  double scale = 0.0;
  for (const auto& x : s) scale = std::max(scale, density(cone.k, cone.h, x.t) * std::abs(x.y));
  scale *= std::max(1.0, Lambda);
  double worst = 0.0;
  out.min_psi = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < N; ++i) out.min_psi = std::min(out.min_psi, s[i].y);
  for (std::size_t i = 2; i + 2 < N; ++i) {
    const double d2 = (s[i - 2].dy - 8.0 * s[i - 1].dy + 8.0 * s[i + 1].dy - s[i + 2].dy) / (12.0 * dt);
    const double t = s[i].t;
    const double r = density(cone.k, cone.h, t) *
                     (d2 + profile_drift(cone.k, cone.h, t) * s[i].dy - Lambda * s[i].y);
    worst = std::max(worst, std::abs(r));
  }
  if (scale > 0.0) worst /= scale;
  const double H = spectral.H;
  const double robin = std::abs(s.back().dy - H * s.back().y) / std::max(1.0, H);
  out.residual = std::max(worst, robin);
  if (!(out.min_psi > 0.0))
    throw Error(ErrorKind::consistency_violation, "ground state is not positive");
  return out;
}

PositiveSolution positive_solution(const ConeSolution& cone) {
  return positive_solution(cone, rayleigh_lambda(cone, SpectralMethod::shooting));
}

// ---------------------------------------------------------------------------
// Instability certificate

double certificate_quadratic_form(const ConeSolution& cone, const SpectralResult& spectral,
                                  double beta, int quadN, double scale, double* weighted_l2) {
  const int n = cone.n();
  const double thr = threshold_of(n);
  if (!(beta > thr)) throw Error(ErrorKind::usage, "β must exceed (n−2)²/4");
  if (quadN < 1) throw Error(ErrorKind::usage, "quadN must be positive");
  const double omega = std::sqrt(beta - thr);
  const double s_half = std::numbers::pi / (2.0 * omega);
  const double th = cone.theta_star;
  const double H = spectral.H;
  const double c2 = scale * scale;
  const auto& psi = spectral.psi;

  auto f = [&](double r) { return std::pow(r, -(n - 2) / 2.0) * std::cos(omega * std::log(r)); };
  auto df = [&](double r) {
    const double lr = std::log(r);
    return std::pow(r, -(n - 2) / 2.0 - 1.0) *
           (-(n - 2) / 2.0 * std::cos(omega * lr) - omega * std::sin(omega * lr));
  };

  // Angular moments ∫Jψ², ∫Jψ'² by composite Gauss–Legendre.
  double Ipsi = 0.0, Idpsi = 0.0;
  const double dtp = th / quadN;
  for (int p = 0; p < quadN; ++p) {
    const double a = p * dtp;
    const double b = p + 1 == quadN ? th : (p + 1) * dtp;
    Ipsi += Gauss8::integrate([&](double t) {
      const double v = psi.value(t);
      return density(cone.k, cone.h, t) * v * v;
    }, a, b);
    Idpsi += Gauss8::integrate([&](double t) {
      const double v = psi.derivative(t);
      return density(cone.k, cone.h, t) * v * v;
    }, a, b);
  }
  const double psi_b = psi.value(th);
  const double J_b = density(cone.k, cone.h, th);

  // Radial moments in s = log r over one lobe.
  double Rgrad = 0.0, Rval = 0.0;
  const double ds = 2.0 * s_half / quadN;
  for (int p = 0; p < quadN; ++p) {
    const double a = -s_half + p * ds;
    const double b = p + 1 == quadN ? s_half : a + ds;
    Rgrad += Gauss8::integrate([&](double s) {
      const double r = std::exp(s);
      const double d = df(r);
      return d * d * std::pow(r, n);
    }, a, b);
    Rval += Gauss8::integrate([&](double s) {
      const double r = std::exp(s);
      const double v = f(r);
      return v * v * std::pow(r, n - 2);
    }, a, b);
  }
  // ∫_Ω |∇v|² = ∫∫ (f'²ψ² + f²ψ'²/r²) r^{n−1}J dr dt,  ∫_{∂Ω} (H/r) v² = H ψ_b² J_b ∫ f² r^{n−3} dr.
  const double interior = Rgrad * Ipsi + Rval * Idpsi;
  const double boundary = H * psi_b * psi_b * J_b * Rval;
  if (weighted_l2) *weighted_l2 = c2 * Rval * Ipsi;
  return c2 * (interior - boundary);
}

Certificate instability_certificate(const ConeSolution& cone, const SpectralResult& spectral,
                                    int quadN, double tol) {
  const int n = cone.n();
  const double thr = threshold_of(n);
  if (!(spectral.Lambda > thr + tol))
    throw Error(ErrorKind::stable_cone, "Λ does not exceed (n−2)²/4 + tol; nothing to certify");
  Certificate c;
  c.k = cone.k;
  c.h = cone.h;
  c.n = n;
  c.Lambda = spectral.Lambda;
  c.beta = 0.5 * (spectral.Lambda + thr);
  c.omega = std::sqrt(c.beta - thr);
  c.r1 = std::exp(-std::numbers::pi / (2.0 * c.omega));
  c.r2 = std::exp(std::numbers::pi / (2.0 * c.omega));
  for (int q : {quadN, 2 * quadN}) {
    CertificateLevel lvl;
    lvl.quadN = q;
    lvl.Q = certificate_quadratic_form(cone, spectral, c.beta, q, 1.0, &lvl.weighted_l2);
    c.refinement_history.push_back(lvl);
  }
  const auto& coarse = c.refinement_history[0];
  const auto& fine = c.refinement_history[1];
  c.Q_value = fine.Q;
  c.margin_floor = 0.5 * (c.Lambda - c.beta) * fine.weighted_l2;
  if (!(coarse.Q < 0.0 && fine.Q < 0.0))
    throw Error(ErrorKind::margin_too_small, "Q(v) is not negative at both quadrature levels");
  if (std::abs(fine.Q - coarse.Q) > 0.01 * std::abs(fine.Q))
    throw Error(ErrorKind::margin_too_small, "Q(v) moved by more than 1% under quadrature doubling");
  if (-fine.Q < c.margin_floor)
    throw Error(ErrorKind::margin_too_small, "|Q(v)| falls below 0.5(Λ−β)∫v²/r²");
  return c;
}

Certificate instability_certificate(const ConeSolution& cone, int quadN, double tol) {
  return instability_certificate(cone, rayleigh_lambda(cone, SpectralMethod::shooting), quadN, tol);
}

// ---------------------------------------------------------------------------
// Euler equation

EulerZeros euler_zeros(double alpha, double beta, bool integrate) {
  EulerZeros out;
  const double disc = beta - (alpha - 1.0) * (alpha - 1.0) / 4.0;
  out.oscillates = 4.0 * beta > (alpha - 1.0) * (alpha - 1.0);
  if (!out.oscillates) return out;
  out.spacing = std::numbers::pi / std::sqrt(disc);
  if (!integrate) return out;

  // In s = log r: f_ss + (α−1) f_s + β f = 0. The state is renormalized as
  // it goes so the decay cannot underflow; zeros are scale invariant.
  using Euler = std::array<double, 2>;
  auto rhs = [alpha, beta](const Euler& x, Euler& dx, double) {
    dx[0] = x[1];
    dx[1] = -(alpha - 1.0) * x[1] - beta * x[0];
  };
  boost::numeric::odeint::runge_kutta4<Euler> stepper;
  const double rate = std::abs(alpha - 1.0) / 2.0 + std::sqrt(std::abs(beta));
  const double ds = std::min(*out.spacing, 1.0 / rate) / 4000.0;
  const long max_steps = static_cast<long>(std::ceil(2.5 * *out.spacing / ds)) + 10;
  auto step_to_zero = [&](Euler x, double s) {
    double lo = 0.0, hi = ds;
    for (int it = 0; it < 200 && hi - lo > 1e-16 * std::max(1.0, std::abs(s)); ++it) {
      const double mid = 0.5 * (lo + hi);
      Euler y = x;
      stepper.do_step(rhs, y, s, mid);
      if ((y[0] > 0.0) == (x[0] > 0.0)) lo = mid; else hi = mid;
    }
    return s + 0.5 * (lo + hi);
  };
  Euler x{1.0, 0.0};
  double s = 0.0;
  std::vector<double> zeros;
  for (long it = 0; it < max_steps && zeros.size() < 2; ++it) {
    Euler y = x;
    stepper.do_step(rhs, y, s, ds);
    if (x[0] != 0.0 && (y[0] > 0.0) != (x[0] > 0.0)) zeros.push_back(step_to_zero(x, s));
    x = y;
    s += ds;
    const double norm = std::hypot(x[0], x[1]);
    x[0] /= norm;
    x[1] /= norm;
  }
  if (zeros.size() == 2) out.numeric_spacing = zeros[1] - zeros[0];
  return out;
}

}  // namespace conestab
