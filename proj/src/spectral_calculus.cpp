#include "conestab/spectral_calculus.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <cmath>
#include <limits>
#include <numeric>

#include "conestab/errors.hpp"
#include "conestab/polynomial.hpp"

namespace conestab {

void ThirdDerivatives::set(int i, int j, int k, double value) {
  const std::array<std::array<int, 3>, 6> perms{{{i, j, k}, {i, k, j}, {j, i, k},
                                                 {j, k, i}, {k, i, j}, {k, j, i}}};
  for (const auto& p : perms) data_[index(p[0], p[1], p[2])] = value;
}

double ThirdDerivatives::asymmetry() const {
  double worst = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k) {
        const double v = (*this)(i, j, k);
        worst = std::max({worst, std::abs(v - (*this)(j, i, k)), std::abs(v - (*this)(i, k, j)),
                          std::abs(v - (*this)(k, j, i))});
      }
  return worst;
}

double ThirdDerivatives::norm() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

namespace {

void require_smooth(const WeightSpec& spec, std::span<const double> lambda,
                    const ThirdDerivatives* third) {
  if (third && third->dimension() != static_cast<int>(lambda.size()))
    throw Error(ErrorKind::usage, "third-derivative tensor does not match the spectrum");
  if (!is_guarded_smooth(spec, lambda))
    throw Error(ErrorKind::non_smooth_point,
                "weight " + to_string(spec) + " is not C² within the guard band at this point");
}

}  // namespace

std::vector<double> weight_gradient(const WeightSpec& spec, std::span<const double> lambda,
                                    const ThirdDerivatives& third) {
  require_smooth(spec, lambda, &third);
  const int n = static_cast<int>(lambda.size());
  const auto f1 = weight_partials(spec, lambda);
  std::vector<double> grad(static_cast<std::size_t>(n), 0.0);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) grad[k] += f1[i] * third(i, i, k);
  return grad;
}

double weight_laplacian(const WeightSpec& spec, std::span<const double> lambda,
                        const ThirdDerivatives& third) {
  require_smooth(spec, lambda, &third);
  const int n = static_cast<int>(lambda.size());
  const auto f1 = weight_partials(spec, lambda);
  const auto f2 = weight_second_partials(spec, lambda);
  std::vector<double> pair(static_cast<std::size_t>(n * n), 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pair[i * n + j] = pair_coefficient(spec, lambda, f1, f2, i, j);

  double lap = 0.0;
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) lap += f2[i * n + j] * third(i, i, k) * third(j, j, k);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const double t = third(i, j, k);
        lap += 2.0 * pair[i * n + j] * t * t;
      }
  }
  return lap;
}

PairingIdentity identity_nf(const WeightSpec& spec, const Spectrum& spectrum) {
  if (!is_trace_free(spectrum, 1e-12))
    throw Error(ErrorKind::usage, "identity_nf needs a trace-free spectrum");
  const auto lambda = spectrum.expanded();
  require_smooth(spec, lambda, nullptr);
  const int n = static_cast<int>(lambda.size());
  const auto f1 = weight_partials(spec, lambda);
  PairingIdentity out;
  out.nf = n * eval_weight(spec, lambda);
  out.per_k.assign(static_cast<std::size_t>(n), 0.0);
  out.min_pairing = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double term = (lambda[i] - lambda[j]) * (f1[i] - f1[j]);
      out.per_k[j] += term;
      if (i < j) {
        out.pairing_sum += term;
        out.min_pairing = std::min(out.min_pairing, term);
      }
    }
  out.residual = std::abs(out.pairing_sum - out.nf);
  return out;
}

// ---------------------------------------------------------------------------
// Boundary functionals

namespace {

double as_double(double x) { return x; }
double as_double(const Rational& q) { return to_double(q); }

bool nearly(double x, double y, double scale) { return std::abs(x - y) <= 1e-9 * scale; }
bool nearly(const Rational& x, const Rational& y, const Rational&) { return x == y; }

template <class T>
T abs_value(const T& x) {
  return x < 0 ? T(-x) : x;
}

template <class T>
BoundarySplit<T> split_impl(const BasicSpectrum<T>& spectrum, const T& H) {
  if (!(H > 0))
    throw Error(ErrorKind::degenerate_boundary,
                "mean curvature must be positive on a non-flat cone boundary");
  std::vector<T> values = spectrum.expanded();
  T scale = H;
  for (const auto& v : values) scale = std::max(scale, abs_value(v));
  auto take = [&](const T& target) {
    // Pick the closest match so that a tangential −H is not mistaken for it
    // ahead of an exact one.
    auto best = values.end();
    for (auto it = values.begin(); it != values.end(); ++it)
      if (nearly(*it, target, scale) &&
          (best == values.end() || abs_value(T(*it - target)) < abs_value(T(*best - target))))
        best = it;
    if (best == values.end())
      throw Error(ErrorKind::usage, "boundary spectrum must contain 0 (radial) and −H (normal)");
    values.erase(best);
  };
  take(T(-H));
  take(T(0));
  T sum{};
  for (const auto& v : values) sum += v;
  if (!nearly(sum, H, scale))
    throw Error(ErrorKind::usage, "tangential curvatures must sum to H");
  BoundarySplit<T> out;
  out.tangential = std::move(values);
  std::sort(out.tangential.begin(), out.tangential.end(), std::greater<>());
  out.H = H;
  out.n = spectrum.dimension();
  return out;
}

/// All eigenvalues of the split, tangential first, then radial 0 and normal −H.
template <class T>
std::vector<T> all_values(const BoundarySplit<T>& s) {
  std::vector<T> v = s.tangential;
  v.push_back(T(0));
  v.push_back(T(-s.H));
  return v;
}

template <class T>
T L_impl(const BoundarySplit<T>& s) {
  T sq{}, cube{};
  for (const auto& v : all_values(s)) {
    sq += v * v;
    cube += v * v * v;
  }
  return T(2) + cube / (s.H * sq);
}

template <class T>
T B_signed_impl(const BoundarySplit<T>& s, const T& a) {
  T w2{}, weighted_cube{}, sq{};
  for (const auto& v : all_values(s)) {
    const T c = v < 0 ? a : T(1);
    w2 += c * v * v;
    weighted_cube += c * v * v * v;
    sq += v * v;
  }
  return T(1) + (weighted_cube + a * s.H * sq) / (s.H * w2);
}

template <class T>
T B_max_impl(const BoundarySplit<T>& s) {
  return T(1) + s.tangential.front() / s.H;
}

template <class T>
T B_for(const WeightSpec& weight, const BoundarySplit<T>& s, const T& a) {
  switch (weight.kind) {
    case WeightKind::frobenius: return L_impl(s);
    case WeightKind::signed_norm: return a == 1 ? L_impl(s) : B_signed_impl(s, a);
    case WeightKind::max_eigenvalue: return B_max_impl(s);
  }
  return T(0);
}

template <class T>
void classify(const BoundarySplit<T>& s, BoundaryFunctionalResult& out) {
  const auto& tan = s.tangential;
  T scale = s.H;
  for (const auto& v : tan) scale = std::max(scale, abs_value(v));
  out.tangential_distinct = false;
  for (std::size_t i = 1; i < tan.size(); ++i)
    if (!nearly(tan[i], tan[0], scale)) out.tangential_distinct = true;
  if (s.n != 4 || tan.size() != 2) return;
  if (tan[0] > 0 && !(tan[1] > 0)) {
    out.boundary_case = BoundaryCase::case1;
    const T mu = -tan[1] / s.H;
    out.case_mu = as_double(mu);
    out.equality_case = nearly(mu, T(1), T(1));
  } else if (tan[0] > 0 && tan[1] > 0) {
    out.boundary_case = BoundaryCase::case2;
    out.case_mu = as_double(T(tan[0] / s.H));
  }
}

BoundaryFunctionalResult functional_double(const WeightSpec& weight, const Spectrum& lambda,
                                           double H) {
  const auto s = split_impl(lambda, H);
  BoundaryFunctionalResult out;
  out.weight = weight;
  out.n = s.n;
  out.H = H;
  out.L = L_impl(s);
  out.B = B_for(weight, s, weight.a_value());
  classify(s, out);
  return out;
}

BoundaryFunctionalResult functional_exact(const WeightSpec& weight, const ExactSpectrum& lambda,
                                          const Rational& H) {
  const auto s = split_impl(lambda, H);
  BoundaryFunctionalResult out;
  out.weight = weight;
  out.n = s.n;
  out.H = to_double(H);
  out.L_exact = L_impl(s);
  out.B_exact = B_for(weight, s, weight.a);
  out.L = to_double(*out.L_exact);
  out.B = to_double(*out.B_exact);
  classify(s, out);
  return out;
}

}  // namespace

BoundarySplit<double> split_boundary(const Spectrum& lambda, double H) {
  return split_impl(lambda, H);
}

BoundarySplit<Rational> split_boundary(const ExactSpectrum& lambda, const Rational& H) {
  return split_impl(lambda, H);
}

double boundary_L(const Spectrum& lambda, double H) { return L_impl(split_impl(lambda, H)); }

Rational boundary_L(const ExactSpectrum& lambda, const Rational& H) {
  return L_impl(split_impl(lambda, H));
}

std::string to_string(BoundaryCase c) {
  switch (c) {
    case BoundaryCase::not_applicable: return "n/a";
    case BoundaryCase::case1: return "case1";
    case BoundaryCase::case2: return "case2";
  }
  return "?";
}

BoundaryFunctionalResult boundary_B(const Spectrum& lambda, double H, const Rational& a) {
  return functional_double(WeightSpec::signed_norm(a), lambda, H);
}

BoundaryFunctionalResult boundary_B(const ExactSpectrum& lambda, const Rational& H,
                                    const Rational& a) {
  return functional_exact(WeightSpec::signed_norm(a), lambda, H);
}

BoundaryFunctionalResult boundary_functional(const WeightSpec& weight, const Spectrum& lambda,
                                             double H) {
  return functional_double(weight, lambda, H);
}

BoundaryFunctionalResult boundary_functional(const WeightSpec& weight,
                                             const ExactSpectrum& lambda, const Rational& H) {
  return functional_exact(weight, lambda, H);
}

double boundary_B_from_gradient(const WeightSpec& weight, const Spectrum& lambda, double H) {
  const auto s = split_impl(lambda, H);
  const auto values = all_values(s);
  const std::size_t normal = values.size() - 1;
  double sq = 0.0;
  for (double v : values) sq += v * v;
  const auto f1 = weight_partials(weight, values);
  // u_{iiν} = u_{νν}λ_i − λ_i² off the normal, u_{ννν} = Σλ², with u_{νν} = −H.
  double w_normal = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double uiin = i == normal ? sq : -H * values[i] - values[i] * values[i];
    w_normal += f1[i] * uiin;
  }
  return -w_normal / (H * eval_weight(weight, values));
}

// ---------------------------------------------------------------------------
// L* search

namespace {

struct SliceObjective {
  int m;  // number of μ variables
  std::vector<std::vector<double>> basis;  // orthonormal basis of {Σμ = 0}

  explicit SliceObjective(int m_) : m(m_) {
    for (int j = 1; j < m; ++j) {
      std::vector<double> v(static_cast<std::size_t>(m), 0.0);
      const double norm = std::sqrt(static_cast<double>(j) * (j + 1));
      for (int i = 0; i < j; ++i) v[i] = 1.0 / norm;
      v[j] = -static_cast<double>(j) / norm;
      basis.push_back(std::move(v));
    }
  }

  std::vector<double> mu(const std::vector<double>& x) const {
    std::vector<double> out(static_cast<std::size_t>(m), 1.0 / m);
    for (std::size_t j = 0; j < basis.size(); ++j)
      for (int i = 0; i < m; ++i) out[i] += x[j] * basis[j][i];
    return out;
  }

  double value(const std::vector<double>& x) const {
    const auto u = mu(x);
    double s2 = 0.0, s3 = 0.0;
    for (double v : u) {
      s2 += v * v;
      s3 += v * v * v;
    }
    return 2.0 + (s3 - 1.0) / (1.0 + s2);
  }

  std::vector<double> gradient(const std::vector<double>& x) const {
    const auto u = mu(x);
    double s2 = 0.0, s3 = 0.0;
    for (double v : u) {
      s2 += v * v;
      s3 += v * v * v;
    }
    const double den = 1.0 + s2;
    std::vector<double> gmu(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
      gmu[i] = (3.0 * u[i] * u[i] * den - (s3 - 1.0) * 2.0 * u[i]) / (den * den);
    std::vector<double> gx(basis.size(), 0.0);
    for (std::size_t j = 0; j < basis.size(); ++j)
      for (int i = 0; i < m; ++i) gx[j] += basis[j][i] * gmu[i];
    return gx;
  }
};

double norm2(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

void project_ball(std::vector<double>& x, double radius) {
  const double r = norm2(x);
  if (r > radius)
    for (double& v : x) v *= radius / r;
}

/// Projected gradient ascent with backtracking inside the ball.
std::vector<double> ascend(const SliceObjective& obj, std::vector<double> x, double radius) {
  project_ball(x, radius);
  double fx = obj.value(x);
  double step = 0.1 * radius;
  for (int it = 0; it < 400 && step > 1e-14 * radius; ++it) {
    const auto g = obj.gradient(x);
    const double gn = norm2(g);
    if (gn == 0.0) break;
    std::vector<double> trial = x;
    for (std::size_t j = 0; j < x.size(); ++j) trial[j] += step * g[j] / gn;
    project_ball(trial, radius);
    const double ft = obj.value(trial);
    if (ft > fx) {
      x = std::move(trial);
      fx = ft;
      step *= 1.5;
    } else {
      step *= 0.5;
    }
  }
  return x;
}

}  // namespace

LStarResult lstar_optimize(int n, double radius_max) {
  if (n < 3) throw Error(ErrorKind::usage, "lstar_optimize needs n ≥ 3");
  constexpr double kDivergenceThreshold = 1e6;
  constexpr int kGrowthWindow = 8;
  LStarResult out;
  out.n = n;
  const int m = n - 2;
  if (m == 1) {
    out.sup = 2.0;
    out.attained = true;
    out.witness = {1.0};
    out.history.emplace_back(0.0, 2.0);
    return out;
  }

  const SliceObjective obj(m);
  const int dim = m - 1;
  // Deterministic start directions: coordinate axes of the slice, the
  // directions toward ±e_i in μ, and a fixed pseudo-random set.
  std::vector<std::vector<double>> directions;
  for (int j = 0; j < dim; ++j)
    for (double s : {1.0, -1.0}) {
      std::vector<double> d(static_cast<std::size_t>(dim), 0.0);
      d[j] = s;
      directions.push_back(d);
    }
  for (int i = 0; i < m; ++i)
    for (double s : {1.0, -1.0}) {
      std::vector<double> d(static_cast<std::size_t>(dim), 0.0);
      for (int j = 0; j < dim; ++j) d[j] = s * obj.basis[j][i];
      if (norm2(d) > 0) directions.push_back(d);
    }
  std::uint64_t state = 0x853c49e6748fea9bULL;
  auto next_uniform = [&state]() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<double>(state >> 11) * 0x1.0p-53 * 2.0 - 1.0;
  };
  for (int r = 0; r < 16 * dim; ++r) {
    std::vector<double> d(static_cast<std::size_t>(dim));
    for (double& v : d) v = next_uniform();
    if (norm2(d) > 1e-3) directions.push_back(d);
  }

  std::vector<double> best_x(static_cast<std::size_t>(dim), 0.0);
  double best = obj.value(best_x);
  double radius = 1.0;
  for (; radius <= radius_max * (1 + 1e-12); radius *= 2.0) {
    std::vector<std::vector<double>> starts{best_x};
    for (const auto& d : directions)
      for (double frac : {1.0, 0.5}) {
        std::vector<double> x = d;
        const double dn = norm2(d);
        for (double& v : x) v *= frac * radius / dn;
        starts.push_back(std::move(x));
      }
    for (auto& s : starts) {
      auto x = ascend(obj, s, radius);
      const double v = obj.value(x);
      if (v > best) {
        best = v;
        best_x = std::move(x);
      }
    }
    out.history.emplace_back(radius, best);
    if (best > kDivergenceThreshold) {
      out.infinite = true;
      break;
    }
  }

  // Sustained linear growth across the last doublings also signals divergence.
  if (!out.infinite && out.history.size() > static_cast<std::size_t>(kGrowthWindow)) {
    bool growing = true;
    const std::size_t last = out.history.size() - 1;
    for (std::size_t i = last - kGrowthWindow + 1; i <= last; ++i)
      if (!(out.history[i].second >= 1.9 * out.history[i - 1].second &&
            out.history[i - 1].second > 0))
        growing = false;
    out.infinite = growing;
  }

  out.witness = obj.mu(best_x);
  if (out.infinite) {
    out.sup = std::numeric_limits<double>::infinity();
    out.attained = false;
  } else {
    out.sup = best;
    out.attained = norm2(best_x) < 0.999 * out.history.back().first;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Subsolution window

bool criterion37(double L, int n, const std::optional<Rational>& L_exact) {
  if (L_exact) {
    if (*L_exact <= 0) return true;
    return Rational((n - 2) * (n - 2)) * *L_exact < Rational(4 * (n - 1));
  }
  if (L <= 0) return true;
  return (n - 2.0) * (n - 2.0) * L < 4.0 * (n - 1.0);
}

SubsolutionWindow subsolution_window(const BoundaryFunctionalResult& bd, int n) {
  if (n < 3) throw Error(ErrorKind::usage, "subsolution window needs n ≥ 3");
  SubsolutionWindow w;
  const Rational amin(Integer((n - 2) * (n - 2)), Integer(4 * (n - 1)));
  w.alpha_min_exact = amin;
  w.alpha_min = to_double(amin);
  const double inf = std::numeric_limits<double>::infinity();
  bool equal = false;
  if (bd.B_exact) {
    if (*bd.B_exact > 0) {
      w.alpha_max_exact = Rational(1) / *bd.B_exact;
      w.alpha_max = to_double(*w.alpha_max_exact);
      w.nonempty = amin <= *w.alpha_max_exact;
      equal = amin == *w.alpha_max_exact;
    } else {
      w.alpha_max = inf;
      w.nonempty = true;
    }
  } else {
    w.alpha_max = bd.B > 0 ? 1.0 / bd.B : inf;
    equal = std::abs(w.alpha_max - w.alpha_min) <= 1e-12 * w.alpha_min;
    w.nonempty = equal || w.alpha_min < w.alpha_max;
  }

  if (w.nonempty && !equal) {
    w.strict = true;
    w.strict_reason = "alpha_min < alpha_max";
  } else if (equal) {
    const double interior_floor = 1.0 - 2.0 / (n - 1.0);
    if (w.alpha_max > interior_floor + 1e-12 && bd.B != 0.0) {
      w.strict = true;
      w.strict_reason =
          "interior gain alpha(alpha - 1 + 2/(n-1)) w_nu^2/w^2 > 0 on the boundary, w_nu = -H B w";
    } else if (bd.weight.strictly_convex() && bd.tangential_distinct && bd.B != 0.0) {
      w.strict = true;
      w.strict_reason = "strict convexity gain: distinct tangential eigenvalues, w_nu != 0";
    } else {
      w.strict_reason = "equality with no strictness route";
    }
  } else {
    w.strict_reason = "empty";
  }

  w.alpha = w.nonempty ? (std::isfinite(w.alpha_max) ? w.alpha_max : w.alpha_min + 1.0)
                       : w.alpha_min;
  w.gamma = w.alpha * (w.alpha + 1.0);
  return w;
}

// ---------------------------------------------------------------------------
// Exact algebra behind B ≤ 3 (n = 4, a = 4)

namespace {

bool nonnegative_on_half_line(const RationalPolynomial& p, const Rational& lo) {
  if (p.is_zero()) return true;
  if (p.leading() < 0 || p(lo) < 0) return false;
  Rational bound = 1;
  for (int i = 0; i < p.degree(); ++i) {
    Rational r = p.coeff(i) / p.leading();
    if (r < 0) r = -r;
    bound = std::max(bound, Rational(1) + r);
  }
  return nonnegative_on(p, lo, bound);
}

}  // namespace

IdentityProof case_identity_check() {
  const RationalPolynomial mu{0, 1};
  const RationalPolynomial one{1};
  const RationalPolynomial four{4};
  const Rational a = 4;

  // Case 1: λ_2/H = 1 + μ, λ_3/H = −μ, λ_4/H = −1.
  const RationalPolynomial p1 = one + mu;
  const RationalPolynomial num1 = p1 * p1 * p1 - a * (mu * mu * mu) + a * (p1 * p1 + mu * mu);
  const RationalPolynomial den1 = p1 * p1 + a * (mu * mu) + four;
  const RationalPolynomial factored = (mu - one) * (mu - one) * (RationalPolynomial{5, 3});
  const RationalPolynomial product =
      (mu - one) * (a * (mu * mu + mu - one) - (mu + one) * (mu + one));

  // Case 2: λ_2/H = μ, λ_3/H = 1 − μ, λ_4/H = −1, μ ∈ [0, 1].
  const RationalPolynomial q = one - mu;
  const RationalPolynomial num2 = mu * mu * mu + q * q * q + a * (mu * mu + q * q);
  const RationalPolynomial den2 = mu * mu + q * q + four;

  IdentityProof proof;
  auto add = [&proof](std::string identity, const RationalPolynomial& lhs,
                      const RationalPolynomial& rhs, bool ok, std::string detail) {
    proof.records.push_back({std::move(identity), lhs.coeffs(), rhs.coeffs(), ok, std::move(detail)});
  };

  add("(mu-1)(4(mu^2+mu-1) - (mu+1)^2) = (mu-1)^2 (3mu+5)", product, factored,
      product == factored, "both sides expand to " + factored.to_string("mu"));
  add("2*den1 - num1 = (mu-1)^2 (3mu+5)  [case 1 fraction <= 2]", Rational(2) * den1 - num1,
      factored, Rational(2) * den1 - num1 == factored,
      "num1(1) = " + to_string(num1(1)) + ", den1(1) = " + to_string(den1(1)) +
          " (equality at mu = 1)");
  add("(mu-1)^2 (3mu+5) >= 0 for mu >= 0", factored, RationalPolynomial{},
      nonnegative_on_half_line(factored, 0), "Sturm count of odd-multiplicity part on (0, inf)");
  add("num2 <= 5 on [0,1]", num2, RationalPolynomial{5},
      nonnegative_on(RationalPolynomial{5} - num2, 0, 1) && num2(0) == 5 && num2(1) == 5,
      "num2 = " + num2.to_string("mu") + ", maximum 5 attained at mu = 0 and mu = 1");
  add("den2 >= 4 on [0,1]", den2, four, nonnegative_on(den2 - four, 0, 1),
      "den2 = " + den2.to_string("mu"));
  const RationalPolynomial gap = Rational(5, 4) * den2 - num2;
  add("num2/den2 <= 5/4 on [0,1]", num2, Rational(5, 4) * den2, nonnegative_on(gap, 0, 1),
      "5/4*den2 - num2 = " + gap.to_string("mu"));

  proof.verdict = std::all_of(proof.records.begin(), proof.records.end(),
                              [](const IdentityRecord& r) { return r.verdict; });
  if (!proof.verdict) {
    for (const auto& r : proof.records)
      if (!r.verdict) throw Error(ErrorKind::identity_violated, r.identity);
  }
  return proof;
}

}  // namespace conestab
