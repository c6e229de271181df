#include "conestab/simons.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include <Eigen/Dense>

#include "conestab/errors.hpp"
#include "conestab/spectral_calculus.hpp"

namespace conestab {

// ---------------------------------------------------------------------------
// RNG

std::uint64_t SeededStream::mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::int64_t SeededStream::integer(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw Error(ErrorKind::usage, "empty integer range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(next() % span);
}

// ---------------------------------------------------------------------------
// Exact polynomial algebra

namespace {

void basis_rec(int n, int d, int i, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (i == n - 1) {
    cur[i] = d;
    out.push_back(cur);
    return;
  }
  for (int e = d; e >= 0; --e) {
    cur[i] = e;
    basis_rec(n, d - e, i + 1, cur, out);
  }
}

long long binom(int a, int b) {
  if (b < 0 || a < b) return 0;
  long long r = 1;
  for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
  return r;
}

using Sparse = std::map<std::vector<int>, Rational>;

Sparse to_sparse(const HarmonicPoly& p) {
  Sparse s;
  for (std::size_t i = 0; i < p.exponents.size(); ++i)
    if (p.coefficients[i] != 0) s[p.exponents[i]] += p.coefficients[i];
  return s;
}

Sparse laplacian(const Sparse& p, int n) {
  Sparse out;
  for (const auto& [e, c] : p)
    for (int i = 0; i < n; ++i)
      if (e[i] >= 2) {
        auto f = e;
        f[i] -= 2;
        out[f] += c * e[i] * (e[i] - 1);
      }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

Sparse times_r2(const Sparse& p, int n) {
  Sparse out;
  for (const auto& [e, c] : p)
    for (int i = 0; i < n; ++i) {
      auto f = e;
      f[i] += 2;
      out[f] += c;
    }
  return out;
}

HarmonicPoly from_sparse(const Sparse& s, int n, int d) {
  HarmonicPoly p;
  p.n = n;
  p.d = d;
  p.exponents = monomial_basis(n, d);
  p.coefficients.assign(p.exponents.size(), Rational(0));
  for (std::size_t i = 0; i < p.exponents.size(); ++i) {
    auto it = s.find(p.exponents[i]);
    if (it != s.end()) p.coefficients[i] = it->second;
  }
  return p;
}

}  // namespace

std::vector<std::vector<int>> monomial_basis(int n, int d) {
  if (n < 1 || d < 0) return {};
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(n), 0);
  basis_rec(n, d, 0, cur, out);
  return out;
}

std::vector<Rational> laplacian_coefficients(const HarmonicPoly& p) {
  const auto lap = laplacian(to_sparse(p), p.n);
  const auto basis = monomial_basis(p.n, p.d - 2);
  std::vector<Rational> out(basis.size(), Rational(0));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    auto it = lap.find(basis[i]);
    if (it != lap.end()) out[i] = it->second;
  }
  return out;
}

int laplacian_rank(int n, int d) {
  if (d < 2) return 0;
  const auto src = monomial_basis(n, d);
  const auto dst = monomial_basis(n, d - 2);
  std::map<std::vector<int>, std::size_t> row_of;
  for (std::size_t i = 0; i < dst.size(); ++i) row_of[dst[i]] = i;
  // Matrix of Δ with one column per source monomial; exact Gaussian elimination.
  std::vector<std::vector<Rational>> m(dst.size(), std::vector<Rational>(src.size(), Rational(0)));
  for (std::size_t j = 0; j < src.size(); ++j)
    for (int i = 0; i < n; ++i)
      if (src[j][i] >= 2) {
        auto f = src[j];
        f[i] -= 2;
        m[row_of[f]][j] += src[j][i] * (src[j][i] - 1);
      }
  int rank = 0;
  const std::size_t rows = m.size();
  for (std::size_t col = 0; col < src.size() && static_cast<std::size_t>(rank) < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && m[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (m[r][col] == 0) continue;
      const Rational factor = m[r][col] / m[rank][col];
      for (std::size_t c = col; c < src.size(); ++c) m[r][c] -= factor * m[rank][c];
    }
    ++rank;
  }
  return rank;
}

int harmonic_dimension(int n, int d) {
  return static_cast<int>(binom(n + d - 1, d)) - laplacian_rank(n, d);
}

HarmonicPoly random_harmonic_poly(int n, int d, std::uint64_t seed) {
  if (n < 2) throw Error(ErrorKind::usage, "harmonic polynomials need n ≥ 2");
  if (d < 2 || d > 6) throw Error(ErrorKind::usage, "degree must lie in [2, 6]");
  for (std::uint64_t attempt = 0;; ++attempt) {
    SeededStream rng(seed, 0x5eed0000ULL + attempt);
    Sparse p;
    for (const auto& e : monomial_basis(n, d)) {
      const auto den = rng.integer(1, 64);
      const auto num = rng.integer(-10 * den, 10 * den);
      if (num != 0) p[e] = Rational(Integer(num), Integer(den));
    }
    // Harmonic part p − |x|²q: Σ_j (−1)^j |x|^{2j} Δ^j p / (2^j j! Π_{i≤j} (n + 2d − 2i − 2)).
    Sparse h = p;
    Sparse lap = p;
    Sparse r2j;  // |x|^{2j}·Δ^j p, built up incrementally
    Rational denom = 1;
    for (int j = 1; 2 * j <= d; ++j) {
      lap = laplacian(lap, n);
      denom *= Rational(2 * j * (n + 2 * d - 2 * j - 2));
      Sparse term = lap;
      for (int m = 0; m < j; ++m) term = times_r2(term, n);
      const Rational c = (j % 2 == 0 ? Rational(1) : Rational(-1)) / denom;
      for (const auto& [e, v] : term) h[e] += c * v;
    }
    std::erase_if(h, [](const auto& kv) { return kv.second == 0; });
    if (h.empty()) continue;
    if (!laplacian(h, n).empty())
      throw Error(ErrorKind::identity_violated, "harmonic projection left a nonzero Laplacian");
    return from_sparse(h, n, d);
  }
}

// ---------------------------------------------------------------------------
// Derivatives

namespace {

using RawTerm = std::pair<double, std::vector<int>>;

std::vector<RawTerm> differentiate(const std::vector<RawTerm>& p, int var) {
  std::vector<RawTerm> out;
  for (const auto& [c, e] : p)
    if (e[var] > 0) {
      auto f = e;
      f[var] -= 1;
      out.emplace_back(c * e[var], std::move(f));
    }
  return out;
}

}  // namespace

PolyDerivatives::PolyDerivatives(const HarmonicPoly& p) : n_(p.n) {
  std::vector<RawTerm> base;
  for (std::size_t i = 0; i < p.exponents.size(); ++i)
    if (p.coefficients[i] != 0) base.emplace_back(to_double(p.coefficients[i]), p.exponents[i]);
  auto convert = [](const std::vector<RawTerm>& t) {
    Poly out;
    for (const auto& [c, e] : t) out.push_back({c, e});
    return out;
  };
  second_.resize(static_cast<std::size_t>(n_ * n_));
  third_.resize(static_cast<std::size_t>(n_ * n_ * n_));
  for (int i = 0; i < n_; ++i) {
    const auto di = differentiate(base, i);
    for (int j = 0; j < n_; ++j) {
      const auto dij = differentiate(di, j);
      second_[i * n_ + j] = convert(dij);
      for (int k = 0; k < n_; ++k) third_[(i * n_ + j) * n_ + k] = convert(differentiate(dij, k));
    }
  }
}

double PolyDerivatives::eval(const Poly& p, std::span<const double> x) {
  double s = 0.0;
  for (const auto& t : p) {
    double m = t.coeff;
    for (std::size_t i = 0; i < x.size(); ++i)
      for (int e = 0; e < t.exps[i]; ++e) m *= x[i];
    s += m;
  }
  return s;
}

std::vector<double> PolyDerivatives::hessian(std::span<const double> x) const {
  std::vector<double> out(second_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = eval(second_[i], x);
  return out;
}

std::vector<double> PolyDerivatives::third(std::span<const double> x) const {
  std::vector<double> out(third_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = eval(third_[i], x);
  return out;
}

// ---------------------------------------------------------------------------
// Pointwise weight evaluation

namespace {

struct EigenFrame {
  std::vector<double> lambda;
  Eigen::MatrixXd Q;  // columns are eigenvectors
};

EigenFrame eigen_frame(const std::vector<double>& hess, int n) {
  Eigen::MatrixXd A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = 0.5 * (hess[i * n + j] + hess[j * n + i]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
  EigenFrame f;
  f.lambda.assign(es.eigenvalues().data(), es.eigenvalues().data() + n);
  f.Q = es.eigenvectors();
  return f;
}

double weight_at(const PolyDerivatives& dp, const WeightSpec& spec, std::span<const double> x) {
  const auto f = eigen_frame(dp.hessian(x), dp.n());
  return eval_weight(spec, f.lambda);
}

double lipschitz_sq(const WeightSpec& spec) {
  return spec.kind == WeightKind::signed_norm ? std::max(1.0, spec.a_value()) : 1.0;
}

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

bool evaluate_weight_at(const PolyDerivatives& dp, const WeightSpec& spec,
                        std::span<const double> x, PointEvaluation& out) {
  const int n = dp.n();
  const auto frame = eigen_frame(dp.hessian(x), n);
  const auto T = dp.third(x);
  out.third_sq = 0.0;
  for (double v : T) out.third_sq += v * v;
  out.third_norm = std::sqrt(out.third_sq);
  out.margin_to_nonsmooth = smoothness_margin(spec, frame.lambda);
  if (!is_guarded_smooth(spec, frame.lambda)) return false;

  ThirdDerivatives rot(n);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b)
      for (int c = b; c < n; ++c) {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            const double qij = frame.Q(i, a) * frame.Q(j, b);
            if (qij == 0.0) continue;
            for (int k = 0; k < n; ++k) s += qij * frame.Q(k, c) * T[(i * n + j) * n + k];
          }
        rot.set(a, b, c, s);
      }
  out.w = eval_weight(spec, frame.lambda);
  const auto g = weight_gradient(spec, frame.lambda, rot);
  out.grad.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < n; ++a) out.grad[i] += frame.Q(i, a) * g[a];
  out.laplacian = weight_laplacian(spec, frame.lambda, rot);
  return true;
}

std::vector<double> shell_point(int n, std::uint64_t seed, std::uint64_t index) {
  SeededStream rng(seed, index);
  std::vector<double> x(static_cast<std::size_t>(n));
  double r2 = 0.0;
  do {
    r2 = 0.0;
    for (auto& v : x) {
      const double u1 = 1.0 - rng.uniform();
      const double u2 = rng.uniform();
      v = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
      r2 += v * v;
    }
  } while (r2 < 1e-24);
  const double inner = std::pow(0.1, n);
  const double radius = std::pow(inner + rng.uniform() * (1.0 - inner), 1.0 / n);
  const double s = radius / std::sqrt(r2);
  for (auto& v : x) v *= s;
  return x;
}

// ---------------------------------------------------------------------------
// Suites

namespace {

struct FdEstimate {
  std::vector<double> grad;
  double laplacian = 0.0;
  double grad_error = 0.0;  // Richardson error estimates
  double lap_error = 0.0;
};

FdEstimate finite_differences(const PolyDerivatives& dp, const WeightSpec& spec,
                              std::span<const double> x, double h) {
  const int n = dp.n();
  const double w0 = weight_at(dp, spec, x);
  std::vector<double> y(x.begin(), x.end());
  auto pass = [&](double step, std::vector<double>& g, double& lap) {
    g.assign(static_cast<std::size_t>(n), 0.0);
    lap = 0.0;
    for (int i = 0; i < n; ++i) {
      y[i] = x[i] + step;
      const double wp = weight_at(dp, spec, y);
      y[i] = x[i] - step;
      const double wm = weight_at(dp, spec, y);
      y[i] = x[i];
      g[i] = (wp - wm) / (2.0 * step);
      lap += (wp - 2.0 * w0 + wm) / (step * step);
    }
  };
  std::vector<double> g1, g2;
  double l1 = 0.0, l2 = 0.0;
  pass(h, g1, l1);
  pass(0.5 * h, g2, l2);
  FdEstimate out;
  out.grad.resize(static_cast<std::size_t>(n));
  double err = 0.0;
  for (int i = 0; i < n; ++i) {
    out.grad[i] = (4.0 * g2[i] - g1[i]) / 3.0;
    err += (out.grad[i] - g2[i]) * (out.grad[i] - g2[i]);
  }
  out.grad_error = std::sqrt(err);
  out.laplacian = (4.0 * l2 - l1) / 3.0;
  out.lap_error = std::abs(out.laplacian - l2);
  return out;
}

void require_harmonic(const HarmonicPoly& poly) {
  if (poly.d < 2) throw Error(ErrorKind::usage, "polynomial degree must be at least 2");
  for (const auto& c : laplacian_coefficients(poly))
    if (c != 0) throw Error(ErrorKind::usage, "polynomial is not harmonic");
}

}  // namespace

ViolationReport verify_general_inequality(const HarmonicPoly& poly, const WeightSpec& spec,
                                          int samples, std::uint64_t seed) {
  require_harmonic(poly);
  if (samples < 1) throw Error(ErrorKind::usage, "samples must be positive");
  const int n = poly.n;
  const PolyDerivatives dp(poly);
  const double lip2 = lipschitz_sq(spec);
  ViolationReport rep;
  rep.seed = seed;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  rep.min_pairing = std::numeric_limits<double>::infinity();
  double fd_tol = kInequalityTol;
  std::vector<double> margins;
  const std::uint64_t max_draws = 20ULL * static_cast<std::uint64_t>(samples) + 100;
  for (std::uint64_t i = 0; i < max_draws && rep.samples_tested < samples; ++i) {
    const auto x = shell_point(n, seed, i);
    PointEvaluation ev;
    if (!evaluate_weight_at(dp, spec, x, ev)) {
      ++rep.samples_guarded;
      continue;
    }
    // The step keeps every stencil point on the same smooth branch of f.
    const double r = norm(x);
    double h = 1e-3 * r;
    if (std::isfinite(ev.margin_to_nonsmooth) && ev.third_norm > 0.0)
      h = std::min(h, 1e-2 * ev.margin_to_nonsmooth / ev.third_norm);
    if (h < 1e-4 * r) {
      ++rep.samples_guarded;
      continue;
    }
    ++rep.samples_tested;

    const double scale = lip2 * ev.third_sq;
    const double margin = ev.w * ev.laplacian - (2.0 / n) * norm(ev.grad) * norm(ev.grad);
    const double normalized = scale > 0.0 ? margin / scale : 0.0;
    margins.push_back(normalized);
    if (normalized < rep.worst_margin) {
      rep.worst_margin = normalized;
      rep.worst_point = x;
    }

    const auto fd = finite_differences(dp, spec, x, h);
    const double grad_scale = std::sqrt(scale);
    const double lap_scale = ev.w > 0.0 ? scale / ev.w : 1.0;
    double gdiff = 0.0;
    for (int k = 0; k < n; ++k) gdiff += (fd.grad[k] - ev.grad[k]) * (fd.grad[k] - ev.grad[k]);
    const double grad_rel = grad_scale > 0.0 ? std::sqrt(gdiff) / grad_scale : 0.0;
    const double lap_rel = lap_scale > 0.0 ? std::abs(fd.laplacian - ev.laplacian) / lap_scale : 0.0;
    rep.max_gradient_rel_error = std::max(rep.max_gradient_rel_error, grad_rel);
    rep.max_laplacian_rel_error = std::max(rep.max_laplacian_rel_error, lap_rel);
    if (grad_rel > kGradientFdTol || lap_rel > kLaplacianFdTol) ++rep.fd_disagreements;
    if (scale > 0.0) {
      const double gnorm = norm(ev.grad);
      const double bound = (ev.w * fd.lap_error + (4.0 / n) * gnorm * fd.grad_error) / scale;
      fd_tol = std::max(fd_tol, bound);
    }

    const auto frame = eigen_frame(dp.hessian(x), n);
    const auto pid = identity_nf(spec, Spectrum::from_values(frame.lambda));
    const double f = ev.w;
    if (f > 0.0) {
      rep.max_pairing_residual = std::max(rep.max_pairing_residual, pid.residual / (n * f));
      rep.min_pairing = std::min(rep.min_pairing, pid.min_pairing / (f * f));
    }
  }
  if (rep.samples_tested == 0)
    throw Error(ErrorKind::all_points_guarded, "no sample point cleared the smoothness guard");
  rep.tol_fd = fd_tol;
  for (double m : margins)
    if (m < -rep.tol_fd) ++rep.hard_violations;
  if (!std::isfinite(rep.min_pairing)) rep.min_pairing = 0.0;
  return rep;
}

double frobenius_identity(const HarmonicPoly& poly, int samples, std::uint64_t seed) {
  require_harmonic(poly);
  const PolyDerivatives dp(poly);
  const auto spec = WeightSpec::frobenius();
  double worst = 0.0;
  int tested = 0;
  for (int i = 0; i < samples; ++i) {
    const auto x = shell_point(poly.n, seed, static_cast<std::uint64_t>(i));
    PointEvaluation ev;
    if (!evaluate_weight_at(dp, spec, x, ev) || ev.third_sq == 0.0) continue;
    ++tested;
    const double g2 = norm(ev.grad) * norm(ev.grad);
    worst = std::max(worst, std::abs(ev.w * ev.laplacian + g2 - ev.third_sq) / ev.third_sq);
  }
  if (tested == 0)
    throw Error(ErrorKind::all_points_guarded, "no sample point has nonzero D²u and D³u");
  return worst;
}

InteriorCheckResult homogeneous_improved_check(const ConeSolution& cone, const WeightSpec& spec,
                                               int gridN) {
  return interior_inequality_check(cone, spec, gridN);
}

}  // namespace conestab
