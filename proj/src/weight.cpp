#include "conestab/weight.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "conestab/errors.hpp"

namespace conestab {

WeightSpec WeightSpec::signed_norm(Rational a) {
  if (a <= 0) throw Error(ErrorKind::usage, "signed weight needs a > 0, got " + to_string(a));
  return {WeightKind::signed_norm, std::move(a)};
}

WeightSpec parse_weight(const std::string& text) {
  if (text == "frobenius" || text == "fro") return WeightSpec::frobenius();
  if (text == "max" || text == "max-eigenvalue") return WeightSpec::max_eigenvalue();
  if (text.rfind("signed:", 0) == 0) return WeightSpec::signed_norm(parse_rational(text.substr(7)));
  throw Error(ErrorKind::usage, "unknown weight '" + text + "' (frobenius | signed:<a> | max)");
}

std::string to_string(const WeightSpec& w) {
  switch (w.kind) {
    case WeightKind::frobenius: return "frobenius";
    case WeightKind::signed_norm: return "signed:" + to_string(w.a);
    case WeightKind::max_eigenvalue: return "max";
  }
  return "?";
}

namespace {

double coefficient(const WeightSpec& spec, double lambda) {
  return (spec.kind == WeightKind::signed_norm && lambda < 0.0) ? spec.a_value() : 1.0;
}

double radius(std::span<const double> lambda) {
  double r = 0.0;
  for (double v : lambda) r = std::max(r, std::abs(v));
  return r;
}

}  // namespace

double eval_weight(const WeightSpec& spec, std::span<const double> lambda) {
  if (lambda.empty()) return 0.0;
  if (spec.kind == WeightKind::max_eigenvalue)
    return *std::max_element(lambda.begin(), lambda.end());
  // Summing in a canonical order makes the result exactly permutation invariant.
  std::vector<double> sorted(lambda.begin(), lambda.end());
  std::sort(sorted.begin(), sorted.end());
  double sum = 0.0;
  for (double v : sorted) sum += coefficient(spec, v) * v * v;
  return std::sqrt(sum);
}

double eval_weight(const WeightSpec& spec, const Spectrum& lambda) {
  const auto values = lambda.expanded();
  return eval_weight(spec, values);
}

std::vector<double> weight_partials(const WeightSpec& spec, std::span<const double> lambda) {
  const std::size_t n = lambda.size();
  std::vector<double> g(n, 0.0);
  if (spec.kind == WeightKind::max_eigenvalue) {
    const double top = *std::max_element(lambda.begin(), lambda.end());
    const auto count = std::count(lambda.begin(), lambda.end(), top);
    for (std::size_t i = 0; i < n; ++i)
      if (lambda[i] == top) g[i] = 1.0 / static_cast<double>(count);
    return g;
  }
  const double f = eval_weight(spec, lambda);
  for (std::size_t i = 0; i < n; ++i) g[i] = coefficient(spec, lambda[i]) * lambda[i] / f;
  return g;
}

std::vector<double> weight_second_partials(const WeightSpec& spec,
                                           std::span<const double> lambda) {
  const std::size_t n = lambda.size();
  std::vector<double> hess(n * n, 0.0);
  if (spec.kind == WeightKind::max_eigenvalue) return hess;
  const double f = eval_weight(spec, lambda);
  const double f3 = f * f * f;
  for (std::size_t i = 0; i < n; ++i) {
    const double ci = coefficient(spec, lambda[i]);
    for (std::size_t j = 0; j < n; ++j) {
      const double cj = coefficient(spec, lambda[j]);
      hess[i * n + j] = (i == j ? ci / f : 0.0) - ci * lambda[i] * cj * lambda[j] / f3;
    }
  }
  return hess;
}

double pair_coefficient(const WeightSpec& spec, std::span<const double> lambda,
                        std::span<const double> partials, std::span<const double> second, int i,
                        int j) {
  (void)spec;
  const std::size_t n = lambda.size();
  const double gap = lambda[i] - lambda[j];
  if (std::abs(gap) >= kSmoothnessGuard * radius(lambda)) return (partials[i] - partials[j]) / gap;
  return second[i * n + i] - second[i * n + j];
}

double smoothness_margin(const WeightSpec& spec, std::span<const double> lambda) {
  switch (spec.kind) {
    case WeightKind::frobenius:
      return std::numeric_limits<double>::infinity();
    case WeightKind::signed_norm: {
      if (spec.a == 1) return std::numeric_limits<double>::infinity();
      double m = std::numeric_limits<double>::infinity();
      for (double v : lambda) m = std::min(m, std::abs(v));
      return m;
    }
    case WeightKind::max_eigenvalue: {
      if (lambda.size() < 2) return std::numeric_limits<double>::infinity();
      std::vector<double> s(lambda.begin(), lambda.end());
      std::partial_sort(s.begin(), s.begin() + 2, s.end(), std::greater<>());
      return s[0] - s[1];
    }
  }
  return 0.0;
}

bool is_guarded_smooth(const WeightSpec& spec, std::span<const double> lambda, double guard) {
  const double r = radius(lambda);
  if (!(r > 0.0) || !(eval_weight(spec, lambda) > guard * r)) return false;
  return smoothness_margin(spec, lambda) >= guard * r;
}

}  // namespace conestab
