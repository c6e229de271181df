#pragma once

#include <span>
#include <string>
#include <vector>

#include "conestab/rational.hpp"
#include "conestab/spectrum.hpp"

namespace conestab {

enum class WeightKind { frobenius, signed_norm, max_eigenvalue };

/// A convex, symmetric, positively 1-homogeneous function of Hessian
/// eigenvalues.
///
///   frobenius       f = |λ|
///   signed_norm(a)  f² = Σ_{λ>0} λ² + a Σ_{λ<0} λ²
///   max_eigenvalue  f = max λ
struct WeightSpec {
  WeightKind kind = WeightKind::frobenius;
  Rational a = 1;  // only meaningful for signed_norm

  static WeightSpec frobenius() { return {}; }
  static WeightSpec signed_norm(Rational a);
  static WeightSpec max_eigenvalue() { return {WeightKind::max_eigenvalue, 1}; }

  double a_value() const { return to_double(a); }

  /// Strict convexity in every 2-plane of distinct, nonzero eigenvalues.
  bool strictly_convex() const { return kind != WeightKind::max_eigenvalue; }

  friend bool operator==(const WeightSpec& x, const WeightSpec& y) {
    return x.kind == y.kind && (x.kind != WeightKind::signed_norm || x.a == y.a);
  }
};

/// "frobenius" | "signed:<rational>" | "max"
WeightSpec parse_weight(const std::string& text);
std::string to_string(const WeightSpec& w);

/// Relative width of the exclusion band around non-smooth points.
inline constexpr double kSmoothnessGuard = 1e-4;

double eval_weight(const WeightSpec& spec, std::span<const double> lambda);
double eval_weight(const WeightSpec& spec, const Spectrum& lambda);

/// ∂f/∂λ_i. Defined wherever f is C¹ (everywhere except the max-eigenvalue
/// weight at a multiple top eigenvalue, where the top block shares weight
/// equally). Requires f(λ) > 0.
std::vector<double> weight_partials(const WeightSpec& spec, std::span<const double> lambda);

/// ∂²f/∂λ_i∂λ_j, row-major n×n, at a point where f is C².
std::vector<double> weight_second_partials(const WeightSpec& spec, std::span<const double> lambda);

/// F_{e_ij,e_ij}: (f_i − f_j)/(λ_i − λ_j), or its coincident limit
/// f_ii − f_ij when |λ_i − λ_j| < guard·radius.
double pair_coefficient(const WeightSpec& spec, std::span<const double> lambda,
                        std::span<const double> partials, std::span<const double> second, int i,
                        int j);

/// Distance from λ to the set where f fails to be C², in eigenvalue units.
/// Infinite for frobenius (smooth away from λ = 0).
double smoothness_margin(const WeightSpec& spec, std::span<const double> lambda);

/// True when λ clears the guard: f(λ) > 0 and margin ≥ guard·radius.
bool is_guarded_smooth(const WeightSpec& spec, std::span<const double> lambda,
                       double guard = kSmoothnessGuard);

}  // namespace conestab
