#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "conestab/errors.hpp"
#include "conestab/stability.hpp"
#include "golden_values.hpp"

using namespace conestab;

TEST_CASE("Sturm counting on a known tridiagonal matrix") {
  // Path Laplacian: eigenvalues 2 − 2cos(jπ/(m+1)).
  const int m = 50;
  std::vector<double> d(m, 2.0), e(m - 1, -1.0);
  const double lo = 2 - 2 * std::cos(std::numbers::pi / (m + 1));
  CHECK(smallest_tridiagonal_eigenvalue(d, e) == doctest::Approx(lo).epsilon(1e-12));
  CHECK(sturm_count(d, e, 0.0) == 0);
  CHECK(sturm_count(d, e, 4.0) == m);
  CHECK(sturm_count(d, e, 2.0 + 1e-9) == 25);
}

TEST_CASE("stability eigenvalue matches the reference table by both methods") {
  for (const auto& g : golden::kCones) {
    CAPTURE(g.k);
    CAPTURE(g.h);
    const auto cone = solve_cross_section(g.k, g.h);
    const auto s = rayleigh_lambda(cone, SpectralMethod::shooting);
    CHECK(s.Lambda == doctest::Approx(g.Lambda).epsilon(1e-9).scale(1.0));
    const auto f = rayleigh_lambda(cone, SpectralMethod::finite_difference);
    CHECK(f.Lambda == doctest::Approx(g.Lambda).epsilon(1e-6).scale(1.0));
    CHECK(f.convergence_estimate >= 0.0);
  }
}

TEST_CASE("verdicts by dimension") {
  for (const auto& g : golden::kCones) {
    const auto cone = solve_cross_section(g.k, g.h);
    const auto r = stability_verdict(cone);
    CAPTURE(g.k);
    CAPTURE(g.h);
    CHECK(r.threshold == doctest::Approx((g.n - 2) * (g.n - 2) / 4.0));
    CHECK(r.methods_agree);
    CHECK(r.consistent);
    const bool expect_unstable = g.k > 1 && g.Lambda > r.threshold;
    CHECK((r.verdict == Verdict::unstable) == expect_unstable);
  }
}

TEST_CASE("half-space is stable with constant ground state") {
  const auto cone = solve_cross_section(1, 3);
  const auto r = stability_verdict(cone);
  CHECK(std::abs(r.Lambda) <= 1e-6);
  CHECK(r.verdict == Verdict::stable);
  const auto p = positive_solution(cone);
  CHECK(p.decay_exponent == doctest::Approx(0.0).scale(1.0));
  for (const auto& s : p.psi.samples()) CHECK(s.y == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(instability_certificate(cone), Error);
}

TEST_CASE("windows and criterion37 for the small cones") {
  const auto r21 = stability_verdict(solve_cross_section(2, 1), {.weight = WeightSpec::signed_norm(4)});
  const auto* w = r21.window_for(WeightSpec::signed_norm(4));
  REQUIRE(w);
  CHECK(*w->window.alpha_min_exact == Rational(1, 8));
  CHECK(*w->window.alpha_max_exact == Rational(1, 2));
  CHECK(r21.criterion37_fired);
  CHECK(r21.L == doctest::Approx(2.0).epsilon(1e-12));

  const auto r22 = stability_verdict(solve_cross_section(2, 2));
  const auto* w22 = r22.window_for(WeightSpec::signed_norm(4));
  REQUIRE(w22);
  CHECK(w22->window.alpha_min == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(w22->window.strict);
  CHECK(r22.verdict == Verdict::unstable);

  const auto r51 = stability_verdict(solve_cross_section(5, 1));
  const auto* w51 = r51.window_for(WeightSpec::signed_norm(4));
  REQUIRE(w51);
  CHECK(*w51->window.alpha_min_exact == Rational(4, 5));
  CHECK(*w51->window.alpha_max_exact == Rational(4, 5));
  CHECK(w51->window.strict);
  CHECK_FALSE(r51.criterion37_fired);
}

TEST_CASE("certificate quadratic form scales quadratically") {
  const auto cone = solve_cross_section(2, 2);
  const auto s = rayleigh_lambda(cone, SpectralMethod::shooting);
  const double thr = 1.0;
  const double beta = 0.5 * (s.Lambda + thr);
  const double q1 = certificate_quadratic_form(cone, s, beta, 64, 1.0);
  const double q3 = certificate_quadratic_form(cone, s, beta, 64, 3.0);
  CHECK(q1 < 0.0);
  CHECK(q3 == doctest::Approx(9.0 * q1).epsilon(1e-12));

  const auto c = instability_certificate(cone, s);
  CHECK(c.Q_value < 0.0);
  CHECK(c.Q_value <= -c.margin_floor);
  CHECK(c.r2 / c.r1 == doctest::Approx(std::exp(std::numbers::pi / c.omega)).epsilon(1e-8));
  REQUIRE(c.refinement_history.size() >= 2);
  CHECK(c.refinement_history[1].Q < 0.0);
}

TEST_CASE("positive solution on a stable cone") {
  const auto cone = solve_cross_section(2, 5);
  const auto s = rayleigh_lambda(cone, SpectralMethod::shooting);
  const auto p = positive_solution(cone, s);
  CHECK(p.min_psi > 0.0);
  CHECK(p.residual <= 1e-8);
  const double thr = 25.0 / 4;
  CHECK(p.decay_exponent == doctest::Approx(-2.5 + std::sqrt(thr - s.Lambda)).epsilon(1e-12));
  CHECK_THROWS_AS(positive_solution(solve_cross_section(2, 2)), Error);
  CHECK_THROWS_AS(instability_certificate(cone, s), Error);
}

TEST_CASE("Euler equation zeros") {
  const auto z = euler_zeros(3.0, 2.0);
  CHECK(z.oscillates);
  REQUIRE(z.spacing);
  CHECK(*z.spacing == doctest::Approx(std::numbers::pi));
  REQUIRE(z.numeric_spacing);
  CHECK(*z.numeric_spacing == doctest::Approx(std::numbers::pi).epsilon(1e-6));
  const auto edge = euler_zeros(3.0, 1.0);  // β = (α−1)²/4
  CHECK_FALSE(edge.oscillates);
  CHECK_FALSE(edge.spacing);
  CHECK_FALSE(euler_zeros(3.0, 0.5).oscillates);
}
