#include "doctest.h"

#include <cmath>
#include <vector>

#include "conestab/errors.hpp"
#include "conestab/simons.hpp"

using namespace conestab;

TEST_CASE("harmonic dimensions") {
  CHECK(harmonic_dimension(2, 3) == 2);
  CHECK(harmonic_dimension(3, 2) == 5);
  CHECK(harmonic_dimension(3, 3) == 7);
  CHECK(harmonic_dimension(4, 4) == 25);
  CHECK(harmonic_dimension(5, 6) == 140);
  CHECK(monomial_basis(3, 2).size() == 6);
  CHECK(laplacian_rank(4, 3) == 4);
}

TEST_CASE("random harmonic polynomials are exactly harmonic and reproducible") {
  for (int n : {2, 3, 5}) {
    for (int d : {2, 3, 4, 6}) {
      const auto p = random_harmonic_poly(n, d, 77);
      for (const auto& c : laplacian_coefficients(p)) CHECK(c == 0);
      bool any = false;
      for (const auto& c : p.coefficients) any = any || c != 0;
      CHECK(any);
      const auto q = random_harmonic_poly(n, d, 77);
      CHECK(q.coefficients == p.coefficients);
    }
  }
  CHECK(random_harmonic_poly(3, 3, 1).coefficients != random_harmonic_poly(3, 3, 2).coefficients);
  CHECK_THROWS_AS(random_harmonic_poly(3, 7, 1), Error);
  CHECK_THROWS_AS(random_harmonic_poly(1, 3, 1), Error);
}

TEST_CASE("seeded stream is counter based") {
  SeededStream a(9, 3), b(9, 3), c(9, 4);
  for (int i = 0; i < 10; ++i) {
    const auto x = a.next();
    CHECK(x == b.next());
    CHECK(x != c.next());
  }
  SeededStream u(1, 1);
  for (int i = 0; i < 1000; ++i) {
    const double v = u.uniform();
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
    const auto k = u.integer(-3, 3);
    CHECK(k >= -3);
    CHECK(k <= 3);
  }
  const auto p = shell_point(4, 11, 5);
  double r2 = 0;
  for (double x : p) r2 += x * x;
  CHECK(std::sqrt(r2) >= 0.1);
  CHECK(std::sqrt(r2) <= 1.0);
  CHECK(shell_point(4, 11, 5) == p);
}

TEST_CASE("frobenius identity on a planar example") {
  HarmonicPoly p;
  p.n = 2;
  p.d = 3;
  p.exponents = {{3, 0}, {1, 2}};
  p.coefficients = {1, -3};
  CHECK(frobenius_identity(p, 200, 3) <= 1e-12);
  PolyDerivatives dp(p);
  const std::vector<double> x{0.3, -0.4};
  PointEvaluation ev;
  REQUIRE(evaluate_weight_at(dp, WeightSpec::frobenius(), x, ev));
  // u = x³ − 3xy²: all nonzero third derivatives are ±6, Σ u_ijk² = 4·36.
  CHECK(ev.third_sq == doctest::Approx(144.0));
  CHECK(ev.w == doctest::Approx(6.0 * std::sqrt(2.0) * 0.5));
}

TEST_CASE("general inequality holds with analytic and finite-difference agreement") {
  for (int n : {3, 4}) {
    for (const auto& w : {WeightSpec::frobenius(), WeightSpec::signed_norm(4), WeightSpec::max_eigenvalue()}) {
      CAPTURE(n);
      CAPTURE(to_string(w));
      const auto p = random_harmonic_poly(n, 3, 1000 + n);
      const auto r = verify_general_inequality(p, w, 200, 42);
      CHECK(r.passed());
      CHECK(r.hard_violations == 0);
      CHECK(r.worst_margin >= -r.tol_fd);
      CHECK(r.max_gradient_rel_error <= kGradientFdTol);
      CHECK(r.max_laplacian_rel_error <= kLaplacianFdTol);
      CHECK(r.max_pairing_residual <= 1e-10);
      CHECK(r.min_pairing >= -1e-12);
      CHECK(r.samples_tested == 200);
      const auto again = verify_general_inequality(p, w, 200, 42);
      CHECK(again.worst_margin == r.worst_margin);
      CHECK(again.worst_point == r.worst_point);
    }
  }
  const auto p4 = random_harmonic_poly(4, 4, 3);
  CHECK(frobenius_identity(p4, 500, 9) <= 1e-9);
}
