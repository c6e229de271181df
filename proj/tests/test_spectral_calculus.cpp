#include "doctest.h"

#include <cmath>
#include <vector>

#include "conestab/cone_solver.hpp"
#include "conestab/errors.hpp"
#include "conestab/spectral_calculus.hpp"

using namespace conestab;

namespace {

ExactSpectrum exact(std::vector<Rational> values) { return ExactSpectrum::from_values(values); }

Spectrum n4_case1(double mu) { return Spectrum::from_values({0.0, 1.0 + mu, -mu, -1.0}); }
Spectrum n4_case2(double mu) { return Spectrum::from_values({0.0, mu, 1.0 - mu, -1.0}); }

}  // namespace

TEST_CASE("L on the n = 3 boundary spectrum is exactly 2") {
  for (Rational kappa : {Rational(1), Rational(3, 7), Rational(5)}) {
    const auto L = boundary_L(exact({0, kappa, -kappa}), kappa);
    CHECK(L == 2);
  }
  const auto bd = boundary_B(exact({0, 1, -1}), Rational(1), Rational(4));
  const auto w = subsolution_window(bd, 3);
  REQUIRE(w.alpha_min_exact);
  REQUIRE(w.alpha_max_exact);
  CHECK(*w.alpha_min_exact == Rational(1, 8));
  CHECK(*w.alpha_max_exact == Rational(1, 2));
  CHECK(w.nonempty);
  CHECK(w.strict);
}

TEST_CASE("split rejects spectra without the free boundary structure") {
  CHECK_THROWS_AS(split_boundary(Spectrum::from_values({0.0, 1.0, -1.0}), -1.0), Error);
  CHECK_THROWS_AS(split_boundary(Spectrum::from_values({0.0, 2.0, -1.0}), 1.0), Error);
  const auto s = split_boundary(exact({0, 2, -1, -1}), Rational(1));
  CHECK(s.n == 4);
  CHECK(s.tangential.size() == 2);
}

TEST_CASE("axisymmetric closed form L = (n-1)/(n-2)") {
  for (int n = 3; n <= 8; ++n) {
    CAPTURE(n);
    const auto cone = solve_cross_section(n - 1, 1);
    const auto bd = boundary_data(cone);
    CHECK(boundary_L(bd.hessian_spectrum, bd.H) ==
          doctest::Approx(double(n - 1) / (n - 2)).epsilon(1e-10));
    REQUIRE(bd.normalized_exact);
    CHECK(boundary_L(*bd.normalized_exact, Rational(1)) == Rational(n - 1, n - 2));
  }
}

TEST_CASE("signed functional at a = 1 is L bit for bit") {
  for (double mu : {0.1, 0.5, 1.0, 2.5, 7.0}) {
    for (const auto& s : {n4_case1(mu), n4_case2(std::min(mu, 0.9))}) {
      CHECK(boundary_B(s, 1.0, Rational(1)).B == boundary_L(s, 1.0));
    }
  }
  const auto s5 = Spectrum::from_values({0.0, 0.7, 0.6, -0.3, -1.0});
  CHECK(boundary_B(s5, 1.0, Rational(1)).B == boundary_L(s5, 1.0));
}

TEST_CASE("closed forms agree with the gradient route") {
  const std::vector<Spectrum> spectra{
      n4_case1(0.3), n4_case1(2.0), n4_case2(0.25),
      Spectrum::from_values({0.0, 0.9, 0.4, -0.3, -1.0}),
      Spectrum::from_values({0.0, 1.6, -0.2, -0.2, -0.2, -1.0})};
  for (const auto& w : {WeightSpec::frobenius(), WeightSpec::signed_norm(4),
                        WeightSpec::signed_norm(Rational(5, 2)), WeightSpec::max_eigenvalue()}) {
    for (const auto& s : spectra) {
      CAPTURE(to_string(w));
      const double closed = boundary_functional(w, s, 1.0).B;
      CHECK(boundary_B_from_gradient(w, s, 1.0) == doctest::Approx(closed).epsilon(1e-12));
    }
  }
  // Scale invariance in H.
  const auto s = Spectrum::from_values({0.0, 3.0, -1.0, -2.0});
  CHECK(boundary_functional(WeightSpec::signed_norm(4), s, 2.0).B ==
        doctest::Approx(boundary_functional(WeightSpec::signed_norm(4),
                                            Spectrum::from_values({0.0, 1.5, -0.5, -1.0}), 1.0)
                            .B));
}

TEST_CASE("n = 4 signed(4) functional never exceeds 3") {
  int near_equality = 0;
  double worst = -1e300;
  for (int i = 0; i < 5000; ++i) {
    const double mu1 = 40.0 * (i + 1) / 5000.0;  // 0.008 .. 40, includes 1
    const auto r1 = boundary_B(n4_case1(mu1), 1.0, Rational(4));
    CHECK(r1.boundary_case == BoundaryCase::case1);
    worst = std::max(worst, r1.B);
    if (std::abs(r1.B - 3.0) <= 1e-9) {
      ++near_equality;
      CHECK(mu1 == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(r1.equality_case);
    }
    CHECK(r1.B <= 3.0 + 1e-12);
    const double mu2 = (i + 0.5) / 5000.0;
    const auto r2 = boundary_B(n4_case2(mu2), 1.0, Rational(4));
    CHECK(r2.boundary_case == BoundaryCase::case2);
    CHECK(r2.B < 3.0 - 1e-9);
  }
  CHECK(near_equality == 1);
  CHECK(worst == doctest::Approx(3.0).epsilon(1e-12));
  const auto eq = boundary_B(exact({0, 2, -1, -1}), Rational(1), Rational(4));
  CHECK(*eq.B_exact == 3);
}

TEST_CASE("L* values") {
  const auto l3 = lstar_optimize(3);
  CHECK(l3.sup == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(l3.attained);
  const auto l4 = lstar_optimize(4);
  CHECK(l4.sup == doctest::Approx(3.5).epsilon(1e-3));
  CHECK_FALSE(l4.attained);
  CHECK_FALSE(l4.infinite);
  const auto l5 = lstar_optimize(5);
  CHECK(l5.infinite);
  CHECK(std::isinf(l5.sup));
  CHECK_THROWS_AS(lstar_optimize(2), Error);
}

TEST_CASE("criterion37 and windows") {
  CHECK(criterion37(2.0, 3));
  CHECK(criterion37(4.0 / 3.0, 5, Rational(4, 3)));
  CHECK_FALSE(criterion37(5.0 / 4.0, 6, Rational(5, 4)));  // 1 vs 4/5
  CHECK_FALSE(criterion37(3.5, 4));

  // (5,1): L = B = 5/4 for every signed weight with one tangential family.
  const auto bd = boundary_B(exact({0, Rational(1, 4), Rational(1, 4), Rational(1, 4),
                                    Rational(1, 4), -1}),
                             Rational(1), Rational(4));
  const auto w = subsolution_window(bd, 6);
  CHECK(*w.alpha_min_exact == Rational(4, 5));
  CHECK(*w.alpha_max_exact == Rational(4, 5));
  CHECK(w.nonempty);
  CHECK(w.strict);
  CHECK(w.alpha == doctest::Approx(0.8));

  // Below the threshold the window is empty.
  const auto bd7 = boundary_B(exact({0, Rational(1, 5), Rational(1, 5), Rational(1, 5),
                                     Rational(1, 5), Rational(1, 5), -1}),
                              Rational(1), Rational(4));
  CHECK_FALSE(subsolution_window(bd7, 7).nonempty);
}

TEST_CASE("exact case identities") {
  const auto proof = case_identity_check();
  CHECK(proof.verdict);
  CHECK(proof.records.size() == 6);
  for (const auto& r : proof.records) {
    CAPTURE(r.identity);
    CHECK(r.verdict);
  }
  // (μ−1)²(3μ+5) = 5 − 7μ − μ² + 3μ³
  const std::vector<Rational> expected{5, -7, -1, 3};
  CHECK(proof.records[0].rhs_coeffs == expected);
  CHECK(proof.records[0].lhs_coeffs == expected);
}

TEST_CASE("pairing identity and analytic derivatives") {
  const auto lam = Spectrum::from_values({2.0, 0.5, -1.0, -1.5});
  for (const auto& w : {WeightSpec::frobenius(), WeightSpec::signed_norm(4), WeightSpec::max_eigenvalue()}) {
    const auto id = identity_nf(w, lam);
    CHECK(id.residual <= 1e-12 * std::max(1.0, std::abs(id.nf)));
    CHECK(id.min_pairing >= 0.0);
    for (double v : id.per_k) CHECK(v <= id.nf + 1e-12);
  }
  ThirdDerivatives t(3);
  t.set(0, 1, 2, 1.5);
  CHECK(t(2, 1, 0) == 1.5);
  CHECK(t(1, 0, 2) == 1.5);
  CHECK(t.asymmetry() == 0.0);
  const std::vector<double> l{1.0, 0.0, -1.0};
  CHECK_THROWS_AS(weight_gradient(WeightSpec::signed_norm(4), l, t), Error);
  const auto g = weight_gradient(WeightSpec::frobenius(), l, t);
  CHECK(g.size() == 3);
}
