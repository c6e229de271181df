#include "doctest.h"

#include <cmath>
#include <vector>

#include "conestab/errors.hpp"
#include "conestab/polynomial.hpp"
#include "conestab/rational.hpp"
#include "conestab/spectrum.hpp"
#include "conestab/weight.hpp"

using namespace conestab;

TEST_CASE("rational parsing and formatting") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-6/8") == Rational(-3, 4));
  CHECK(parse_rational("2.5") == Rational(5, 2));
  CHECK(parse_rational("-0.125") == Rational(-1, 8));
  CHECK(parse_rational("7") == Rational(7));
  CHECK(to_string(Rational(6, 4)) == "3/2");
  CHECK(to_string(Rational(-4)) == "-4");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("abc"), Error);
  CHECK_THROWS_AS(parse_rational(""), Error);
}

TEST_CASE("spectrum keeps descending order and drops empty families") {
  const Spectrum s({{-1.0, 2}, {3.0, 1}, {0.5, 0}, {1.0, 1}});
  REQUIRE(s.entries().size() == 3);
  CHECK(s.entries()[0].value == 3.0);
  CHECK(s.dimension() == 4);
  CHECK(s.trace() == doctest::Approx(2.0));
  CHECK(s.expanded() == std::vector<double>{3.0, 1.0, -1.0, -1.0});
  CHECK(spectral_radius(s) == 3.0);
  CHECK(is_trace_free(Spectrum({{2.0, 1}, {-1.0, 2}})));
  CHECK_FALSE(is_trace_free(s));
}

TEST_CASE("weight grammar") {
  CHECK(parse_weight("frobenius") == WeightSpec::frobenius());
  CHECK(parse_weight("max") == WeightSpec::max_eigenvalue());
  CHECK(parse_weight("signed:4") == WeightSpec::signed_norm(4));
  CHECK(parse_weight("signed:1/2").a == Rational(1, 2));
  CHECK(to_string(parse_weight("signed:8/2")) == "signed:4");
  CHECK_THROWS_AS(parse_weight("signed:0"), Error);
  CHECK_THROWS_AS(parse_weight("signed:-1"), Error);
  CHECK_THROWS_AS(parse_weight("cubic"), Error);
  CHECK(WeightSpec::frobenius().strictly_convex());
  CHECK_FALSE(WeightSpec::max_eigenvalue().strictly_convex());
}

TEST_CASE("weight values") {
  const std::vector<double> lam{3.0, -1.0, -2.0};
  CHECK(eval_weight(WeightSpec::frobenius(), lam) == doctest::Approx(std::sqrt(14.0)));
  CHECK(eval_weight(WeightSpec::signed_norm(4), lam) == doctest::Approx(std::sqrt(9.0 + 4.0 * 5.0)));
  CHECK(eval_weight(WeightSpec::max_eigenvalue(), lam) == 3.0);
  const std::vector<double> perm{-2.0, 3.0, -1.0};
  CHECK(eval_weight(WeightSpec::signed_norm(4), lam) == eval_weight(WeightSpec::signed_norm(4), perm));
  CHECK(eval_weight(WeightSpec::signed_norm(1), lam) == eval_weight(WeightSpec::frobenius(), lam));
}

namespace {

double central(const WeightSpec& w, std::vector<double> lam, int i, double h) {
  lam[i] += h;
  const double p = eval_weight(w, lam);
  lam[i] -= 2 * h;
  const double m = eval_weight(w, lam);
  return (p - m) / (2 * h);
}

}  // namespace

TEST_CASE("weight partials match central differences") {
  const std::vector<double> lam{2.5, 0.7, -1.1, -2.1};
  for (const auto& w : {WeightSpec::frobenius(), WeightSpec::signed_norm(4), WeightSpec::max_eigenvalue()}) {
    CAPTURE(to_string(w));
    const auto g = weight_partials(w, lam);
    const auto H = weight_second_partials(w, lam);
    for (int i = 0; i < 4; ++i) {
      CHECK(g[i] == doctest::Approx(central(w, lam, i, 1e-6)).epsilon(1e-8));
      for (int j = 0; j < 4; ++j) {
        auto up = lam, dn = lam;
        up[j] += 1e-5;
        dn[j] -= 1e-5;
        const double fd = (weight_partials(w, up)[i] - weight_partials(w, dn)[i]) / 2e-5;
        CHECK(H[i * 4 + j] == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
      }
    }
  }
}

TEST_CASE("pair coefficient uses the divided difference or its coincident limit") {
  const auto w = WeightSpec::frobenius();
  const std::vector<double> apart{2.0, 1.0, -3.0};
  auto g = weight_partials(w, apart);
  auto H = weight_second_partials(w, apart);
  CHECK(pair_coefficient(w, apart, g, H, 0, 1) == doctest::Approx((g[0] - g[1]) / 1.0));
  // Frobenius: (f_i − f_j)/(λ_i − λ_j) = 1/f exactly, also in the limit.
  const std::vector<double> tied{1.0, 1.0, -2.0};
  g = weight_partials(w, tied);
  H = weight_second_partials(w, tied);
  CHECK(pair_coefficient(w, tied, g, H, 0, 1) == doctest::Approx(1.0 / std::sqrt(6.0)));
  const auto s4 = WeightSpec::signed_norm(4);
  const std::vector<double> neg{2.0, -1.0, -1.0};
  g = weight_partials(s4, neg);
  H = weight_second_partials(s4, neg);
  CHECK(pair_coefficient(s4, neg, g, H, 1, 2) == doctest::Approx(4.0 / eval_weight(s4, neg)));
}

TEST_CASE("smoothness guard is weight specific") {
  const std::vector<double> zero_eig{1.0, 0.0, -1.0};
  CHECK(is_guarded_smooth(WeightSpec::frobenius(), zero_eig));
  CHECK_FALSE(is_guarded_smooth(WeightSpec::signed_norm(4), zero_eig));
  CHECK(is_guarded_smooth(WeightSpec::signed_norm(1), zero_eig));
  CHECK(is_guarded_smooth(WeightSpec::max_eigenvalue(), zero_eig));
  const std::vector<double> top_tie{1.0, 1.0, -2.0};
  CHECK_FALSE(is_guarded_smooth(WeightSpec::max_eigenvalue(), top_tie));
  CHECK(is_guarded_smooth(WeightSpec::frobenius(), top_tie));
  const std::vector<double> nothing{0.0, 0.0};
  CHECK_FALSE(is_guarded_smooth(WeightSpec::frobenius(), nothing));
}

TEST_CASE("polynomial arithmetic") {
  const RationalPolynomial x{0, 1};
  const RationalPolynomial one{1};
  const auto p = (x - one) * (x - one) * (x + RationalPolynomial{2});
  CHECK(p.degree() == 3);
  CHECK(p.coeffs() == std::vector<Rational>{2, -3, 0, 1});
  CHECK(p(1) == 0);
  CHECK(p.derivative().coeffs() == std::vector<Rational>{-3, 0, 3});
  const auto [q, r] = p.divmod(x - one);
  CHECK(r.is_zero());
  CHECK(q == (x - one) * (x + RationalPolynomial{2}));
  CHECK(gcd(p, p.derivative()) == x - one);
  CHECK(to_string(Rational(3, 2)) == "3/2");
  CHECK(RationalPolynomial{5, 3}.to_string("mu") == "3mu + 5");
  CHECK((p - p).is_zero());
  CHECK(RationalPolynomial{}.degree() == -1);
}

TEST_CASE("Sturm root counting and exact nonnegativity") {
  const RationalPolynomial x{0, 1};
  const RationalPolynomial one{1};
  // (x − 1)²(x − 3)(x + 1)
  const auto p = (x - one) * (x - one) * (x - RationalPolynomial{3}) * (x + one);
  CHECK(count_distinct_roots(p, -2, 4) == 3);
  CHECK(count_distinct_roots(p, 0, 2) == 1);
  CHECK(count_distinct_roots(p, 1, 3) == 0);  // open interval
  CHECK(count_distinct_roots(p, Rational(1, 2), Rational(7, 2)) == 2);
  const auto odd = odd_multiplicity_part(p);
  CHECK(odd.monic() == ((x - RationalPolynomial{3}) * (x + one)).monic());
  const auto sq = (x - one) * (x - one) * RationalPolynomial{5, 3};
  CHECK(nonnegative_on(sq, 0, 10));
  CHECK_FALSE(nonnegative_on(sq, -3, 0));
  CHECK(nonnegative_on(RationalPolynomial{0}, 0, 1));
  CHECK_FALSE(nonnegative_on(x - RationalPolynomial{Rational(1, 2)}, 0, 1));
  CHECK(nonnegative_on(x * (one - x), 0, 1));
}
