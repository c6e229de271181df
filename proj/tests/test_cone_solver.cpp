#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "conestab/cone_solver.hpp"
#include "conestab/errors.hpp"
#include "conestab/serialize.hpp"
#include "conestab/spectral_calculus.hpp"
#include "golden_values.hpp"

using namespace conestab;

TEST_CASE("opening angle and mean curvature match the reference table") {
  for (const auto& g : golden::kCones) {
    CAPTURE(g.k);
    CAPTURE(g.h);
    const auto cone = solve_cross_section(g.k, g.h);
    CHECK(cone.theta_star == doctest::Approx(g.theta_star).epsilon(1e-10));
    CHECK(boundary_data(cone).H == doctest::Approx(g.H).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("closed-form openings") {
  CHECK(solve_cross_section(3, 1).theta_star == doctest::Approx(std::numbers::pi / 4).epsilon(1e-12));
  CHECK(solve_cross_section(3, 3).theta_star == doctest::Approx(std::numbers::pi / 3).epsilon(1e-12));
  CHECK(boundary_data(solve_cross_section(3, 1)).H == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("half-space") {
  for (int h = 1; h <= 7; ++h) {
    const auto cone = solve_cross_section(1, h);
    CHECK(cone.is_half_space());
    CHECK(std::abs(cone.theta_star - std::numbers::pi / 2) <= 1e-8);
    const auto bd = boundary_data(cone);
    CHECK(bd.H == 0.0);
    for (double t : {0.1, 0.7, 1.3}) {
      CHECK(spectral_radius(hessian_field(cone, t)) <= 1e-9);
    }
  }
}

TEST_CASE("profile satisfies the cross-section equation") {
  for (auto [k, h] : {std::pair{2, 2}, std::pair{3, 1}, std::pair{2, 5}}) {
    const auto cone = solve_cross_section(k, h);
    const auto& p = cone.profile;
    CHECK(std::abs(p.value(cone.theta_star)) <= 1e-14);
    CHECK(p.derivative(cone.theta_star) == doctest::Approx(-1.0).epsilon(1e-12));
    const double e = 1e-4;
    for (double frac : {0.1, 0.35, 0.6, 0.9}) {
      const double t = frac * cone.theta_star;
      const double d2 = (p.derivative(t + e) - p.derivative(t - e)) / (2 * e);
      const double resid = d2 + profile_drift(k, h, t) * p.derivative(t) + (k + h - 1) * p.value(t);
      CHECK(std::abs(resid) <= 1e-6);
    }
    CHECK_THROWS_AS(p.value(cone.theta_star + 1e-3), Error);
  }
}

TEST_CASE("solver input validation") {
  CHECK_THROWS_AS(solve_cross_section(0, 3), Error);
  CHECK_THROWS_AS(solve_cross_section(2, 0), Error);
  ConeSolveOptions few;
  few.samples = 4;
  CHECK_THROWS_AS(solve_cross_section(2, 2, few), Error);
}

TEST_CASE("boundary Hessian is trace free with the expected blocks") {
  const auto cone = solve_cross_section(2, 3);
  const auto bd = boundary_data(cone);
  CHECK(bd.hessian_spectrum.dimension() == 5);
  CHECK(std::abs(bd.hessian_spectrum.trace()) <= 1e-12 * bd.H);
  CHECK(bd.kappas.dimension() == 3);
  CHECK(bd.kappas.trace() == doctest::Approx(bd.H).epsilon(1e-12));
  CHECK_FALSE(bd.normalized_exact);
  const auto bd31 = boundary_data(solve_cross_section(3, 1));
  REQUIRE(bd31.normalized_exact);
  CHECK(bd31.normalized_exact->trace() == 0);
  // Interior families converge to the boundary spectrum.
  const auto fam = hessian_families(cone, cone.theta_star);
  const auto inner = to_spectrum(cone, fam).expanded();
  const auto edge = bd.hessian_spectrum.expanded();
  REQUIRE(inner.size() == edge.size());
  for (std::size_t i = 0; i < edge.size(); ++i) CHECK(inner[i] == doctest::Approx(edge[i]).epsilon(1e-10).scale(1.0));
  CHECK_THROWS_AS(hessian_field(cone, 0.0), Error);
}

TEST_CASE("Fornberg weights reproduce polynomials") {
  const std::vector<double> nodes{-2.0, -1.0, 0.0, 1.0, 2.0};
  const auto w = fd_weights(0.0, nodes, 2);
  CHECK(w[1][0] == doctest::Approx(1.0 / 12));
  CHECK(w[1][1] == doctest::Approx(-8.0 / 12));
  CHECK(w[2][2] == doctest::Approx(-30.0 / 12));
  const std::vector<double> skew{0.0, 0.3, 0.7, 1.2, 1.5, 2.1};
  const auto ws = fd_weights(1.9, skew, 2);
  for (int p = 0; p <= 5; ++p) {
    double d0 = 0, d1 = 0, d2 = 0;
    for (std::size_t i = 0; i < skew.size(); ++i) {
      const double v = std::pow(skew[i], p);
      d0 += ws[0][i] * v;
      d1 += ws[1][i] * v;
      d2 += ws[2][i] * v;
    }
    CHECK(d0 == doctest::Approx(std::pow(1.9, p)));
    CHECK(d1 == doctest::Approx(p * std::pow(1.9, p - 1)).epsilon(1e-10).scale(1.0));
    CHECK(d2 == doctest::Approx(p * (p - 1) * std::pow(1.9, p - 2)).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("JSON round trip") {
  const auto cone = solve_cross_section(2, 4);
  const auto back = cone_from_json(Json::parse(to_json(cone).dump()));
  CHECK(back.k == 2);
  CHECK(back.h == 4);
  CHECK(back.theta_star == cone.theta_star);
  for (double t : {0.0, 0.21, 0.9, cone.theta_star}) {
    CHECK(back.profile.value(t) == doctest::Approx(cone.profile.value(t)).epsilon(1e-13).scale(1.0));
    CHECK(back.profile.derivative(t) == doctest::Approx(cone.profile.derivative(t)).epsilon(1e-13).scale(1.0));
  }
  CHECK_THROWS_AS(cone_from_json(Json::parse(R"({"k": 2})")), Error);
}

TEST_CASE("normal derivative of the weight at the free boundary equals H·B") {
  for (auto [k, h] : {std::pair{2, 1}, std::pair{2, 2}, std::pair{3, 2}, std::pair{2, 4}}) {
    const auto cone = solve_cross_section(k, h);
    const auto bd = boundary_data(cone);
    for (const auto& w : {WeightSpec::frobenius(), WeightSpec::signed_norm(4)}) {
      CAPTURE(k);
      CAPTURE(h);
      CAPTURE(to_string(w));
      const double ts = cone.theta_star;
      const double step = 1e-3 * ts;
      std::vector<double> nodes, vals;
      for (int i = 0; i < 6; ++i) {
        const double t = ts - i * step;
        nodes.push_back(t);
        vals.push_back(eval_weight(w, to_spectrum(cone, hessian_families(cone, t))));
      }
      const auto fw = fd_weights(ts, nodes, 1);
      double d = 0;
      for (int i = 0; i < 6; ++i) d += fw[1][i] * vals[i];
      const double B = boundary_functional(w, bd.hessian_spectrum, bd.H).B;
      CHECK(std::abs(d / vals[0] - bd.H * B) <= 1e-4 * bd.H * B);
    }
  }
}

TEST_CASE("interior improved inequality holds on every cone") {
  for (const auto& g : golden::kCones) {
    const auto cone = solve_cross_section(g.k, g.h);
    for (const auto& w : {WeightSpec::frobenius(), WeightSpec::signed_norm(4)}) {
      CAPTURE(g.k);
      CAPTURE(g.h);
      const auto r = interior_inequality_check(cone, w);
      CHECK(r.passed());
      if (cone.is_half_space()) CHECK(r.skipped);
    }
  }
  CHECK_THROWS_AS(interior_inequality_check(solve_cross_section(3, 1), WeightSpec::max_eigenvalue()),
                  Error);
}
