#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cbern/bernstein.hpp"
#include "cbern/function.hpp"
#include "cbern/quadrature.hpp"
#include "oracles.hpp"

using namespace cbern;

namespace {

const RealFunction& fn(const char* label) { return corpus_function(label); }

}  // namespace

TEST_CASE("rule nodes and weights") {
  const auto trap = build_rule({1, 1});
  CHECK(trap.nodes == std::vector<double>{0.0, 1.0});
  CHECK(trap.weights[0] == doctest::Approx(0.5));
  CHECK(trap.weights[1] == doctest::Approx(0.5));

  const auto r22 = build_rule({2, 2});
  const std::vector<double> nodes{0, 0.25, 0.5, 0.75, 1};
  const std::vector<double> weights{1.0 / 6, 1.0 / 6, 1.0 / 3, 1.0 / 6, 1.0 / 6};
  REQUIRE(r22.nodes.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(r22.nodes[i] == doctest::Approx(nodes[i]));
    CHECK(r22.weights[i] == doctest::Approx(weights[i]));
  }

  for (int n = 1; n <= 10; ++n)
    for (int m = 1; m <= 10; ++m) {
      const auto rule = build_rule({n, m});
      double sum = 0.0;
      for (double w : rule.weights) {
        CHECK(w > 0.0);
        sum += w;
      }
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
      for (std::size_t i = 0; i < rule.nodes.size(); ++i)  // symmetric rule
        CHECK(rule.nodes[i] + rule.nodes[rule.nodes.size() - 1 - i] == doctest::Approx(1.0));
    }
}

TEST_CASE("merged rule equals the per-piece double sum") {
  for (const auto& f : corpus())
    for (int n = 1; n <= 8; ++n)
      for (int m = 1; m <= 8; ++m)
        CHECK(apply_rule(build_rule({n, m}), f) ==
              doctest::Approx(apply_rule_double_sum({n, m}, f)).epsilon(1e-14));
}

TEST_CASE("rule is the exact integral of the composite operator") {
  // Integrate each polynomial piece with Simpson on many panels; Bernstein
  // pieces of degree <= 3 are integrated exactly by Simpson.
  for (const auto& f : corpus())
    for (int n = 1; n <= 3; ++n)
      for (int m : {1, 2, 5}) {
        double total = 0.0;
        for (int k = 1; k <= m; ++k) {
          const double a = static_cast<double>(k - 1) / m;
          const double b = static_cast<double>(k) / m;
          total += oracle::simpson(
              [&](double x) { return oracle::bernstein_direct(f.eval, n, a, b, x); }, a, b, 8);
        }
        CHECK(apply_rule(build_rule({n, m}), f) == doctest::Approx(total).epsilon(1e-13));
      }
}

TEST_CASE("rule on monomials") {
  for (int n = 1; n <= 6; ++n)
    for (int m = 1; m <= 6; ++m) {
      const auto rule = build_rule({n, m});
      CHECK(apply_rule(rule, fn("e1")) == doctest::Approx(0.5).epsilon(1e-15));
      CHECK(apply_rule(rule, fn("e2")) ==
            doctest::Approx(1.0 / 3 + 1.0 / (6.0 * m * m * n)).epsilon(1e-14));
    }
  CHECK(apply_rule(build_rule({1, 1}), fn("e2")) == doctest::Approx(0.5));
}

TEST_CASE("variance identity") {
  CHECK(variance({1, 1}).value == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(variance({2, 1}).value == doctest::Approx(1.0 / 6).epsilon(1e-15));
  for (int n = 1; n <= 10; ++n)
    for (int m = 1; m <= 10; ++m) {
      const auto rule = build_rule({n, m});
      const double i1 = apply_rule(rule, fn("e1"));
      const double v = apply_rule(rule, fn("e2")) - i1 * i1;
      CHECK(std::abs(v - variance({n, m}).value) < 1e-13);
    }
  CHECK(variance({64, 1000}).value == doctest::Approx(1.0 / 12).epsilon(1e-6));
}

TEST_CASE("reference integrator closed forms") {
  using std::numbers::pi;
  CHECK(reference_integral(fn("e2")) == doctest::Approx(1.0 / 3).epsilon(1e-14));
  CHECK(std::abs(reference_integral(fn("sin2pi"))) < 1e-12);
  CHECK(reference_integral(fn("runge")) == doctest::Approx(0.4 * std::atan(2.5)).epsilon(1e-13));
  CHECK(reference_integral(fn("exp")) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
  CHECK(reference_integral(fn("sqrt")) == doctest::Approx(2.0 / 3).epsilon(1e-12));
  CHECK(reference_integral(fn("x32")) == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(reference_integral(fn("abs_half")) == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(reference_integral([](double x) { return std::cos(x); }, 0, pi / 2) ==
        doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("reference integrator failure modes") {
  CHECK_THROWS_AS(reference_integral([](double x) { return 1.0 / x; }, 0.0, 1.0),
                  ConvergenceError);
  CHECK_THROWS_AS(reference_integral(fn("e1"), 1e-16), std::invalid_argument);
}

TEST_CASE("C2 error bound") {
  using std::numbers::pi;
  CHECK(c2_error_bound({1, 1}, fn("e2")) == doctest::Approx(1.0 / 6));
  CHECK(c2_error_bound({3, 2}, fn("e1")) == 0.0);
  CHECK(c2_error_bound({4, 4}, fn("sin2pi")) == doctest::Approx(4 * pi * pi / 768).epsilon(1e-9));
  CHECK_THROWS_AS(c2_error_bound({1, 1}, fn("sqrt")), std::invalid_argument);
}

TEST_CASE("error of e2 attains the C2 bound") {
  for (int n = 1; n <= 8; ++n)
    for (int m = 1; m <= 8; ++m) {
      const double err = std::abs(1.0 / 3 - apply_rule(build_rule({n, m}), fn("e2")));
      CHECK(std::abs(err - c2_error_bound({n, m}, fn("e2"))) < 1e-12);
    }
}

TEST_CASE("error rate O(1/(m^2 n)) on a function with nonzero leading term") {
  // The leading error for exp is (e - 1)/(12 m^2 n), which is not killed by
  // the symmetry of the rule.
  const double exact = std::exp(1.0) - 1.0;
  std::vector<double> ms, em, ns, en;
  for (int m : {4, 8, 16, 32, 64}) {
    ms.push_back(m);
    em.push_back(std::abs(apply_rule(build_rule({2, m}), fn("exp")) - exact));
  }
  for (int n : {4, 8, 16, 32, 64}) {
    ns.push_back(n);
    en.push_back(std::abs(apply_rule(build_rule({n, 4}), fn("exp")) - exact));
  }
  CHECK(oracle::loglog_slope(ms, em) == doctest::Approx(-2.0).epsilon(0.05));
  CHECK(oracle::loglog_slope(ns, en) == doctest::Approx(-1.0).epsilon(0.05));
}
