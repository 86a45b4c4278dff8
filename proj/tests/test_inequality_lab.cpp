#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>

#include "cbern/checks.hpp"
#include "cbern/function.hpp"
#include "cbern/quadrature.hpp"

using namespace cbern;

namespace {

// FunctionData is comparatively expensive (moduli table, reference integral,
// K-functional), so each corpus member is prepared once.
const FunctionData& data(const std::string& label) {
  static std::map<std::string, FunctionData> cache;
  auto it = cache.find(label);
  if (it == cache.end()) it = cache.emplace(label, FunctionData(corpus_function(label))).first;
  return it->second;
}

bool ok(const BoundReport& r) { return r.status == Status::Pass || r.status == Status::GridLimited; }

}  // namespace

TEST_CASE("inequality ids round-trip") {
  for (InequalityId id : kAllInequalities) CHECK(parse_inequality_id(to_string(id)) == id);
  CHECK(to_string(InequalityId::P4_3_Pointwise) == "P4.3-pointwise");
  CHECK(to_string(InequalityId::T6_4_Specialized) == "T6.4-specialized");
  CHECK(to_string(InequalityId::C7_Limit) == "C7-limit");
  CHECK_THROWS_AS(parse_inequality_id("P9.9"), std::invalid_argument);
}

TEST_CASE("classify") {
  CHECK(classify(0.0, 0.0) == Status::Pass);
  CHECK(classify(1e-3, 0.0) == Status::Pass);
  CHECK(classify(-1e-6, 1e-5) == Status::GridLimited);
  CHECK(classify(-1e-4, 1e-5) == Status::Violated);
}

TEST_CASE("Paltanea bound") {
  const auto& e1 = data("e1");
  const auto& e2 = data("e2");
  for (int k = 0; k <= 2; ++k) {
    const auto r = check_paltanea(e2, {2, 2}, k / 2.0);
    CHECK(r.lhs == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(r.status == Status::Pass);
  }
  for (double x : {0.0, 0.3, 0.77}) CHECK(check_paltanea(e1, {3, 3}, x).lhs < 1e-15);
  const auto r = check_paltanea(e2, {2, 2}, 0.25);
  CHECK(r.lhs == doctest::Approx(0.03125).epsilon(1e-14));
  CHECK(r.rhs == doctest::Approx(0.09375).epsilon(1e-12));
  CHECK(r.status == Status::Pass);
  // The h-form with h = sqrt(M2) is the same bound.
  const auto rh = check_paltanea(e2, {2, 2}, 0.25, std::sqrt(0.03125));
  CHECK(rh.rhs == doctest::Approx(r.rhs).epsilon(1e-12));
}

TEST_CASE("iterate bound") {
  for (std::uint32_t rr : {1u, 3u, 20u})
    for (double x : {0.1, 0.4, 0.5}) {
      const auto r = check_iterate(data("runge"), {1, 4}, rr, x);
      CHECK(r.lhs < 1e-15);
      CHECK(ok(r));
      CHECK(check_iterate(data("e1"), {3, 2}, rr, x).lhs < 1e-14);
    }
  const auto u = check_iterate_uniform(data("e2"), {2, 1}, 10);
  CHECK(u.lhs == doctest::Approx(std::ldexp(0.25, -10)).epsilon(1e-9));
  CHECK(u.rhs == doctest::Approx(2.25 * 2 * 0.25 * std::ldexp(1.0, -10)).epsilon(1e-9));
  CHECK(u.status == Status::Pass);
  CHECK_THROWS_AS(check_iterate(data("e2"), {2, 1}, 0, 0.5), std::invalid_argument);
}

TEST_CASE("uniform iterate gap of e2 contracts by exactly 1 - 1/n") {
  for (int n : {2, 4})
    for (int m : {2, 4}) {
      double prev = check_iterate_uniform(data("e2"), {n, m}, 1).lhs;
      for (std::uint32_t r = 2; r <= 12; ++r) {
        const double cur = check_iterate_uniform(data("e2"), {n, m}, r).lhs;
        CHECK(cur / prev == doctest::Approx(1.0 - 1.0 / n).epsilon(1e-6));
        prev = cur;
      }
    }
}

TEST_CASE("Gruss operator bound") {
  for (int j = 0; j <= 20; ++j) {
    const auto r = check_gruss_operator(data("e1"), data("e1"), {2, 2}, j / 20.0);
    CHECK(std::abs(r.margin) < 1e-10);
    CHECK(ok(r));
  }
  const auto r = check_gruss_operator(data("e1"), data("e1"), {2, 2}, 0.25);
  CHECK(r.lhs == doctest::Approx(0.03125).epsilon(1e-12));
  CHECK(r.rhs == doctest::Approx(0.03125).epsilon(1e-10));
  for (double x : {0.0, 0.5, 1.0}) {
    const auto z = check_gruss_operator(data("sin2pi"), data("runge"), {4, 2}, x);
    CHECK(z.lhs < 1e-15);
    CHECK(z.rhs == 0.0);
  }
  const auto c = check_gruss_operator(data("e0"), data("sqrt"), {3, 3}, 0.4);
  CHECK(c.lhs < 1e-15);
  CHECK(c.status == Status::Pass);
}

TEST_CASE("quadrature C2 bound") {
  using std::numbers::pi;
  const auto z = check_quadrature_c2(data("e1"), {3, 3});
  CHECK(z.lhs < 1e-15);
  CHECK(z.rhs == 0.0);
  for (int n : {1, 2, 4, 8})
    for (int m : {1, 2, 4, 8}) {
      const auto r = check_quadrature_c2(data("e2"), {n, m});
      CHECK(r.rhs == doctest::Approx(1.0 / (6.0 * m * m * n)).epsilon(1e-14));
      CHECK(std::abs(r.margin) < 1e-12);
      CHECK(ok(r));
    }
  const auto s = check_quadrature_c2(data("sin2pi"), {2, 2});
  CHECK(s.rhs == doctest::Approx(4 * pi * pi / 96).epsilon(1e-9));
  CHECK(s.lhs < s.rhs);
  CHECK_THROWS_AS(check_quadrature_c2(data("abs_half"), {2, 2}), std::invalid_argument);
}

TEST_CASE("quadrature K-functional bound") {
  for (const auto& f : corpus()) {
    if (!f.has_second_derivative()) continue;
    for (int m : {1, 4}) {
      const auto rk = check_quadrature_kfunc(data(f.label), {2, m});
      const auto rc = check_quadrature_c2(data(f.label), {2, m});
      CHECK(rk.rhs <= rc.rhs + 1e-15);
      CHECK(rk.upper_estimate);
    }
  }
  CHECK(check_quadrature_kfunc(data("e1"), {3, 2}).lhs < 1e-15);
  // Pinned regression value for the kink.
  const auto r = check_quadrature_kfunc(data("abs_half"), {2, 2});
  CHECK(r.lhs < 1e-15);
  CHECK(r.rhs == doctest::Approx(0.23180909207858941).epsilon(1e-10));
  CHECK(r.margin > 0.0);
  CHECK(r.note == "K witness B64(abs_half)");
}

TEST_CASE("quadrature second-modulus bound") {
  const auto z = check_quadrature_omega2(data("e1"), {3, 3});
  CHECK(z.lhs < 1e-15);
  CHECK(z.rhs < 1e-14);
  CHECK(ok(z));
  const auto e2 = check_quadrature_omega2(data("e2"), {1, 1});
  CHECK(e2.lhs == doctest::Approx(1.0 / 6).epsilon(1e-13));
  CHECK(e2.rhs == doctest::Approx(0.75).epsilon(1e-12));
  const auto a = check_quadrature_omega2(data("abs_half"), {4, 4});
  CHECK(a.rhs == doctest::Approx(2.25 * 2 / (4 * std::sqrt(24.0))).epsilon(1e-12));
  CHECK(a.status == Status::Pass);
}

TEST_CASE("general Gonska-Kovacheva bound") {
  for (int n : {1, 2, 4, 8})
    for (int m : {1, 2, 4, 8})
      for (const auto& f : corpus()) {
        const auto g = check_gk_general(data(f.label), gk_specialization({n, m}), {n, m});
        const auto o = check_quadrature_omega2(data(f.label), {n, m});
        CHECK(std::abs(g.rhs - o.rhs) < 1e-12);
      }
  const GonskaKovachevaParams gkp{1.0, 2.0, 0.0, 0.0, 1.0 / 48, 0.25};
  const auto r = check_gk_general(data("e2"), gkp, {1, 2});
  CHECK(r.rhs == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(r.lhs == doctest::Approx(1.0 / 24).epsilon(1e-13));
  CHECK(r.status == Status::Pass);
  CHECK(check_gk_general(data("e1"), {1.0, 2.0, 0.0, 0.0, 0.3, 0.2}, {2, 3}).lhs < 1e-15);

  GonskaKovachevaParams bad = gkp;
  bad.h = 0.6;
  CHECK_THROWS_AS(check_gk_general(data("e2"), bad, {1, 2}), std::invalid_argument);
  bad.h = 0.0;
  CHECK_THROWS_AS(check_gk_general(data("e2"), bad, {1, 2}), std::invalid_argument);
}

TEST_CASE("Gruss quadrature bound") {
  const auto r = check_gruss_quadrature(data("e1"), data("e1"), {1, 1});
  CHECK(r.lhs == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(r.rhs == doctest::Approx(0.25).epsilon(1e-10));
  CHECK(std::abs(r.margin) < 1e-10);
  CHECK(ok(r));
  const auto c = check_gruss_quadrature(data("e0"), data("runge"), {3, 2});
  CHECK(c.lhs < 1e-15);
  CHECK(c.status == Status::Pass);
  const auto s = check_gruss_quadrature(data("e1"), data("sin2pi"), {4, 4});
  const double t = 2 * std::sqrt(variance({4, 4}).value);
  CHECK(s.rhs == doctest::Approx(0.25 * t * data("sin2pi").moduli().omega_tilde(t)).epsilon(1e-9));
  CHECK(s.status == Status::Pass);
}

TEST_CASE("integral limit") {
  const auto r = check_integral_limit(data("e1"), data("e1"));
  CHECK(r.lhs == doctest::Approx(1.0 / 12).epsilon(1e-12));
  REQUIRE(r.rhs_aux);
  CHECK(*r.rhs_aux == doctest::Approx(1.0 / 12).epsilon(1e-12));
  CHECK(std::abs(*r.rhs_aux - r.lhs) < 1e-12);
  CHECK(ok(r));

  RealFunction flip{"1-e1", Smoothness::C2, [](double x) { return 1.0 - x; },
                    [](double) { return -1.0; }, [](double) { return 0.0; }};
  const FunctionData fd(flip);
  const auto rf = check_integral_limit(data("e1"), fd);
  CHECK(rf.lhs == doctest::Approx(1.0 / 12).epsilon(1e-12));
  CHECK(*rf.rhs_aux == doctest::Approx(1.0 / 12).epsilon(1e-12));

  const auto c = check_integral_limit(data("e0"), data("exp"));
  CHECK(c.lhs < 1e-12);
  CHECK(c.status == Status::Pass);
  CHECK_THROWS_AS(check_integral_limit(data("sqrt"), data("e1")), std::invalid_argument);
}

TEST_CASE("no corpus member violates any single-function bound at a sample of parameters") {
  for (const auto& f : corpus())
    for (int n : {1, 3, 8})
      for (int m : {1, 3, 8}) {
        const OperatorParams p(n, m);
        CHECK(ok(check_quadrature_kfunc(data(f.label), p)));
        CHECK(ok(check_quadrature_omega2(data(f.label), p)));
        CHECK(ok(check_gk_general(data(f.label), gk_specialization(p), p)));
        for (double x : {0.05, 0.37, 0.5, 0.93}) CHECK(ok(check_paltanea(data(f.label), p, x)));
        CHECK(ok(check_iterate_uniform(data(f.label), p, 7)));
      }
}
