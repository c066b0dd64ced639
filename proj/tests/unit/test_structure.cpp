#include <doctest.h>

#include <cmath>
#include <vector>

#include "contest/errors.hpp"
#include "contest/structure.hpp"
#include "oracles.hpp"

using namespace contest;

TEST_CASE("sign change counts") {
  const auto a = sign_changes({1, -1, 1});
  CHECK(a.s_minus == 2);
  CHECK(a.s_plus == 2);
  const auto b = sign_changes({1, 0, 1, -1});
  CHECK(b.s_minus == 1);
  CHECK(b.s_plus == 3);
  const auto c = sign_changes({0, 0, 0});
  CHECK(c.degenerate);
  CHECK(c.s_minus == 0);
  CHECK(c.s_plus == 2);
  CHECK(sign_changes({1e-14, -1.0}, 1e-12).s_minus == 0);
}

TEST_CASE("quasiconvex shapes") {
  auto r = check_quasiconvex_shape({5, 3, 1, 2, 4}, 0.0);
  CHECK(r.is_quasiconvex);
  CHECK(r.transition_index.value() == 3);
  CHECK_FALSE(check_quasiconvex_shape({1, 3, 2}, 0.0).is_quasiconvex);
  CHECK(check_quasiconvex_shape({1, 2, 3}, 0.0).is_quasiconvex);
  CHECK(check_quasiconvex_shape({2, 2, 2}, 1e-9).degenerate);
}

TEST_CASE("gradient quasiconvexity on a computed gradient") {
  const Policy p = two_level(6, 0.5);
  const auto d = gradient(ConvexCombo{0.3}, {2.0}, p);
  const auto rep = check_gradient_quasiconvexity(d, p);
  CHECK(rep.is_quasiconvex);
  CHECK(rep.violations.empty());
}

TEST_CASE("small n raises a warning") {
  const Policy p = make_policy({0.5, 0.3, 0.2, 0.0});
  const auto rep = check_gradient_quasiconvexity(gradient(ConvexCombo{0.3}, {2.0}, p), p);
  CHECK_FALSE(rep.warnings.empty());
}

TEST_CASE("a non-quasiconvex sequence is reported, not asserted") {
  const Policy p = make_policy({0.4, 0.3, 0.2, 0.1, 0.0, 0.0});
  const auto rep = check_gradient_quasiconvexity({1.0, 3.0, 1.0, 3.0, 1.0}, p);
  CHECK_FALSE(rep.is_quasiconvex);
  CHECK_FALSE(rep.violations.empty());
}

TEST_CASE("weight quasiconvexity for covered objectives") {
  const Policy p = make_policy({0.45, 0.3, 0.15, 0.1, 0.0});
  CHECK(check_weight_quasiconvexity(make_posynomial({{2, 3}, {-3, 2}, {2, 1}}), 2.0, p).is_quasiconvex);
  CHECK(check_weight_quasiconvexity(MaxOrderStat{}, 1.5, p).is_quasiconvex);
  CHECK(check_weight_quasiconvexity(make_exponential({1.5}), 2.0, p).is_quasiconvex);
}

TEST_CASE("sorted power integral is permutation invariant") {
  const double a = sorted_power_integral({0.2, 0.5, 0.3}, 1.5);
  const double b = sorted_power_integral({0.5, 0.3, 0.2}, 1.5);
  CHECK(a == b);
  // Linear case: integral of h is 1/n for any p.
  CHECK(sorted_power_integral({0.7, 0.2, 0.1}, 1.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("Schur directions") {
  CHECK(schur_direction(0.5, 4, 50, 1).direction == SchurDirection::concave);
  CHECK(schur_direction(2.0, 4, 50, 1).direction == SchurDirection::convex);
  CHECK(schur_direction(1.0, 4, 50, 1).direction == SchurDirection::flat);
  const auto r = schur_direction(0.5, 4, 50, 1);
  CHECK_FALSE(r.counterexample.has_value());
  CHECK(r.max_difference < 0.0);
}

TEST_CASE("Vandermonde-type minors") {
  // 1x1 minor is the basis value itself.
  CHECK(vandermonde_minor(5, {0.3}, {2}) == doctest::Approx(oracle::basis(5, 2, 0.7)));
  // 2x2 against the explicit determinant.
  const double x1 = 0.2, x2 = 0.6;
  const double det = oracle::basis(6, 1, 1 - x1) * oracle::basis(6, 3, 1 - x2) -
                     oracle::basis(6, 1, 1 - x2) * oracle::basis(6, 3, 1 - x1);
  CHECK(vandermonde_minor(6, {x1, x2}, {1, 3}) == doctest::Approx(det).epsilon(1e-12));
  CHECK(det > 0.0);
  CHECK_THROWS_AS(vandermonde_minor(5, {0.6, 0.3}, {1, 2}), Error);
  CHECK_THROWS_AS(vandermonde_minor(5, {0.3}, {5}), Error);
}
