#include <doctest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "contest/errors.hpp"
#include "contest/objective.hpp"
#include "oracles.hpp"

using namespace contest;

namespace {

const QuadratureConfig kFine{100000, QuadratureRule::trapezoid, false};

// Independent integral of f(h(x)) with Simpson's rule on the raw shares.
double simpson_of(const std::vector<double>& p, const std::function<double(double, double)>& f) {
  return oracle::simpson([&](double x) { return f(x, oracle::h(p, x)); }, 0.0, 1.0, 20000);
}

}  // namespace

TEST_CASE("HM closed form agrees with the integral of x^{(n-1)r}") {
  for (double alpha : {0.0, 0.3, 1.0})
    for (double beta : {0.5, 2.0})
      for (int n : {2, 5}) {
        const double r = 1.0 / beta;
        const double w = n / ((n - 1) * (1.0 + r) + 1.0);
        const double q = 1.0 / ((n - 1) * r + 1.0);
        CHECK(evaluate_hm_closed_form(alpha, beta, n) == doctest::Approx(alpha * w + (1 - alpha) * q).epsilon(1e-14));
        CHECK(std::abs(evaluate(ConvexCombo{alpha}, {beta}, hm(n)) - evaluate_hm_closed_form(alpha, beta, n)) <= 2e-5);
      }
  CHECK(evaluate_hm_closed_form(0.0, 2.0, 5) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("UNI power integrals match a 10^6-cell Riemann oracle") {
  for (int n : {3, 5, 8})
    for (double r : {0.25, 0.5, 1.5}) {
      const auto f = [&](double x) { return std::pow((1.0 - std::pow(1.0 - x, n - 1)) / (n - 1), r); };
      const double ref = oracle::riemann(f, 1000000);
      // The oracle itself carries up to 1/(m (n-1)^r) of right-endpoint bias.
      CHECK(std::abs(power_integral(uni(n), r, kFine) - ref) <= 1e-6 + 1e-5);
    }
}

TEST_CASE("convex combination is linear in alpha") {
  const Policy p = make_policy({0.5, 0.3, 0.2, 0.0});
  const double beta = 1.7;
  const double w = 4 * power_integral(p, 1 + 1 / beta, kFine), q = power_integral(p, 1 / beta, kFine);
  for (double alpha : {0.0, 0.25, 0.8, 1.0})
    CHECK(evaluate(ConvexCombo{alpha}, {beta}, p, kFine) == doctest::Approx(alpha * w + (1 - alpha) * q).epsilon(1e-12));
}

TEST_CASE("flatness at beta = 1, alpha = 0") {
  std::mt19937_64 rng(3);
  for (int n : {3, 5, 8})
    for (int t = 0; t < 5; ++t) {
      const Policy p = make_policy(oracle::random_shares(rng, n));
      CHECK(std::abs(evaluate(ConvexCombo{0.0}, {1.0}, p) - 1.0 / n) <= 1e-5);
    }
}

TEST_CASE("posynomial, order statistic, exponential and social values") {
  const std::vector<double> v{0.45, 0.3, 0.15, 0.1, 0.0};
  const Policy p = make_policy(v);
  const double beta = 2.0;
  const auto power = [&](double r) { return simpson_of(v, [&](double, double h) { return std::pow(h, r); }); };

  const auto posy = make_posynomial({{2, 3}, {-3, 2}, {2, 1}});
  CHECK(evaluate(posy, {beta}, p) == doctest::Approx(2 * power(1.5) - 3 * power(1.0) + 2 * power(0.5)).epsilon(1e-5));

  const double order = oracle::simpson(
      [&](double x) { return 5 * std::pow(x, 4) * std::sqrt(oracle::h(v, x)); }, 0.0, 1.0, 20000);
  CHECK(evaluate(MaxOrderStat{}, {beta}, p) == doctest::Approx(order).epsilon(1e-5));

  double series = 0.0;
  for (int j = 0; j <= 30; ++j) series += std::pow(1.5, j) / std::tgamma(j + 1.0) * power(j / beta);
  CHECK(evaluate(make_exponential({1.5}), {beta}, p) == doctest::Approx(series).epsilon(1e-5));

  const double w = 5 * power(1.5);
  CHECK(evaluate(make_social_welfare({{0.0, 1.0}}), {beta}, p) == doctest::Approx(w).epsilon(1e-5));
  CHECK(evaluate(make_social_welfare({{0.5, 1.0}}), {beta}, p) == doctest::Approx(w + 0.5 * power(0.5)).epsilon(1e-5));
}

TEST_CASE("general form with p_n > 0 uses g = h - p_n") {
  const std::vector<double> v{0.4, 0.3, 0.2, 0.1};
  const Policy p = make_policy(v);
  const double alpha = 0.3, beta = 1.5, r = 1 / beta;
  const double W = 4 * simpson_of(v, [&](double, double h) { return h * std::pow(h - 0.1, r); });
  const double Q = simpson_of(v, [&](double, double h) { return std::pow(h - 0.1, r); });
  CHECK(evaluate_general(ConvexCombo{alpha}, {beta}, p) == doctest::Approx(alpha * W + (1 - alpha) * Q).epsilon(1e-5));
  try {
    evaluate(ConvexCombo{alpha}, {beta}, p);
    FAIL("expected a reduction error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::reduction_precondition);
  }
}

TEST_CASE("gradient examples") {
  SUBCASE("alpha = 0, beta = 1 gives 1/n everywhere") {
    const Policy p = make_policy({0.5, 0.3, 0.2, 0.0, 0.0});
    for (double d : gradient(ConvexCombo{0.0}, {1.0}, p)) CHECK(d == doctest::Approx(0.2).epsilon(1e-4));
  }
  SUBCASE("alpha = 1, beta = 1, HM(5) matches Beta-function terms") {
    const auto d = gradient(ConvexCombo{1.0}, {1.0}, hm(5));
    REQUIRE(d.size() == 4);
    for (int i = 1; i <= 4; ++i) {
      // 10 * C(4, i-1) * B(10 - i, i)
      const double ref = 10 * oracle::binomial(4, i - 1) * std::beta(10.0 - i, static_cast<double>(i));
      CHECK(d[i - 1] == doctest::Approx(ref).epsilon(1e-4));
      if (i > 1) CHECK(d[i - 1] < d[i - 2]);
    }
  }
}

TEST_CASE("gradient matches directional finite differences") {
  std::mt19937_64 rng(17);
  const double delta = 1e-6;
  for (int t = 0; t < 12; ++t) {
    const int n = 3 + t % 5;
    std::vector<double> v;
    bool spaced = false;
    while (!spaced) {
      v = oracle::random_shares(rng, n);
      spaced = true;
      for (int i = 0; i + 1 < n; ++i) spaced = spaced && v[i] - v[i + 1] > 1e-3;
    }
    const double alpha = (t % 4) / 3.0, beta = 0.6 + 0.3 * t;
    const auto d = gradient(ConvexCombo{alpha}, {beta}, make_policy(v));
    const int i = 0, j = n - 2;
    auto plus = v, minus = v;
    plus[i] += delta, plus[j] -= delta, minus[i] -= delta, minus[j] += delta;
    const QuadratureConfig q{20000, QuadratureRule::trapezoid, false};
    const double fd = (evaluate(ConvexCombo{alpha}, {beta}, make_policy(plus), q) -
                       evaluate(ConvexCombo{alpha}, {beta}, make_policy(minus), q)) /
                      (2 * delta);
    CHECK(std::abs((d[i] - d[j]) - fd) <= 1e-4);
  }
}

TEST_CASE("posynomial sign condition") {
  const auto inverse_s = check_posynomial_condition({{2, 3}, {-3, 2}, {2, 1}}, 2.0);
  CHECK(inverse_s.holds);
  REQUIRE(inverse_s.transition.has_value());
  CHECK(*inverse_s.transition == 2);
  CHECK_FALSE(check_posynomial_condition({{1, 1}, {-1, 2}, {1, 3}}, 5.0).holds);
  CHECK(check_posynomial_condition({{1, 0.5}, {2, 4}}, 1.0).holds);
  CHECK(structural_condition(make_posynomial({{2, 3}, {-3, 2}, {2, 1}}), 2.0).covered);
  CHECK_FALSE(structural_condition(make_posynomial({{1, 1}, {-1, 2}, {1, 3}}), 5.0).covered);
  CHECK(structural_condition(ConvexCombo{0.5}, 3.0).covered);
}

TEST_CASE("exponential truncation") {
  CHECK(default_truncation({1.5}) == 25);
  const Exponential e = make_exponential({1.5}, 4);
  CHECK(exponential_remainder_bound(e) == doctest::Approx(std::exp(1.5) * std::pow(1.5, 5) / 120.0));
  const Policy p = make_policy({0.6, 0.4, 0.0});
  const double diff = std::abs(evaluate(make_exponential({1.5}, 5), {2.0}, p) - evaluate(e, {2.0}, p));
  CHECK(diff <= exponential_remainder_bound(e));
}

TEST_CASE("objective text round trip") {
  for (const std::string text : {"objective=convex alpha=0.24", "objective=posynomial terms=2:1,-3:2,2:3",
                                 "objective=orderstat", "objective=exp lambdas=1.5,0.5 M=12",
                                 "objective=social terms=1:0.5"}) {
    const auto spec = parse_objective(text);
    CHECK(format_objective(parse_objective(format_objective(spec))) == format_objective(spec));
  }
  CHECK(std::get<ConvexCombo>(parse_objective("alpha=0.5")).alpha == 0.5);
  CHECK_THROWS_AS(parse_objective("objective=bogus"), Error);
  CHECK_THROWS_AS(parse_objective("objective=convex alpha=0.5 extra=1"), Error);
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(validate(ConvexCombo{1.5}), Error);
  CHECK_THROWS_AS(validate(CostParams{0.0}), Error);
  CHECK_THROWS_AS(make_posynomial({{1, 2}, {1, 2}}), Error);
  CHECK_THROWS_AS(make_posynomial({{1, -1}}), Error);
  CHECK_THROWS_AS(make_exponential({-1.0}), Error);
  CHECK_THROWS_AS(make_social_welfare({{-1, 1}}), Error);
}

TEST_CASE("Riemann refinement stays within the monotone bound") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 10; ++t) {
    const Policy p = make_policy(oracle::random_shares(rng, 3 + t % 6));
    const int m = 500 + 100 * t;
    const double alpha = t / 9.0, beta = 0.5 + 0.35 * t;
    const auto coarse = evaluate_detailed(ConvexCombo{alpha}, {beta}, p, {m, QuadratureRule::right_riemann, false});
    const auto fine = evaluate_detailed(ConvexCombo{alpha}, {beta}, p, {10 * m, QuadratureRule::right_riemann, false});
    CHECK(std::abs(coarse.value - fine.value) <= coarse.error_bound + fine.error_bound);
  }
}

TEST_CASE("PolicyEvaluator agrees with evaluate") {
  const Policy p = make_policy({0.5, 0.25, 0.25, 0.0});
  const QuadratureConfig q{5000, QuadratureRule::trapezoid, false};
  for (const ObjectiveSpec& spec : {ObjectiveSpec{ConvexCombo{0.4}}, ObjectiveSpec{MaxOrderStat{}},
                                    ObjectiveSpec{make_exponential({0.7})}}) {
    const PolicyEvaluator eval(spec, 1.3, 4, q);
    CHECK(eval(p.shares()) == doctest::Approx(evaluate(spec, {1.3}, p, q)).epsilon(1e-12));
  }
}
