#include <doctest.h>

#include <cmath>

#include "contest/equilibrium.hpp"
#include "contest/errors.hpp"

using namespace contest;

TEST_CASE("HM(5), beta = 2 has F(q) = sqrt(q) on [0, 1]") {
  const EquilibriumModel model(hm(5), {2.0});
  CHECK(model.q_max() == doctest::Approx(1.0));
  for (double q : {0.0, 0.01, 0.25, 0.5, 0.81, 1.0}) CHECK(cdf(model, q) == doctest::Approx(std::sqrt(q)).epsilon(1e-10));
  for (double u : {0.1, 0.5, 0.9}) CHECK(quantile(model, u) == doctest::Approx(u * u).epsilon(1e-12));
  const auto table = cdf_table(model, 5);
  REQUIRE(table.size() == 5);
  CHECK(table[1].first == doctest::Approx(0.25));
  CHECK(table[1].second == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("UNI(5), beta = 1: support ends at p1 - p5") {
  const EquilibriumModel model(uni(5), {1.0});
  CHECK(model.q_max() == doctest::Approx(0.25));
  // h(x) = (1 - (1-x)^4)/4 = q  =>  x = 1 - (1 - 4q)^{1/4}
  for (double q : {0.05, 0.125, 0.2})
    CHECK(cdf(model, q) == doctest::Approx(1.0 - std::pow(1.0 - 4.0 * q, 0.25)).epsilon(1e-10));
  CHECK(cdf(model, 0.125) == doctest::Approx(0.159104).epsilon(1e-6));
}

TEST_CASE("indifference on the support and no gain above it") {
  const Policy p = make_policy({0.5, 0.3, 0.2, 0.0});
  const EquilibriumModel model(p, {1.5});
  for (double q = 0.0; q <= model.q_max(); q += model.q_max() / 17) CHECK(utility(model, q) == doctest::Approx(0.0).epsilon(1e-12));
  for (double q : {1.01, 1.3}) CHECK(utility(model, q * model.q_max()) < 0.0);
  CHECK(expected_revenue(p, 1.0) == doctest::Approx(0.5));
  CHECK(expected_revenue(p, 0.0) == doctest::Approx(0.0));
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(EquilibriumModel(make_policy({0.25, 0.25, 0.25, 0.25}), {2.0}), Error);
  const EquilibriumModel model(hm(3), {1.0});
  CHECK_THROWS_AS(cdf(model, 1.5), Error);
  CHECK_THROWS_AS(quantile(model, 1.5), Error);
}

TEST_CASE("analytic W and Q for HM(5), beta = 2") {
  const auto wq = welfare_quality_analytic(hm(5), {2.0});
  CHECK(std::abs(wq.Q - 1.0 / 3.0) <= wq.Q_error);
  CHECK(std::abs(wq.W - 5.0 / 7.0) <= wq.W_error);
}

TEST_CASE("simulation is deterministic and thread-count independent") {
  const EquilibriumModel model(hm(4), {2.0});
  SimOptions one, four;
  one.threads = 1;
  four.threads = 4;
  const SimReport a = simulate(model, 20000, 99, one);
  const SimReport b = simulate(model, 20000, 99, four);
  CHECK(a.empirical_welfare == b.empirical_welfare);
  CHECK(a.empirical_quality == b.empirical_quality);
  CHECK(a.max_deviation_gain == b.max_deviation_gain);
  const SimReport c = simulate(model, 20000, 100, one);
  CHECK(c.empirical_quality != a.empirical_quality);
  CHECK_THROWS_AS(simulate(model, 10, 1), Error);
}

TEST_CASE("simulation reproduces W and Q for a two-level policy") {
  const Policy p = two_level(4, 0.6);
  const EquilibriumModel model(p, {1.5});
  const auto wq = welfare_quality_analytic(p, {1.5});
  const SimReport s = simulate(model, 200000, 2024);
  CHECK(std::abs(s.empirical_welfare - wq.W) <= 4 * s.welfare_se + wq.W_error);
  CHECK(std::abs(s.empirical_quality - wq.Q) <= 4 * s.quality_se + wq.Q_error);
  CHECK(s.max_deviation_gain <= 4 * s.deviation_se + 1e-3);
}
