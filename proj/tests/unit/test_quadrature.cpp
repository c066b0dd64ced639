#include <doctest.h>

#include <cmath>

#include "contest/errors.hpp"
#include "contest/quadrature.hpp"

using namespace contest;

TEST_CASE("right Riemann sum of x is (m+1)/(2m)") {
  for (int m : {2, 10, 1000}) {
    const double v = integrate({m, QuadratureRule::right_riemann, false}, [](double x) { return x; });
    CHECK(v == doctest::Approx((m + 1.0) / (2.0 * m)).epsilon(1e-14));
  }
}

TEST_CASE("trapezoid of x^2 has error 1/(6 m^2)") {
  for (int m : {4, 50, 400}) {
    const double v = integrate({m, QuadratureRule::trapezoid, false}, [](double x) { return x * x; });
    CHECK(v - 1.0 / 3.0 == doctest::Approx(1.0 / (6.0 * m * m)).epsilon(1e-9));
  }
}

TEST_CASE("excluding the left endpoint never evaluates x = 0") {
  const auto grid = make_grid({100, QuadratureRule::right_riemann, true});
  CHECK(grid.nodes.front() > 0.0);
  CHECK(grid.nodes.back() == 1.0);
  const double v = integrate({100000, QuadratureRule::right_riemann, true}, [](double x) { return 1.0 / std::sqrt(x); });
  CHECK(v == doctest::Approx(2.0).epsilon(1e-2));
}

TEST_CASE("monotone error bounds") {
  CHECK(monotone_error_bound({100, QuadratureRule::right_riemann, false}, 0.0, 2.0) == doctest::Approx(0.02));
  CHECK(monotone_error_bound({100, QuadratureRule::trapezoid, false}, 0.0, 2.0) == doctest::Approx(0.01));
  // The bound holds for a monotone integrand.
  const QuadratureConfig q{37, QuadratureRule::right_riemann, false};
  const double v = integrate(q, [](double x) { return std::pow(x, 0.3); });
  CHECK(std::abs(v - 1.0 / 1.3) <= monotone_error_bound(q, 0.0, 1.0));
}

TEST_CASE("graded Gauss-Legendre handles endpoint singularities") {
  // The innermost panel misses O(2^-24) of an x^{-1/2} singularity.
  CHECK(std::abs(integrate_graded([](double x) { return 1.0 / std::sqrt(x); }) - 2.0) <= 1e-6);
  CHECK(std::abs(integrate_graded([](double x) { return std::pow(1.0 - x, -0.5); }) - 2.0) <= 1e-6);
  CHECK(integrate_graded([](double x) { return std::pow(x, 0.3); }) == doctest::Approx(1.0 / 1.3).epsilon(1e-13));
  CHECK(integrate_graded([](double x) { return std::exp(x); }) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-13));
}

TEST_CASE("presets and rule names") {
  CHECK(sweep_quadrature().m == 200);
  CHECK(acceptance_quadrature().m == 100000);
  CHECK(gradient_quadrature().exclude_left_endpoint);
  CHECK(parse_rule("trapezoid") == QuadratureRule::trapezoid);
  CHECK(parse_rule(to_string(QuadratureRule::right_riemann)) == QuadratureRule::right_riemann);
  CHECK_THROWS_AS(parse_rule("simpson"), Error);
}
