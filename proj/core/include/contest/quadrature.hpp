#pragma once

#include <functional>
#include <string>
#include <vector>

namespace contest {

enum class QuadratureRule { right_riemann, trapezoid };

struct QuadratureConfig {
  int m = 100000;
  QuadratureRule rule = QuadratureRule::trapezoid;
  // When set, x = 0 is never evaluated; the trapezoid rule samples x = 1/m in its place.
  bool exclude_left_endpoint = false;
};

// m = 200 trapezoid, used for sweeps.
QuadratureConfig sweep_quadrature();
// m = 1e5 trapezoid, used for objective values.
QuadratureConfig acceptance_quadrature();
// m = 1e5 right-Riemann, used for gradients whose weight blows up at x = 0.
QuadratureConfig gradient_quadrature();

const char* to_string(QuadratureRule rule);
QuadratureRule parse_rule(const std::string& text);

struct QuadratureGrid {
  std::vector<double> nodes;
  std::vector<double> weights;
};

QuadratureGrid make_grid(const QuadratureConfig& cfg);

double integrate(const QuadratureConfig& cfg, const std::function<double(double)>& f);
double integrate(const QuadratureGrid& grid, const std::function<double(double)>& f);

// Worst-case error for an increasing integrand with f(0) = f0, f(1) = f1:
// (f1 - f0)/m for right sums, half that for the trapezoid rule.
double monotone_error_bound(const QuadratureConfig& cfg, double f0, double f1);

// Composite 16-point Gauss-Legendre on panels refined geometrically toward 0.
// For integrands smooth on (0,1]; accurate to near machine precision there.
double integrate_graded(const std::function<double(double)>& f);

}  // namespace contest
