#include "contest/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "contest/errors.hpp"

namespace contest {

QuadratureConfig sweep_quadrature() { return {200, QuadratureRule::trapezoid, false}; }
QuadratureConfig acceptance_quadrature() { return {100000, QuadratureRule::trapezoid, false}; }
QuadratureConfig gradient_quadrature() { return {100000, QuadratureRule::right_riemann, true}; }

const char* to_string(QuadratureRule rule) {
  return rule == QuadratureRule::right_riemann ? "right_riemann" : "trapezoid";
}

QuadratureRule parse_rule(const std::string& text) {
  if (text == "right_riemann" || text == "riemann") return QuadratureRule::right_riemann;
  if (text == "trapezoid") return QuadratureRule::trapezoid;
  throw Error(ErrorKind::parse, "unknown quadrature rule '" + text + "'");
}

QuadratureGrid make_grid(const QuadratureConfig& cfg) {
  if (cfg.m < 2) throw Error(ErrorKind::domain, "quadrature needs m >= 2");
  QuadratureGrid g;
  const double m = cfg.m;
  if (cfg.rule == QuadratureRule::right_riemann) {
    g.nodes.resize(cfg.m);
    g.weights.assign(cfg.m, 1.0 / m);
    for (int j = 1; j <= cfg.m; ++j) g.nodes[j - 1] = j / m;
    return g;
  }
  g.nodes.resize(cfg.m + 1);
  g.weights.assign(cfg.m + 1, 1.0 / m);
  for (int j = 0; j <= cfg.m; ++j) g.nodes[j] = j / m;
  g.weights.front() = g.weights.back() = 0.5 / m;
  if (cfg.exclude_left_endpoint) g.nodes.front() = 1.0 / m;
  return g;
}

double integrate(const QuadratureGrid& grid, const std::function<double(double)>& f) {
  double s = 0.0;
  for (std::size_t j = 0; j < grid.nodes.size(); ++j) s += grid.weights[j] * f(grid.nodes[j]);
  return s;
}

double integrate(const QuadratureConfig& cfg, const std::function<double(double)>& f) {
  return integrate(make_grid(cfg), f);
}

double monotone_error_bound(const QuadratureConfig& cfg, double f0, double f1) {
  const double span = std::abs(f1 - f0);
  if (cfg.rule == QuadratureRule::trapezoid && !cfg.exclude_left_endpoint) return span / (2.0 * cfg.m);
  return span / cfg.m;
}

namespace {

struct GaussLegendre16 {
  std::array<double, 16> x{};
  std::array<double, 16> w{};
  GaussLegendre16() {
    constexpr int n = 16;
    for (int i = 0; i < n; ++i) {
      double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = z;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (z * p1 - p0) / (z * z - 1.0);
        const double dz = p1 / dp;
        z -= dz;
        if (std::abs(dz) < 1e-16) break;
      }
      x[i] = z;
      w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
  }
};

}  // namespace

double integrate_graded(const std::function<double(double)>& f) {
  static const GaussLegendre16 rule;
  constexpr int splits = 4;
  double total = 0.0;
  // [0, 1/2] is graded toward 0 and [1/2, 1] toward 1. Grading toward 1 stops
  // earlier so that 1 - t stays distinguishable from 1.
  for (int side = 0; side < 2; ++side) {
    const int levels = side == 0 ? 48 : 40;
    double hi = 0.5;
    for (int level = 0; level <= levels; ++level) {
      const double lo = level == levels ? 0.0 : hi * 0.5;
      const double width = (hi - lo) / splits;
      for (int s = 0; s < splits; ++s) {
        const double half = 0.5 * width;
        const double mid = lo + s * width + half;
        double part = 0.0;
        for (int k = 0; k < 16; ++k) {
          const double t = mid + half * rule.x[k];
          part += rule.w[k] * f(side == 0 ? t : 1.0 - t);
        }
        total += half * part;
      }
      hi = lo;
    }
  }
  return total;
}

}  // namespace contest
