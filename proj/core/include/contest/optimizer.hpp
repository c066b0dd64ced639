#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "contest/objective.hpp"
#include "contest/policy.hpp"
#include "contest/quadrature.hpp"

namespace contest {

// h(x, two_level(n, p1)) = c0(x) + c1(x) p1.
struct CDecomposition {
  double c0 = 0.0;
  double c1 = 0.0;
  bool degenerate = false;  // n = 2: the family is a single point (HM)
};

CDecomposition c_decomposition(int n, double x);

// Convex-combination objective along the two-level family on a fixed grid.
class TwoLevelKernel {
 public:
  TwoLevelKernel(int n, double alpha, double beta, const QuadratureConfig& quad);

  double value(double p1) const;
  // Integral of the pointwise max of the endpoint integrands.
  double upper(double lo, double hi) const;
  // Quadrature error bound for any p1 in the family.
  double error_bound() const;
  double integral_abs_c1(double power) const;

  int n() const noexcept { return n_; }
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }

 private:
  double integrand(double h) const;

  int n_;
  double alpha_;
  double beta_;
  QuadratureConfig quad_;
  std::vector<double> w_, c0_, c1_;
};

struct BoundPair {
  double L = 0.0;
  double U = 0.0;
};

BoundPair interval_bounds(int n, double alpha, double beta, double lo, double hi,
                          const QuadratureConfig& quad = acceptance_quadrature());

enum class ConstantsMode { exact, rough };

struct GapConstants {
  double C1 = 0.0;
  double C2 = 0.0;
};

GapConstants gap_constants(int n, double alpha, double beta, ConstantsMode mode,
                           const QuadratureConfig& quad = acceptance_quadrature());

// min(eps/C1, (eps/C2)^beta)
double delta_of_epsilon(const GapConstants& c, double beta, double eps);

// max{log2(C1 D/eps), beta log2(C2 D^{1/beta}/eps)} + 1 with D = 1 - 1/(n-1).
double depth_bound(const GapConstants& c, int n, double beta, double eps);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double L = 0.0;
  double U = 0.0;
  int depth = 0;
};

struct BnbConfig {
  double epsilon = 1e-3;
  ConstantsMode constants_mode = ConstantsMode::exact;
  QuadratureConfig quad{20000, QuadratureRule::trapezoid, false};
  std::size_t max_nodes = 2'000'000;
  // Record every p1 at which the objective was evaluated.
  bool record_trace = false;
};

struct OptResult {
  explicit OptResult(Policy p) : policy(std::move(p)) {}

  Policy policy;
  double value = 0.0;
  double certified_gap = 0.0;  // NaN when no certificate exists
  std::size_t nodes_explored = 0;
  std::string method;
  bool certified = false;
  int max_depth = 0;
  double depth_bound = 0.0;
  double epsilon_effective = 0.0;
  double quad_bound = 0.0;
  std::string note;
  std::vector<double> trace;
};

// Active-set branch and bound over p1 for the convex-combination objective.
// Stops once every active interval satisfies U <= L* + eps_eff with
// eps_eff = eps - 2 * quadrature bound; refuses to run if eps_eff <= 0.
OptResult branch_and_bound(int n, double alpha, double beta, const BnbConfig& cfg = {});

struct LineSearchConfig {
  int steps = 1000;
  bool refine = true;
  QuadratureConfig quad{20000, QuadratureRule::trapezoid, false};
  // For convex combinations, also bound OPT over each grid cell.
  bool certify = false;
};

// Uniform p1 grid over [1/(n-1), 1] within the two-level family, optionally
// refined by golden-section search around the best cell.
OptResult two_level_line_search(const ObjectiveSpec& spec, double beta, int n, const LineSearchConfig& cfg = {});

// Number of nonincreasing n-vectors of nonnegative integers summing to units.
double count_lattice_policies(int n, int units);

inline constexpr double kGridCandidateLimit = 1e8;

// Brute force over every ordered lattice policy with the given granularity.
// p_n is unrestricted; ties go to the first candidate in enumeration order.
OptResult grid_search(const ObjectiveSpec& spec, double beta, int n, double granularity,
                      const QuadratureConfig& quad = {1000, QuadratureRule::trapezoid, false},
                      std::size_t threads = 0);

// Bound on how far the best lattice point can sit below the continuum optimum near p.
// Convex combinations use C1 g + C2 g^{1/beta}; other objectives use the first-order
// estimate (max d - min d) (n-1) g / 2 from the gradient at p.
double lattice_error(const ObjectiveSpec& spec, double beta, const Policy& p, double granularity);

}  // namespace contest
