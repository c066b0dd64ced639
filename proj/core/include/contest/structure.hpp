#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "contest/objective.hpp"
#include "contest/policy.hpp"

namespace contest {

struct SignPattern {
  int s_minus = 0;
  int s_plus = 0;
  std::vector<int> pattern;  // signs (+1/-1) of the nonzero entries in order
  bool degenerate = false;   // every entry was zero
};

// Entries with |v| <= zero_tol count as zeros. S^- ignores zeros; S^+ lets each
// zero take whichever sign maximizes the count.
SignPattern sign_changes(const std::vector<double>& seq, double zero_tol = 0.0);

struct QuasiconvexityReport {
  bool is_quasiconvex = false;
  std::optional<int> transition_index;  // 1-based k with x_1 >= ... >= x_k <= ... <= x_len
  std::vector<int> plateau_locations;   // 1-based i with x_i == x_{i+1} within tol
  std::vector<std::string> violations;
  std::vector<std::string> cases;       // plateau exceptions that applied
  std::vector<std::string> warnings;
  bool degenerate = false;              // all entries equal within tol
};

// Shape check only: nonincreasing then nondecreasing within tol.
QuasiconvexityReport check_quasiconvex_shape(const std::vector<double>& seq, double tol);

// Shape plus plateau placement for a gradient sequence d_1..d_{n-1}. A plateau
// d_i = d_{i+1} is accepted at i = k-1 or i = k, at i = 1 for a nondecreasing
// sequence, or at i = n-2 for a nonincreasing one; plateaus at both k-1 and k
// are rejected. tol < 0 selects 1e-9 * max|d|.
QuasiconvexityReport check_gradient_quasiconvexity(const std::vector<double>& d, const Policy& p,
                                                   double tol = -1.0);

// Samples the gradient weight q(x) at x_j = j/(grid_m+1) and checks the shape.
QuasiconvexityReport check_weight_quasiconvexity(const ObjectiveSpec& spec, double beta, const Policy& p,
                                                 int grid_m = 2000);

enum class SchurDirection { convex, concave, flat, mixed };

const char* to_string(SchurDirection d);

struct SchurCounterexample {
  std::vector<double> p;
  std::vector<double> p_prime;
  double difference = 0.0;
};

struct SchurResult {
  SchurDirection direction = SchurDirection::mixed;
  std::optional<SchurCounterexample> counterexample;
  double min_difference = 0.0;
  double max_difference = 0.0;
  int trials = 0;
};

// Integral of O(x,p)^r, where O applies h to p sorted in decreasing order.
double sorted_power_integral(const std::vector<double>& p, double r);

// Draws random p on the simplex, applies a Robin-Hood transfer of size
// uniform in (0, gap/2] from a larger to a smaller coordinate (so p majorizes p'),
// and classifies the sign of the integral difference across trials.
SchurResult schur_direction(double r, int n, int trials, std::uint64_t seed, double tol = 1e-11);

// det[a_{i_s}(1 - x_l)] by LU with partial pivoting; k = |x| = |i| <= 6.
double vandermonde_minor(int n, const std::vector<double>& x_points, const std::vector<int>& i_indices);

}  // namespace contest
