#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "contest/objective.hpp"
#include "contest/policy.hpp"

namespace contest {

// Symmetric mixed equilibrium for a nontrivial policy: F(q) = h^{-1}(p_n + q^beta).
class EquilibriumModel {
 public:
  EquilibriumModel(Policy policy, CostParams cost);

  const Policy& policy() const noexcept { return policy_; }
  double beta() const noexcept { return beta_; }
  // (p_1 - p_n)^{1/beta}; the support is [0, q_max].
  double q_max() const noexcept { return q_max_; }

 private:
  Policy policy_;
  double beta_;
  double q_max_;
};

double cdf(const EquilibriumModel& model, double q);
// (h(u) - p_n)^{1/beta}
double quantile(const EquilibriumModel& model, double u);
// Expected prize when a contestant beats each opponent with probability F.
double expected_revenue(const Policy& p, double F_of_q);
// Payoff of a pure deviation to q against n-1 equilibrium opponents.
double utility(const EquilibriumModel& model, double q);

std::vector<std::pair<double, double>> cdf_table(const EquilibriumModel& model, int points);

struct WelfareQuality {
  double W = 0.0;
  double Q = 0.0;
  double W_error = 0.0;
  double Q_error = 0.0;
};

// W = n * int h^{1+1/beta}, Q = int h^{1/beta}; needs p_n = 0.
WelfareQuality welfare_quality_analytic(const Policy& p, CostParams cost,
                                        const QuadratureConfig& quad = acceptance_quadrature());

struct SimReport {
  double empirical_welfare = 0.0;
  double welfare_se = 0.0;
  double empirical_quality = 0.0;
  double quality_se = 0.0;
  double max_deviation_gain = 0.0;
  double deviation_se = 0.0;   // standard error at the maximizing grid point
  double deviation_q = 0.0;    // grid point attaining the maximum
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  int streams = 0;
};

struct SimOptions {
  int deviation_grid = 50;
  // Grid spans (0, overshoot * q_max] so some points lie above the support.
  double overshoot = 1.2;
  int streams = 16;
  std::size_t threads = 0;  // 0: configured_threads()
};

// Monte Carlo play of the equilibrium. Samples are split over `streams` independent
// mt19937_64 generators seeded from (seed, stream); results depend only on
// (seed, streams), never on the thread count.
SimReport simulate(const EquilibriumModel& model, std::uint64_t samples, std::uint64_t seed,
                   const SimOptions& opts = {});

}  // namespace contest
