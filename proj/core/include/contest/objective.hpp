#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "contest/bernstein.hpp"
#include "contest/policy.hpp"
#include "contest/quadrature.hpp"

namespace contest {

// e * q^k
struct PowerTerm {
  double e = 0.0;
  double k = 1.0;
};

// alpha * W + (1 - alpha) * Q
struct ConvexCombo {
  double alpha = 0.0;
};

// sum_j e_j q^{k_j}, stored with k strictly increasing.
struct Posynomial {
  std::vector<PowerTerm> terms;
};

// Expected top quality among n contestants.
struct MaxOrderStat {};

// sum over lambdas of E[exp(lambda q)], Taylor-truncated at truncation_M.
struct Exponential {
  std::vector<double> lambdas;
  int truncation_M = 0;
};

// Allocated quality plus producers' payoffs plus sum_j e_j q^{k_j}.
struct SocialWelfare {
  std::vector<PowerTerm> platform_terms;
};

using ObjectiveSpec = std::variant<ConvexCombo, Posynomial, MaxOrderStat, Exponential, SocialWelfare>;

struct CostParams {
  double beta = 1.0;
};

Posynomial make_posynomial(std::vector<PowerTerm> terms);
Exponential make_exponential(std::vector<double> lambdas, int truncation_M = 0);
SocialWelfare make_social_welfare(std::vector<PowerTerm> platform_terms);
int default_truncation(const std::vector<double>& lambdas);

void validate(const ObjectiveSpec& spec);
void validate(const CostParams& cost);

std::string objective_name(const ObjectiveSpec& spec);

// Flat key-value form: "objective=convex alpha=0.24", "objective=posynomial terms=2:3,-3:2,2:1",
// "objective=orderstat", "objective=exp lambdas=1.5 M=25", "objective=social terms=1:1".
ObjectiveSpec parse_objective(const std::string& text);
std::string format_objective(const ObjectiveSpec& spec);

// Integrand in the equilibrium-free form. h = h(x,p), g = h - p_n, n = contestants.
// With p_n = 0 this is the reduced integrand; p_n > 0 uses the general form.
double integrand_value(const ObjectiveSpec& spec, double beta, int n, double x, double h, double g);

// Multiplier of a_i(x) in the partial derivative d_i (requires p_n = 0).
double gradient_weight(const ObjectiveSpec& spec, double beta, int n, double x, double h);

double reduced_integrand(const ObjectiveSpec& spec, CostParams cost, const Policy& p, double x);

struct Evaluation {
  double value = 0.0;
  double error_bound = 0.0;  // monotone-integrand quadrature bound
};

// Quadrature of the reduced integrand; requires p_n = 0 and a nontrivial policy.
double evaluate(const ObjectiveSpec& spec, CostParams cost, const Policy& p,
                const QuadratureConfig& quad = acceptance_quadrature());
Evaluation evaluate_detailed(const ObjectiveSpec& spec, CostParams cost, const Policy& p,
                             const QuadratureConfig& quad = acceptance_quadrature());

// Any policy, including p_n > 0 and the trivial one (where every quality is 0).
double evaluate_general(const ObjectiveSpec& spec, CostParams cost, const Policy& p,
                        const QuadratureConfig& quad = acceptance_quadrature());

// I_r(p) = integral of h^r.
double power_integral(const Policy& p, double r, const QuadratureConfig& quad = acceptance_quadrature());

// alpha*beta*n/(beta*n + n - 1) + (1 - alpha)*beta/(beta + n - 1)
double evaluate_hm_closed_form(double alpha, double beta, int n);

// d_1..d_{n-1}: partial derivatives of the reduced objective in p_1..p_{n-1}.
std::vector<double> gradient(const ObjectiveSpec& spec, CostParams cost, const Policy& p,
                             const QuadratureConfig& quad = gradient_quadrature());

struct PosynomialCheck {
  bool holds = false;
  // Number of leading terms (by increasing k) whose e_j (k_j - beta) is not positive
  // before the sign flips; set only when holds.
  std::optional<int> transition;
};

// e_j (k_j - beta) sorted by k must be nonpositive then nonnegative, or one-signed.
PosynomialCheck check_posynomial_condition(std::vector<PowerTerm> terms, double beta);

struct StructuralCheck {
  bool covered = false;
  std::string reason;
};

StructuralCheck structural_condition(const ObjectiveSpec& spec, double beta);

// Taylor remainder bound e^lambda lambda^{M+1} / (M+1)! summed over lambdas.
double exponential_remainder_bound(const Exponential& spec);

// Fast repeated evaluation on a fixed quadrature grid and contestant count.
class PolicyEvaluator {
 public:
  PolicyEvaluator(ObjectiveSpec spec, double beta, int n, const QuadratureConfig& quad);

  int n() const noexcept { return table_.n(); }
  // General form, valid for every policy on the ordered simplex.
  double operator()(std::span<const double> p) const;
  // Bound on the quadrature error for a policy with top share p1 and p_n = 0.
  double error_bound(double p1) const;

 private:
  struct Piece {
    double coef;
    int tpow;        // power of t = g^{1/beta}; -1 when gexp is used
    double gexp;     // explicit exponent on g
    bool h_factor;   // multiply by n h
    bool x_factor;   // multiply by n x^{n-1}
  };
  double pointwise(std::size_t j, double h, double g) const;

  ObjectiveSpec spec_;
  double beta_;
  QuadratureConfig quad_;
  std::vector<double> weights_;
  BasisTable table_;
  std::vector<double> xfactor_;
  std::vector<Piece> pieces_;
  double constant_ = 0.0;
  bool pn_payoff_ = false;
  int max_tpow_ = 0;
};

}  // namespace contest
