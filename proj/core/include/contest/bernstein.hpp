#pragma once

#include <span>
#include <vector>

#include "contest/policy.hpp"

namespace contest {

// log C(n, k)
double log_binomial(int n, int k);

// a_i(x) = C(n-1, i-1) x^(n-i) (1-x)^(i-1), rank i in 1..n.
double basis_eval(int n, int i, double x);

// All n basis values at x; out[i-1] = a_i(x).
void basis_all(int n, double x, std::span<double> out);

// Exact integral of a_i over [0,1], which is 1/n for every i.
double basis_integral(int n, int i);

// h(x, p) = sum_i a_i(x) p_i.
double h_eval(std::span<const double> p, double x);
double h_eval(const Policy& p, double x);

// dh/dx written out rank by rank.
double h_derivative(std::span<const double> p, double x);
double h_derivative(const Policy& p, double x);

struct InverseOptions {
  double tol = 1e-12;
  int max_steps = 200;
};

// Unique x in [0,1] with h(x, p) = y, by bisection. Needs p_n <= y <= p_1.
double h_inverse(const Policy& p, double y, InverseOptions opts = {});

// Basis values tabulated on a fixed node set, row-major by node.
class BasisTable {
 public:
  BasisTable(int n, std::span<const double> nodes);

  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  double node(std::size_t j) const { return nodes_[j]; }
  std::span<const double> row(std::size_t j) const {
    return {values_.data() + j * static_cast<std::size_t>(n_), static_cast<std::size_t>(n_)};
  }
  // h at node j.
  double h(std::size_t j, std::span<const double> p) const;

 private:
  int n_;
  std::vector<double> nodes_;
  std::vector<double> values_;
};

}  // namespace contest
