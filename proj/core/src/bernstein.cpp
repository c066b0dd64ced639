#include "contest/bernstein.hpp"

#include <cmath>
#include <string>

#include "contest/errors.hpp"

namespace contest {

namespace {

void check_index(int n, int i) {
  if (n < 2 || i < 1 || i > n)
    throw Error(ErrorKind::domain, "basis index (n=" + std::to_string(n) + ", i=" + std::to_string(i) + ")");
}

void check_x(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorKind::domain, "x must lie in [0,1]");
}

// x^k (1-x)^l scaled by exp(logc), exact at the endpoints.
double scaled_monomial(double logc, int k, int l, double x) {
  if (x == 0.0) return k == 0 ? std::exp(logc) : 0.0;
  if (x == 1.0) return l == 0 ? std::exp(logc) : 0.0;
  return std::exp(logc + k * std::log(x) + l * std::log1p(-x));
}

}  // namespace

double log_binomial(int n, int k) {
  if (k < 0 || k > n) return -INFINITY;
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double basis_eval(int n, int i, double x) {
  check_index(n, i);
  check_x(x);
  return scaled_monomial(log_binomial(n - 1, i - 1), n - i, i - 1, x);
}

void basis_all(int n, double x, std::span<double> out) {
  check_x(x);
  if (static_cast<int>(out.size()) < n) throw Error(ErrorKind::domain, "output span too short");
  if (x == 0.0 || x == 1.0) {
    for (int i = 1; i <= n; ++i) out[i - 1] = 0.0;
    out[x == 0.0 ? n - 1 : 0] = 1.0;
    return;
  }
  const double lx = std::log(x);
  const double l1 = std::log1p(-x);
  for (int i = 1; i <= n; ++i)
    out[i - 1] = std::exp(log_binomial(n - 1, i - 1) + (n - i) * lx + (i - 1) * l1);
}

double basis_integral(int n, int i) {
  check_index(n, i);
  return 1.0 / n;
}

double h_eval(std::span<const double> p, double x) {
  check_x(x);
  const int n = static_cast<int>(p.size());
  if (n < 2) throw Error(ErrorKind::domain, "policy needs n >= 2");
  if (x == 0.0) return p[n - 1];
  if (x == 1.0) return p[0];
  const double lx = std::log(x);
  const double l1 = std::log1p(-x);
  double s = 0.0;
  for (int i = 1; i <= n; ++i) {
    if (p[i - 1] == 0.0) continue;
    s += p[i - 1] * std::exp(log_binomial(n - 1, i - 1) + (n - i) * lx + (i - 1) * l1);
  }
  return s;
}

double h_eval(const Policy& p, double x) { return h_eval(p.shares(), x); }

double h_derivative(std::span<const double> p, double x) {
  check_x(x);
  const int n = static_cast<int>(p.size());
  if (n < 2) throw Error(ErrorKind::domain, "policy needs n >= 2");
  const double m = n - 1;
  double s = p[0] * m * std::pow(x, n - 2) - p[n - 1] * m * std::pow(1.0 - x, n - 2);
  for (int i = 2; i <= n - 1; ++i) {
    const double up = scaled_monomial(log_binomial(n - 2, i - 1), n - i - 1, i - 1, x);
    const double down = scaled_monomial(log_binomial(n - 2, i - 2), n - i, i - 2, x);
    s += p[i - 1] * m * (up - down);
  }
  return s;
}

double h_derivative(const Policy& p, double x) { return h_derivative(p.shares(), x); }

double h_inverse(const Policy& p, double y, InverseOptions opts) {
  if (!is_nontrivial(p)) throw Error(ErrorKind::trivial_policy, "h is constant for the uniform policy");
  const double lo_y = p.last();
  const double hi_y = p.top();
  if (!(y >= lo_y - 1e-15 && y <= hi_y + 1e-15))
    throw Error(ErrorKind::range, "y outside [p_n, p_1]");
  if (y <= lo_y) return 0.0;
  if (y >= hi_y) return 1.0;
  // Stop once both the bracket width and the residual in y are within tol.
  double lo = 0.0, hi = 1.0;
  double mid = 0.5;
  for (int step = 0; step < opts.max_steps; ++step) {
    mid = 0.5 * (lo + hi);
    const double hm = h_eval(p, mid);
    if (hi - lo <= opts.tol && std::abs(hm - y) <= opts.tol) break;
    if (mid <= lo || mid >= hi) break;
    if (hm < y)
      lo = mid;
    else
      hi = mid;
  }
  return mid;
}

BasisTable::BasisTable(int n, std::span<const double> nodes)
    : n_(n), nodes_(nodes.begin(), nodes.end()), values_(nodes.size() * static_cast<std::size_t>(n)) {
  if (n < 2) throw Error(ErrorKind::domain, "basis table needs n >= 2");
  for (std::size_t j = 0; j < nodes_.size(); ++j)
    basis_all(n, nodes_[j], {values_.data() + j * static_cast<std::size_t>(n), static_cast<std::size_t>(n)});
}

double BasisTable::h(std::size_t j, std::span<const double> p) const {
  const double* a = values_.data() + j * static_cast<std::size_t>(n_);
  double s = 0.0;
  for (int i = 0; i < n_; ++i) s += a[i] * p[i];
  return s;
}

}  // namespace contest
