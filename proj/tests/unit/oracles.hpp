#pragma once

// Test-side reference values computed without the library.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

inline double binomial(int n, int k) {
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

// a_i(x) = C(n-1, i-1) x^{n-i} (1-x)^{i-1}
inline double basis(int n, int i, double x) {
  return binomial(n - 1, i - 1) * std::pow(x, n - i) * std::pow(1.0 - x, i - 1);
}

inline double h(const std::vector<double>& p, double x) {
  const int n = static_cast<int>(p.size());
  double s = 0.0;
  for (int i = 1; i <= n; ++i) s += p[i - 1] * basis(n, i, x);
  return s;
}

// Right-endpoint Riemann sum with m cells.
inline double riemann(const std::function<double(double)>& f, int m) {
  double s = 0.0;
  for (int j = 1; j <= m; ++j) s += f(static_cast<double>(j) / m);
  return s / m;
}

// Composite Simpson on [a, b] with an even number of panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
  const double step = (b - a) / panels;
  double s = f(a) + f(b);
  for (int j = 1; j < panels; ++j) s += (j % 2 ? 4.0 : 2.0) * f(a + j * step);
  return s * step / 3.0;
}

// Ordered shares with p_n = 0.
inline std::vector<double> random_shares(std::mt19937_64& rng, int n) {
  std::exponential_distribution<double> ex(1.0);
  std::vector<double> v(n, 0.0);
  double s = 0.0;
  for (int i = 0; i + 1 < n; ++i) s += v[i] = ex(rng);
  for (int i = 0; i + 1 < n; ++i) v[i] /= s;
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

}  // namespace oracle
