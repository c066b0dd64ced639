#include "contest/structure.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "contest/bernstein.hpp"
#include "contest/errors.hpp"

namespace contest {

SignPattern sign_changes(const std::vector<double>& seq, double zero_tol) {
  if (seq.empty()) throw Error(ErrorKind::domain, "sign_changes needs a nonempty sequence");
  SignPattern out;
  constexpr int kNone = -1;
  int plus = kNone, minus = kNone;  // best S^+ so far ending in + / -
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const double v = seq[i];
    const bool zero = std::abs(v) <= zero_tol;
    const bool can_plus = zero || v > 0.0;
    const bool can_minus = zero || v < 0.0;
    if (!zero) {
      const int s = v > 0.0 ? 1 : -1;
      if (!out.pattern.empty() && out.pattern.back() != s) ++out.s_minus;
      out.pattern.push_back(s);
    }
    int next_plus = kNone, next_minus = kNone;
    if (i == 0) {
      next_plus = can_plus ? 0 : kNone;
      next_minus = can_minus ? 0 : kNone;
    } else {
      if (can_plus) next_plus = std::max(plus, minus == kNone ? kNone : minus + 1);
      if (can_minus) next_minus = std::max(minus, plus == kNone ? kNone : plus + 1);
    }
    plus = next_plus;
    minus = next_minus;
  }
  out.s_plus = std::max(plus, minus);
  out.degenerate = out.pattern.empty();
  return out;
}

namespace {

std::vector<int> diff_signs(const std::vector<double>& seq, double tol) {
  std::vector<int> s;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    const double d = seq[i + 1] - seq[i];
    s.push_back(d > tol ? 1 : (d < -tol ? -1 : 0));
  }
  return s;
}

double default_tol(const std::vector<double>& seq) {
  double m = 0.0;
  for (double v : seq) m = std::max(m, std::abs(v));
  return 1e-9 * m;
}

}  // namespace

QuasiconvexityReport check_quasiconvex_shape(const std::vector<double>& seq, double tol) {
  if (seq.empty()) throw Error(ErrorKind::domain, "empty sequence");
  QuasiconvexityReport rep;
  const auto s = diff_signs(seq, tol);
  int first_up = -1, last_down = -1;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] > 0 && first_up < 0) first_up = static_cast<int>(i);
    if (s[i] < 0) last_down = static_cast<int>(i);
    if (s[i] == 0) rep.plateau_locations.push_back(static_cast<int>(i) + 1);
  }
  if (first_up >= 0 && last_down > first_up)
    rep.violations.push_back("increase at " + std::to_string(first_up + 1) + " before decrease at " +
                             std::to_string(last_down + 1));
  rep.degenerate = rep.plateau_locations.size() == s.size();
  rep.transition_index = last_down < 0 ? 1 : last_down + 2;
  rep.is_quasiconvex = rep.violations.empty();
  return rep;
}

QuasiconvexityReport check_gradient_quasiconvexity(const std::vector<double>& d, const Policy& p, double tol) {
  if (static_cast<int>(d.size()) != p.n() - 1) throw Error(ErrorKind::domain, "d must have length n-1");
  if (tol < 0.0) tol = default_tol(d);
  QuasiconvexityReport rep = check_quasiconvex_shape(d, tol);
  if (p.n() <= 4) rep.warnings.push_back("plateau rules checked at n <= 4, where they are weakest");
  if (rep.degenerate || !rep.is_quasiconvex) return rep;

  const int len = static_cast<int>(d.size());
  const int k = *rep.transition_index;
  const auto s = diff_signs(d, tol);
  const bool nondecreasing = std::none_of(s.begin(), s.end(), [](int v) { return v < 0; });
  const bool nonincreasing = std::none_of(s.begin(), s.end(), [](int v) { return v > 0; });
  for (int i : rep.plateau_locations) {
    if (i == k - 1 || i == k) {
      rep.cases.push_back("plateau at the transition index " + std::to_string(i));
    } else if (nondecreasing && i == 1) {
      rep.cases.push_back("nondecreasing sequence with leading plateau");
    } else if (nonincreasing && i == len - 1) {
      rep.cases.push_back("nonincreasing sequence with trailing plateau");
    } else {
      rep.violations.push_back("plateau at " + std::to_string(i) + " away from transition " + std::to_string(k));
    }
  }
  for (std::size_t a = 0; a + 1 < rep.plateau_locations.size(); ++a) {
    const int i = rep.plateau_locations[a];
    if (rep.plateau_locations[a + 1] == i + 1 && (i == k - 1 || i == k))
      rep.violations.push_back("consecutive plateaus at " + std::to_string(i) + " and " + std::to_string(i + 1));
  }
  rep.is_quasiconvex = rep.violations.empty();
  return rep;
}

QuasiconvexityReport check_weight_quasiconvexity(const ObjectiveSpec& spec, double beta, const Policy& p,
                                                 int grid_m) {
  if (grid_m < 2) throw Error(ErrorKind::domain, "grid_m must be at least 2");
  std::vector<double> q(grid_m);
  for (int j = 1; j <= grid_m; ++j) {
    const double x = static_cast<double>(j) / (grid_m + 1);
    q[j - 1] = gradient_weight(spec, beta, p.n(), x, h_eval(p, x));
  }
  return check_quasiconvex_shape(q, default_tol(q));
}

const char* to_string(SchurDirection d) {
  switch (d) {
    case SchurDirection::convex: return "convex";
    case SchurDirection::concave: return "concave";
    case SchurDirection::flat: return "flat";
    case SchurDirection::mixed: return "mixed";
  }
  return "mixed";
}

double sorted_power_integral(const std::vector<double>& p, double r) {
  std::vector<double> s(p);
  std::sort(s.begin(), s.end(), std::greater<>());
  return integrate_graded([&](double x) {
    const double o = h_eval(std::span<const double>(s), x);
    return o <= 0.0 ? 0.0 : std::pow(o, r);
  });
}

SchurResult schur_direction(double r, int n, int trials, std::uint64_t seed, double tol) {
  if (trials < 1) throw Error(ErrorKind::domain, "trials must be at least 1");
  if (n < 2) throw Error(ErrorKind::domain, "n must be at least 2");
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::uniform_int_distribution<int> index(0, n - 1);

  struct Trial {
    std::vector<double> p, q;
    double diff;
  };
  std::vector<Trial> log;
  log.reserve(trials);
  for (int t = 0; t < trials; ++t) {
    std::vector<double> p(n);
    double sum = 0.0;
    for (double& v : p) sum += (v = expo(rng));
    for (double& v : p) v /= sum;
    int i = 0, j = 0;
    do {
      i = index(rng);
      j = index(rng);
    } while (i == j || p[i] == p[j]);
    if (p[i] < p[j]) std::swap(i, j);
    const double gap = p[i] - p[j];
    const double move = 0.5 * gap * (1.0 - unif(rng));
    std::vector<double> q(p);
    q[i] -= move;
    q[j] += move;
    log.push_back({p, q, sorted_power_integral(p, r) - sorted_power_integral(q, r)});
  }

  SchurResult res;
  res.trials = trials;
  res.min_difference = INFINITY;
  res.max_difference = -INFINITY;
  int up = 0, down = 0;
  for (const auto& t : log) {
    res.min_difference = std::min(res.min_difference, t.diff);
    res.max_difference = std::max(res.max_difference, t.diff);
    if (t.diff > tol) ++up;
    if (t.diff < -tol) ++down;
  }
  if (up == 0 && down == 0) {
    res.direction = SchurDirection::flat;
  } else if (down == 0) {
    res.direction = SchurDirection::convex;
  } else if (up == 0) {
    res.direction = SchurDirection::concave;
  } else {
    res.direction = SchurDirection::mixed;
    const bool minority_down = down <= up;
    for (const auto& t : log) {
      if ((minority_down && t.diff < -tol) || (!minority_down && t.diff > tol)) {
        res.counterexample = SchurCounterexample{t.p, t.q, t.diff};
        break;
      }
    }
  }
  return res;
}

double vandermonde_minor(int n, const std::vector<double>& x_points, const std::vector<int>& i_indices) {
  const std::size_t k = x_points.size();
  if (k == 0 || k > 6 || i_indices.size() != k) throw Error(ErrorKind::domain, "need 1 <= k <= 6 points and indices");
  for (std::size_t l = 0; l < k; ++l) {
    if (!(x_points[l] > 0.0 && x_points[l] < 1.0)) throw Error(ErrorKind::domain, "points must lie in (0,1)");
    if (i_indices[l] < 1 || i_indices[l] > n - 1) throw Error(ErrorKind::domain, "indices must lie in 1..n-1");
    if (l > 0 && !(x_points[l] > x_points[l - 1])) throw Error(ErrorKind::domain, "points must be strictly increasing");
    if (l > 0 && !(i_indices[l] > i_indices[l - 1])) throw Error(ErrorKind::domain, "indices must be strictly increasing");
  }
  std::vector<double> a(k * k);
  for (std::size_t s = 0; s < k; ++s)
    for (std::size_t l = 0; l < k; ++l) a[s * k + l] = basis_eval(n, i_indices[s], 1.0 - x_points[l]);
  double det = 1.0;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < k; ++r)
      if (std::abs(a[r * k + c]) > std::abs(a[piv * k + c])) piv = r;
    if (a[piv * k + c] == 0.0) return 0.0;
    if (piv != c) {
      for (std::size_t l = 0; l < k; ++l) std::swap(a[c * k + l], a[piv * k + l]);
      det = -det;
    }
    det *= a[c * k + c];
    for (std::size_t r = c + 1; r < k; ++r) {
      const double f = a[r * k + c] / a[c * k + c];
      for (std::size_t l = c; l < k; ++l) a[r * k + l] -= f * a[c * k + l];
    }
  }
  return det;
}

}  // namespace contest
