#include "verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "contest/contest.hpp"

namespace contest::cli {

namespace {

using Rng = std::mt19937_64;

// Tracks the smallest slack `tol - err` seen across trials.
struct Margin {
  double worst = std::numeric_limits<double>::infinity();
  std::string detail;

  void at_most(double err, double tol, const std::string& where = {}) {
    const double m = tol - err;
    if (!(m >= worst)) {
      worst = std::isnan(m) ? -std::numeric_limits<double>::infinity() : m;
      if (worst < 0.0) detail = where;
    }
  }
  void require(bool ok, const std::string& where = {}) { at_most(ok ? 0.0 : 1.0, 0.0, where); }
  bool pass() const { return worst >= 0.0; }
};

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

// Ordered policy with p_n = 0 and every gap at least min_gap (when possible).
Policy random_policy(Rng& rng, int n, double min_gap = 0.0) {
  for (;;) {
    std::vector<double> v(n, 0.0);
    std::exponential_distribution<double> ex(1.0);
    double s = 0.0;
    for (int i = 0; i + 1 < n; ++i) s += v[i] = ex(rng);
    for (int i = 0; i + 1 < n; ++i) v[i] /= s;
    std::sort(v.begin(), v.end(), std::greater<>());
    double gap = 1.0;
    for (int i = 0; i + 1 < n; ++i) gap = std::min(gap, v[i] - v[i + 1]);
    if (gap >= min_gap) return make_policy(std::move(v));
  }
}

Policy random_two_level(Rng& rng, int n) { return two_level(n, uniform(rng, 1.0 / (n - 1), 1.0)); }

std::string where(const Policy& p, double beta) {
  return "p=" + format_policy(p) + " beta=" + std::to_string(beta);
}

struct Ctx {
  Rng rng;
  int trials;
};

using CheckFn = void (*)(Ctx&, Margin&);

// ---- bernstein

void bernstein_partition(Ctx& c, Margin& m) {
  for (int t = 0; t < c.trials * 10; ++t) {
    const int n = uniform_int(c.rng, 2, 60);
    const double x = uniform(c.rng, 0.0, 1.0);
    double s = 0.0;
    for (int i = 1; i <= n; ++i) s += basis_eval(n, i, x);
    m.at_most(std::abs(s - 1.0), 1e-12, "n=" + std::to_string(n));
  }
}

void bernstein_moments(Ctx&, Margin& m) {
  for (int n = 2; n <= 12; ++n)
    for (int i = 1; i <= n; ++i) {
      const double v = integrate_graded([&](double x) { return basis_eval(n, i, x); });
      m.at_most(std::abs(v - 1.0 / n), 1e-10, "n=" + std::to_string(n) + " i=" + std::to_string(i));
    }
}

void bernstein_monotone(Ctx& c, Margin& m) {
  for (int t = 0; t < c.trials; ++t) {
    const int n = uniform_int(c.rng, 2, 20);
    const Policy p = random_policy(c.rng, n);
    for (int k = 0; k < 20; ++k) {
      const double x = uniform(c.rng, 0.0, 0.999);
      const double y = uniform(c.rng, x + 1e-3, 1.0);
      m.require(h_eval(p, y) > h_eval(p, x), where(p, 0));
    }
  }
}

void bernstein_inverse(Ctx& c, Margin& m) {
  for (int t = 0; t < c.trials; ++t) {
    const Policy p = random_policy(c.rng, uniform_int(c.rng, 2, 30));
    for (int k = 0; k < 10; ++k) {
      const double y = uniform(c.rng, p.last(), p.top());
      m.at_most(std::abs(h_eval(p, h_inverse(p, y)) - y), 1e-12, where(p, 0));
    }
  }
}

void bernstein_derivative(Ctx& c, Margin& m) {
  const double d = 1e-6;
  for (int t = 0; t < c.trials; ++t) {
    const Policy p = random_policy(c.rng, uniform_int(c.rng, 2, 12));
    const double x = uniform(c.rng, 0.01, 0.99);
    const double fd = (h_eval(p, x + d) - h_eval(p, x - d)) / (2 * d);
    m.at_most(std::abs(h_derivative(p, x) - fd), 1e-6, where(p, 0));
  }
}

// ---- policy

template <class F>
bool throws_kind(F&& f, ErrorKind kind) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind() == kind;
  }
  return false;
}

void policy_validation(Ctx& c, Margin& m) {
  for (int t = 0; t < c.trials; ++t) {
    const int n = uniform_int(c.rng, 3, 12);
    const Policy p = random_policy(c.rng, n, 1e-6);
    std::vector<double> v = p.values();
    m.require(make_policy(v).n() == n);
    auto swapped = v;
    const int i = uniform_int(c.rng, 0, n - 2);
    std::swap(swapped[i], swapped[i + 1]);
    m.require(throws_kind([&] { make_policy(swapped); }, ErrorKind::order_violation), "swap");
    auto scaled = v;
    for (double& x : scaled) x *= 1.01;
    m.require(throws_kind([&] { make_policy(scaled); }, ErrorKind::normalization_violation), "scale");
    auto negative = v;
    negative.back() = -1e-3;
    negative.front() += 1e-3;
    m.require(throws_kind([&] { make_policy(negative); }, ErrorKind::domain), "negative");
  }
}

void policy_two_level(Ctx& c, Margin& m) {
  for (int t = 0; t < c.trials; ++t) {
    const int n = uniform_int(c.rng, 3, 20);
    const double lo = 1.0 / (n - 1);
    const double p1 = uniform(c.rng, lo + 1e-4, 1.0 - 1e-4);
    const auto cls = classify_structure(two_level(n, p1));
    m.require(cls.tag == StructureTag::two_level, "p1=" + std::to_string(p1));
    m.at_most(std::abs(cls.p1 - p1), 1e-12);
    m.require(classify_structure(two_level(n, 1.0)).tag == StructureTag::hm);
    m.require(classify_structure(two_level(n, lo)).tag == StructureTag::uni);
  }
}

// ---- objective

void objective_linearity(Ctx& c, Margin& m) {
  const QuadratureConfig quad{2000, QuadratureRule::trapezoid, false};
  for (int t = 0; t < c.trials; ++t) {
    const int n = uniform_int(c.rng, 2, 10);
    const double alpha = uniform(c.rng, 0.0, 1.0), beta = uniform(c.rng, 0.3, 4.0);
    const Policy p = random_policy(c.rng, n);
    const double g = evaluate(ConvexCombo{alpha}, {beta}, p, quad);
    const double w = n * power_integral(p, 1.0 + 1.0 / beta, quad);
    const double q = power_integral(p, 1.0 / beta, quad);
    m.at_most(std::abs(g - (alpha * w + (1 - alpha) * q)), 1e-12 * (1.0 + n), where(p, beta));
  }
}

void objective_flatness(Ctx& c, Margin& m) {
  const QuadratureConfig quad{20000, QuadratureRule::trapezoid, false};
  for (int t = 0; t < c.trials; ++t) {
    const int n = std::array{3, 5, 8}[t % 3];
    const Policy p = t % 5 == 0 ? hm(n) : t % 5 == 1 ? uni(n) : random_policy(c.rng, n);
    m.at_most(std::abs(evaluate(ConvexCombo{0.0}, {1.0}, p, quad) - 1.0 / n), 1.0 / quad.m, where(p, 1.0));
  }
}

void objective_refinement(Ctx& c, Margin& m) {
  for (int t = 0; t < c.trials; ++t) {
    const int n = uniform_int(c.rng, 2, 10);
    const int mm = uniform_int(c.rng, 100, 2000);
    const double r = uniform(c.rng, 0.2, 3.0);
    const Policy p = random_policy(c.rng, n);
    const double coarse = power_integral(p, r, {mm, QuadratureRule::right_riemann, false});
    const double fine = power_integral(p, r, {10 * mm, QuadratureRule::right_riemann, false});
    m.at_most(std::abs(coarse - fine), 1.0 / mm + 1.0 / (10.0 * mm), where(p, 1.0 / r));
  }
}

void objective_hm_closed_form(Ctx& c, Margin& m) {
  const QuadratureConfig quad{20000, QuadratureRule::trapezoid, false};
  for (int t = 0; t < c.trials; ++t) {
    const int n = uniform_int(c.rng, 2, 10);
    const double alpha = uniform(c.rng, 0.0, 1.0), beta = uniform(c.rng, 0.3, 4.0);
    const auto ev = evaluate_detailed(ConvexCombo{alpha}, {beta}, hm(n), quad);
    m.at_most(std::abs(ev.value - evaluate_hm_closed_form(alpha, beta, n)), ev.error_bound, where(hm(n), beta));
  }
}

void objective_gradient_fd(Ctx& c, Margin& m) {
  const QuadratureConfig quad{20000, QuadratureRule::trapezoid, false};
  const double d = 1e-6;
  const int trials = std::max(1, c.trials / 4);
  for (int t = 0; t < trials; ++t) {
    const int n = uniform_int(c.rng, 3, 8);
    const double alpha = uniform(c.rng, 0.0, 1.0), beta = uniform(c.rng, 0.5, 3.0);
    const Policy p = random_policy(c.rng, n, 1e-3);
    const ConvexCombo spec{alpha};
    const auto grad = gradient(spec, {beta}, p);
    const int i = uniform_int(c.rng, 0, n - 3);
    const int j = uniform_int(c.rng, i + 1, n - 2);
    auto plus = p.values(), minus = p.values();
    plus[i] += d, plus[j] -= d, minus[i] -= d, minus[j] += d;
    const double fd =
        (evaluate(spec, {beta}, make_policy(plus), quad) - evaluate(spec, {beta}, make_policy(minus), quad)) / (2 * d);
    m.at_most(std::abs((grad[i] - grad[j]) - fd), 1e-4, where(p, beta));
  }
}

void objective_exp_truncation(Ctx& c, Margin& m) {
  const QuadratureConfig quad{2000, QuadratureRule::trapezoid, false};
  for (int t = 0; t < c.trials; ++t) {
    const int n = uniform_int(c.rng, 2, 8);
    const double beta = uniform(c.rng, 0.5, 4.0);
    const double lambda = uniform(c.rng, 0.1, 3.0);
    const int M = uniform_int(c.rng, 1, 10);
    const Policy p = random_policy(c.rng, n);
    const auto lo = make_exponential({lambda}, M), hi = make_exponential({lambda}, M + 1);
    const double diff = std::abs(evaluate(hi, {beta}, p, quad) - evaluate(lo, {beta}, p, quad));
    const double bound = std::exp(lambda) * std::pow(lambda, M + 1) / std::tgamma(M + 2.0);
    m.at_most(diff, bound * (1 + 1e-9) + 1e-14, where(p, beta));
  }
}

void objective_posynomial_condition(Ctx& c, Margin& m) {
  m.require(check_posynomial_condition({{2, 3}, {-3, 2}, {2, 1}}, 2.0).holds, "inverse-S");
  m.require(!check_posynomial_condition({{1, 1}, {-1, 2}, {1, 3}}, 5.0).holds, "(-,+,-)");
  for (int t = 0; t < c.trials; ++t) {
    const int len = uniform_int(c.rng, 1, 5);
    const double beta = uniform(c.rng, 0.3, 4.0);
    std::vector<PowerTerm> terms;
    double k = 0.0;
    bool nonneg = true;
    for (int j = 0; j < len; ++j) {
      k += uniform(c.rng, 0.1, 2.0);
      const double e = uniform_int(c.rng, 0, 2) == 0 ? -uniform(c.rng, 0.1, 3.0) : uniform(c.rng, 0.1, 3.0);
      nonneg = nonneg && e >= 0.0;
      terms.push_back({e, k});
    }
    // Oracle: some split point has only nonpositive signs before it and nonnegative after.
    bool expect = false;
    for (int split = 0; split <= len && !expect; ++split) {
      bool ok = true;
      for (int j = 0; j < len; ++j) {
        const double s = terms[j].e * (terms[j].k - beta);
        if ((j < split && s > 0.0) || (j >= split && s < 0.0)) ok = false;
      }
      expect = ok;
    }
    const auto got = check_posynomial_condition(terms, beta);
    m.require(got.holds == expect, "posynomial sign oracle");
    if (nonneg) m.require(got.holds, "nonnegative coefficients");
  }
}

// ---- equilibrium

void equilibrium_round_trip(Ctx& c, Margin& m) {
  for (int t = 0; t < c.trials; ++t) {
    const int n = uniform_int(c.rng, 2, 10);
    const double beta = uniform(c.rng, 0.3, 4.0);
    const Policy p = random_policy(c.rng, n);
    const EquilibriumModel model(p, {beta});
    for (int k = 0; k < 10; ++k) {
      const double u = uniform(c.rng, 0.0, 1.0);
      m.at_most(std::abs(cdf(model, quantile(model, u)) - u), 1e-9, where(p, beta));
      const double q = uniform(c.rng, 0.05, 1.0) * model.q_max();
      m.at_most(std::abs(quantile(model, cdf(model, q)) - q), 1e-7, where(p, beta));
    }
  }
}

void equilibrium_indifference(Ctx& c, Margin& m) {
  for (int t = 0; t < c.trials; ++t) {
    const int n = uniform_int(c.rng, 2, 10);
    const double beta = uniform(c.rng, 0.3, 4.0);
    const Policy p = random_policy(c.rng, n);
    const EquilibriumModel model(p, {beta});
    for (int k = 0; k < 10; ++k) {
      const double q = uniform(c.rng, 0.0, model.q_max());
      const double F = cdf(model, q);
      m.at_most(std::abs(expected_revenue(p, F) - p.last() - std::pow(q, beta)), 1e-12, where(p, beta));
      m.at_most(std::abs(utility(model, q) - p.last()), 1e-12, where(p, beta));
    }
    for (int k = 0; k < 10; ++k) {
      const double q = model.q_max() * uniform(c.rng, 1.0 + 1e-9, 1.5);
      m.at_most(utility(model, q), p.last(), where(p, beta));
    }
  }
}

void equilibrium_simulation(Ctx& c, Margin& m) {
  const std::uint64_t samples = 200000;
  const int n = 5;
  const double beta = 2.0;
  for (const Policy& p : {hm(n), uni(n)}) {
    const EquilibriumModel model(p, {beta});
    const auto wq = welfare_quality_analytic(p, {beta});
    const SimReport s = simulate(model, samples, c.rng());
    m.at_most(std::abs(s.empirical_welfare - wq.W), 3 * s.welfare_se + wq.W_error, where(p, beta) + " W");
    m.at_most(std::abs(s.empirical_quality - wq.Q), 3 * s.quality_se + wq.Q_error, where(p, beta) + " Q");
    m.at_most(s.max_deviation_gain, 3 * s.deviation_se + 1e-3, where(p, beta) + " deviation");
  }
}

// ---- optimizer

void optimizer_decomposition(Ctx& c, Margin& m) {
  for (int t = 0; t < c.trials; ++t) {
    const int n = uniform_int(c.rng, 3, 30);
    const double p1 = uniform(c.rng, 1.0 / (n - 1), 1.0);
    const double x = uniform(c.rng, 0.0, 1.0);
    const auto cd = c_decomposition(n, x);
    m.at_most(std::abs(cd.c0 + p1 * cd.c1 - h_eval(two_level(n, p1), x)), 1e-12, "n=" + std::to_string(n));
  }
}

void optimizer_bound_sandwich(Ctx& c, Margin& m) {
  const QuadratureConfig quad{4000, QuadratureRule::trapezoid, false};
  const int trials = std::max(1, c.trials / 4);
  for (int t = 0; t < trials; ++t) {
    const int n = uniform_int(c.rng, 3, 8);
    const double alpha = uniform(c.rng, 0.0, 1.0), beta = uniform(c.rng, 0.5, 4.0);
    const TwoLevelKernel kernel(n, alpha, beta, quad);
    const auto consts = gap_constants(n, alpha, beta, ConstantsMode::exact, quad);
    const double lo0 = 1.0 / (n - 1);
    double a = uniform(c.rng, lo0, 1.0), b = uniform(c.rng, lo0, 1.0);
    if (a > b) std::swap(a, b);
    const auto bp = interval_bounds(n, alpha, beta, a, b, quad);
    double inner = -std::numeric_limits<double>::infinity();
    for (int k = 0; k <= 50; ++k) inner = std::max(inner, kernel.value(a + (b - a) * k / 50.0));
    const std::string w = "n=" + std::to_string(n) + " alpha=" + std::to_string(alpha) + " beta=" +
                          std::to_string(beta) + " I=[" + std::to_string(a) + "," + std::to_string(b) + "]";
    m.at_most(bp.L - inner, 1e-12, w + " L");
    m.at_most(inner - bp.U, 1e-12, w + " U");
    m.at_most(bp.U - bp.L, consts.C1 * (b - a) + consts.C2 * std::pow(b - a, 1.0 / beta) + 1e-12, w + " gap");
  }
}

void optimizer_certificate(Ctx& c, Margin& m) {
  const int trials = std::clamp(c.trials / 10, 1, 20);
  for (int t = 0; t < trials; ++t) {
    const int n = uniform_int(c.rng, 3, 6);
    const double alpha = uniform(c.rng, 0.05, 1.0), beta = uniform(c.rng, 0.5, 4.0);
    BnbConfig cfg;
    const auto r = branch_and_bound(n, alpha, beta, cfg);
    LineSearchConfig lc;
    lc.refine = false;
    const auto line = two_level_line_search(ConvexCombo{alpha}, beta, n, lc);
    const double lattice = lattice_error(ConvexCombo{alpha}, beta, line.policy, (1.0 - 1.0 / (n - 1)) / lc.steps);
    const std::string w = "n=" + std::to_string(n) + " alpha=" + std::to_string(alpha) + " beta=" + std::to_string(beta);
    m.require(r.certified, w + " certified");
    m.at_most(r.certified_gap, cfg.epsilon, w + " gap");
    m.at_most(line.value - r.value, cfg.epsilon + lattice, w + " line");
    m.at_most(r.max_depth, std::ceil(r.depth_bound), w + " depth");
  }
}

// ---- structure

// Oracle for S+: try every sign assignment of the zero entries.
int brute_s_plus(const std::vector<double>& v) {
  std::vector<std::size_t> zeros;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] == 0.0) zeros.push_back(i);
  int best = 0;
  for (std::uint32_t mask = 0; mask < (1u << zeros.size()); ++mask) {
    std::vector<double> w = v;
    for (std::size_t z = 0; z < zeros.size(); ++z) w[zeros[z]] = (mask >> z) & 1u ? 1.0 : -1.0;
    int changes = 0;
    for (std::size_t i = 1; i < w.size(); ++i) changes += (w[i] > 0) != (w[i - 1] > 0);
    best = std::max(best, changes);
  }
  return best;
}

void structure_sign_changes(Ctx& c, Margin& m) {
  const auto s = sign_changes({1, 0, 1, -1});
  m.require(s.s_minus == 1 && s.s_plus == 3, "example");
  for (int t = 0; t < c.trials; ++t) {
    std::vector<double> v(uniform_int(c.rng, 1, 12));
    for (double& x : v) x = uniform_int(c.rng, -1, 1) * uniform(c.rng, 0.5, 2.0);
    std::vector<double> neg = v;
    for (double& x : neg) x = -x;
    const auto a = sign_changes(v), b = sign_changes(neg);
    m.require(a.s_minus <= a.s_plus, "S- <= S+");
    m.require(a.s_minus == b.s_minus && a.s_plus == b.s_plus, "sign symmetry");
    m.require(a.s_plus == brute_s_plus(v), "S+ oracle");
  }
}

void structure_gradient(Ctx& c, Margin& m) {
  for (int t = 0; t < c.trials; ++t) {
    const int n = std::array{3, 5, 8}[t % 3];
    const double alpha = uniform(c.rng, 0.0, 1.0), beta = uniform(c.rng, 0.5, 4.0);
    const Policy p = t % 2 ? random_two_level(c.rng, n) : random_policy(c.rng, n);
    const auto d = gradient(ConvexCombo{alpha}, {beta}, p);
    const auto rep = check_gradient_quasiconvexity(d, p);
    m.require(rep.is_quasiconvex, where(p, beta) + " alpha=" + std::to_string(alpha));
    const double lo = *std::min_element(d.begin(), d.end()), hi = *std::max_element(d.begin(), d.end());
    for (int k = 0; k < 50; ++k) {
      const double lambda = lo + (hi - lo) * (k + 0.5) / 50.0;
      std::vector<double> shifted(d.size());
      for (std::size_t i = 0; i < d.size(); ++i) shifted[i] = d[i] - lambda;
      m.at_most(sign_changes(shifted).s_plus, 2, where(p, beta) + " S+");
    }
  }
}

void structure_bnb_trace(Ctx& c, Margin& m) {
  const int runs = std::clamp(c.trials / 25, 1, 8);
  for (int t = 0; t < runs; ++t) {
    const int n = std::array{3, 5, 8}[t % 3];
    const double alpha = uniform(c.rng, 0.05, 1.0), beta = uniform(c.rng, 0.5, 4.0);
    BnbConfig cfg;
    cfg.record_trace = true;
    const auto r = branch_and_bound(n, alpha, beta, cfg);
    for (std::size_t k = 0; k < r.trace.size(); k += std::max<std::size_t>(1, r.trace.size() / 16)) {
      const Policy p = two_level(n, r.trace[k]);
      m.require(check_gradient_quasiconvexity(gradient(ConvexCombo{alpha}, {beta}, p), p).is_quasiconvex,
                where(p, beta));
    }
  }
}

void structure_weights(Ctx& c, Margin& m) {
  for (int t = 0; t < c.trials; ++t) {
    const int n = uniform_int(c.rng, 3, 8);
    const double beta = uniform(c.rng, 0.5, 4.0);
    const Policy p = random_policy(c.rng, n);
    ObjectiveSpec spec;
    switch (t % 4) {
      case 0: spec = ConvexCombo{uniform(c.rng, 0.0, 1.0)}; break;
      case 1: spec = MaxOrderStat{}; break;
      case 2: spec = make_exponential({uniform(c.rng, 0.1, 3.0)}); break;
      default: spec = make_posynomial({{2, 3}, {-3, 2}, {2, 1}}); break;
    }
    if (!structural_condition(spec, beta).covered) continue;
    m.require(check_weight_quasiconvexity(spec, beta, p).is_quasiconvex, objective_name(spec) + " " + where(p, beta));
  }
}

void structure_schur(Ctx& c, Margin& m) {
  const std::pair<double, SchurDirection> cases[] = {{0.3, SchurDirection::concave},
                                                     {0.7, SchurDirection::concave},
                                                     {1.0, SchurDirection::flat},
                                                     {1.5, SchurDirection::convex},
                                                     {3.0, SchurDirection::convex}};
  for (const auto& [r, expected] : cases)
    for (int n : {3, 5, 8}) {
      const auto res = schur_direction(r, n, c.trials, c.rng());
      m.require(res.direction == expected && !res.counterexample,
                "r=" + std::to_string(r) + " n=" + std::to_string(n) + " got " + to_string(res.direction));
    }
}

void structure_minors(Ctx& c, Margin& m) {
  for (int n = 2; n <= 10; ++n)
    for (int k = 1; k <= std::min(4, n - 1); ++k)
      for (int t = 0; t < c.trials; ++t) {
        std::vector<double> x(k);
        for (double& v : x) v = uniform(c.rng, 0.0, 1.0);
        std::sort(x.begin(), x.end());
        if (std::adjacent_find(x.begin(), x.end()) != x.end()) continue;
        if (x.front() <= 0.0) continue;
        std::vector<int> idx(n - 1);
        for (int i = 0; i + 1 < n; ++i) idx[i] = i + 1;
        std::shuffle(idx.begin(), idx.end(), c.rng);
        idx.resize(k);
        std::sort(idx.begin(), idx.end());
        const double det = vandermonde_minor(n, x, idx);
        m.require(det > 0.0, "n=" + std::to_string(n) + " k=" + std::to_string(k));
      }
}

struct Check {
  const char* name;
  CheckFn fn;
};

const Check kChecks[] = {
    {"bernstein.partition_of_unity", bernstein_partition},
    {"bernstein.moments", bernstein_moments},
    {"bernstein.monotone", bernstein_monotone},
    {"bernstein.inverse_round_trip", bernstein_inverse},
    {"bernstein.derivative", bernstein_derivative},
    {"policy.validation", policy_validation},
    {"policy.two_level_classification", policy_two_level},
    {"objective.linearity", objective_linearity},
    {"objective.flatness", objective_flatness},
    {"objective.riemann_refinement", objective_refinement},
    {"objective.hm_closed_form", objective_hm_closed_form},
    {"objective.gradient_fd", objective_gradient_fd},
    {"objective.exp_truncation", objective_exp_truncation},
    {"objective.posynomial_condition", objective_posynomial_condition},
    {"equilibrium.round_trip", equilibrium_round_trip},
    {"equilibrium.indifference", equilibrium_indifference},
    {"equilibrium.simulation", equilibrium_simulation},
    {"optimizer.c_decomposition", optimizer_decomposition},
    {"optimizer.bound_sandwich", optimizer_bound_sandwich},
    {"optimizer.certificate", optimizer_certificate},
    {"structure.sign_changes", structure_sign_changes},
    {"structure.gradient_quasiconvexity", structure_gradient},
    {"structure.bnb_trace", structure_bnb_trace},
    {"structure.weight_quasiconvexity", structure_weights},
    {"structure.schur", structure_schur},
    {"structure.minors", structure_minors},
};

bool selected(const std::string& name, const std::vector<std::string>& only) {
  if (only.empty()) return true;
  const auto dot = name.find('.');
  const std::string group = name.substr(0, dot), leaf = name.substr(dot + 1);
  return std::any_of(only.begin(), only.end(),
                     [&](const std::string& o) { return o == name || o == group || o == leaf; });
}

}  // namespace

std::vector<std::string> verify_check_names() {
  std::vector<std::string> out;
  for (const auto& c : kChecks) out.emplace_back(c.name);
  return out;
}

std::vector<CheckResult> run_verify(const VerifyOptions& opts, const std::function<void(const CheckResult&)>& on_result) {
  std::vector<CheckResult> results;
  std::uint64_t index = 0;
  for (const auto& check : kChecks) {
    ++index;
    if (!selected(check.name, opts.only)) continue;
    // Each check draws from its own stream so --only never changes another check's draws.
    std::seed_seq seq{static_cast<std::uint32_t>(opts.seed), static_cast<std::uint32_t>(opts.seed >> 32),
                      static_cast<std::uint32_t>(index)};
    Ctx ctx{Rng(seq), opts.trials};
    Margin margin;
    CheckResult r;
    r.name = check.name;
    r.seed = opts.seed;
    try {
      check.fn(ctx, margin);
      r.pass = margin.pass();
      r.worst_margin = std::isfinite(margin.worst) ? margin.worst : 0.0;
      r.detail = r.pass ? std::string() : margin.detail;
    } catch (const std::exception& e) {
      r.pass = false;
      r.worst_margin = -1.0;
      r.detail = std::string("exception: ") + e.what();
    }
    if (on_result) on_result(r);
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace contest::cli
