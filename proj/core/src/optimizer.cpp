#include "contest/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <functional>
#include <memory>
#include <queue>

#include "contest/errors.hpp"
#include "contest/parallel.hpp"

namespace contest {

namespace {

double fast_pow(double h, double r) {
  if (h <= 0.0) return 0.0;
  if (r == 1.0) return h;
  if (r == 2.0) return h * h;
  if (r == 0.5) return std::sqrt(h);
  if (r == 0.25) return std::sqrt(std::sqrt(h));
  return std::pow(h, r);
}

void check_args(int n, double alpha, double beta) {
  if (n < 2) throw Error(ErrorKind::domain, "n must be at least 2");
  validate(ObjectiveSpec{ConvexCombo{alpha}});
  validate(CostParams{beta});
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

CDecomposition c_decomposition(int n, double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorKind::domain, "x must lie in [0,1]");
  if (n < 2) throw Error(ErrorKind::domain, "n must be at least 2");
  if (n == 2) return {1.0 - x, 2.0 * x - 1.0, true};
  const double a1 = std::pow(x, n - 1);
  // 1 - a_1 - a_n without cancellation near x = 0.
  const double inner = -std::expm1((n - 1) * std::log1p(-x)) - a1;
  const double c0 = std::max(0.0, inner) / (n - 2);
  return {c0, a1 - c0, false};
}

TwoLevelKernel::TwoLevelKernel(int n, double alpha, double beta, const QuadratureConfig& quad)
    : n_(n), alpha_(alpha), beta_(beta), quad_(quad) {
  check_args(n, alpha, beta);
  if (n < 3) throw Error(ErrorKind::domain, "two-level family needs n >= 3");
  const QuadratureGrid grid = make_grid(quad);
  w_ = grid.weights;
  c0_.resize(grid.nodes.size());
  c1_.resize(grid.nodes.size());
  for (std::size_t j = 0; j < grid.nodes.size(); ++j) {
    const auto c = c_decomposition(n, grid.nodes[j]);
    c0_[j] = c.c0;
    c1_[j] = c.c1;
  }
}

double TwoLevelKernel::integrand(double h) const {
  const double t = fast_pow(h, 1.0 / beta_);
  return alpha_ * n_ * h * t + (1.0 - alpha_) * t;
}

double TwoLevelKernel::value(double p1) const {
  double s = 0.0;
  for (std::size_t j = 0; j < w_.size(); ++j) s += w_[j] * integrand(c0_[j] + c1_[j] * p1);
  return s;
}

double TwoLevelKernel::upper(double lo, double hi) const {
  double s = 0.0;
  for (std::size_t j = 0; j < w_.size(); ++j) s += w_[j] * integrand(c0_[j] + c1_[j] * (c1_[j] >= 0.0 ? hi : lo));
  return s;
}

double TwoLevelKernel::error_bound() const {
  return monotone_error_bound(quad_, 0.0, alpha_ * n_ + (1.0 - alpha_));
}

double TwoLevelKernel::integral_abs_c1(double power) const {
  double s = 0.0;
  for (std::size_t j = 0; j < w_.size(); ++j) s += w_[j] * fast_pow(std::abs(c1_[j]), power);
  return s;
}

BoundPair interval_bounds(int n, double alpha, double beta, double lo, double hi, const QuadratureConfig& quad) {
  const double dlo = 1.0 / (n - 1);
  if (!(lo <= hi) || lo < dlo - kOrderTol || hi > 1.0 + kOrderTol)
    throw Error(ErrorKind::domain, "interval must lie inside [1/(n-1), 1]");
  TwoLevelKernel k(n, alpha, beta, quad);
  return {std::max(k.value(lo), k.value(hi)), k.upper(lo, hi)};
}

GapConstants gap_constants(int n, double alpha, double beta, ConstantsMode mode, const QuadratureConfig& quad) {
  check_args(n, alpha, beta);
  if (n < 3) throw Error(ErrorKind::domain, "gap constants need n >= 3");
  if (mode == ConstantsMode::rough) {
    return {2.0 * alpha * (1.0 + 1.0 / beta),
            (1.0 - alpha) * (beta / (beta + n - 1) + 1.0 / std::pow(n - 2.0, 1.0 / beta))};
  }
  TwoLevelKernel k(n, alpha, beta, quad);
  return {alpha * n * (1.0 + 1.0 / beta) * k.integral_abs_c1(1.0), (1.0 - alpha) * k.integral_abs_c1(1.0 / beta)};
}

double delta_of_epsilon(const GapConstants& c, double beta, double eps) {
  const double a = c.C1 > 0.0 ? eps / c.C1 : INFINITY;
  const double b = c.C2 > 0.0 ? std::pow(eps / c.C2, beta) : INFINITY;
  return std::min(a, b);
}

double depth_bound(const GapConstants& c, int n, double beta, double eps) {
  const double D = 1.0 - 1.0 / (n - 1);
  const double a = c.C1 > 0.0 ? std::log2(c.C1 * D / eps) : -INFINITY;
  const double b = c.C2 > 0.0 ? beta * std::log2(c.C2 * std::pow(D, 1.0 / beta) / eps) : -INFINITY;
  return std::max({a, b, 0.0}) + 1.0;
}

namespace {

struct Node {
  Interval iv;
  double g_lo;
  double g_hi;
};

struct ByUpper {
  bool operator()(const Node& a, const Node& b) const {
    if (a.iv.U != b.iv.U) return a.iv.U < b.iv.U;
    return a.iv.lo > b.iv.lo;  // equal U: leftmost first
  }
};

}  // namespace

OptResult branch_and_bound(int n, double alpha, double beta, const BnbConfig& cfg) {
  check_args(n, alpha, beta);
  if (!(cfg.epsilon > 0.0)) throw Error(ErrorKind::domain, "epsilon must be positive");
  if (n == 2) {
    const auto ev = evaluate_detailed(ConvexCombo{alpha}, {beta}, hm(2), cfg.quad);
    OptResult r{hm(2)};
    r.value = ev.value;
    r.quad_bound = ev.error_bound;
    r.certified_gap = 2.0 * ev.error_bound;
    r.nodes_explored = 1;
    r.method = "bnb";
    r.certified = true;
    r.note = "n = 2: the two-level family is the single point HM";
    return r;
  }
  const TwoLevelKernel kernel(n, alpha, beta, cfg.quad);
  const double qb = kernel.error_bound();
  const double eps_eff = cfg.epsilon - 2.0 * qb;
  if (eps_eff <= 0.0)
    throw Error(ErrorKind::domain, "quadrature too coarse for epsilon: increase m so that 2*bound < epsilon");
  const GapConstants constants = gap_constants(n, alpha, beta, cfg.constants_mode, cfg.quad);

  const double lo0 = 1.0 / (n - 1);
  const double g_lo = kernel.value(lo0);
  const double g_hi = kernel.value(1.0);
  double best = g_lo;
  double best_p1 = lo0;
  if (g_hi > best) {
    best = g_hi;
    best_p1 = 1.0;
  }
  std::priority_queue<Node, std::vector<Node>, ByUpper> active;
  active.push({{lo0, 1.0, std::max(g_lo, g_hi), kernel.upper(lo0, 1.0), 0}, g_lo, g_hi});
  std::vector<double> trace;
  if (cfg.record_trace) trace = {lo0, 1.0};
  std::size_t nodes = 1;
  int max_depth = 0;
  bool certified = false;

  while (!active.empty()) {
    const Node top = active.top();
    if (top.iv.U <= best + eps_eff) {
      certified = true;
      break;
    }
    if (nodes + 2 > cfg.max_nodes) break;
    active.pop();
    const double mid = 0.5 * (top.iv.lo + top.iv.hi);
    const double g_mid = kernel.value(mid);
    if (cfg.record_trace) trace.push_back(mid);
    const int depth = top.iv.depth + 1;
    Node left{{top.iv.lo, mid, std::max(top.g_lo, g_mid), kernel.upper(top.iv.lo, mid), depth}, top.g_lo, g_mid};
    Node right{{mid, top.iv.hi, std::max(g_mid, top.g_hi), kernel.upper(mid, top.iv.hi), depth}, g_mid, top.g_hi};
    nodes += 2;
    max_depth = std::max(max_depth, depth);
    if (g_mid > best) {
      best = g_mid;
      best_p1 = mid;
    }
    active.push(left);
    active.push(right);
  }
  if (active.empty()) certified = true;

  OptResult r{two_level(n, best_p1)};
  r.value = best;
  r.nodes_explored = nodes;
  r.method = "bnb";
  r.certified = certified;
  r.max_depth = max_depth;
  r.epsilon_effective = eps_eff;
  r.quad_bound = qb;
  r.depth_bound = depth_bound(constants, n, beta, eps_eff);
  const double open_gap = active.empty() ? 0.0 : std::max(0.0, active.top().iv.U - best);
  r.certified_gap = open_gap + 2.0 * qb;
  if (!certified) r.note = "node budget exhausted before the certificate closed";
  r.trace = std::move(trace);
  return r;
}

OptResult two_level_line_search(const ObjectiveSpec& spec, double beta, int n, const LineSearchConfig& cfg) {
  validate(spec);
  validate(CostParams{beta});
  if (n < 2) throw Error(ErrorKind::domain, "n must be at least 2");
  if (cfg.steps < 2) throw Error(ErrorKind::domain, "line search needs at least 2 steps");
  const auto cover = structural_condition(spec, beta);
  if (!cover.covered) throw Error(ErrorKind::structural_condition, cover.reason);
  const auto* convex = std::get_if<ConvexCombo>(&spec);

  if (n == 2) {
    OptResult r{hm(2)};
    r.value = evaluate(spec, {beta}, hm(2), cfg.quad);
    r.method = "line";
    r.nodes_explored = 1;
    r.certified_gap = kNaN;
    r.note = "n = 2: the two-level family is the single point HM";
    return r;
  }

  const PolicyEvaluator general(spec, beta, n, cfg.quad);
  std::unique_ptr<TwoLevelKernel> kernel;
  if (convex) kernel = std::make_unique<TwoLevelKernel>(n, convex->alpha, beta, cfg.quad);
  auto G = [&](double p1) {
    if (kernel) return kernel->value(p1);
    return general(two_level(n, p1).shares());
  };

  const double lo = 1.0 / (n - 1);
  std::vector<double> xs(cfg.steps), vs(cfg.steps);
  int best = 0;
  for (int k = 0; k < cfg.steps; ++k) {
    xs[k] = k == cfg.steps - 1 ? 1.0 : lo + (1.0 - lo) * k / (cfg.steps - 1);
    vs[k] = G(xs[k]);
    if (vs[k] > vs[best]) best = k;
  }
  double best_p1 = xs[best];
  double best_value = vs[best];
  std::size_t evals = cfg.steps;
  if (cfg.refine) {
    double a = xs[std::max(0, best - 1)];
    double b = xs[std::min(cfg.steps - 1, best + 1)];
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a), d = a + invphi * (b - a);
    double fc = G(c), fd = G(d);
    evals += 2;
    for (int it = 0; it < 80 && b - a > 1e-13; ++it) {
      if (fc >= fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - invphi * (b - a);
        fc = G(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + invphi * (b - a);
        fd = G(d);
      }
      ++evals;
    }
    const double cand = fc >= fd ? c : d;
    const double fcand = std::max(fc, fd);
    if (fcand > best_value) {
      best_value = fcand;
      best_p1 = cand;
    }
  }

  OptResult r{two_level(n, best_p1)};
  r.value = best_value;
  r.method = "line";
  r.nodes_explored = evals;
  r.certified_gap = kNaN;
  r.quad_bound = kernel ? kernel->error_bound() : general.error_bound(best_p1);
  if (kernel && cfg.certify) {
    double top = best_value;
    for (int k = 0; k + 1 < cfg.steps; ++k) top = std::max(top, kernel->upper(xs[k], xs[k + 1]));
    r.certified_gap = top - best_value + 2.0 * r.quad_bound;
    r.certified = true;
  }
  if (!kernel) r.note = "uncertified: no interval bounds for this objective";
  return r;
}

double count_lattice_policies(int n, int units) {
  // Partitions of units into at most n parts.
  std::vector<double> ways(units + 1, 0.0);
  ways[0] = 1.0;
  for (int part = 1; part <= n; ++part)
    for (int s = part; s <= units; ++s) ways[s] += ways[s - part];
  return ways[units];
}

namespace {

class LatticeWalker {
 public:
  LatticeWalker(int n, int units, std::function<void(const std::vector<int>&)> emit)
      : n_(n), units_(units), cur_(n), emit_(std::move(emit)) {}
  void run() { rec(0, units_, units_); }

 private:
  void rec(int pos, int remaining, int cap) {
    if (pos == n_ - 1) {
      if (remaining <= cap) {
        cur_[pos] = remaining;
        emit_(cur_);
      }
      return;
    }
    const int slots = n_ - pos;
    const int floor_v = (remaining + slots - 1) / slots;
    for (int v = std::min(cap, remaining); v >= floor_v; --v) {
      cur_[pos] = v;
      rec(pos + 1, remaining - v, v);
    }
  }
  int n_, units_;
  std::vector<int> cur_;
  std::function<void(const std::vector<int>&)> emit_;
};

}  // namespace

OptResult grid_search(const ObjectiveSpec& spec, double beta, int n, double granularity,
                      const QuadratureConfig& quad, std::size_t threads) {
  validate(spec);
  validate(CostParams{beta});
  if (n < 2) throw Error(ErrorKind::domain, "n must be at least 2");
  if (!(granularity > 0.0 && granularity <= 1.0)) throw Error(ErrorKind::domain, "granularity must lie in (0,1]");
  const int units = static_cast<int>(std::lround(1.0 / granularity));
  if (std::abs(units * granularity - 1.0) > 1e-9)
    throw Error(ErrorKind::domain, "1/granularity must be an integer");
  const double count = count_lattice_policies(n, units);
  if (count > kGridCandidateLimit)
    throw Error(ErrorKind::budget, "lattice has more than 1e8 policies; use two_level_line_search instead");

  if (threads == 0) threads = configured_threads();
  const PolicyEvaluator eval(spec, beta, n, quad);
  constexpr std::size_t kChunk = 1 << 16;
  std::vector<int> chunk;
  chunk.reserve(kChunk * n);
  std::vector<double> values;
  double best_value = -INFINITY;
  std::vector<int> best_point;
  std::size_t seen = 0;

  auto flush = [&] {
    const std::size_t m = chunk.size() / n;
    values.assign(m, 0.0);
    parallel_blocks(m, threads, [&](std::size_t b, std::size_t e, std::size_t) {
      std::vector<double> p(n);
      for (std::size_t c = b; c < e; ++c) {
        for (int i = 0; i < n; ++i) p[i] = chunk[c * n + i] / static_cast<double>(units);
        values[c] = eval(p);
      }
    });
    for (std::size_t c = 0; c < m; ++c) {
      if (values[c] > best_value) {
        best_value = values[c];
        best_point.assign(chunk.begin() + c * n, chunk.begin() + (c + 1) * n);
      }
    }
    seen += m;
    chunk.clear();
  };
  LatticeWalker walker(n, units, [&](const std::vector<int>& v) {
    chunk.insert(chunk.end(), v.begin(), v.end());
    if (chunk.size() >= kChunk * n) flush();
  });
  walker.run();
  if (!chunk.empty()) flush();

  std::vector<double> shares(n);
  for (int i = 0; i < n; ++i) shares[i] = best_point[i] / static_cast<double>(units);
  OptResult r{make_policy(shares)};
  r.value = best_value;
  r.method = "grid";
  r.nodes_explored = seen;
  r.certified_gap = kNaN;
  r.quad_bound = eval.error_bound(r.policy.top());
  return r;
}

double lattice_error(const ObjectiveSpec& spec, double beta, const Policy& p, double granularity) {
  const int n = p.n();
  if (const auto* c = std::get_if<ConvexCombo>(&spec); c && n >= 3) {
    const auto k = gap_constants(n, c->alpha, beta, ConstantsMode::exact);
    return k.C1 * granularity + k.C2 * std::pow(granularity, 1.0 / beta);
  }
  const auto d = gradient(spec, {beta}, p);
  const auto [lo, hi] = std::minmax_element(d.begin(), d.end());
  return (*hi - *lo) * (n - 1) * granularity / 2.0;
}

}  // namespace contest
