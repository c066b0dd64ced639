#include "contest/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "contest/bernstein.hpp"
#include "contest/errors.hpp"
#include "contest/parallel.hpp"

namespace contest {

EquilibriumModel::EquilibriumModel(Policy policy, CostParams cost)
    : policy_(std::move(policy)), beta_(cost.beta), q_max_(0.0) {
  validate(cost);
  if (!is_nontrivial(policy_)) throw Error(ErrorKind::trivial_policy, "equilibrium needs a nontrivial policy");
  q_max_ = std::pow(policy_.top() - policy_.last(), 1.0 / beta_);
}

double cdf(const EquilibriumModel& model, double q) {
  if (!(q >= 0.0 && q <= model.q_max() * (1.0 + 1e-15)))
    throw Error(ErrorKind::range, "q outside the support [0, q_max]");
  const Policy& p = model.policy();
  const double y = std::min(p.last() + std::pow(q, model.beta()), p.top());
  return h_inverse(p, y);
}

double quantile(const EquilibriumModel& model, double u) {
  if (!(u >= 0.0 && u <= 1.0)) throw Error(ErrorKind::domain, "u must lie in [0,1]");
  const Policy& p = model.policy();
  const double g = h_eval(p, u) - p.last();
  return g <= 0.0 ? 0.0 : std::pow(g, 1.0 / model.beta());
}

double expected_revenue(const Policy& p, double F_of_q) {
  if (!(F_of_q >= 0.0 && F_of_q <= 1.0)) throw Error(ErrorKind::domain, "F must lie in [0,1]");
  return h_eval(p, F_of_q);
}

double utility(const EquilibriumModel& model, double q) {
  if (!(q >= 0.0)) throw Error(ErrorKind::domain, "q must be nonnegative");
  const double cost = std::pow(q, model.beta());
  if (q >= model.q_max()) return model.policy().top() - cost;
  return expected_revenue(model.policy(), cdf(model, q)) - cost;
}

std::vector<std::pair<double, double>> cdf_table(const EquilibriumModel& model, int points) {
  if (points < 2) throw Error(ErrorKind::domain, "need at least two points");
  std::vector<std::pair<double, double>> out;
  out.reserve(points);
  for (int k = 0; k < points; ++k) {
    const double q = k == points - 1 ? model.q_max() : model.q_max() * k / (points - 1);
    out.emplace_back(q, cdf(model, q));
  }
  return out;
}

WelfareQuality welfare_quality_analytic(const Policy& p, CostParams cost, const QuadratureConfig& quad) {
  validate(cost);
  if (p.last() > kOrderTol) throw Error(ErrorKind::reduction_precondition, "p_n must be 0");
  if (!is_nontrivial(p)) throw Error(ErrorKind::trivial_policy, "policy is trivial");
  const double r = 1.0 / cost.beta;
  const QuadratureGrid grid = make_grid(quad);
  BasisTable table(p.n(), grid.nodes);
  double w = 0.0, q = 0.0;
  for (std::size_t j = 0; j < grid.nodes.size(); ++j) {
    const double h = table.h(j, p.shares());
    const double t = h > 0.0 ? std::pow(h, r) : 0.0;
    w += grid.weights[j] * h * t;
    q += grid.weights[j] * t;
  }
  WelfareQuality out;
  out.W = p.n() * w;
  out.Q = q;
  out.W_error = monotone_error_bound(quad, 0.0, p.n() * std::pow(p.top(), 1.0 + r));
  out.Q_error = monotone_error_bound(quad, 0.0, std::pow(p.top(), r));
  return out;
}

namespace {

struct StreamSums {
  double w = 0.0, w2 = 0.0, q = 0.0, q2 = 0.0;
  std::vector<double> rev, rev2;
};

}  // namespace

SimReport simulate(const EquilibriumModel& model, std::uint64_t samples, std::uint64_t seed,
                   const SimOptions& opts) {
  if (samples < 1000) throw Error(ErrorKind::domain, "simulation needs at least 1000 samples");
  if (opts.deviation_grid < 1 || opts.streams < 1) throw Error(ErrorKind::domain, "bad simulation options");
  const Policy& p = model.policy();
  const int n = p.n();
  const int G = opts.deviation_grid;
  std::vector<double> grid(G);
  for (int k = 0; k < G; ++k) grid[k] = opts.overshoot * model.q_max() * (k + 1) / G;

  std::vector<double> cumulative(n);
  double acc = 0.0;
  for (int i = 0; i < n; ++i) cumulative[i] = (acc += p[i]);

  const int S = opts.streams;
  std::vector<StreamSums> sums(S);
  const std::size_t threads = opts.threads ? opts.threads : configured_threads();
  parallel_blocks(static_cast<std::size_t>(S), threads, [&](std::size_t b, std::size_t e, std::size_t) {
    std::vector<double> draws(n), opp(n - 1);
    for (std::size_t s = b; s < e; ++s) {
      StreamSums& out = sums[s];
      out.rev.assign(G, 0.0);
      out.rev2.assign(G, 0.0);
      std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                        static_cast<std::uint32_t>(s)};
      std::mt19937_64 rng(seq);
      std::uniform_real_distribution<double> unif(0.0, 1.0);
      const std::uint64_t count = samples / S + (s < samples % S ? 1 : 0);
      for (std::uint64_t r = 0; r < count; ++r) {
        double mean = 0.0;
        for (int k = 0; k < n; ++k) {
          draws[k] = quantile(model, unif(rng));
          mean += draws[k];
        }
        mean /= n;
        out.q += mean;
        out.q2 += mean * mean;

        std::copy(draws.begin(), draws.end() - 1, opp.begin());
        std::sort(draws.begin(), draws.end(), std::greater<>());
        const double v = unif(rng);
        int rank = static_cast<int>(std::lower_bound(cumulative.begin(), cumulative.end(), v) - cumulative.begin());
        rank = std::min(rank, n - 1);
        const double chosen = draws[rank];
        out.w += chosen;
        out.w2 += chosen * chosen;

        std::sort(opp.begin(), opp.end(), std::greater<>());
        for (int k = 0; k < G; ++k) {
          const double qd = grid[k];
          // Opponents sorted descending: `better` beat qd outright, `tied` match it exactly.
          const int better = static_cast<int>(std::lower_bound(opp.begin(), opp.end(), qd, std::greater<>()) - opp.begin());
          const int at_least = static_cast<int>(std::upper_bound(opp.begin(), opp.end(), qd, std::greater<>()) - opp.begin());
          int position = better;
          if (at_least > better) {
            std::uniform_int_distribution<int> pick(better, at_least);
            position = pick(rng);
          }
          const double prize = p[position];
          out.rev[k] += prize;
          out.rev2[k] += prize * prize;
        }
      }
    }
  });

  StreamSums total;
  total.rev.assign(G, 0.0);
  total.rev2.assign(G, 0.0);
  for (const auto& s : sums) {
    total.w += s.w;
    total.w2 += s.w2;
    total.q += s.q;
    total.q2 += s.q2;
    for (int k = 0; k < G; ++k) {
      total.rev[k] += s.rev[k];
      total.rev2[k] += s.rev2[k];
    }
  }
  const double N = static_cast<double>(samples);
  auto se = [N](double sum, double sum2) {
    const double mean = sum / N;
    const double var = std::max(0.0, sum2 / N - mean * mean) * N / (N - 1.0);
    return std::sqrt(var / N);
  };
  SimReport rep;
  rep.samples = samples;
  rep.seed = seed;
  rep.streams = S;
  rep.empirical_welfare = total.w / N;
  rep.welfare_se = se(total.w, total.w2);
  rep.empirical_quality = total.q / N;
  rep.quality_se = se(total.q, total.q2);
  rep.max_deviation_gain = -INFINITY;
  for (int k = 0; k < G; ++k) {
    const double gain = total.rev[k] / N - std::pow(grid[k], model.beta()) - p.last();
    if (gain > rep.max_deviation_gain) {
      rep.max_deviation_gain = gain;
      rep.deviation_se = se(total.rev[k], total.rev2[k]);
      rep.deviation_q = grid[k];
    }
  }
  return rep;
}

}  // namespace contest
