#include "contest/objective.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "contest/errors.hpp"

namespace contest {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double pos_pow(double g, double r) {
  if (g <= 0.0) return r == 0.0 ? 1.0 : 0.0;
  return std::pow(g, r);
}

double fast_pow(double g, double r) {
  if (g <= 0.0) return 0.0;
  if (r == 1.0) return g;
  if (r == 2.0) return g * g;
  if (r == 0.5) return std::sqrt(g);
  if (r == 0.25) return std::sqrt(std::sqrt(g));
  if (r == 1.5) return g * std::sqrt(g);
  if (r == 3.0) return g * g * g;
  return std::pow(g, r);
}

std::string fmt9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void check_terms(const std::vector<PowerTerm>& terms, bool nonnegative) {
  if (terms.empty()) throw Error(ErrorKind::domain, "term list is empty");
  for (std::size_t j = 0; j < terms.size(); ++j) {
    if (!(terms[j].k > 0.0) || !std::isfinite(terms[j].k) || !std::isfinite(terms[j].e))
      throw Error(ErrorKind::domain, "exponents must be positive and finite");
    if (nonnegative && terms[j].e < 0.0) throw Error(ErrorKind::domain, "platform coefficients must be nonnegative");
    if (j > 0 && !(terms[j].k > terms[j - 1].k))
      throw Error(ErrorKind::domain, "exponents must be strictly increasing");
  }
}

void require_reducible(const Policy& p) {
  if (p.last() > kOrderTol) throw Error(ErrorKind::reduction_precondition, "p_n must be 0");
  if (!is_nontrivial(p)) throw Error(ErrorKind::trivial_policy, "policy is trivial");
}

std::vector<PowerTerm> sorted_terms(std::vector<PowerTerm> terms) {
  std::sort(terms.begin(), terms.end(), [](const PowerTerm& a, const PowerTerm& b) { return a.k < b.k; });
  return terms;
}

double taylor_coef(double lambda, int j) { return std::exp(j * std::log(lambda) - std::lgamma(j + 1.0)); }

}  // namespace

Posynomial make_posynomial(std::vector<PowerTerm> terms) {
  Posynomial out{sorted_terms(std::move(terms))};
  check_terms(out.terms, false);
  return out;
}

int default_truncation(const std::vector<double>& lambdas) {
  double top = 0.0;
  for (double l : lambdas) top = std::max(top, l);
  return static_cast<int>(std::ceil(3.0 * top)) + 20;
}

Exponential make_exponential(std::vector<double> lambdas, int truncation_M) {
  Exponential out{std::move(lambdas), truncation_M};
  if (out.truncation_M <= 0) out.truncation_M = default_truncation(out.lambdas);
  validate(ObjectiveSpec{out});
  return out;
}

SocialWelfare make_social_welfare(std::vector<PowerTerm> platform_terms) {
  SocialWelfare out{sorted_terms(std::move(platform_terms))};
  check_terms(out.platform_terms, true);
  return out;
}

void validate(const ObjectiveSpec& spec) {
  std::visit(overloaded{
                 [](const ConvexCombo& c) {
                   if (!(c.alpha >= 0.0 && c.alpha <= 1.0)) throw Error(ErrorKind::domain, "alpha must lie in [0,1]");
                 },
                 [](const Posynomial& s) { check_terms(s.terms, false); },
                 [](const MaxOrderStat&) {},
                 [](const Exponential& s) {
                   if (s.lambdas.empty()) throw Error(ErrorKind::domain, "no lambdas");
                   for (double l : s.lambdas)
                     if (!(l > 0.0) || !std::isfinite(l)) throw Error(ErrorKind::domain, "lambdas must be positive");
                   if (s.truncation_M < 1) throw Error(ErrorKind::domain, "truncation_M must be at least 1");
                 },
                 [](const SocialWelfare& s) { check_terms(s.platform_terms, true); },
             },
             spec);
}

void validate(const CostParams& cost) {
  if (!(cost.beta > 0.0) || !std::isfinite(cost.beta)) throw Error(ErrorKind::domain, "beta must be positive");
}

std::string objective_name(const ObjectiveSpec& spec) {
  return std::visit(overloaded{
                        [](const ConvexCombo&) { return std::string("convex"); },
                        [](const Posynomial&) { return std::string("posynomial"); },
                        [](const MaxOrderStat&) { return std::string("orderstat"); },
                        [](const Exponential&) { return std::string("exp"); },
                        [](const SocialWelfare&) { return std::string("social"); },
                    },
                    spec);
}

namespace {

std::vector<PowerTerm> parse_terms(const std::string& text) {
  std::vector<PowerTerm> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw Error(ErrorKind::parse, "term '" + item + "' is not e:k");
    try {
      std::size_t u1 = 0, u2 = 0;
      const std::string es = item.substr(0, colon), ks = item.substr(colon + 1);
      PowerTerm t{std::stod(es, &u1), std::stod(ks, &u2)};
      if (u1 != es.size() || u2 != ks.size()) throw std::invalid_argument("trailing");
      out.push_back(t);
    } catch (const std::exception&) {
      throw Error(ErrorKind::parse, "term '" + item + "' is not e:k");
    }
  }
  return out;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Error(ErrorKind::parse, "bad number '" + item + "'");
    }
  }
  return out;
}

std::string format_terms(const std::vector<PowerTerm>& terms) {
  std::string out;
  for (std::size_t j = 0; j < terms.size(); ++j) {
    if (j) out += ',';
    out += fmt9(terms[j].e) + ":" + fmt9(terms[j].k);
  }
  return out;
}

}  // namespace

ObjectiveSpec parse_objective(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(text);
  std::string token;
  while (ss >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos || eq == 0) throw Error(ErrorKind::parse, "expected key=value, got '" + token + "'");
    kv[token.substr(0, eq)] = token.substr(eq + 1);
  }
  auto take = [&](const std::string& key) -> std::string {
    auto it = kv.find(key);
    if (it == kv.end()) throw Error(ErrorKind::parse, "missing '" + key + "'");
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  const std::string kind = kv.count("objective") ? take("objective") : std::string("convex");
  ObjectiveSpec spec;
  if (kind == "convex") {
    const auto a = kv.count("alpha") ? parse_list(take("alpha")) : std::vector<double>{0.0};
    if (a.size() != 1) throw Error(ErrorKind::parse, "alpha takes one value");
    spec = ConvexCombo{a[0]};
  } else if (kind == "posynomial") {
    spec = make_posynomial(parse_terms(take("terms")));
  } else if (kind == "orderstat") {
    spec = MaxOrderStat{};
  } else if (kind == "exp") {
    auto lambdas = parse_list(take("lambdas"));
    int M = 0;
    if (kv.count("M")) {
      const auto m = parse_list(take("M"));
      if (m.size() != 1 || m[0] != std::floor(m[0])) throw Error(ErrorKind::parse, "M must be an integer");
      M = static_cast<int>(m[0]);
      if (M < 1) throw Error(ErrorKind::domain, "truncation_M must be at least 1");
    }
    spec = make_exponential(std::move(lambdas), M);
  } else if (kind == "social") {
    spec = make_social_welfare(parse_terms(take("terms")));
  } else {
    throw Error(ErrorKind::parse, "unknown objective '" + kind + "'");
  }
  if (!kv.empty()) throw Error(ErrorKind::parse, "unexpected key '" + kv.begin()->first + "'");
  validate(spec);
  return spec;
}

std::string format_objective(const ObjectiveSpec& spec) {
  return std::visit(
      overloaded{
          [](const ConvexCombo& c) { return "objective=convex alpha=" + fmt9(c.alpha); },
          [](const Posynomial& s) { return "objective=posynomial terms=" + format_terms(s.terms); },
          [](const MaxOrderStat&) { return std::string("objective=orderstat"); },
          [](const Exponential& s) {
            std::string l;
            for (std::size_t j = 0; j < s.lambdas.size(); ++j) l += (j ? "," : "") + fmt9(s.lambdas[j]);
            return "objective=exp lambdas=" + l + " M=" + std::to_string(s.truncation_M);
          },
          [](const SocialWelfare& s) { return "objective=social terms=" + format_terms(s.platform_terms); },
      },
      spec);
}

double integrand_value(const ObjectiveSpec& spec, double beta, int n, double x, double h, double g) {
  const double t = pos_pow(g, 1.0 / beta);
  return std::visit(overloaded{
                        [&](const ConvexCombo& c) { return c.alpha * n * h * t + (1.0 - c.alpha) * t; },
                        [&](const Posynomial& s) {
                          double v = 0.0;
                          for (const auto& term : s.terms) v += term.e * pos_pow(g, term.k / beta);
                          return v;
                        },
                        [&](const MaxOrderStat&) { return n * std::pow(x, n - 1) * t; },
                        [&](const Exponential& s) {
                          double v = 0.0;
                          for (double l : s.lambdas)
                            for (int j = 0; j <= s.truncation_M; ++j) v += taylor_coef(l, j) * pos_pow(g, j / beta);
                          return v;
                        },
                        [&](const SocialWelfare& s) {
                          double v = n * h * t + n * (h - g);
                          for (const auto& term : s.platform_terms) v += term.e * pos_pow(g, term.k / beta);
                          return v;
                        },
                    },
                    spec);
}

double gradient_weight(const ObjectiveSpec& spec, double beta, int n, double x, double h) {
  h = std::max(h, DBL_MIN);
  const double r = 1.0 / beta;
  return std::visit(overloaded{
                        [&](const ConvexCombo& c) {
                          return n * c.alpha * (1.0 + r) * std::pow(h, r) + (1.0 - c.alpha) * r * std::pow(h, r - 1.0);
                        },
                        [&](const Posynomial& s) {
                          double v = 0.0;
                          for (const auto& term : s.terms) v += term.e * (term.k * r) * std::pow(h, term.k * r - 1.0);
                          return v;
                        },
                        [&](const MaxOrderStat&) { return n * std::pow(x, n - 1) * r * std::pow(h, r - 1.0); },
                        [&](const Exponential& s) {
                          double v = 0.0;
                          for (double l : s.lambdas)
                            for (int j = 1; j <= s.truncation_M; ++j)
                              v += taylor_coef(l, j) * (j * r) * std::pow(h, j * r - 1.0);
                          return v;
                        },
                        [&](const SocialWelfare& s) {
                          double v = n * (1.0 + r) * std::pow(h, r);
                          for (const auto& term : s.platform_terms)
                            v += term.e * (term.k * r) * std::pow(h, term.k * r - 1.0);
                          return v;
                        },
                    },
                    spec);
}

double reduced_integrand(const ObjectiveSpec& spec, CostParams cost, const Policy& p, double x) {
  validate(cost);
  require_reducible(p);
  const double h = h_eval(p, x);
  return integrand_value(spec, cost.beta, p.n(), x, h, h);
}

Evaluation evaluate_detailed(const ObjectiveSpec& spec, CostParams cost, const Policy& p,
                             const QuadratureConfig& quad) {
  validate(spec);
  validate(cost);
  require_reducible(p);
  PolicyEvaluator eval(spec, cost.beta, p.n(), quad);
  return {eval(p.shares()), eval.error_bound(p.top())};
}

double evaluate(const ObjectiveSpec& spec, CostParams cost, const Policy& p, const QuadratureConfig& quad) {
  return evaluate_detailed(spec, cost, p, quad).value;
}

double evaluate_general(const ObjectiveSpec& spec, CostParams cost, const Policy& p, const QuadratureConfig& quad) {
  validate(spec);
  validate(cost);
  PolicyEvaluator eval(spec, cost.beta, p.n(), quad);
  return eval(p.shares());
}

double power_integral(const Policy& p, double r, const QuadratureConfig& quad) {
  const QuadratureGrid grid = make_grid(quad);
  BasisTable table(p.n(), grid.nodes);
  double s = 0.0;
  for (std::size_t j = 0; j < grid.nodes.size(); ++j) s += grid.weights[j] * pos_pow(table.h(j, p.shares()), r);
  return s;
}

double evaluate_hm_closed_form(double alpha, double beta, int n) {
  if (n < 2) throw Error(ErrorKind::domain, "n must be at least 2");
  validate(CostParams{beta});
  return alpha * beta * n / (beta * n + n - 1) + (1.0 - alpha) * beta / (beta + n - 1);
}

std::vector<double> gradient(const ObjectiveSpec& spec, CostParams cost, const Policy& p,
                             const QuadratureConfig& quad) {
  validate(spec);
  validate(cost);
  require_reducible(p);
  const int n = p.n();
  const QuadratureGrid grid = make_grid(quad);
  const double x_min = 1.0 / quad.m;
  std::vector<double> d(n - 1, 0.0);
  std::vector<double> a(n);
  for (std::size_t j = 0; j < grid.nodes.size(); ++j) {
    const double x = std::max(grid.nodes[j], x_min);
    basis_all(n, x, a);
    double h = 0.0;
    for (int i = 0; i < n; ++i) h += a[i] * p[i];
    const double q = grid.weights[j] * gradient_weight(spec, cost.beta, n, x, h);
    for (int i = 0; i < n - 1; ++i) d[i] += q * a[i];
  }
  return d;
}

PosynomialCheck check_posynomial_condition(std::vector<PowerTerm> terms, double beta) {
  terms = sorted_terms(std::move(terms));
  PosynomialCheck out;
  const int m = static_cast<int>(terms.size());
  int first_positive = -1;
  for (int j = 0; j < m; ++j) {
    const double s = terms[j].e * (terms[j].k - beta);
    if (s > 0.0 && first_positive < 0) first_positive = j;
    if (s < 0.0 && first_positive >= 0) return out;
  }
  out.holds = true;
  out.transition = first_positive < 0 ? m : first_positive;
  return out;
}

StructuralCheck structural_condition(const ObjectiveSpec& spec, double beta) {
  return std::visit(overloaded{
                        [](const ConvexCombo&) { return StructuralCheck{true, "convex combination"}; },
                        [](const MaxOrderStat&) { return StructuralCheck{true, "max order statistic"}; },
                        [](const Exponential&) { return StructuralCheck{true, "exponential utility"}; },
                        [&](const Posynomial& s) {
                          const auto c = check_posynomial_condition(s.terms, beta);
                          if (c.holds) return StructuralCheck{true, "sign sequence e_j(k_j - beta) changes sign at most once"};
                          return StructuralCheck{false,
                                                 "e_j(k_j - beta) is not nonpositive-then-nonnegative; "
                                                 "two-level structure is not guaranteed"};
                        },
                        [&](const SocialWelfare& s) {
                          auto terms = s.platform_terms;
                          terms.push_back({1.0, beta + 1.0});
                          const auto c = check_posynomial_condition(terms, beta);
                          return StructuralCheck{c.holds, c.holds ? "nonnegative platform terms"
                                                                  : "platform terms break the sign condition"};
                        },
                    },
                    spec);
}

double exponential_remainder_bound(const Exponential& spec) {
  double s = 0.0;
  const int k = spec.truncation_M + 1;
  for (double l : spec.lambdas) s += std::exp(l + k * std::log(l) - std::lgamma(k + 1.0));
  return s;
}

PolicyEvaluator::PolicyEvaluator(ObjectiveSpec spec, double beta, int n, const QuadratureConfig& quad)
    : spec_(std::move(spec)), beta_(beta), quad_(quad), table_(n, make_grid(quad).nodes) {
  validate(spec_);
  validate(CostParams{beta});
  weights_ = make_grid(quad).weights;
  xfactor_.resize(table_.size());
  for (std::size_t j = 0; j < table_.size(); ++j) xfactor_[j] = n * std::pow(table_.node(j), n - 1);

  auto add_term = [&](double coef, double k) {
    const double kr = std::round(k);
    if (std::abs(k - kr) < 1e-12 && kr >= 1 && kr <= 64)
      pieces_.push_back({coef, static_cast<int>(kr), 0.0, false, false});
    else
      pieces_.push_back({coef, -1, k / beta, false, false});
  };
  std::visit(overloaded{
                 [&](const ConvexCombo& c) {
                   pieces_.push_back({c.alpha, 1, 0.0, true, false});
                   pieces_.push_back({1.0 - c.alpha, 1, 0.0, false, false});
                 },
                 [&](const Posynomial& s) {
                   for (const auto& t : s.terms) add_term(t.e, t.k);
                 },
                 [&](const MaxOrderStat&) { pieces_.push_back({1.0, 1, 0.0, false, true}); },
                 [&](const Exponential& s) {
                   for (int j = 1; j <= s.truncation_M; ++j) {
                     double c = 0.0;
                     for (double l : s.lambdas) c += taylor_coef(l, j);
                     pieces_.push_back({c, j, 0.0, false, false});
                   }
                   constant_ = static_cast<double>(s.lambdas.size());
                 },
                 [&](const SocialWelfare& s) {
                   pieces_.push_back({1.0, 1, 0.0, true, false});
                   for (const auto& t : s.platform_terms) add_term(t.e, t.k);
                   pn_payoff_ = true;
                 },
             },
             spec_);
  std::stable_sort(pieces_.begin(), pieces_.end(), [](const Piece& a, const Piece& b) { return a.tpow < b.tpow; });
  for (const auto& pc : pieces_) max_tpow_ = std::max(max_tpow_, pc.tpow);
}

double PolicyEvaluator::pointwise(std::size_t j, double h, double g) const {
  const int n = table_.n();
  double v = constant_;
  if (g <= 0.0) return v;
  const double t = fast_pow(g, 1.0 / beta_);
  double tp = 1.0;
  int have = 0;
  for (const auto& pc : pieces_) {
    double base;
    if (pc.tpow < 0) {
      base = std::pow(g, pc.gexp);
    } else {
      while (have < pc.tpow) {
        tp *= t;
        ++have;
      }
      base = tp;
    }
    if (pc.h_factor) base *= n * h;
    if (pc.x_factor) base *= xfactor_[j];
    v += pc.coef * base;
  }
  return v;
}

double PolicyEvaluator::operator()(std::span<const double> p) const {
  if (static_cast<int>(p.size()) != table_.n()) throw Error(ErrorKind::domain, "policy size does not match n");
  const double pn = p.back();
  double s = 0.0;
  for (std::size_t j = 0; j < table_.size(); ++j) {
    const double h = table_.h(j, p);
    s += weights_[j] * pointwise(j, h, h - pn);
  }
  if (pn_payoff_) s += table_.n() * pn;
  return s;
}

double PolicyEvaluator::error_bound(double p1) const {
  const int n = table_.n();
  const double f0 = integrand_value(spec_, beta_, n, 0.0, 0.0, 0.0);
  const double f1 = integrand_value(spec_, beta_, n, 1.0, p1, p1);
  return monotone_error_bound(quad_, f0, f1);
}

}  // namespace contest
