#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "contest/contest.hpp"
#include "io.hpp"
#include "verify.hpp"

namespace contest::cli {

namespace {

using nlohmann::json;

struct Common {
  std::optional<int> n;
  double alpha = 0.0;
  double beta = 1.0;
  std::string objective;
  std::optional<int> quad_m;
  std::string quad_rule;
  std::string output;
  std::string format;
};

void add_common(CLI::App* sub, Common& c, bool with_objective) {
  sub->add_option("--n", c.n, "Number of contestants (n >= 2)");
  sub->add_option("--alpha", c.alpha, "Weight on welfare in G = alpha W + (1 - alpha) Q, in [0, 1]");
  sub->add_option("--beta", c.beta, "Cost exponent, c(q) = q^beta, beta > 0");
  if (with_objective)
    sub->add_option("--objective", c.objective,
                    "Objective as key=value tokens, e.g. \"objective=posynomial terms=2:3,-3:2,2:1\", "
                    "\"objective=orderstat\", \"objective=exp lambdas=1.5\"; default is the convex "
                    "combination with --alpha");
  sub->add_option("--quad-m", c.quad_m, "Quadrature points");
  sub->add_option("--quad-rule", c.quad_rule, "Quadrature rule: trapezoid or right_riemann");
  sub->add_option("--output,-o", c.output, "Write data to this file instead of stdout");
}

void validate_common(const Common& c) {
  if (c.n && *c.n < 2) throw Error(ErrorKind::domain, "--n must be at least 2");
  if (!(c.beta > 0.0) || !std::isfinite(c.beta)) throw Error(ErrorKind::domain, "--beta must be positive");
  if (!(c.alpha >= 0.0 && c.alpha <= 1.0)) throw Error(ErrorKind::domain, "--alpha must lie in [0, 1]");
  if (c.quad_m && *c.quad_m < 1) throw Error(ErrorKind::domain, "--quad-m must be positive");
}

QuadratureConfig quad_from(const Common& c, QuadratureConfig base) {
  if (c.quad_m) base.m = *c.quad_m;
  if (!c.quad_rule.empty()) base.rule = parse_rule(c.quad_rule);
  return base;
}

ObjectiveSpec objective_from(const Common& c) {
  if (c.objective.empty()) return ConvexCombo{c.alpha};
  return parse_objective(c.objective);
}

Policy policy_from(const std::string& inline_text, const std::string& file, const Common& c) {
  if (!inline_text.empty() && !file.empty())
    throw Error(ErrorKind::parse, "give either --policy or --policy-file, not both");
  if (!file.empty()) return read_policy_file(file);
  if (inline_text.empty()) throw Error(ErrorKind::parse, "a policy is required (--policy or --policy-file)");
  const bool named = inline_text.find(',') == std::string::npos;
  return parse_policy(inline_text, c.n ? *c.n : (named ? 5 : 0));
}

// Writes to --output when given, otherwise to `out`.
void emit(const Common& c, std::ostream& out, const std::string& text) {
  if (c.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.output, std::ios::binary);
  if (!f) throw Error(ErrorKind::parse, "cannot write " + c.output);
  f << text;
}

json policy_json(const Policy& p) {
  json a = json::array();
  for (double v : p.values()) a.push_back(round9(v));
  return a;
}

json quad_json(const QuadratureConfig& q) { return {{"m", q.m}, {"rule", to_string(q.rule)}}; }

int cmd_evaluate(const Common& c, const std::string& policy_text, const std::string& policy_file,
                 std::ostream& out) {
  validate_common(c);
  const Policy p = policy_from(policy_text, policy_file, c);
  const ObjectiveSpec spec = objective_from(c);
  const QuadratureConfig quad = quad_from(c, acceptance_quadrature());
  json j;
  j["policy"] = policy_json(p);
  j["n"] = p.n();
  j["beta"] = round9(c.beta);
  j["objective"] = format_objective(spec);
  j["quad"] = quad_json(quad);
  if (p.last() > kOrderTol) {
    j["value"] = round9(evaluate_general(spec, {c.beta}, p, quad));
    j["error_bound"] = nullptr;
    j["note"] = "p_n > 0: evaluated in the general form without the p_n = 0 reduction";
  } else {
    const Evaluation ev = evaluate_detailed(spec, {c.beta}, p, quad);
    j["value"] = round9(ev.value);
    j["error_bound"] = round9(ev.error_bound);
    const WelfareQuality wq = welfare_quality_analytic(p, {c.beta}, quad);
    j["W"] = round9(wq.W);
    j["Q"] = round9(wq.Q);
    j["W_error"] = round9(wq.W_error);
    j["Q_error"] = round9(wq.Q_error);
  }
  const auto cls = classify_structure(p);
  j["structure"] = to_string(cls.tag);
  if (cls.tag == StructureTag::hm) {
    if (const auto* cc = std::get_if<ConvexCombo>(&spec))
      j["hm_closed_form"] = round9(evaluate_hm_closed_form(cc->alpha, c.beta, p.n()));
  }
  emit(c, out, j.dump(2) + "\n");
  return kExitOk;
}

struct OptimizeArgs {
  std::string method = "bnb";
  double epsilon = 1e-3;
  double granularity = 0.02;
  int steps = 1000;
  std::string constants = "exact";
  std::size_t max_nodes = 2'000'000;
  bool certify = false;
};

int cmd_optimize(const Common& c, const OptimizeArgs& a, std::ostream& out, std::ostream& err) {
  validate_common(c);
  if (!(a.epsilon > 0.0)) throw Error(ErrorKind::domain, "--epsilon must be positive");
  const int n = c.n ? *c.n : 5;
  const ObjectiveSpec spec = objective_from(c);
  json config{{"n", n}, {"beta", round9(c.beta)}, {"objective", format_objective(spec)}, {"method", a.method}};
  std::optional<OptResult> r;
  if (a.method == "bnb") {
    const auto* cc = std::get_if<ConvexCombo>(&spec);
    if (!cc)
      throw Error(ErrorKind::structural_condition,
                  "bnb certifies only the convex combination alpha W + (1 - alpha) Q; use --method line "
                  "or --method grid for " + objective_name(spec));
    BnbConfig cfg;
    cfg.epsilon = a.epsilon;
    cfg.max_nodes = a.max_nodes;
    if (a.constants == "exact")
      cfg.constants_mode = ConstantsMode::exact;
    else if (a.constants == "rough")
      cfg.constants_mode = ConstantsMode::rough;
    else
      throw Error(ErrorKind::parse, "--constants must be exact or rough");
    cfg.quad = quad_from(c, cfg.quad);
    config["epsilon"] = round9(a.epsilon);
    config["constants"] = a.constants;
    config["quad"] = quad_json(cfg.quad);
    r.emplace(branch_and_bound(n, cc->alpha, c.beta, cfg));
  } else if (a.method == "line") {
    LineSearchConfig cfg;
    cfg.steps = a.steps;
    cfg.certify = a.certify;
    cfg.quad = quad_from(c, cfg.quad);
    config["steps"] = a.steps;
    config["quad"] = quad_json(cfg.quad);
    r.emplace(two_level_line_search(spec, c.beta, n, cfg));
  } else if (a.method == "grid") {
    if (!(a.granularity > 0.0 && a.granularity <= 1.0))
      throw Error(ErrorKind::domain, "--granularity must lie in (0, 1]");
    const QuadratureConfig quad = quad_from(c, {1000, QuadratureRule::trapezoid, false});
    config["granularity"] = round9(a.granularity);
    config["quad"] = quad_json(quad);
    r.emplace(grid_search(spec, c.beta, n, a.granularity, quad, configured_threads()));
  } else {
    throw Error(ErrorKind::parse, "--method must be bnb, grid or line");
  }
  const json j = result_to_json(*r, config);
  emit(c, out, j.dump(2) + "\n");
  err << "optimize: " << a.method << " n=" << n << " -> " << j["structure"].get<std::string>() << " p1="
      << fmt9(r->policy.top()) << " value=" << fmt9(r->value);
  if (std::isfinite(r->certified_gap)) err << " gap=" << fmt9(r->certified_gap);
  err << '\n';
  if (!r->note.empty()) err << "note: " << r->note << '\n';
  if (a.method == "bnb" && !r->certified) return kExitBudget;
  return kExitOk;
}

struct SweepArgs {
  int cells = 50;
  bool full = false;
  std::size_t budget = 2500;
  std::string method = "line";
  int steps = 200;
  double epsilon = 1e-2;
};

int cmd_sweep(const Common& c, SweepArgs a, bool cells_given, std::ostream& out, std::ostream& err) {
  validate_common(c);
  if (!c.objective.empty()) throw Error(ErrorKind::parse, "sweep varies alpha; --objective does not apply");
  const int n = c.n ? *c.n : 5;
  if (a.full && !cells_given) a.cells = 1000;
  if (a.cells < 2) throw Error(ErrorKind::domain, "--cells must be at least 2");
  const std::size_t count = static_cast<std::size_t>(a.cells) * static_cast<std::size_t>(a.cells);
  if (!a.full && count > a.budget)
    throw Error(ErrorKind::budget, std::to_string(a.cells) + "x" + std::to_string(a.cells) + " cells exceed the budget of " +
                                       std::to_string(a.budget) + "; pass --full to run it anyway");
  if (a.method != "line" && a.method != "bnb") throw Error(ErrorKind::parse, "sweep --method must be line or bnb");
  const QuadratureConfig quad = quad_from(c, a.method == "line" ? sweep_quadrature() : BnbConfig{}.quad);

  std::vector<SweepRow> rows(count);
  std::vector<std::string> failures(count);
  const double step = 1.0 / (a.cells - 1);
  parallel_blocks(count, configured_threads(), [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t k = begin; k < end; ++k) {
      const double alpha = 0.05 + 0.95 * static_cast<double>(k / a.cells) * step;
      const double beta = 0.1 + 4.9 * static_cast<double>(k % a.cells) * step;
      try {
        std::optional<OptResult> r;
        if (a.method == "line") {
          LineSearchConfig cfg;
          cfg.steps = a.steps;
          cfg.quad = quad;
          r.emplace(two_level_line_search(ConvexCombo{alpha}, beta, n, cfg));
        } else {
          BnbConfig cfg;
          cfg.epsilon = a.epsilon;
          cfg.quad = quad;
          r.emplace(branch_and_bound(n, alpha, beta, cfg));
        }
        rows[k] = {alpha, beta, r->policy[0], r->policy[1], r->value, to_string(classify_structure(r->policy).tag)};
      } catch (const std::exception& e) {
        failures[k] = e.what();
      }
    }
  });
  for (std::size_t k = 0; k < count; ++k)
    if (!failures[k].empty()) throw Error(ErrorKind::domain, "sweep cell " + std::to_string(k) + ": " + failures[k]);
  std::sort(rows.begin(), rows.end(), [](const SweepRow& x, const SweepRow& y) {
    return x.alpha != y.alpha ? x.alpha < y.alpha : x.beta < y.beta;
  });
  std::ostringstream text;
  write_sweep_csv(text, rows);
  emit(c, out, text.str());
  err << "sweep: " << count << " cells, n=" << n << ", method " << a.method << '\n';
  return kExitOk;
}

struct EquilibriumArgs {
  int points = 101;
  std::uint64_t simulate = 0;
  std::uint64_t seed = 1;
  int deviation_grid = 50;
};

json sim_json(const SimReport& s) {
  return {{"empirical_welfare", round9(s.empirical_welfare)},
          {"welfare_se", round9(s.welfare_se)},
          {"empirical_quality", round9(s.empirical_quality)},
          {"quality_se", round9(s.quality_se)},
          {"max_deviation_gain", round9(s.max_deviation_gain)},
          {"deviation_se", round9(s.deviation_se)},
          {"deviation_q", round9(s.deviation_q)},
          {"samples", s.samples},
          {"seed", s.seed},
          {"streams", s.streams}};
}

int cmd_equilibrium(const Common& c, const std::string& policy_text, const std::string& policy_file,
                    const EquilibriumArgs& a, std::ostream& out, std::ostream& err) {
  validate_common(c);
  const std::string format = c.format.empty() ? "json" : c.format;
  if (format != "json" && format != "csv") throw Error(ErrorKind::parse, "--format must be json or csv");
  if (a.points < 2) throw Error(ErrorKind::domain, "--points must be at least 2");
  const Policy p = policy_from(policy_text, policy_file, c);
  const EquilibriumModel model(p, {c.beta});
  const auto table = cdf_table(model, a.points);

  json summary{{"policy", policy_json(p)}, {"beta", round9(c.beta)}, {"q_max", round9(model.q_max())}};
  if (a.simulate > 0) {
    SimOptions opts;
    opts.deviation_grid = a.deviation_grid;
    const SimReport s = simulate(model, a.simulate, a.seed, opts);
    summary["simulation"] = sim_json(s);
    const WelfareQuality wq = welfare_quality_analytic(p, {c.beta});
    summary["analytic"] = {{"W", round9(wq.W)}, {"Q", round9(wq.Q)}};
  }
  if (format == "json") {
    json cdf = json::array();
    for (const auto& [q, f] : table) cdf.push_back({round9(q), round9(f)});
    summary["cdf"] = cdf;
    emit(c, out, summary.dump(2) + "\n");
  } else {
    std::ostringstream text;
    write_cdf_csv(text, table);
    emit(c, out, text.str());
    (c.output.empty() ? err : out) << summary.dump(2) << '\n';
  }
  return kExitOk;
}

std::vector<std::string> split_list(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& item : raw) {
    std::stringstream ss(item);
    std::string tok;
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) out.push_back(tok);
  }
  return out;
}

int cmd_verify(const VerifyOptions& opts, const Common& c, std::ostream& out) {
  std::ostringstream text;
  int failed = 0, passed = 0;
  run_verify(opts, [&](const CheckResult& r) {
    json j{{"name", r.name},
           {"status", r.pass ? "pass" : "fail"},
           {"worst_margin", round9(r.worst_margin)},
           {"seed", r.seed}};
    if (!r.detail.empty()) j["detail"] = r.detail;
    const std::string line = j.dump() + "\n";
    text << line;
    if (c.output.empty()) out << line << std::flush;
    (r.pass ? passed : failed)++;
  });
  if (passed + failed == 0) throw Error(ErrorKind::parse, "--only matched no checks");
  const std::string tail = json{{"summary", {{"passed", passed}, {"failed", failed}}}}.dump() + "\n";
  text << tail;
  if (c.output.empty())
    out << tail;
  else
    emit(c, out, text.str());
  return failed ? kExitVerify : kExitOk;
}

int exit_code_for(const Error& e) { return e.kind() == ErrorKind::budget ? kExitBudget : kExitUsage; }

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimal rank-based prize policies for contests with power costs"};
  app.name("contest_opt");
  app.require_subcommand(1);
  app.footer(
      "Exit codes: 0 ok, 1 usage or input error, 2 verification failure, 3 budget or limit.\n"
      "CONTEST_OPT_THREADS caps the worker pool used by grid search, sweep and simulation.\n"
      "Policies: comma-separated shares in nonincreasing order summing to 1, or the names\n"
      "hm, uni, uniform, two:<p1>.");

  Common common;

  auto* ev = app.add_subcommand("evaluate", "Evaluate the objective, W and Q for a policy (JSON)");
  std::string policy_text, policy_file;
  add_common(ev, common, true);
  ev->add_option("--policy", policy_text, "Policy vector or name");
  ev->add_option("--policy-file", policy_file, "JSON file with a \"policy\" array, e.g. optimize output");

  auto* opt = app.add_subcommand("optimize", "Find an optimal policy (JSON with the structure tag)");
  OptimizeArgs oa;
  add_common(opt, common, true);
  opt->add_option("--method", oa.method, "bnb (certified), grid (full lattice) or line (two-level family)");
  opt->add_option("--epsilon", oa.epsilon, "Certified gap target for bnb");
  opt->add_option("--granularity", oa.granularity, "Lattice step for grid");
  opt->add_option("--steps", oa.steps, "Grid points over p1 for line");
  opt->add_option("--constants", oa.constants, "Gap constants for the bnb depth bound: exact or rough");
  opt->add_option("--max-nodes", oa.max_nodes, "Node budget for bnb");
  opt->add_flag("--certify", oa.certify, "Bound the optimum over each line-search cell");

  auto* sw = app.add_subcommand(
      "sweep",
      "Optimal two-level policy over alpha in [0.05, 1] x beta in [0.1, 5].\n"
      "CSV columns: alpha,beta,p1,p2,value,structure_tag (structure_tag is hm, uni, two_level or other).");
  SweepArgs sa;
  add_common(sw, common, false);
  auto* cells_opt = sw->add_option("--cells", sa.cells, "Points per axis (default 50, or 1000 with --full)");
  sw->add_flag("--full", sa.full, "Lift the cell budget");
  sw->add_option("--budget", sa.budget, "Cell budget without --full");
  sw->add_option("--method", sa.method, "line or bnb");
  sw->add_option("--steps", sa.steps, "Line-search points per cell");
  sw->add_option("--epsilon", sa.epsilon, "bnb gap target per cell");

  auto* eq = app.add_subcommand(
      "equilibrium",
      "Equilibrium CDF table, q_max and an optional Monte Carlo report.\n"
      "CSV columns: q,F. With --format csv the summary goes to stdout when --output is set, else to stderr.");
  EquilibriumArgs ea;
  add_common(eq, common, false);
  eq->add_option("--policy", policy_text, "Policy vector or name");
  eq->add_option("--policy-file", policy_file, "JSON file with a \"policy\" array");
  eq->add_option("--points", ea.points, "Rows in the CDF table");
  eq->add_option("--simulate", ea.simulate, "Monte Carlo samples (0: none)");
  eq->add_option("--seed", ea.seed, "Simulation seed");
  eq->add_option("--deviation-grid", ea.deviation_grid, "Grid points for the unilateral deviation scan");
  eq->add_option("--format", common.format, "json or csv");

  auto* vf = app.add_subcommand("verify", "Run the invariant and property suites (JSON lines)");
  VerifyOptions vo;
  std::vector<std::string> only_raw;
  vf->add_option("--seed", vo.seed, "Base seed");
  vf->add_option("--trials", vo.trials, "Random trials per check");
  vf->add_option("--only", only_raw, "Restrict to groups or checks, comma separated");
  vf->add_option("--output,-o", common.output, "Write the report to this file");
  bool list_checks = false;
  vf->add_flag("--list", list_checks, "List check names and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (ev->parsed()) return cmd_evaluate(common, policy_text, policy_file, out);
    if (opt->parsed()) return cmd_optimize(common, oa, out, err);
    if (sw->parsed()) return cmd_sweep(common, sa, cells_opt->count() > 0, out, err);
    if (eq->parsed()) return cmd_equilibrium(common, policy_text, policy_file, ea, out, err);
    if (vf->parsed()) {
      if (list_checks) {
        for (const auto& name : verify_check_names()) out << name << '\n';
        return kExitOk;
      }
      if (vo.trials < 1) throw Error(ErrorKind::domain, "--trials must be positive");
      vo.only = split_list(only_raw);
      return cmd_verify(vo, common, out);
    }
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace contest::cli
