// gtue: game-theoretic upper expectations on imprecise probability trees.
//
// Exit codes: 0 ok, 1 input or usage error, 2 verdict false or a check failed,
// 3 limit evaluation ran out of budget.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>

#include "gtue/axioms.hpp"
#include "gtue/constructions.hpp"
#include "gtue/global_eval.hpp"
#include "gtue/io.hpp"
#include "gtue/oracle.hpp"

namespace {

using namespace gtue;
using io::Json;

enum Exit { ok = 0, input_error = 1, check_failed = 2, budget_exhausted = 3 };

struct Config {
  bool rational = false;
  std::string tol;  // empty: 1e-9 in float mode, 0 in rational mode
  std::size_t budget = 64;
  std::uint64_t seed = 1;
  std::string oracle_cap = "10000000";
};

template <class S>
S tolerance(const Config& cfg) {
  if (cfg.tol.empty()) return ScalarTraits<S>::default_tol();
  S tol = ScalarTraits<S>::parse(cfg.tol);
  if (tol < S(0)) fail(ErrorCode::InvalidArgument, "--tol must be non-negative");
  return tol;
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

struct EvalArgs {
  std::string tree, subject, situation;
  bool lower = false, oracle = false;
};

template <class S>
int run_eval(const EvalArgs& args, const Config& cfg) {
  const auto tree = io::read_tree<S>(io::load_json_file(args.tree));
  const auto subject = io::read_subject<S>(io::load_json_file(args.subject), "$", tree.arity());
  const Situation s = parse_situation(args.situation, tree.space());
  const S tol = tolerance<S>(cfg);
  if (subject.variable) {
    const auto& f = *subject.variable;
    EvalResult<S> r;
    r.value = args.lower ? eval_lower_finitary(tree, f, s) : eval_finitary(tree, f, s);
    Json out = io::write_eval_result(r);
    if (args.oracle) {
      if (args.lower) fail(ErrorCode::InvalidArgument, "--oracle computes upper expectations only");
      auto truth = brute_force_upper(tree, f, s, BigInt(cfg.oracle_cap));
      const bool agrees = near(truth, r.value, tol);
      out["oracle"] = Json{{"value", io::write_xreal(truth)},
                           {"selections", selection_count(tree, f.depth(), s).str()},
                           {"agrees", agrees}};
      emit(out);
      return agrees ? ok : check_failed;
    }
    emit(out);
    return ok;
  }
  if (args.lower || args.oracle) fail(ErrorCode::InvalidArgument, "--lower and --oracle need a finitary variable");
  LimitOptions options;
  options.budget = cfg.budget;
  auto r = eval_limit(tree, *subject.sequence, s, tol, options);
  emit(io::write_eval_result(r));
  return r.status == EvalStatus::budget_exhausted ? budget_exhausted : ok;
}

struct CheckArgs {
  std::string tree, process;
  bool axioms = false;
  std::size_t trials = 500;
};

template <class S>
int run_check(const CheckArgs& args, const Config& cfg) {
  const auto tree = io::read_tree<S>(io::load_json_file(args.tree));
  const S tol = tolerance<S>(cfg);
  bool passed = true;
  Json out = Json::object();
  if (args.axioms) {
    Json audits = Json::array();
    for (std::size_t i = 0; i < tree.stored().size(); ++i) {
      const auto& set = tree.stored()[i];
      auto report = audit_axioms<S>([&](const LocalVariable<S>& h) { return local_upper(set, std::span<const ExtendedReal<S>>(h)); }, tree.space(),
                                    args.trials, cfg.seed + i, tol);
      Json results = Json::array();
      for (const auto& r : report.results) {
        Json entry{{"axiom", r.name}, {"passed", r.passed}, {"checks", r.checks}};
        if (r.counterexample) entry["counterexample"] = *r.counterexample;
        results.push_back(std::move(entry));
      }
      audits.push_back(Json{{"model", i}, {"all_passed", report.all_passed()}, {"results", std::move(results)}});
      passed = passed && report.all_passed();
    }
    out["axioms"] = std::move(audits);
  }
  if (!args.process.empty()) {
    const auto m = io::read_process<S>(io::load_json_file(args.process), "$", tree.space());
    auto verdict = check_supermartingale(tree, m, tol);
    out["verdict"] = io::write_verdict(verdict, tree.space());
    passed = passed && verdict.is_supermartingale;
  } else if (!args.axioms) {
    fail(ErrorCode::InvalidArgument, "check needs a process file or --axioms");
  }
  emit(out);
  return passed ? ok : check_failed;
}

struct CertifyArgs {
  std::string tree, subject, root, a, b, delta = "1";
  bool normalize = false;
};

Json certificate_report(const Transform<Rational>& t, const TreeModel<Rational>& tree) {
  auto verdict = check_supermartingale(tree, t.process, Rational(0));
  Json checks = Json::array();
  std::size_t failed = 0;
  for (const auto& c : t.checks) {
    checks.push_back(io::write_bound_check(c, tree.space()));
    if (!c.identity_holds || !c.bound_holds) ++failed;
  }
  const bool pass = verdict.is_supermartingale && failed == 0;
  Json summary{{"verdict", pass},
               {"supermartingale", io::write_verdict(verdict, tree.space())},
               {"worst_gap", verdict.worst_violation ? io::write_xreal(verdict.worst_violation->gap) : Json(0)},
               {"upcrossing_pairs", t.cuts.size()},
               {"bound_checks", t.checks.size()},
               {"failed_checks", failed},
               {"checks", std::move(checks)}};
  return Json{{"kind", t.kind == TransformKind::doob ? "doob" : "levy"},
              {"window", Json{{"a", io::write_scalar(t.a)}, {"b", io::write_scalar(t.b)}}},
              {"process", io::write_process(t.process, tree.space())},
              {"cuts", io::write_cut_system(t.cuts, tree.space())},
              {"summary", std::move(summary)}};
}

// Certificates always run in exact arithmetic; the bounds they check are strict.
int run_certify(TransformKind kind, const CertifyArgs& args) {
  using S = Rational;
  const auto tree = io::read_tree<S>(io::load_json_file(args.tree));
  const Situation root = parse_situation(args.root, tree.space());
  const S a = ScalarTraits<S>::parse(args.a), b = ScalarTraits<S>::parse(args.b);
  const Json subject = io::load_json_file(args.subject);
  const Transform<S> t = [&] {
    if (kind == TransformKind::doob) {
      const auto m = io::read_process<S>(subject, "$", tree.space());
      return doob_transform(tree, m, root, a, b, DoobOptions{args.normalize});
    }
    const auto f = io::read_variable<S>(subject, "$", tree.arity());
    return levy_transform(tree, f, root, a, b, ScalarTraits<S>::parse(args.delta));
  }();
  Json report = certificate_report(t, tree);
  const bool pass = report["summary"]["verdict"].get<bool>();
  emit(report);
  return pass ? ok : check_failed;
}

bool rational_from_env() {
  const char* v = std::getenv("GTUE_RATIONAL");
  return v != nullptr && std::string(v) == "1";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Game-theoretic upper expectations on imprecise probability trees"};
  app.require_subcommand(1);
  Config cfg;
  cfg.rational = rational_from_env();
  app.add_flag("--rational", cfg.rational, "Exact rational arithmetic (also GTUE_RATIONAL=1)");
  app.add_option("--tol", cfg.tol, "Comparison tolerance (default 1e-9, 0 in rational mode)");
  app.add_option("--seed", cfg.seed, "Seed for randomized checks");

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Upper (or lower) expectation of a variable or monotone sequence");
  eval_cmd->add_option("tree", eval.tree, "Tree JSON")->required();
  eval_cmd->add_option("subject", eval.subject, "Variable or sequence JSON")->required();
  eval_cmd->add_option("--situation,-s", eval.situation, "Conditioning situation, dot-separated labels")
      ->default_val("");
  eval_cmd->add_flag("--lower", eval.lower, "Lower expectation");
  eval_cmd->add_flag("--oracle", eval.oracle, "Cross-check against brute-force enumeration");
  eval_cmd->add_option("--budget", cfg.budget, "Iteration budget for sequences")->check(CLI::PositiveNumber);
  eval_cmd->add_option("--oracle-cap", cfg.oracle_cap, "Maximum number of oracle selections");
  eval_cmd->add_flag("--rational", cfg.rational, "Exact rational arithmetic");
  eval_cmd->add_option("--tol", cfg.tol, "Comparison tolerance");

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "Supermartingale check of a process, or axiom audit of the local models");
  check_cmd->add_option("tree", check.tree, "Tree JSON")->required();
  check_cmd->add_option("process", check.process, "Process JSON");
  check_cmd->add_flag("--axioms", check.axioms, "Audit every stored local model");
  check_cmd->add_option("--trials", check.trials, "Audit trials per model")->check(CLI::PositiveNumber);
  check_cmd->add_flag("--rational", cfg.rational, "Exact rational arithmetic");
  check_cmd->add_option("--tol", cfg.tol, "Comparison tolerance");
  check_cmd->add_option("--seed", cfg.seed, "Audit seed");

  CertifyArgs doob, levy;
  auto* doob_cmd = app.add_subcommand("doob-certificate", "Doob upcrossing transform of a supermartingale");
  doob_cmd->add_option("tree", doob.tree, "Tree JSON")->required();
  doob_cmd->add_option("process", doob.subject, "Supermartingale JSON")->required();
  doob_cmd->add_option("--a", doob.a, "Lower window edge")->required();
  doob_cmd->add_option("--b", doob.b, "Upper window edge")->required();
  doob_cmd->add_option("--root,-t", doob.root, "Root situation")->default_val("");
  doob_cmd->add_flag("--normalize", doob.normalize, "Shift and scale so the root value is 1");

  auto* levy_cmd = app.add_subcommand("levy-certificate", "Levy multiplicative test supermartingale of a gamble");
  levy_cmd->add_option("tree", levy.tree, "Tree JSON")->required();
  levy_cmd->add_option("variable", levy.subject, "Finitary gamble JSON")->required();
  levy_cmd->add_option("--a", levy.a, "Lower window edge")->required();
  levy_cmd->add_option("--b", levy.b, "Upper window edge")->required();
  levy_cmd->add_option("--delta", levy.delta, "Positive shift added after subtracting inf f")->default_val("1");
  levy_cmd->add_option("--root,-s", levy.root, "Root situation s'")->default_val("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? ok : input_error;
  }

  try {
    if (*eval_cmd) return cfg.rational ? run_eval<Rational>(eval, cfg) : run_eval<double>(eval, cfg);
    if (*check_cmd) return cfg.rational ? run_check<Rational>(check, cfg) : run_check<double>(check, cfg);
    if (*doob_cmd) return run_certify(TransformKind::doob, doob);
    if (*levy_cmd) return run_certify(TransformKind::levy, levy);
  } catch (const gtue::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return input_error;
  }
  return input_error;
}
