// Command line front end: instance I/O, generation, solver dispatch,
// validation, and the desk bench suite. Every solve subcommand re-checks
// its own output before reporting success.
//
// Exit codes: 0 ok, 1 infeasible, 2 validation failure, 3 usage/parse.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "rgather/bench.hpp"
#include "rgather/brute.hpp"
#include "rgather/generate.hpp"
#include "rgather/io.hpp"
#include "rgather/minsum.hpp"
#include "rgather/proximity.hpp"
#include "rgather/ptas.hpp"

using namespace rgather;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitValidation = 2;
constexpr int kExitUsage = 3;

struct CommonArgs {
  std::string instance_path;
  std::string output_path;    // optional report copy
  std::string solution_path;  // optional solution dump
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("instance", args.instance_path, "instance file (canonical JSON schema)")
      ->required();
  cmd->add_option("--output", args.output_path, "append the report line to this file");
  cmd->add_option("--solution-out", args.solution_path, "write the solution to this file");
}

void emit(const RunReport& report, const CommonArgs& args) {
  std::string line = serialize_report(report);
  std::cout << line;
  if (!args.output_path.empty()) {
    std::ofstream out(args.output_path, std::ios::app);
    out << line;
  }
}

void dump_solution(const Solution& solution, const CommonArgs& args) {
  if (args.solution_path.empty()) return;
  std::ofstream out(args.solution_path);
  out << serialize_solution(solution);
}

double run_ms(const std::function<void()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  body();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

// Shared tail of every solve subcommand: re-validate, report, pick the
// exit code.
int finish_solve(const Instance& inst, const Solution& solution, const VariantSpec& variant,
                 RunReport report, const CommonArgs& args) {
  auto violations = check_feasible(inst, solution, variant);
  CostReport costs = evaluate(inst, solution);
  report.cost = costs.minmax_cost;
  report.minsum_cost = costs.minsum_cost;
  report.verdict = violations.empty() ? "ok" : "violations:" + std::to_string(violations.size());
  emit(report, args);
  for (const Violation& v : violations) std::cerr << "violation: " << v.message << "\n";
  dump_solution(solution, args);
  return violations.empty() ? kExitOk : kExitValidation;
}

int exit_code_for(const Error& error) {
  switch (error.code()) {
    case Errc::InfeasibleInstance:
      return kExitInfeasible;
    default:
      return kExitUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"r-gathering solvers on weighted trees"};
  app.require_subcommand(1);

  // solve-minmax
  CommonArgs minmax_args;
  std::string minmax_eps = "1/2";
  bool minmax_bracket = false;
  CLI::App* minmax = app.add_subcommand("solve-minmax", "(1+eps)-approximate min-max solver");
  minmax->add_option("--epsilon", minmax_eps, "approximation slack, rational like 1/2");
  minmax->add_flag("--bracket", minmax_bracket, "use the bracket-halving driver");
  add_common(minmax, minmax_args);

  // solve-minsum / solve-lbfl
  CommonArgs minsum_args, lbfl_args;
  CLI::App* minsum = app.add_subcommand(
      "solve-minsum", "exact min-sum solver (opening costs treated as zero)");
  add_common(minsum, minsum_args);
  CLI::App* lbfl = app.add_subcommand(
      "solve-lbfl", "exact lower-bounded facility location (opening costs honored)");
  add_common(lbfl, lbfl_args);

  // solve-proximity
  CommonArgs prox_args;
  std::string prox_objective = "minmax";
  CLI::App* prox = app.add_subcommand("solve-proximity",
                                      "exact solver under the nearest-facility rule");
  prox->add_option("--objective", prox_objective, "minmax or minsum")
      ->check(CLI::IsMember({"minmax", "minsum"}));
  add_common(prox, prox_args);

  // solve-outliers
  CommonArgs outlier_args;
  std::string outlier_eps = "1/2", outlier_alpha;
  CLI::App* outliers = app.add_subcommand("solve-outliers",
                                          "min-max with an ignorable user fraction");
  outliers->add_option("--epsilon", outlier_eps, "approximation slack");
  outliers->add_option("--alpha", outlier_alpha,
                       "ignorable fraction in [0,1); defaults to the file's variant block");
  add_common(outliers, outlier_args);

  // solve-capped
  CommonArgs capped_args;
  std::string capped_eps = "1/2";
  int capped_k = 0;
  CLI::App* capped = app.add_subcommand("solve-capped",
                                        "min-max with a bound on open facilities");
  capped->add_option("--epsilon", capped_eps, "approximation slack");
  capped->add_option("--k", capped_k, "max open facilities; defaults to the file's variant block");
  add_common(capped, capped_args);

  // brute
  CommonArgs brute_args;
  std::string brute_variant = "minmax", brute_alpha = "0";
  int brute_k = -1;
  CLI::App* brute = app.add_subcommand("brute", "exponential reference solvers");
  brute->add_option("--variant", brute_variant, "objective / constraint set")
      ->check(CLI::IsMember({"minmax", "minsum", "outliers", "capped", "proximity-minmax",
                             "proximity-minsum"}));
  brute->add_option("--alpha", brute_alpha, "outlier fraction for --variant outliers");
  brute->add_option("--k", brute_k, "cap for --variant capped");
  add_common(brute, brute_args);

  // check
  CommonArgs check_args;
  std::string check_solution, check_variant = "plain", check_alpha = "0";
  int check_k = -1;
  CLI::App* check = app.add_subcommand("check", "validate a solution file");
  check->add_option("--solution", check_solution, "solution file")->required();
  check->add_option("--variant", check_variant, "constraint set to validate against")
      ->check(CLI::IsMember({"plain", "outliers", "capped", "proximity"}));
  check->add_option("--alpha", check_alpha, "outlier fraction for --variant outliers");
  check->add_option("--k", check_k, "cap for --variant capped");
  add_common(check, check_args);

  // gen
  GenParams gen_params;
  std::string gen_shape = "random_attachment", gen_out;
  CLI::App* gen = app.add_subcommand("gen", "generate a random instance");
  gen->add_option("--seed", gen_params.seed, "rng seed");
  gen->add_option("--vertices", gen_params.n_vertices, "tree size");
  gen->add_option("--users", gen_params.n_users, "user count");
  gen->add_option("--facilities", gen_params.n_facilities, "facility count");
  gen->add_option("--max-len", gen_params.max_len, "max edge length");
  gen->add_option("--min-len", gen_params.min_len, "min edge length");
  gen->add_option("--r", gen_params.r, "lower bound per open facility");
  gen->add_option("--max-open-cost", gen_params.max_open_cost, "max random open cost");
  gen->add_option("--shape", gen_shape, "random_attachment|path|star|caterpillar")
      ->check(CLI::IsMember({"random_attachment", "path", "star", "caterpillar"}));
  gen->add_option("-o,--out", gen_out, "write to file instead of stdout");

  // bench
  std::string bench_suite = "desk";
  CLI::App* bench = app.add_subcommand("bench", "run the desk verification suite");
  bench->add_option("--suite", bench_suite, "suite name")->check(CLI::IsMember({"desk"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (minmax->parsed()) {
      InstanceFile file = parse_instance_file(minmax_args.instance_path);
      Rational eps = Rational::parse(minmax_eps);
      Solution sol;
      double ms = run_ms([&] {
        sol = minmax_bracket ? ptas_solve_bracket(file.instance, eps)
                             : ptas_solve(file.instance, eps);
      });
      RunReport report;
      report.solver = minmax_bracket ? "solve-minmax-bracket" : "solve-minmax";
      report.instance_path = minmax_args.instance_path;
      report.parameters = "epsilon=" + eps.str();
      report.wall_ms = ms;
      return finish_solve(file.instance, sol, VariantSpec::plain(), report, minmax_args);
    }

    if (minsum->parsed() || lbfl->parsed()) {
      bool is_lbfl = lbfl->parsed();
      const CommonArgs& args = is_lbfl ? lbfl_args : minsum_args;
      InstanceFile file = parse_instance_file(args.instance_path);
      Instance inst = [&] {
        if (is_lbfl) return std::move(file.instance);
        // plain min-sum: opening costs zeroed
        std::vector<FacilitySpot> free_facilities;
        for (const FacilitySpot& f : file.instance.facilities()) {
          free_facilities.push_back({f.vertex, 0});
        }
        std::vector<EdgeInput> edges;
        const WeightedTree& tree = file.instance.tree();
        for (VertexId v = 0; v < tree.vertex_count(); ++v) {
          if (tree.parent(v) >= 0) {
            edges.push_back({tree.parent(v), v, tree.edge_length_to_parent(v)});
          }
        }
        return Instance(WeightedTree::build(edges, tree.root()),
                        std::vector<VertexId>(file.instance.user_vertices()),
                        std::move(free_facilities), file.instance.r());
      }();
      MinsumResult res;
      double ms = run_ms([&] { res = solve_minsum(inst); });
      RunReport report;
      report.solver = is_lbfl ? "solve-lbfl" : "solve-minsum";
      report.instance_path = args.instance_path;
      report.wall_ms = ms;
      return finish_solve(inst, res.solution, VariantSpec::plain(), report, args);
    }

    if (prox->parsed()) {
      InstanceFile file = parse_instance_file(prox_args.instance_path);
      Objective objective = prox_objective == "minmax" ? Objective::MinMax : Objective::MinSum;
      std::optional<ProximityResult> res;
      double ms = run_ms([&] { res = solve_proximity(file.instance, objective); });
      RunReport report;
      report.solver = "solve-proximity";
      report.instance_path = prox_args.instance_path;
      report.parameters = "objective=" + prox_objective;
      report.wall_ms = ms;
      if (!res) {
        report.verdict = "infeasible";
        emit(report, prox_args);
        return kExitInfeasible;
      }
      return finish_solve(file.instance, res->solution, VariantSpec::proximity(), report,
                          prox_args);
    }

    if (outliers->parsed()) {
      InstanceFile file = parse_instance_file(outlier_args.instance_path);
      Rational eps = Rational::parse(outlier_eps);
      Rational alpha = !outlier_alpha.empty()
                           ? Rational::parse(outlier_alpha)
                           : file.outlier_fraction.value_or(Rational(0));
      Solution sol;
      double ms = run_ms([&] { sol = ptas_solve_outliers(file.instance, eps, alpha); });
      int budget = static_cast<int>((alpha * Rational(file.instance.user_count())).floor());
      RunReport report;
      report.solver = "solve-outliers";
      report.instance_path = outlier_args.instance_path;
      report.parameters = "epsilon=" + eps.str() + " alpha=" + alpha.str();
      report.wall_ms = ms;
      return finish_solve(file.instance, sol, VariantSpec::outliers(budget), report,
                          outlier_args);
    }

    if (capped->parsed()) {
      InstanceFile file = parse_instance_file(capped_args.instance_path);
      Rational eps = Rational::parse(capped_eps);
      int k = capped_k > 0 ? capped_k : file.max_open.value_or(0);
      if (k <= 0) fail(Errc::UsageError, "--k missing and no variant block in the instance");
      Solution sol;
      double ms = run_ms([&] { sol = ptas_solve_capped(file.instance, eps, k); });
      RunReport report;
      report.solver = "solve-capped";
      report.instance_path = capped_args.instance_path;
      report.parameters = "epsilon=" + eps.str() + " k=" + std::to_string(k);
      report.wall_ms = ms;
      return finish_solve(file.instance, sol, VariantSpec::capped(k), report, capped_args);
    }

    if (brute->parsed()) {
      InstanceFile file = parse_instance_file(brute_args.instance_path);
      const Instance& inst = file.instance;
      RunReport report;
      report.solver = "brute-" + brute_variant;
      report.instance_path = brute_args.instance_path;
      std::optional<BruteResult> res;
      VariantSpec variant = VariantSpec::plain();
      double ms = run_ms([&] {
        if (brute_variant == "minmax") {
          res = brute_minmax(inst);
        } else if (brute_variant == "minsum") {
          res = brute_minsum(inst);
        } else if (brute_variant == "outliers") {
          Rational alpha = Rational::parse(brute_alpha);
          BruteConfig cfg;
          cfg.outlier_budget = static_cast<int>((alpha * Rational(inst.user_count())).floor());
          variant = VariantSpec::outliers(cfg.outlier_budget);
          report.parameters = "alpha=" + alpha.str();
          res = brute_variants(inst, cfg);
        } else if (brute_variant == "capped") {
          if (brute_k < 1) fail(Errc::UsageError, "--k required for --variant capped");
          BruteConfig cfg;
          cfg.open_cap = brute_k;
          variant = VariantSpec::capped(brute_k);
          report.parameters = "k=" + std::to_string(brute_k);
          res = brute_variants(inst, cfg);
        } else {
          Objective obj = brute_variant == "proximity-minmax" ? Objective::MinMax
                                                              : Objective::MinSum;
          variant = VariantSpec::proximity();
          res = proximity_brute_reference(inst, obj);
        }
      });
      report.wall_ms = ms;
      if (!res) {
        report.verdict = "infeasible";
        emit(report, brute_args);
        return kExitInfeasible;
      }
      return finish_solve(inst, res->witness, variant, report, brute_args);
    }

    if (check->parsed()) {
      InstanceFile file = parse_instance_file(check_args.instance_path);
      Solution sol = parse_solution_file(check_solution);
      VariantSpec variant = VariantSpec::plain();
      if (check_variant == "outliers") {
        Rational alpha = Rational::parse(check_alpha);
        variant = VariantSpec::outliers(
            static_cast<int>((alpha * Rational(file.instance.user_count())).floor()));
      } else if (check_variant == "capped") {
        if (check_k < 1) fail(Errc::UsageError, "--k required for --variant capped");
        variant = VariantSpec::capped(check_k);
      } else if (check_variant == "proximity") {
        variant = VariantSpec::proximity();
      }
      auto violations = check_feasible(file.instance, sol, variant);
      RunReport report;
      report.solver = "check";
      report.instance_path = check_args.instance_path;
      report.parameters = "variant=" + check_variant;
      if (violations.empty()) {
        CostReport costs = evaluate(file.instance, sol);
        report.cost = costs.minmax_cost;
        report.minsum_cost = costs.minsum_cost;
      }
      report.verdict =
          violations.empty() ? "ok" : "violations:" + std::to_string(violations.size());
      emit(report, check_args);
      for (const Violation& v : violations) std::cerr << "violation: " << v.message << "\n";
      return violations.empty() ? kExitOk : kExitValidation;
    }

    if (gen->parsed()) {
      gen_params.shape = parse_shape(gen_shape);
      Instance inst = generate(gen_params);
      std::string text = serialize_instance(inst);
      if (gen_out.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(gen_out);
        out << text;
        RunReport report;
        report.solver = "gen";
        report.instance_path = gen_out;
        report.seed = gen_params.seed;
        report.verdict = "ok";
        std::cout << serialize_report(report);
      }
      return kExitOk;
    }

    if (bench->parsed()) {
      auto results = run_desk_suite(true);
      bool all = true;
      for (const auto& r : results) all &= r.pass;
      std::cout << (all ? "desk suite: all criteria PASS" : "desk suite: FAILURES above")
                << std::endl;
      return all ? kExitOk : kExitValidation;
    }
  } catch (const Error& error) {
    std::cerr << "error: " << error.what() << "\n";
    return exit_code_for(error);
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
