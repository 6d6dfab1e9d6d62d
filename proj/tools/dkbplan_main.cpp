#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "dkbplan/bench.hpp"
#include "dkbplan/casegen.hpp"
#include "dkbplan/errors.hpp"
#include "dkbplan/graph_export.hpp"
#include "dkbplan/parser.hpp"
#include "dkbplan/planner_fp.hpp"
#include "dkbplan/planner_fpi.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInconsistent = 2;
constexpr int kExitNoPlan = 3;

struct PlanOptions {
  std::string kb_path;
  std::string algo = "fp";
  std::string strategy = "fifo";
  std::string mode = "all";
  std::string format = "dot";
  std::string out_path;
  double timeout_s = 0.0;
};

dkb::SearchConfig search_config(const PlanOptions& opts) {
  dkb::SearchConfig cfg;
  cfg.strategy = opts.strategy == "lifo" ? dkb::Strategy::Lifo : dkb::Strategy::Fifo;
  cfg.mode = opts.mode == "first" ? dkb::Mode::FirstPlan : dkb::Mode::AllPlans;
  if (opts.timeout_s > 0.0)
    cfg.deadline = std::chrono::steady_clock::now() +
                   std::chrono::milliseconds(static_cast<long>(opts.timeout_s * 1000));
  return cfg;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw dkb::Error("cannot write file: " + path);
  out << content;
}

int cmd_check(const std::string& kb_path) {
  dkb::ProblemSpec spec = dkb::parse_kb_file(kb_path);
  dkb::Reasoner reasoner(spec.tbox, 2);
  if (reasoner.consistent(spec.abox)) {
    std::cout << "consistent\n";
    return kExitOk;
  }
  std::cout << "inconsistent: " << reasoner.violation(spec.abox) << "\n";
  return kExitInconsistent;
}

int cmd_query(const std::string& kb_path, const std::string& query_text) {
  dkb::ProblemSpec spec = dkb::parse_kb_file(kb_path);
  dkb::UCQ query = dkb::parse_query(query_text);
  std::size_t longest = 1;
  for (const dkb::CQ& cq : query.disjuncts) longest = std::max(longest, cq.atoms.size());
  dkb::Reasoner reasoner(spec.tbox, static_cast<int>(longest) + 1);
  std::vector<dkb::Substitution> answers;
  try {
    answers = reasoner.ans(query, spec.abox);
  } catch (const dkb::InconsistentState& e) {
    std::cerr << e.what() << "\n";
    return kExitInconsistent;
  }
  for (const dkb::Substitution& theta : answers) std::cout << theta.str() << "\n";
  std::cout << answers.size() << " answer(s)\n";
  return kExitOk;
}

int cmd_plan(const PlanOptions& opts, bool export_only) {
  dkb::ProblemSpec spec = dkb::parse_kb_file(opts.kb_path);
  dkb::PlanningProblem problem = dkb::make_problem(spec);
  for (const std::string& warning : problem.warnings) std::cerr << "warning: " << warning << "\n";
  dkb::Reasoner reasoner(problem.dkb.tbox, dkb::default_depth_bound(problem));
  dkb::SearchConfig cfg = search_config(opts);

  dkb::PlanningGraph graph;
  dkb::RunMetrics metrics;
  std::optional<dkb::AbstractPlanningGraph> abstract;
  if (opts.algo == "abp-fpi") {
    dkb::AbpFpiResult result = dkb::abp_fpi(reasoner, problem, cfg);
    graph = std::move(result.graph);
    metrics = result.fpi_metrics;
    metrics.seconds = result.total_seconds;
    abstract = std::move(result.abstract);
  } else {
    auto [g, m] = dkb::forward_plan(reasoner, problem, cfg);
    graph = std::move(g);
    metrics = m;
  }

  std::set<dkb::Plan> plans = dkb::extract_plans(graph, problem, reasoner);

  if (!opts.out_path.empty()) {
    std::string content;
    if (opts.format == "json") content = dkb::to_json(graph, problem, reasoner);
    else if (opts.format == "text") content = dkb::to_text(graph, problem, reasoner);
    else content = dkb::to_dot(graph, problem, reasoner);
    write_file(opts.out_path, content);
    if (abstract) {
      std::string abstract_content;
      if (opts.format == "json") abstract_content = dkb::to_json(*abstract);
      else if (opts.format == "text") abstract_content = dkb::to_text(*abstract);
      else abstract_content = dkb::to_dot(*abstract);
      write_file(opts.out_path + ".abstract", abstract_content);
    }
  }

  if (!export_only) {
    std::cout << "|P|=" << metrics.edges << " |V|=" << metrics.visited
              << " Inc=" << metrics.inconsistent << " time=" << metrics.seconds << "s"
              << " plans=" << plans.size() << (metrics.timed_out ? " (timed out)" : "") << "\n";
    for (const dkb::Plan& plan : plans)
      std::cout << plan.str() << (dkb::redundant(plan, plans) ? "  [redundant]" : "") << "\n";
  }
  return plans.empty() && !export_only ? kExitNoPlan : kExitOk;
}

int cmd_bench(const std::string& grid_spec, int reps, double timeout_s,
              const std::string& out_csv, bool ref_columns) {
  std::vector<dkb::ScenarioParams> grid = dkb::parse_grid_spec(grid_spec);
  dkb::BenchReport report = dkb::run_grid(
      grid, reps, std::chrono::milliseconds(static_cast<long>(timeout_s * 1000)));
  std::string csv = dkb::to_csv(report, ref_columns);
  if (out_csv.empty()) std::cout << csv;
  else write_file(out_csv, csv);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Planner over DL-Lite dynamic knowledge bases"};
  app.require_subcommand(1);

  std::string kb_path, query_text;
  PlanOptions plan_opts;
  std::string grid_spec = "mng=1..1,emp=1..1,doc=1..1";
  std::string out_csv;
  int reps = 1;
  double bench_timeout_s = 200.0;
  bool ref_columns = false;
  unsigned seed = 0;

  CLI::App* check = app.add_subcommand("check", "check ABox consistency against the TBox");
  check->add_option("kb", kb_path, "KB file")->required();

  CLI::App* query = app.add_subcommand("query", "evaluate certain answers of a query");
  query->add_option("kb", kb_path, "KB file")->required();
  query->add_option("query", query_text, "query, e.g. 'Manager(?x), canManage(?y,?z)'")
      ->required();

  auto add_plan_options = [&plan_opts](CLI::App* cmd) {
    cmd->add_option("kb", plan_opts.kb_path, "KB file")->required();
    cmd->add_option("--algo", plan_opts.algo, "planner")
        ->check(CLI::IsMember({"fp", "abp-fpi"}));
    cmd->add_option("--strategy", plan_opts.strategy, "extraction strategy")
        ->check(CLI::IsMember({"fifo", "lifo"}));
    cmd->add_option("--mode", plan_opts.mode, "all plans or first plan")
        ->check(CLI::IsMember({"all", "first"}));
    cmd->add_option("--format", plan_opts.format, "graph output format")
        ->check(CLI::IsMember({"dot", "json", "text"}));
    cmd->add_option("--out", plan_opts.out_path, "graph output path");
    cmd->add_option("--timeout-s", plan_opts.timeout_s, "abort after this many seconds");
  };
  CLI::App* plan = app.add_subcommand("plan", "build the planning graph and list plans");
  add_plan_options(plan);
  CLI::App* export_cmd = app.add_subcommand("export", "build and export the planning graph");
  add_plan_options(export_cmd);

  CLI::App* bench = app.add_subcommand("bench", "compare fp and abp-fpi over a scenario grid");
  bench->add_option("--grid", grid_spec,
                    "grid spec, e.g. mng=1..2,emp=1..3,doc=1..3, or 'table1' for the "
                    "published cells");
  bench->add_option("--reps", reps, "repetitions per cell");
  bench->add_option("--timeout-s", bench_timeout_s, "per-run timeout in seconds");
  bench->add_option("--out", out_csv, "CSV output path (stdout when absent)");
  bench->add_flag("--ref", ref_columns, "append published reference columns");
  bench->add_option("--seed", seed, "seed for auxiliary randomized runs");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return cmd_check(kb_path);
    if (query->parsed()) return cmd_query(kb_path, query_text);
    if (plan->parsed()) return cmd_plan(plan_opts, false);
    if (export_cmd->parsed()) return cmd_plan(plan_opts, true);
    if (bench->parsed()) return cmd_bench(grid_spec, reps, bench_timeout_s, out_csv, ref_columns);
  } catch (const dkb::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
