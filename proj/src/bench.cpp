#include "dkbplan/bench.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "dkbplan/errors.hpp"

namespace dkb {

const std::vector<ReferenceRow>& reference_table() {
  static const std::vector<ReferenceRow> rows = {
      {1, 1, 1, 3, 17, 13, 0.06, 3, 7, 3, 0.07},
      {1, 1, 2, 9, 38, 29, 0.48, 5, 10, 4, 0.30},
      {1, 1, 3, 25, 87, 66, 0.28, 7, 13, 5, 0.10},
      {1, 2, 2, 50, 154, 116, 0.71, 10, 15, 4, 0.15},
      {2, 2, 2, 80, 172, 134, 1.35, 16, 16, 5, 0.22},
      {2, 2, 3, 270, 413, 291, 3.42, 22, 21, 6, 0.18},
      {2, 3, 3, 816, 1802, 1290, 33.16, 33, 28, 6, 0.24},
      {20, 20, 20, 0, 0, 0, -1.0, 8800, 862, 41, 197.40},
  };
  return rows;
}

const ReferenceRow* reference_for(const ScenarioParams& params) {
  for (const ReferenceRow& row : reference_table())
    if (row.managers == params.n_managers && row.employees == params.n_employees &&
        row.techdocs == params.n_techdocs)
      return &row;
  return nullptr;
}

namespace {

struct SingleRun {
  RunMetrics metrics;
  PlanningGraph graph;
};

void count_plans(const PlanningGraph& graph, const PlanningProblem& problem, Reasoner& reasoner,
                 std::size_t cap, BenchRow& row) {
  ExtractOptions opts;
  opts.max_plans = cap;
  std::set<Plan> plans = extract_plans(graph, problem, reasoner, opts);
  row.plans = plans.size();
  row.plans_capped = cap != 0 && plans.size() >= cap;
  row.redundant_plans = 0;
  if (!row.plans_capped)
    for (const Plan& p : plans)
      if (redundant(p, plans)) ++row.redundant_plans;
}

}  // namespace

BenchReport run_grid(const std::vector<ScenarioParams>& grid, int repetitions,
                     std::chrono::milliseconds timeout, std::size_t plan_cap) {
  if (repetitions < 1) throw InvalidRepetitions("repetitions must be at least 1");
  BenchReport report;

  for (const ScenarioParams& params : grid) {
    ProblemSpec spec = generate(params);
    PlanningProblem problem = make_problem(spec);
    int depth = default_depth_bound(problem);

    BenchRow fp_row;
    fp_row.params = params;
    fp_row.algorithm = "fp";
    std::optional<PlanningGraph> fp_graph;
    {
      double total = 0.0;
      for (int rep = 0; rep < repetitions && !fp_row.timed_out; ++rep) {
        Reasoner reasoner(problem.dkb.tbox, depth);  // cold cache per repetition
        SearchConfig cfg;
        cfg.deadline = std::chrono::steady_clock::now() + timeout;
        auto [graph, metrics] = forward_plan(reasoner, problem, cfg);
        total += metrics.seconds;
        fp_row.timed_out = metrics.timed_out;
        fp_row.edges = metrics.edges;
        fp_row.visited = metrics.visited;
        fp_row.inconsistent = metrics.inconsistent;
        if (rep == repetitions - 1 && !metrics.timed_out) {
          count_plans(graph, problem, reasoner, plan_cap, fp_row);
          fp_graph = std::move(graph);
        }
      }
      fp_row.mean_seconds = total / repetitions;
    }
    int fp_index = static_cast<int>(report.rows.size());
    report.rows.push_back(fp_row);

    BenchRow fpi_row;
    fpi_row.params = params;
    fpi_row.algorithm = "abp-fpi";
    fpi_row.paired_with = fp_index;
    std::optional<PlanningGraph> fpi_graph;
    std::optional<PlanningProblem> fpi_problem;
    {
      double total = 0.0;
      for (int rep = 0; rep < repetitions && !fpi_row.timed_out; ++rep) {
        Reasoner reasoner(problem.dkb.tbox, depth);
        SearchConfig cfg;
        cfg.deadline = std::chrono::steady_clock::now() + timeout;
        try {
          AbpFpiResult result = abp_fpi(reasoner, problem, cfg);
          total += result.total_seconds;
          fpi_row.timed_out = result.fpi_metrics.timed_out;
          fpi_row.edges = result.fpi_metrics.edges;
          fpi_row.visited = result.fpi_metrics.visited;
          fpi_row.inconsistent = result.fpi_metrics.inconsistent;
          if (rep == repetitions - 1 && !result.fpi_metrics.timed_out) {
            count_plans(result.graph, problem, reasoner, plan_cap, fpi_row);
            fpi_graph = std::move(result.graph);
          }
        } catch (const Error&) {  // the abstract phase hit the deadline
          fpi_row.timed_out = true;
        }
      }
      fpi_row.mean_seconds = total / repetitions;
    }
    report.rows.push_back(fpi_row);

    std::optional<bool> inclusion;
    if (fp_graph && fpi_graph && !fp_row.plans_capped && !fpi_row.plans_capped) {
      Reasoner reasoner(problem.dkb.tbox, depth);
      std::set<Plan> plans_fp = extract_plans(*fp_graph, problem, reasoner);
      std::set<Plan> plans_fpi = extract_plans(*fpi_graph, problem, reasoner);
      inclusion = std::includes(plans_fp.begin(), plans_fp.end(), plans_fpi.begin(),
                                plans_fpi.end());
    }
    report.inclusion_ok.push_back(inclusion);
    report.inclusion_ok.push_back(inclusion);
  }
  return report;
}

std::string to_csv(const BenchReport& report, bool reference_columns) {
  std::ostringstream out;
  out << "mng,emp,techdoc,algo,P,V,Inc,time_s,plans,redundant,timeout";
  if (reference_columns) out << ",ref_P,ref_V,ref_Inc,ref_time_s";
  out << "\n";
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const BenchRow& row = report.rows[i];
    out << row.params.n_managers << "," << row.params.n_employees << ","
        << row.params.n_techdocs << "," << row.algorithm << ",";
    if (row.timed_out) {
      out << ",,," << "inf" << ",,,1";
    } else {
      out << row.edges << "," << row.visited << "," << row.inconsistent << ","
          << row.mean_seconds << "," << row.plans << (row.plans_capped ? "+" : "") << ","
          << row.redundant_plans << ",0";
    }
    if (reference_columns) {
      const ReferenceRow* ref = reference_for(row.params);
      if (!ref) {
        out << ",,,,";
      } else if (row.algorithm == "fp") {
        if (ref->fp_seconds < 0) {
          out << ",,,,inf";
        } else {
          out << "," << ref->fp_edges << "," << ref->fp_visited << "," << ref->fp_inconsistent
              << "," << ref->fp_seconds;
        }
      } else {
        out << "," << ref->fpi_edges << "," << ref->fpi_visited << "," << ref->fpi_inconsistent
            << "," << ref->fpi_seconds;
      }
    }
    out << "\n";
  }
  return out.str();
}

namespace {

Term cst(const std::string& name) { return Term::constant(name); }
Term var(const std::string& name) { return Term::variable(name); }

}  // namespace

PlanningProblem random_dkb(unsigned seed, const RandomDkbBounds& bounds) {
  std::mt19937 rng(seed);
  auto pick = [&rng](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };

  for (int attempt = 0; attempt < bounds.retry_budget; ++attempt) {
    // Ranked alphabet: concepts below roles, and within each kind by index.
    // Simple joins conclude into strictly higher-ranked roles and action
    // effects outrank their guards, so backward resolution always descends.
    int n_concepts = pick(3, 6);
    int n_roles = pick(1, 3);
    int n_constants = pick(2, std::min(4, bounds.max_constants));
    auto concept_name = [](int i) { return "C" + std::to_string(i); };
    auto role_name = [](int i) { return "R" + std::to_string(i); };
    auto const_name = [](int i) { return "c" + std::to_string(i); };
    auto rank = [&](const std::string& pred) {
      int idx = std::stoi(pred.substr(1));
      return pred[0] == 'C' ? idx : 100 + idx;
    };

    std::vector<RawAxiom> axioms;
    int n_incl = pick(0, std::max(0, bounds.max_tbox_axioms - 2));
    for (int i = 0; i < n_incl; ++i) {
      ConceptInclusion ci;
      ci.lhs = BasicConcept::atomic(concept_name(pick(0, n_concepts - 1)));
      ci.rhs = BasicConcept::atomic(concept_name(pick(0, n_concepts - 1)));
      if (ci.lhs == ci.rhs) continue;
      axioms.push_back(ci);
    }
    {
      ConceptInclusion disj;
      disj.lhs = BasicConcept::atomic(concept_name(pick(0, n_concepts - 1)));
      disj.rhs = BasicConcept::atomic(concept_name(pick(0, n_concepts - 1)));
      disj.rhs_negated = true;
      if (!(disj.lhs == disj.rhs)) axioms.push_back(disj);
    }
    if (pick(0, 1) == 1) axioms.push_back(Functionality{RoleExpr{role_name(pick(0, n_roles - 1)), false}});

    std::set<std::string> sj_conclusions;
    int n_sj = pick(0, bounds.max_sj_axioms);
    for (int i = 0; i < n_sj && n_roles > 0; ++i) {
      std::string role = role_name(pick(0, n_roles - 1));
      std::string p1 = concept_name(pick(0, n_concepts - 1));
      std::string p2 = concept_name(pick(0, n_concepts - 1));
      if (p1 == p2) continue;
      axioms.push_back(RawSimpleJoin{{Atom(p1, var("x")), Atom(p2, var("y"))},
                                     Atom(role, var("x"), var("y"))});
      sj_conclusions.insert(role);
    }

    TBox tbox;
    try {
      tbox = validate_tbox(axioms);
    } catch (const MalformedAxiom&) {
      continue;
    }

    // Actions: guards use strictly lower-ranked predicates than effects.
    std::vector<Action> actions;
    int n_actions = pick(1, bounds.max_actions);
    for (int i = 0; i < n_actions; ++i) {
      Action act;
      act.name = "a" + std::to_string(i);
      bool effect_role = n_roles > 0 && pick(0, 2) == 0;
      std::string effect_pred =
          effect_role ? role_name(pick(0, n_roles - 1)) : concept_name(pick(0, n_concepts - 1));
      if (sj_conclusions.count(effect_pred)) continue;  // keep actions well formed

      std::vector<std::string> lower_concepts, lower_roles;
      for (int ci = 0; ci < n_concepts; ++ci)
        if (rank(concept_name(ci)) < rank(effect_pred)) lower_concepts.push_back(concept_name(ci));
      for (int ri = 0; ri < n_roles; ++ri)
        if (rank(role_name(ri)) < rank(effect_pred)) lower_roles.push_back(role_name(ri));
      if (lower_concepts.empty() && lower_roles.empty()) continue;

      int n_guard = pick(1, 2);
      std::vector<std::string> vars = {"x", "y", "z"};
      int n_vars = pick(1, 2);
      std::vector<Atom> guard;
      std::set<std::string> used_vars;
      for (int g = 0; g < n_guard; ++g) {
        bool use_role = !lower_roles.empty() && (lower_concepts.empty() || pick(0, 1) == 1);
        if (use_role) {
          std::string v1 = vars[pick(0, n_vars - 1)];
          std::string v2 = vars[pick(0, n_vars - 1)];
          guard.push_back(Atom(lower_roles[pick(0, (int)lower_roles.size() - 1)], var(v1), var(v2)));
          used_vars.insert(v1);
          used_vars.insert(v2);
        } else {
          std::string v1 = vars[pick(0, n_vars - 1)];
          guard.push_back(Atom(lower_concepts[pick(0, (int)lower_concepts.size() - 1)], var(v1)));
          used_vars.insert(v1);
        }
      }
      act.guard = CQ(guard);
      act.params.assign(used_vars.begin(), used_vars.end());

      std::vector<std::string> param_pool(used_vars.begin(), used_vars.end());
      auto effect_arg = [&]() -> Term {
        if (pick(0, 3) == 0) return cst(const_name(pick(0, n_constants - 1)));
        return var(param_pool[pick(0, (int)param_pool.size() - 1)]);
      };
      if (effect_role) {
        act.effect = Atom(effect_pred, effect_arg(), effect_arg());
      } else {
        act.effect = Atom(effect_pred, effect_arg());
      }
      actions.push_back(act);
    }
    if (actions.empty()) continue;

    // Initial state: a few random assertions, plus instantiated guard atoms
    // of a random action so that some action is usually applicable.
    std::vector<Atom> abox;
    int n_assertions = pick(1, 3);
    for (int i = 0; i < n_assertions; ++i) {
      if (n_roles > 0 && pick(0, 2) == 0) {
        abox.push_back(Atom(role_name(pick(0, n_roles - 1)),
                            cst(const_name(pick(0, n_constants - 1))),
                            cst(const_name(pick(0, n_constants - 1)))));
      } else {
        abox.push_back(Atom(concept_name(pick(0, n_concepts - 1)),
                            cst(const_name(pick(0, n_constants - 1)))));
      }
    }
    if (pick(0, 3) != 0) {
      const Action& enabled = actions[pick(0, (int)actions.size() - 1)];
      Substitution ground;
      for (const std::string& param : enabled.params)
        ground.bind(param, cst(const_name(pick(0, n_constants - 1))));
      for (const Atom& guard_atom : enabled.guard.atoms)
        abox.push_back(ground.apply(guard_atom));
    }

    // Goal over an action effect predicate, so backward search has a handle.
    const Action& target = actions[pick(0, (int)actions.size() - 1)];
    std::vector<Atom> goal_atoms;
    if (target.effect.binary()) {
      goal_atoms.push_back(Atom(target.effect.pred, var("u"), var("v")));
    } else {
      goal_atoms.push_back(Atom(target.effect.pred, var("u")));
    }
    if (pick(0, 1) == 1 && !abox.empty()) goal_atoms.push_back(abox[pick(0, (int)abox.size() - 1)]);

    try {
      PlanningProblem problem =
          make_problem(tbox, ABox(std::move(abox)), actions, UCQ(CQ(std::move(goal_atoms))));
      Reasoner screen(problem.dkb.tbox, default_depth_bound(problem));
      // A goal already satisfied at the initial state makes the planners
      // trivial; keep sampling.
      if (screen.goal_satisfied(problem.goal, problem.dkb.initial)) continue;
      // Tractability screen: reject candidates whose full forward space is
      // too large for the all-plans comparisons these problems exist for.
      // The cap makes rejection deterministic per seed.
      SearchConfig cfg;
      cfg.max_visited = 2000;
      auto [graph, metrics] = forward_plan(screen, problem, cfg);
      if (metrics.timed_out) continue;
      return problem;
    } catch (const ValidationError&) {
      continue;
    }
  }
  throw GenerationExhausted("no valid random problem within the retry budget for seed " +
                            std::to_string(seed));
}

InclusionVerdict check_inclusion(const PlanningProblem& problem) {
  int depth = default_depth_bound(problem);
  InclusionVerdict verdict;
  {
    Reasoner reasoner(problem.dkb.tbox, depth);
    auto [graph, metrics] = forward_plan(reasoner, problem);
    verdict.plans_fp = extract_plans(graph, problem, reasoner);
  }
  {
    Reasoner reasoner(problem.dkb.tbox, depth);
    AbpFpiResult result = abp_fpi(reasoner, problem);
    verdict.plans_fpi = extract_plans(result.graph, problem, reasoner);
  }
  verdict.included = std::includes(verdict.plans_fp.begin(), verdict.plans_fp.end(),
                                   verdict.plans_fpi.begin(), verdict.plans_fpi.end());
  for (const Plan& p : verdict.plans_fp)
    if (!redundant(p, verdict.plans_fp) && !verdict.plans_fpi.count(p))
      verdict.missing_nonredundant.push_back(p);
  return verdict;
}

std::vector<ScenarioParams> parse_grid_spec(const std::string& spec) {
  // "mng=1..2,emp=1..3,doc=2" -> cross product of the three ranges.
  auto parse_range = [&](const std::string& part, const std::string& key) {
    std::string prefix = key + "=";
    if (part.rfind(prefix, 0) != 0)
      throw Error("grid spec: expected '" + key + "=lo[..hi]', got '" + part + "'");
    std::string body = part.substr(prefix.size());
    std::size_t dots = body.find("..");
    int lo, hi;
    try {
      if (dots == std::string::npos) {
        lo = hi = std::stoi(body);
      } else {
        lo = std::stoi(body.substr(0, dots));
        hi = std::stoi(body.substr(dots + 2));
      }
    } catch (const std::exception&) {
      throw Error("grid spec: cannot parse range '" + body + "'");
    }
    if (lo > hi) throw Error("grid spec: empty range '" + body + "'");
    return std::pair<int, int>(lo, hi);
  };

  if (spec.empty()) return {};
  if (spec == "table1") {
    std::vector<ScenarioParams> grid;
    for (const ReferenceRow& row : reference_table())
      if (row.managers <= 2) grid.push_back(ScenarioParams{row.managers, row.employees, row.techdocs});
    return grid;
  }
  std::vector<std::string> parts;
  std::stringstream in(spec);
  std::string part;
  while (std::getline(in, part, ',')) {
    if (!part.empty()) parts.push_back(part);
  }
  if (parts.size() != 3) throw Error("grid spec must have mng=..,emp=..,doc=.. parts");
  auto [mlo, mhi] = parse_range(parts[0], "mng");
  auto [elo, ehi] = parse_range(parts[1], "emp");
  auto [dlo, dhi] = parse_range(parts[2], "doc");

  std::vector<ScenarioParams> grid;
  for (int m = mlo; m <= mhi; ++m)
    for (int e = elo; e <= ehi; ++e)
      for (int d = dlo; d <= dhi; ++d) grid.push_back(ScenarioParams{m, e, d});
  return grid;
}

}  // namespace dkb
