#include "dkbplan/planner_fpi.hpp"

#include <algorithm>
#include <chrono>

namespace dkb {

std::vector<Transition> next_a(Reasoner& reasoner, const ABox& a,
                               const AbstractPlanningGraph& abstract,
                               const std::vector<Action>& gamma) {
  std::vector<Transition> out;
  std::set<std::pair<std::string, Substitution>> seen;

  for (const AbstractPair& pair : abstract.pairs) {
    const Action* action = nullptr;
    for (const Action& act : gamma)
      if (act.name == pair.action) {
        action = &act;
        break;
      }
    if (!action) continue;

    // ans(q and sigma, T, A): the guard is embedded in sigma via the link, so
    // evaluating sigma and projecting through the link onto the parameters
    // yields exactly the restricted answers.
    std::vector<Substitution> answers = reasoner.ans(pair.query, a);
    for (const Substitution& sigma_answer : answers) {
      Substitution params;
      bool total = true;
      for (const std::string& param : action->params) {
        auto it = pair.link.find(param);
        if (it == pair.link.end()) {
          total = false;
          break;
        }
        Term image = sigma_answer.apply(it->second);
        if (!image.is_constant()) {
          total = false;
          break;
        }
        params.bind(param, image);
      }
      if (!total) continue;
      if (!seen.emplace(action->name, params).second) continue;
      out.push_back(Transition{action, params, apply(*action, params, a)});
    }
  }
  return out;
}

std::pair<PlanningGraph, RunMetrics> fpi(Reasoner& reasoner, const PlanningProblem& problem,
                                         const AbstractPlanningGraph& abstract,
                                         const SearchConfig& cfg) {
  return plan_search_loop(reasoner, problem, cfg, [&](const ABox& state) {
    return next_a(reasoner, state, abstract, problem.dkb.actions);
  });
}

AbpFpiResult abp_fpi(Reasoner& reasoner, const PlanningProblem& problem,
                     const SearchConfig& cfg) {
  auto started = std::chrono::steady_clock::now();
  AbpFpiResult result;
  AbpConfig abp_cfg;
  abp_cfg.deadline = cfg.deadline;
  result.abstract = abstract_backward_plan(reasoner, problem, abp_cfg);
  result.abp_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  auto [graph, metrics] = fpi(reasoner, problem, result.abstract, cfg);
  result.graph = std::move(graph);
  result.fpi_metrics = metrics;
  result.total_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

}  // namespace dkb
