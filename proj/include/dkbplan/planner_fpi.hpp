#pragma once

#include "dkbplan/planner_abp.hpp"
#include "dkbplan/planner_fp.hpp"

namespace dkb {

// Successors of `a` restricted by the abstract planning graph: for every pair
// <sigma, act, link> whose abstract state includes a, the guard is evaluated
// conjoined with sigma (the link identifies their shared variables) and each
// answer is projected through the link onto the action parameters.
std::vector<Transition> next_a(Reasoner& reasoner, const ABox& a,
                               const AbstractPlanningGraph& abstract,
                               const std::vector<Action>& gamma);

// Forward Plan Instantiation: the forward search loop with next_a in place of
// next.
std::pair<PlanningGraph, RunMetrics> fpi(Reasoner& reasoner, const PlanningProblem& problem,
                                         const AbstractPlanningGraph& abstract,
                                         const SearchConfig& cfg = {});

struct AbpFpiResult {
  AbstractPlanningGraph abstract;
  PlanningGraph graph;
  RunMetrics fpi_metrics;   // instantiation phase only, as the reports count
  double abp_seconds = 0.0;
  double total_seconds = 0.0;
};

// The two-phase pipeline: abstract backward planning, then instantiation.
AbpFpiResult abp_fpi(Reasoner& reasoner, const PlanningProblem& problem,
                     const SearchConfig& cfg = {});

}  // namespace dkb
