#pragma once

#include <string>

#include "dkbplan/planner_abp.hpp"
#include "dkbplan/planner_fp.hpp"

namespace dkb {

// DOT rendering: nodes labelled by their assertion delta from the root, the
// initial state marked, goal states double-circled.
std::string to_dot(const PlanningGraph& graph, const PlanningProblem& problem,
                   Reasoner& reasoner);

// Versioned JSON document: {version, root, states:[{id, assertions}],
// edges:[{src, action, subst, dst}]}.
std::string to_json(const PlanningGraph& graph, const PlanningProblem& problem,
                    Reasoner& reasoner);

// Abstract graph: states labelled by query text, initial-satisfied states
// shaded, action edges labelled with the parameter link, SJ edges "SJ axiom".
std::string to_dot(const AbstractPlanningGraph& graph);

std::string to_json(const AbstractPlanningGraph& graph);

// Plain-text listing used by the CLI's text format.
std::string to_text(const PlanningGraph& graph, const PlanningProblem& problem,
                    Reasoner& reasoner);
std::string to_text(const AbstractPlanningGraph& graph);

}  // namespace dkb
