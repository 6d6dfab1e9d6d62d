#pragma once

#include "dkbplan/parser.hpp"

namespace dkb {

// Sizing knobs for the document-review scenario. Managers and documents are
// mandatory for a well-posed instance; employees enter as plain Employee so a
// setTechnician step stays necessary.
struct ScenarioParams {
  int n_managers = 1;
  int n_employees = 1;
  int n_techdocs = 1;
  bool include_administrative = false;
  int urgent_doc_index = 0;

  friend auto operator<=>(const ScenarioParams&, const ScenarioParams&) = default;
};

// The document-review case study exactly as specified: 22 schema axioms, two
// simple joins, six assertions, four actions, and the review goal.
ProblemSpec appendix_fixture();

// The scaled scenario: the fixture's schema, actions, and goal over a
// generated ABox. Throws InvalidParams when no document can carry the goal.
ProblemSpec generate(const ScenarioParams& params);

}  // namespace dkb
