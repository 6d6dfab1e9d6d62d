#pragma once

#include <string>
#include <vector>

#include "dkbplan/dkb.hpp"
#include "dkbplan/query.hpp"
#include "dkbplan/tbox.hpp"

namespace dkb {

// A parsed KB file: schema, initial state, actions, and goal. Still to be
// semantically validated via make_problem (consistency, well-formedness).
struct ProblemSpec {
  TBox tbox;
  ABox abox;
  std::vector<Action> actions;
  UCQ goal;

  friend bool operator==(const ProblemSpec& a, const ProblemSpec& b) {
    return a.tbox == b.tbox && a.abox == b.abox && a.actions == b.actions && a.goal == b.goal;
  }
};

// Parses the line-oriented KB format:
//   [tbox]    A <= B | A <= not B | exists R <= B | A <= exists R . B |
//             funct R | R <= S | R <= not S      (one axiom per line)
//   [sj]      N1(?x), N2(?y) -> R(?x,?y)
//   [abox]    C(c) | R(c,d)
//   [actions] name(?x,?y) : atom, atom => atom
//   [goal]    comma-separated atoms; one conjunctive query per line
// '#' starts a comment. Throws ParseError (with line/column) on syntax
// errors and ValidationError on semantic ones (unknown section, free effect
// variable, missing goal).
ProblemSpec parse_kb(const std::string& text);

ProblemSpec parse_kb_file(const std::string& path);

// Emits the same format parse_kb reads; parse_kb(serialize_kb(s)) == s.
std::string serialize_kb(const ProblemSpec& spec);

// Query string for the CLI: disjuncts separated by '|', atoms by ','.
UCQ parse_query(const std::string& text);

PlanningProblem make_problem(const ProblemSpec& spec);

}  // namespace dkb
