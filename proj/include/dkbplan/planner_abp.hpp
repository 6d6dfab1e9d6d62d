#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dkbplan/dkb.hpp"
#include "dkbplan/query.hpp"
#include "dkbplan/reasoner.hpp"

namespace dkb {

// A query standing for the set conc(q,T) of consistent ABoxes in which q has
// a certain answer.
struct AbstractState {
  int id = -1;
  CQ query;                       // display form (canonically renamed)
  std::string canonical_key;      // identity up to renaming and reordering
  bool initial_satisfied = false; // ans(query, T, A0) != empty
  bool sj_intermediate = false;   // produced by FullyResolve, shown for export
};

// One backward-resolution constraint: in states satisfying `query`, action
// `action` may fire with its parameters tied to the query's terms by `link`.
struct AbstractPair {
  int state_id = -1;
  std::string action;
  CQ query;                             // same naming as the state's display form
  std::map<std::string, Term> link;     // action parameter -> term of `query`

  std::string link_str() const;
};

struct AbstractEdge {
  enum class Kind { Action, SjAxiom };
  int from;  // the regressed (previous) state
  int to;    // the state it was resolved from
  Kind kind;
  std::string label;
};

// The flat pair set produced by backward resolution, plus a presentation-only
// edge relation (including SJ-resolution steps) for export.
struct AbstractPlanningGraph {
  std::vector<AbstractState> states;
  std::vector<AbstractPair> pairs;
  std::vector<AbstractEdge> edges;

  const AbstractState* find_state(const std::string& canonical_key) const;
};

// One SLD-resolution result: the atom at `position` unified with `conclusion`
// and replaced by `premise`, with the mgu applied throughout.
struct Resolvent {
  CQ query;
  Substitution mgu;
  std::size_t position;
};

// All resolvents of sigma against premise/conclusion (which the caller has
// renamed apart from sigma): one per unifiable atom position.
std::vector<Resolvent> resolve_detailed(const CQ& sigma, const CQ& premise,
                                        const Atom& conclusion);
std::vector<CQ> resolve(const CQ& sigma, const CQ& premise, const Atom& conclusion);

// Applies simple-join resolution exhaustively: every returned query contains
// no atom whose predicate is a simple-join conclusion; sigma itself is
// returned when it already contains none.
std::vector<CQ> fully_resolve(const CQ& sigma, const std::vector<SimpleJoinAxiom>& sj);

struct PrevResult {
  CQ query;
  std::string action;
  std::map<std::string, Term> link;  // action parameter -> term of `query`
};

// Previous abstract states: for every action a : q ~> e whose (renamed-apart)
// effect unifies with an atom of sigma, the resolvent replacing that atom by
// the guard; the link records where each action parameter went under the mgu.
std::vector<PrevResult> prev_a(const CQ& sigma, const std::vector<Action>& gamma);

struct AbpConfig {
  std::size_t max_states = 100000;  // safety cap; the search space is finite
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

// Algorithm: starting from each goal disjunct, pop an abstract state; if
// satisfied in the initial state mark it and stop expanding; otherwise resolve
// simple joins fully and regress through every action, queueing unseen states
// (identity = canonical form).
AbstractPlanningGraph abstract_backward_plan(Reasoner& reasoner, const PlanningProblem& problem,
                                             const AbpConfig& cfg = {});

}  // namespace dkb
