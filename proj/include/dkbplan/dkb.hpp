#pragma once

#include <string>
#include <vector>

#include "dkbplan/query.hpp"
#include "dkbplan/tbox.hpp"

namespace dkb {

class Reasoner;

// a(x1,...,xn) : q ~> e. The guard q is a conjunctive query, the effect e a
// single, possibly non-ground assertion template with vars(e) subset of
// vars(q) = {x1,...,xn}.
struct Action {
  std::string name;
  std::vector<std::string> params;
  CQ guard;
  Atom effect;

  std::string str() const;

  friend auto operator<=>(const Action&, const Action&) = default;
};

// Checks vars(effect) subset of vars(guard) = params; throws ValidationError.
void check_action_shape(const Action& act);

// True iff the effect predicate is disjoint from every simple-join conclusion
// predicate in sj(T).
bool well_formed(const Action& act, const TBox& t);

// Applies a ground instantiation: returns a united with {effect.theta}.
// Throws NonGroundEffect when theta leaves an effect variable free.
ABox apply(const Action& act, const Substitution& theta, const ABox& a);

// A Dynamic Knowledge Base <T, A0, Gamma>. Construction enforces that the
// initial state is consistent and all actions are well formed.
struct DKB {
  TBox tbox;
  ABox initial;
  std::vector<Action> actions;
};

struct PlanningProblem {
  DKB dkb;
  UCQ goal;
  std::vector<std::string> warnings;  // e.g. goal predicates outside alph
};

// Validates and assembles a DKB; throws ValidationError on an inconsistent
// initial ABox or a non-well-formed action.
DKB make_dkb(TBox tbox, ABox initial, std::vector<Action> actions);

// Wraps make_dkb and attaches the goal; unknown goal predicates produce a
// warning, not an error.
PlanningProblem make_problem(TBox tbox, ABox initial, std::vector<Action> actions, UCQ goal);

// One guard answer applied to one action: the transition A --act,theta--> target.
struct Transition {
  const Action* action;
  Substitution theta;
  ABox target;
};

// All transitions out of `a`: one per (action, certain answer of its guard).
// Successors are not consistency-filtered here; the planners discard
// inconsistent states on extraction. Throws InconsistentState via ans.
std::vector<Transition> next(Reasoner& reasoner, const ABox& a, const std::vector<Action>& gamma);

// Default null-generation depth bound for a problem: the largest guard/goal
// atom count plus one.
int default_depth_bound(const PlanningProblem& problem);

}  // namespace dkb
