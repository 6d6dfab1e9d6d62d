#include "dkbplan/dkb.hpp"

#include <algorithm>

#include "dkbplan/errors.hpp"
#include "dkbplan/reasoner.hpp"

namespace dkb {

std::string Action::str() const {
  std::string out = name + "(";
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) out += ",";
    out += "?" + params[i];
  }
  out += ") : " + guard.str() + " => " + effect.str();
  return out;
}

void check_action_shape(const Action& act) {
  std::set<std::string> guard_vars = act.guard.variables();
  std::set<std::string> param_set(act.params.begin(), act.params.end());
  if (param_set.size() != act.params.size())
    throw ValidationError("duplicate parameter in action " + act.name);
  if (guard_vars != param_set)
    throw ValidationError("action " + act.name +
                          ": parameter list must equal the guard variables");
  for (const Term& t : act.effect.args) {
    if (t.is_variable() && !guard_vars.count(t.name()))
      throw ValidationError("action " + act.name + ": effect variable ?" + t.name() +
                            " does not occur in the guard");
    if (t.is_null())
      throw ValidationError("action " + act.name + ": nulls cannot appear in effects");
  }
  if (act.effect.args.empty() || act.effect.args.size() > 2)
    throw ValidationError("action " + act.name + ": effect arity must be 1 or 2");
}

bool well_formed(const Action& act, const TBox& t) {
  return t.sj_conclusion_preds().count(act.effect.pred) == 0;
}

ABox apply(const Action& act, const Substitution& theta, const ABox& a) {
  Atom ground = theta.apply(act.effect);
  if (!ground.over_constants())
    throw NonGroundEffect("action " + act.name + ": effect " + ground.str() +
                          " is not ground over constants");
  return a.with(ground);
}

DKB make_dkb(TBox tbox, ABox initial, std::vector<Action> actions) {
  for (const Action& act : actions) {
    check_action_shape(act);
    if (!well_formed(act, tbox))
      throw ValidationError("action " + act.name + " is not well formed: effect predicate " +
                            act.effect.pred + " occurs in a simple join conclusion");
  }
  {
    Reasoner check(tbox, 1);
    if (!check.consistent(initial))
      throw ValidationError("initial ABox is inconsistent: " + check.violation(initial));
  }
  return DKB{std::move(tbox), std::move(initial), std::move(actions)};
}

PlanningProblem make_problem(TBox tbox, ABox initial, std::vector<Action> actions, UCQ goal) {
  PlanningProblem p;
  std::set<std::string> known = alph(tbox, initial);
  for (const Action& act : actions) {
    for (const Atom& atom : act.guard.atoms) known.insert(atom.pred);
    known.insert(act.effect.pred);
  }
  for (const CQ& cq : goal.disjuncts)
    for (const Atom& atom : cq.atoms)
      if (!known.count(atom.pred))
        p.warnings.push_back("goal predicate " + atom.pred +
                             " does not occur in the problem alphabet");
  p.dkb = make_dkb(std::move(tbox), std::move(initial), std::move(actions));
  p.goal = std::move(goal);
  return p;
}

std::vector<Transition> next(Reasoner& reasoner, const ABox& a,
                             const std::vector<Action>& gamma) {
  std::vector<Transition> out;
  for (const Action& act : gamma) {
    std::vector<Substitution> answers = reasoner.ans(act.guard, a);
    for (const Substitution& theta : answers)
      out.push_back(Transition{&act, theta, apply(act, theta, a)});
  }
  return out;
}

int default_depth_bound(const PlanningProblem& problem) {
  std::size_t longest = 1;
  for (const Action& act : problem.dkb.actions)
    longest = std::max(longest, act.guard.atoms.size());
  for (const CQ& cq : problem.goal.disjuncts) longest = std::max(longest, cq.atoms.size());
  return static_cast<int>(longest) + 1;
}

}  // namespace dkb
