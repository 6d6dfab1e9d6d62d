#include "dkbplan/planner_abp.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <set>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "dkbplan/errors.hpp"

namespace dkb {

std::string AbstractPair::link_str() const {
  std::string out = "[";
  bool first = true;
  for (const auto& [param, term] : link) {
    if (!first) out += ", ";
    first = false;
    out += param + " -> " + term.str();
  }
  return out + "]";
}

const AbstractState* AbstractPlanningGraph::find_state(const std::string& key) const {
  for (const AbstractState& s : states)
    if (s.canonical_key == key) return &s;
  return nullptr;
}

namespace {

// Set-semantics cleanup after substitution application: duplicate atoms are
// collapsed, presentation order is kept.
CQ dedup(const CQ& q) {
  CQ out;
  for (const Atom& a : q.atoms)
    if (std::find(out.atoms.begin(), out.atoms.end(), a) == out.atoms.end())
      out.atoms.push_back(a);
  return out;
}

}  // namespace

std::vector<Resolvent> resolve_detailed(const CQ& sigma, const CQ& premise,
                                        const Atom& conclusion) {
  std::vector<Resolvent> out;
  for (std::size_t i = 0; i < sigma.atoms.size(); ++i) {
    std::optional<Substitution> mgu = unify(sigma.atoms[i], conclusion);
    if (!mgu) continue;
    CQ replaced;
    replaced.atoms.reserve(sigma.atoms.size() + premise.atoms.size());
    for (std::size_t k = 0; k < i; ++k) replaced.atoms.push_back(sigma.atoms[k]);
    for (const Atom& p : premise.atoms) replaced.atoms.push_back(p);
    for (std::size_t k = i + 1; k < sigma.atoms.size(); ++k)
      replaced.atoms.push_back(sigma.atoms[k]);
    out.push_back(Resolvent{dedup(apply(*mgu, replaced)), *mgu, i});
  }
  return out;
}

std::vector<CQ> resolve(const CQ& sigma, const CQ& premise, const Atom& conclusion) {
  std::vector<CQ> out;
  for (Resolvent& r : resolve_detailed(sigma, premise, conclusion))
    out.push_back(std::move(r.query));
  return out;
}

std::vector<CQ> fully_resolve(const CQ& sigma, const std::vector<SimpleJoinAxiom>& sj) {
  std::set<std::string> conclusion_preds;
  for (const SimpleJoinAxiom& axiom : sj) conclusion_preds.insert(axiom.conclusion_role);

  auto resolvable = [&](const CQ& q) {
    for (const Atom& a : q.atoms)
      if (conclusion_preds.count(a.pred)) return true;
    return false;
  };

  std::vector<CQ> done;
  std::set<std::string> done_keys;
  std::set<std::string> seen;
  std::deque<CQ> work{sigma};
  seen.insert(canonicalize(sigma).key);

  while (!work.empty()) {
    CQ current = std::move(work.front());
    work.pop_front();
    if (!resolvable(current)) {
      std::string key = canonicalize(current).key;
      if (done_keys.insert(key).second) done.push_back(current);
      continue;
    }
    std::set<std::string> avoid = current.variables();
    for (const SimpleJoinAxiom& axiom : sj) {
      // Premise N1(x), N2(y) with x, y fresh w.r.t. the current query.
      CQ pattern{Atom(axiom.premise_first, Term::variable("x")),
                 Atom(axiom.premise_second, Term::variable("y"))};
      Atom conclusion(axiom.conclusion_role, Term::variable("x"), Term::variable("y"));
      CQ both = pattern;
      both.atoms.push_back(conclusion);
      std::map<std::string, std::string> renaming;
      CQ renamed = rename_apart(both, avoid, &renaming);
      CQ premise{renamed.atoms[0], renamed.atoms[1]};
      Atom concl = renamed.atoms[2];

      for (Resolvent& r : resolve_detailed(current, premise, concl))
        if (seen.insert(canonicalize(r.query).key).second) work.push_back(std::move(r.query));
    }
  }
  return done;
}

std::vector<PrevResult> prev_a(const CQ& sigma, const std::vector<Action>& gamma) {
  std::vector<PrevResult> out;
  std::set<std::string> avoid = sigma.variables();
  for (const Action& act : gamma) {
    CQ guard_and_effect = act.guard;
    guard_and_effect.atoms.push_back(act.effect);
    std::map<std::string, std::string> renaming;
    CQ renamed = rename_apart(guard_and_effect, avoid, &renaming);
    CQ guard(std::vector<Atom>(renamed.atoms.begin(), renamed.atoms.end() - 1));
    Atom effect = renamed.atoms.back();

    for (Resolvent& r : resolve_detailed(sigma, guard, effect)) {
      PrevResult prev;
      prev.query = std::move(r.query);
      prev.action = act.name;
      for (const std::string& param : act.params) {
        auto it = renaming.find(param);
        std::string fresh = it == renaming.end() ? param : it->second;
        prev.link.emplace(param, r.mgu.apply(Term::variable(fresh)));
      }
      out.push_back(std::move(prev));
    }
  }
  return out;
}

namespace {

// Rewrites a pair's query and link into the state's canonical naming so that
// identity and instantiation agree on variable names.
AbstractPair transport(const PrevResult& prev, int state_id, const CanonicalCQ& canon) {
  AbstractPair pair;
  pair.state_id = state_id;
  pair.action = prev.action;
  pair.query = canon.query;
  for (const auto& [param, term] : prev.link) {
    if (term.is_variable()) {
      auto it = canon.renaming.find(term.name());
      // Every link target occurs in the query, so the renaming covers it.
      assert(it != canon.renaming.end());
      pair.link.emplace(param, Term::variable(it->second));
    } else {
      pair.link.emplace(param, term);
    }
  }
  return pair;
}

std::string pair_identity(const AbstractPair& p) {
  std::string key = p.action + "@" + canonicalize(p.query).key + "|";
  for (const auto& [param, term] : p.link) key += param + "->" + term.str() + ";";
  return key;
}

}  // namespace

AbstractPlanningGraph abstract_backward_plan(Reasoner& reasoner, const PlanningProblem& problem,
                                             const AbpConfig& cfg) {
  AbstractPlanningGraph graph;
  std::unordered_map<std::string, int> state_ids;   // canonical key -> id
  std::set<std::string> pair_keys;
  std::set<std::tuple<int, int, std::string>> edge_keys;
  const ABox& initial = problem.dkb.initial;

  auto intern_state = [&](const CQ& query, bool sj_intermediate) {
    CanonicalCQ canon = canonicalize(query);
    auto it = state_ids.find(canon.key);
    if (it != state_ids.end()) {
      if (!sj_intermediate) graph.states[it->second].sj_intermediate = false;
      return it->second;
    }
    AbstractState state;
    state.id = static_cast<int>(graph.states.size());
    state.query = canon.query;
    state.canonical_key = canon.key;
    state.initial_satisfied = reasoner.holds(canon.query, initial);
    state.sj_intermediate = sj_intermediate;
    state_ids.emplace(canon.key, state.id);
    graph.states.push_back(state);
    return state.id;
  };

  auto add_edge = [&](int from, int to, AbstractEdge::Kind kind, std::string label) {
    if (from == to) return;
    if (!edge_keys.emplace(from, to, label).second) return;
    graph.edges.push_back(AbstractEdge{from, to, kind, std::move(label)});
  };

  std::set<std::string> visited;  // canonical keys of expanded abstract states

  for (const CQ& goal_disjunct : problem.goal.disjuncts) {
    std::deque<CQ> remaining{goal_disjunct};
    intern_state(goal_disjunct, false);

    while (!remaining.empty()) {
      if (cfg.deadline && std::chrono::steady_clock::now() > *cfg.deadline)
        throw Error("abstract backward planning exceeded its deadline");
      CQ sigma = std::move(remaining.front());
      remaining.pop_front();

      CanonicalCQ sigma_canon = canonicalize(sigma);
      if (!visited.insert(sigma_canon.key).second) continue;
      if (visited.size() > cfg.max_states)
        throw Error("abstract backward planning exceeded the state cap");

      int sigma_id = intern_state(sigma, false);
      if (graph.states[sigma_id].initial_satisfied) continue;

      for (const CQ& resolved : fully_resolve(sigma, problem.dkb.tbox.sj())) {
        int resolved_id = intern_state(resolved, true);
        if (resolved_id != sigma_id)
          add_edge(resolved_id, sigma_id, AbstractEdge::Kind::SjAxiom, "SJ axiom");

        for (const PrevResult& prev : prev_a(resolved, problem.dkb.actions)) {
          CanonicalCQ canon = canonicalize(prev.query);
          int prev_id = intern_state(prev.query, false);
          AbstractPair pair = transport(prev, prev_id, canon);
          add_edge(prev_id, resolved_id, AbstractEdge::Kind::Action,
                   prev.action + " " + pair.link_str());
          if (pair_keys.insert(pair_identity(pair)).second) graph.pairs.push_back(pair);
          if (!visited.count(canon.key)) remaining.push_back(prev.query);
        }
      }
    }
  }
  return graph;
}

}  // namespace dkb
