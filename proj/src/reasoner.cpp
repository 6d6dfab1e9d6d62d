#include "dkbplan/reasoner.hpp"

#include <algorithm>

#include "dkbplan/errors.hpp"

namespace dkb {

namespace {

bool all_named(const Atom& a) {
  return std::all_of(a.args.begin(), a.args.end(),
                     [](const Term& t) { return t.is_constant(); });
}

}  // namespace

ChasedABox::ChasedABox(ABox base, const TBox& tbox, int depth_bound) : base_(std::move(base)) {
  for (const Atom& a : base_) add(a);
  run(tbox, depth_bound);
  check_consistency(tbox);
}

bool ChasedABox::add(Atom a) {
  auto [it, inserted] = facts_.insert(std::move(a));
  if (inserted && all_named(*it)) named_by_pred_[it->pred].push_back(*it);
  return inserted;
}

const std::vector<Atom>& ChasedABox::named_facts(const std::string& pred) const {
  static const std::vector<Atom> empty;
  auto it = named_by_pred_.find(pred);
  return it == named_by_pred_.end() ? empty : it->second;
}

ABox ChasedABox::named_fragment() const {
  std::vector<Atom> atoms;
  for (const Atom& a : facts_)
    if (all_named(a)) atoms.push_back(a);
  return ABox(std::move(atoms));
}

namespace {

// Members of a basic concept in a fact set: terms t with N(t), or with an
// R-successor when the concept is an existential projection.
std::vector<Term> members(const BasicConcept& b, const std::set<Atom>& facts) {
  std::vector<Term> out;
  if (b.is_atomic()) {
    for (const Atom& f : facts)
      if (f.unary() && f.pred == b.concept_name) out.push_back(f.args[0]);
  } else {
    for (const Atom& f : facts) {
      if (!f.binary() || f.pred != b.role.name) continue;
      const Term& subj = b.role.inverted ? f.args[1] : f.args[0];
      const Term& obj = b.role.inverted ? f.args[0] : f.args[1];
      if (b.filler && !facts.count(Atom(*b.filler, obj))) continue;
      out.push_back(subj);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Oriented role fact: R(x,y) reads as pred fact (x,y), inverted as (y,x).
Atom role_fact(const RoleExpr& r, const Term& x, const Term& y) {
  return r.inverted ? Atom(r.name, y, x) : Atom(r.name, x, y);
}

bool has_witness(const RoleExpr& r, const std::optional<std::string>& filler, const Term& subj,
                 const std::set<Atom>& facts) {
  for (const Atom& f : facts) {
    if (!f.binary() || f.pred != r.name) continue;
    const Term& s = r.inverted ? f.args[1] : f.args[0];
    if (s != subj) continue;
    const Term& o = r.inverted ? f.args[0] : f.args[1];
    if (filler && !facts.count(Atom(*filler, o))) continue;
    return true;
  }
  return false;
}

}  // namespace

void ChasedABox::run(const TBox& tbox, int depth_bound) {
  auto depth_of = [this](const Term& t) {
    if (!t.is_null()) return 0;
    auto it = null_depth_.find(t.null_index());
    return it == null_depth_.end() ? 0 : it->second;
  };

  bool changed = true;
  while (changed) {
    changed = false;

    for (const ConceptInclusion& ci : tbox.concept_inclusions()) {
      if (ci.rhs_negated) continue;
      for (const Term& t : members(ci.lhs, facts_)) {
        if (ci.rhs.is_atomic()) {
          changed |= add(Atom(ci.rhs.concept_name, t));
        } else if (!has_witness(ci.rhs.role, ci.rhs.filler, t, facts_)) {
          int depth = depth_of(t) + 1;
          if (depth > depth_bound) continue;
          Term fresh = Term::null(null_counter_);
          null_depth_[null_counter_] = depth;
          ++null_counter_;
          add(role_fact(ci.rhs.role, t, fresh));
          if (ci.rhs.filler) add(Atom(*ci.rhs.filler, fresh));
          changed = true;
        }
      }
    }

    for (const RoleInclusion& ri : tbox.role_inclusions()) {
      if (ri.rhs_negated) continue;
      // Snapshot: add() invalidates no iterators on std::set, but keep the
      // scan over a stable view anyway.
      std::vector<Atom> current(facts_.begin(), facts_.end());
      for (const Atom& f : current) {
        if (!f.binary() || f.pred != ri.lhs.name) continue;
        const Term& x = ri.lhs.inverted ? f.args[1] : f.args[0];
        const Term& y = ri.lhs.inverted ? f.args[0] : f.args[1];
        changed |= add(role_fact(ri.rhs, x, y));
      }
    }

    // Simple joins fire over named constants only. Copies guard against
    // push_back invalidation when premise and conclusion names collide.
    for (const SimpleJoinAxiom& sj : tbox.sj()) {
      const std::vector<Atom> firsts = named_facts(sj.premise_first);
      const std::vector<Atom> seconds = named_facts(sj.premise_second);
      for (const Atom& fa : firsts) {
        if (!fa.unary()) continue;
        for (const Atom& fb : seconds) {
          if (!fb.unary()) continue;
          changed |= add(Atom(sj.conclusion_role, fa.args[0], fb.args[0]));
        }
      }
    }
  }
}

void ChasedABox::check_consistency(const TBox& tbox) {
  for (const ConceptInclusion& ci : tbox.concept_inclusions()) {
    if (!ci.rhs_negated) continue;
    std::vector<Term> lhs = members(ci.lhs, facts_);
    std::vector<Term> rhs = members(ci.rhs, facts_);
    std::vector<Term> both;
    std::set_intersection(lhs.begin(), lhs.end(), rhs.begin(), rhs.end(),
                          std::back_inserter(both));
    if (!both.empty()) {
      violation_ = ci.str() + " at " + both.front().str();
      return;
    }
  }
  for (const RoleInclusion& ri : tbox.role_inclusions()) {
    if (!ri.rhs_negated) continue;
    for (const Atom& f : facts_) {
      if (!f.binary() || f.pred != ri.lhs.name) continue;
      const Term& x = ri.lhs.inverted ? f.args[1] : f.args[0];
      const Term& y = ri.lhs.inverted ? f.args[0] : f.args[1];
      if (facts_.count(role_fact(ri.rhs, x, y))) {
        violation_ = ri.str() + " at (" + x.str() + "," + y.str() + ")";
        return;
      }
    }
  }
  // Functionality over named constants only (UNA applies to named terms).
  for (const Functionality& fn : tbox.functionalities()) {
    std::map<Term, Term> seen;
    for (const Atom& f : named_facts(fn.role.name)) {
      if (!f.binary()) continue;
      const Term& key = fn.role.inverted ? f.args[1] : f.args[0];
      const Term& val = fn.role.inverted ? f.args[0] : f.args[1];
      auto [it, inserted] = seen.emplace(key, val);
      if (!inserted && it->second != val) {
        violation_ = fn.str() + " at " + key.str() + " -> {" + it->second.str() + ", " +
                     val.str() + "}";
        return;
      }
    }
  }
}

std::shared_ptr<const ChasedABox> saturate(const ABox& a, const TBox& t, int depth_bound) {
  return std::make_shared<const ChasedABox>(a, t, depth_bound);
}

Reasoner::Reasoner(const TBox& tbox, int depth_bound)
    : tbox_(tbox), depth_bound_(depth_bound < 1 ? 1 : depth_bound) {}

std::shared_ptr<const ChasedABox> Reasoner::saturation(const ABox& a) {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(a);
    if (it != cache_.end()) return it->second;
  }
  auto chased = saturate(a, tbox_, depth_bound_);
  std::lock_guard<std::mutex> lock(mutex_);
  return cache_.emplace(a, std::move(chased)).first->second;
}

bool Reasoner::consistent(const ABox& a) { return saturation(a)->consistent(); }

std::string Reasoner::violation(const ABox& a) { return saturation(a)->violation(); }

namespace {

// Backtracking join of CQ atoms against the named facts of a chase.
// `emit` gets each total assignment once; returning false stops the search.
template <typename Emit>
bool match_atoms(const std::vector<Atom>& atoms, std::size_t i, Substitution& partial,
                 const ChasedABox& chase, const Emit& emit) {
  if (i == atoms.size()) return emit(partial);
  Atom needed = partial.apply(atoms[i]);
  for (const Atom& fact : chase.named_facts(needed.pred)) {
    if (fact.args.size() != needed.args.size()) continue;
    Substitution next = partial;
    bool ok = true;
    for (std::size_t k = 0; k < needed.args.size(); ++k) {
      Term want = next.apply(needed.args[k]);
      if (want.is_variable()) {
        next.bind(want.name(), fact.args[k]);
      } else if (want != fact.args[k]) {
        ok = false;
        break;
      }
    }
    if (ok && !match_atoms(atoms, i + 1, next, chase, emit)) return false;
  }
  return true;
}

}  // namespace

std::vector<Substitution> Reasoner::ans(const CQ& q, const ABox& a) {
  return ans(UCQ(q), a);
}

std::vector<Substitution> Reasoner::ans(const UCQ& q, const ABox& a) {
  auto chase = saturation(a);
  if (!chase->consistent())
    throw InconsistentState("certain answers over an inconsistent state: " + chase->violation());
  std::set<Substitution> out;
  for (const CQ& cq : q.disjuncts) {
    Substitution empty;
    match_atoms(cq.atoms, 0, empty, *chase, [&out](const Substitution& s) {
      out.insert(s);
      return true;
    });
  }
  return std::vector<Substitution>(out.begin(), out.end());
}

bool Reasoner::any_answer(const CQ& q, const ABox& a) {
  auto chase = saturation(a);
  if (!chase->consistent())
    throw InconsistentState("certain answers over an inconsistent state: " + chase->violation());
  bool found = false;
  Substitution empty;
  match_atoms(q.atoms, 0, empty, *chase, [&found](const Substitution&) {
    found = true;
    return false;  // stop at the first answer
  });
  return found;
}

bool Reasoner::holds(const CQ& sigma, const ABox& a) {
  if (!consistent(a)) return false;
  return any_answer(sigma, a);
}

bool Reasoner::goal_satisfied(const UCQ& goal, const ABox& a) {
  for (const CQ& cq : goal.disjuncts)
    if (any_answer(cq, a)) return true;
  return false;
}

std::size_t Reasoner::cache_size() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return cache_.size();
}

void Reasoner::clear_cache() {
  std::lock_guard<std::mutex> lock(mutex_);
  cache_.clear();
}

}  // namespace dkb
