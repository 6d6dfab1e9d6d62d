#include "dkbplan/tbox.hpp"

#include <algorithm>

#include "dkbplan/errors.hpp"

namespace dkb {

namespace {

void collect(const BasicConcept& b, std::set<std::string>& out) {
  if (b.is_atomic()) {
    out.insert(b.concept_name);
  } else {
    out.insert(b.role.name);
    if (b.filler) out.insert(*b.filler);
  }
}

SimpleJoinAxiom validate_join(const RawSimpleJoin& raw) {
  if (raw.premise.size() != 2)
    throw MalformedAxiom("simple join premise must have exactly two concept atoms");
  const Atom& p0 = raw.premise[0];
  const Atom& p1 = raw.premise[1];
  if (!p0.unary() || !p1.unary())
    throw MalformedAxiom("simple join premise atoms must be unary concepts");
  if (!p0.args[0].is_variable() || !p1.args[0].is_variable())
    throw MalformedAxiom("simple join premise arguments must be variables");
  if (p0.args[0] == p1.args[0])
    throw MalformedAxiom("simple join premise variables must be distinct");
  if (!raw.conclusion.binary())
    throw MalformedAxiom("simple join conclusion must be a role atom");

  const Term& cx = raw.conclusion.args[0];
  const Term& cy = raw.conclusion.args[1];
  if (cx == p0.args[0] && cy == p1.args[0])
    return SimpleJoinAxiom{p0.pred, p1.pred, raw.conclusion.pred};
  if (cx == p1.args[0] && cy == p0.args[0])
    return SimpleJoinAxiom{p1.pred, p0.pred, raw.conclusion.pred};
  throw MalformedAxiom("simple join conclusion must relate exactly the two premise variables");
}

}  // namespace

TBox validate_tbox(const std::vector<RawAxiom>& axioms) {
  TBox t;
  for (const RawAxiom& raw : axioms) {
    if (const auto* ci = std::get_if<ConceptInclusion>(&raw)) {
      if (ci->lhs_negated)
        throw MalformedAxiom("negation is not allowed on the left-hand side: " + ci->str());
      if (ci->lhs.qualified())
        throw MalformedAxiom("qualified existential not allowed on the left-hand side: " +
                             ci->str());
      if (ci->rhs_negated && ci->rhs.qualified())
        throw MalformedAxiom("qualified existential cannot be negated: " + ci->str());
      t.concepts_.push_back(*ci);
    } else if (const auto* ri = std::get_if<RoleInclusion>(&raw)) {
      if (ri->lhs_negated)
        throw MalformedAxiom("negation is not allowed on the left-hand side: " + ri->str());
      t.roles_.push_back(*ri);
    } else if (const auto* f = std::get_if<Functionality>(&raw)) {
      t.functs_.push_back(*f);
    } else {
      SimpleJoinAxiom sj = validate_join(std::get<RawSimpleJoin>(raw));
      t.sj_.push_back(sj);
      t.sj_conclusions_.insert(sj.conclusion_role);
    }
  }
  // Deterministic, order-insensitive representation.
  std::sort(t.concepts_.begin(), t.concepts_.end());
  t.concepts_.erase(std::unique(t.concepts_.begin(), t.concepts_.end()), t.concepts_.end());
  std::sort(t.roles_.begin(), t.roles_.end());
  t.roles_.erase(std::unique(t.roles_.begin(), t.roles_.end()), t.roles_.end());
  std::sort(t.functs_.begin(), t.functs_.end());
  t.functs_.erase(std::unique(t.functs_.begin(), t.functs_.end()), t.functs_.end());
  std::sort(t.sj_.begin(), t.sj_.end());
  t.sj_.erase(std::unique(t.sj_.begin(), t.sj_.end()), t.sj_.end());
  return t;
}

std::set<std::string> TBox::predicate_names() const {
  std::set<std::string> out;
  for (const ConceptInclusion& ci : concepts_) {
    collect(ci.lhs, out);
    collect(ci.rhs, out);
  }
  for (const RoleInclusion& ri : roles_) {
    out.insert(ri.lhs.name);
    out.insert(ri.rhs.name);
  }
  for (const Functionality& f : functs_) out.insert(f.role.name);
  for (const SimpleJoinAxiom& sj : sj_) {
    out.insert(sj.premise_first);
    out.insert(sj.premise_second);
    out.insert(sj.conclusion_role);
  }
  return out;
}

std::set<std::string> alph(const TBox& t, const ABox& a) {
  std::set<std::string> out = t.predicate_names();
  for (const Atom& atom : a) out.insert(atom.pred);
  return out;
}

}  // namespace dkb
