#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dkbplan/atom.hpp"

namespace dkb {

// A finite map from variable names to terms. Kept idempotent: no variable in
// the range is also in the domain, and identity bindings are dropped.
class Substitution {
 public:
  Substitution() = default;

  static Substitution of(std::initializer_list<std::pair<std::string, Term>> bindings) {
    Substitution s;
    for (const auto& [v, t] : bindings) s.bind(v, t);
    return s;
  }

  std::optional<Term> lookup(const std::string& var) const {
    auto it = map_.find(var);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }

  void bind(const std::string& var, const Term& t) {
    if (t.is_variable() && t.name() == var) return;
    map_.insert_or_assign(var, t);
  }

  Term apply(const Term& t) const {
    if (!t.is_variable()) return t;
    auto it = map_.find(t.name());
    return it == map_.end() ? t : it->second;
  }

  Atom apply(const Atom& a) const {
    Atom out = a;
    for (Term& arg : out.args) arg = apply(arg);
    return out;
  }

  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }
  const std::map<std::string, Term>& entries() const { return map_; }

  // Sorted by variable name, e.g. "{?x->e001, ?y->e002}".
  std::string str() const {
    std::string out = "{";
    bool first = true;
    for (const auto& [v, t] : map_) {
      if (!first) out += ", ";
      first = false;
      out += "?" + v + "->" + t.str();
    }
    return out + "}";
  }

  friend auto operator<=>(const Substitution&, const Substitution&) = default;

 private:
  std::map<std::string, Term> map_;
};

// apply(outer, inner(x)) for x in dom(inner), plus outer's own bindings.
// The result is normalized back to idempotent form.
Substitution compose(const Substitution& outer, const Substitution& inner);

// A conjunction of atoms. All variables are answer variables; no explicit
// existential binder is represented.
struct ConjunctiveQuery {
  std::vector<Atom> atoms;

  ConjunctiveQuery() = default;
  ConjunctiveQuery(std::initializer_list<Atom> a) : atoms(a) {}
  explicit ConjunctiveQuery(std::vector<Atom> a) : atoms(std::move(a)) {}

  std::set<std::string> variables() const {
    std::set<std::string> out;
    for (const Atom& a : atoms)
      for (const Term& t : a.args)
        if (t.is_variable()) out.insert(t.name());
    return out;
  }

  bool ground() const {
    for (const Atom& a : atoms)
      if (!a.ground()) return false;
    return true;
  }

  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (i) out += ", ";
      out += atoms[i].str();
    }
    return out;
  }

  friend auto operator<=>(const ConjunctiveQuery&, const ConjunctiveQuery&) = default;
};

using CQ = ConjunctiveQuery;

struct UnionQuery {
  std::vector<CQ> disjuncts;

  UnionQuery() = default;
  explicit UnionQuery(CQ cq) : disjuncts{std::move(cq)} {}
  explicit UnionQuery(std::vector<CQ> ds) : disjuncts(std::move(ds)) {}

  bool empty() const { return disjuncts.empty(); }

  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < disjuncts.size(); ++i) {
      if (i) out += " | ";
      out += disjuncts[i].str();
    }
    return out;
  }

  friend auto operator<=>(const UnionQuery&, const UnionQuery&) = default;
};

using UCQ = UnionQuery;

// Most general unifier of two atoms, or nullopt when the predicates differ or
// the arguments clash. The returned substitution is idempotent.
std::optional<Substitution> unify(const Atom& a, const Atom& b);

// Substitution application over a whole query.
CQ apply(const Substitution& s, const CQ& q);

// Canonical form for query identity up to variable renaming and atom
// reordering. Atoms are deduplicated, sorted by a variable-blind total order,
// and variables renamed to v0, v1, ... in first-occurrence order; ties between
// blind-equal atoms are broken by taking the lexicographically least rendering
// over their permutations.
struct CanonicalCQ {
  CQ query;                                    // renamed, sorted form
  std::string key;                             // stable identity string
  std::map<std::string, std::string> renaming; // original var -> canonical var

  friend bool operator==(const CanonicalCQ& a, const CanonicalCQ& b) { return a.key == b.key; }
};

CanonicalCQ canonicalize(const CQ& q);

// Renames the variables of q bijectively to fresh variables outside `avoid`.
// The mapping used is returned through `renaming_out` when non-null.
CQ rename_apart(const CQ& q, const std::set<std::string>& avoid,
                std::map<std::string, std::string>* renaming_out = nullptr);

}  // namespace dkb
