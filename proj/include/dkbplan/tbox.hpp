#pragma once

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "dkbplan/atom.hpp"

namespace dkb {

// An atomic role or its inverse. Double inversion is normalized away by
// construction (`inverse` flips the flag).
struct RoleExpr {
  std::string name;
  bool inverted = false;

  RoleExpr inverse() const { return RoleExpr{name, !inverted}; }
  std::string str() const { return inverted ? name + "-" : name; }

  friend auto operator<=>(const RoleExpr&, const RoleExpr&) = default;
};

// B := N | exists R, with an optional qualifying filler on the role form
// (exists R . C), which is accepted on right-hand sides only.
struct BasicConcept {
  enum class Kind { Atomic, Exists };

  Kind kind = Kind::Atomic;
  std::string concept_name;           // Atomic
  RoleExpr role;                      // Exists
  std::optional<std::string> filler;  // Exists, qualified form

  static BasicConcept atomic(std::string name) {
    BasicConcept b;
    b.kind = Kind::Atomic;
    b.concept_name = std::move(name);
    return b;
  }
  static BasicConcept exists(RoleExpr r, std::optional<std::string> filler = std::nullopt) {
    BasicConcept b;
    b.kind = Kind::Exists;
    b.role = std::move(r);
    b.filler = std::move(filler);
    return b;
  }

  bool is_atomic() const { return kind == Kind::Atomic; }
  bool qualified() const { return kind == Kind::Exists && filler.has_value(); }

  std::string str() const {
    if (is_atomic()) return concept_name;
    std::string out = "exists " + role.str();
    if (filler) out += " . " + *filler;
    return out;
  }

  friend auto operator<=>(const BasicConcept&, const BasicConcept&) = default;
};

struct ConceptInclusion {
  BasicConcept lhs;
  BasicConcept rhs;
  bool rhs_negated = false;
  bool lhs_negated = false;  // never valid; kept so validate_tbox can reject it

  std::string str() const {
    return lhs.str() + " <= " + std::string(rhs_negated ? "not " : "") + rhs.str();
  }
  friend auto operator<=>(const ConceptInclusion&, const ConceptInclusion&) = default;
};

struct RoleInclusion {
  RoleExpr lhs;
  RoleExpr rhs;
  bool rhs_negated = false;
  bool lhs_negated = false;

  std::string str() const {
    return lhs.str() + " <= " + std::string(rhs_negated ? "not " : "") + rhs.str();
  }
  friend auto operator<=>(const RoleInclusion&, const RoleInclusion&) = default;
};

struct Functionality {
  RoleExpr role;
  std::string str() const { return "funct " + role.str(); }
  friend auto operator<=>(const Functionality&, const Functionality&) = default;
};

// Validated simple join axiom: N1(x), N2(y) -> R(x,y) with x != y and an
// atomic, non-inverted conclusion role.
struct SimpleJoinAxiom {
  std::string premise_first;
  std::string premise_second;
  std::string conclusion_role;

  std::string str() const {
    return premise_first + "(?x), " + premise_second + "(?y) -> " + conclusion_role + "(?x,?y)";
  }
  friend auto operator<=>(const SimpleJoinAxiom&, const SimpleJoinAxiom&) = default;
};

// Unvalidated join shape as parsed: arbitrary premise atoms and conclusion.
struct RawSimpleJoin {
  std::vector<Atom> premise;
  Atom conclusion;
  friend auto operator<=>(const RawSimpleJoin&, const RawSimpleJoin&) = default;
};

using RawAxiom = std::variant<ConceptInclusion, RoleInclusion, Functionality, RawSimpleJoin>;

// The fixed terminological schema, partitioned into DL-Lite axioms dl(T) and
// simple join axioms sj(T).
class TBox {
 public:
  TBox() = default;

  const std::vector<ConceptInclusion>& concept_inclusions() const { return concepts_; }
  const std::vector<RoleInclusion>& role_inclusions() const { return roles_; }
  const std::vector<Functionality>& functionalities() const { return functs_; }
  const std::vector<SimpleJoinAxiom>& sj() const { return sj_; }

  std::size_t dl_size() const { return concepts_.size() + roles_.size() + functs_.size(); }
  std::size_t sj_size() const { return sj_.size(); }

  const std::set<std::string>& sj_conclusion_preds() const { return sj_conclusions_; }

  // Predicate names mentioned anywhere in the schema.
  std::set<std::string> predicate_names() const;

  friend bool operator==(const TBox& a, const TBox& b) {
    return a.concepts_ == b.concepts_ && a.roles_ == b.roles_ && a.functs_ == b.functs_ &&
           a.sj_ == b.sj_;
  }

  friend TBox validate_tbox(const std::vector<RawAxiom>& axioms);

 private:
  std::vector<ConceptInclusion> concepts_;
  std::vector<RoleInclusion> roles_;
  std::vector<Functionality> functs_;
  std::vector<SimpleJoinAxiom> sj_;
  std::set<std::string> sj_conclusions_;
};

// Partitions raw axioms into dl(T) and sj(T), rejecting malformed shapes:
// negation on a left-hand side, qualified existentials outside positive
// right-hand sides, and joins not of the N1(x), N2(y) -> R(x,y) form.
TBox validate_tbox(const std::vector<RawAxiom>& axioms);

// Alphabet: predicate names occurring in the TBox or the ABox.
std::set<std::string> alph(const TBox& t, const ABox& a);

}  // namespace dkb
