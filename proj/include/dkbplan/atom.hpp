#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "dkbplan/errors.hpp"
#include "dkbplan/term.hpp"

namespace dkb {

// A predicate applied to terms: N(t) for concepts, P(t,t') for roles.
struct Atom {
  std::string pred;
  std::vector<Term> args;

  Atom() = default;
  Atom(std::string p, Term a) : pred(std::move(p)), args{std::move(a)} {}
  Atom(std::string p, Term a, Term b) : pred(std::move(p)), args{std::move(a), std::move(b)} {}

  bool unary() const { return args.size() == 1; }
  bool binary() const { return args.size() == 2; }

  bool ground() const {
    return std::all_of(args.begin(), args.end(), [](const Term& t) { return !t.is_variable(); });
  }
  bool over_constants() const {
    return std::all_of(args.begin(), args.end(), [](const Term& t) { return t.is_constant(); });
  }

  std::string str() const {
    std::string out = pred + "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (i) out += ",";
      out += args[i].str();
    }
    return out + ")";
  }

  friend auto operator<=>(const Atom&, const Atom&) = default;
};

inline std::size_t hash_value(const Atom& a) {
  std::size_t h = std::hash<std::string>{}(a.pred);
  for (const Term& t : a.args) h = hash_combine(h, hash_value(t));
  return h;
}

// A set of ground assertions over named constants. Stored sorted and
// deduplicated, so equality and hashing are order-insensitive. ABoxes are
// immutable values; `with` returns an extended copy.
class ABox {
 public:
  ABox() : hash_(0) {}

  explicit ABox(std::vector<Atom> atoms) {
    for (const Atom& a : atoms) check_assertion(a);
    std::sort(atoms.begin(), atoms.end());
    atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
    atoms_ = std::move(atoms);
    rehash();
  }

  ABox with(const Atom& a) const {
    check_assertion(a);
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), a);
    if (it != atoms_.end() && *it == a) return *this;
    ABox out;
    out.atoms_.reserve(atoms_.size() + 1);
    out.atoms_.assign(atoms_.begin(), it);
    out.atoms_.push_back(a);
    out.atoms_.insert(out.atoms_.end(), it, atoms_.end());
    out.rehash();
    return out;
  }

  bool contains(const Atom& a) const {
    return std::binary_search(atoms_.begin(), atoms_.end(), a);
  }

  bool subset_of(const ABox& other) const {
    return std::includes(other.atoms_.begin(), other.atoms_.end(), atoms_.begin(), atoms_.end());
  }

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }
  auto begin() const { return atoms_.begin(); }
  auto end() const { return atoms_.end(); }
  std::size_t hash() const { return hash_; }

  friend bool operator==(const ABox& a, const ABox& b) {
    return a.hash_ == b.hash_ && a.atoms_ == b.atoms_;
  }
  friend bool operator!=(const ABox& a, const ABox& b) { return !(a == b); }
  friend bool operator<(const ABox& a, const ABox& b) { return a.atoms_ < b.atoms_; }

  std::string str() const {
    std::string out = "{";
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      if (i) out += ", ";
      out += atoms_[i].str();
    }
    return out + "}";
  }

 private:
  static void check_assertion(const Atom& a) {
    if (a.args.empty() || a.args.size() > 2)
      throw ValidationError("assertion arity must be 1 or 2: " + a.str());
    if (!a.over_constants())
      throw ValidationError("ABox assertions must be ground over constants: " + a.str());
  }

  void rehash() {
    std::size_t h = atoms_.size();
    for (const Atom& a : atoms_) h = hash_combine(h, hash_value(a));
    hash_ = h;
  }

  std::vector<Atom> atoms_;
  std::size_t hash_ = 0;
};

struct ABoxHash {
  std::size_t operator()(const ABox& a) const { return a.hash(); }
};

// Active domain: the constants occurring in an ABox.
inline std::set<std::string> adom(const ABox& a) {
  std::set<std::string> out;
  for (const Atom& atom : a)
    for (const Term& t : atom.args) out.insert(t.name());
  return out;
}

}  // namespace dkb
