#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <string>

namespace dkb {

// A first-order term: a named constant, a named variable, or a labelled null.
// Constants and variables are disjoint lexical classes (variables are written
// with a leading '?' in files). Nulls exist only inside chased ABoxes and are
// numbered consecutively within one chase run.
class Term {
 public:
  enum class Kind { Constant, Variable, Null };

  Term() : kind_(Kind::Constant) {}

  static Term constant(std::string name) { return Term(Kind::Constant, std::move(name), -1); }
  static Term variable(std::string name) { return Term(Kind::Variable, std::move(name), -1); }
  static Term null(int index) { return Term(Kind::Null, {}, index); }

  Kind kind() const { return kind_; }
  bool is_constant() const { return kind_ == Kind::Constant; }
  bool is_variable() const { return kind_ == Kind::Variable; }
  bool is_null() const { return kind_ == Kind::Null; }

  // Name without the lexical marker; only meaningful for constants/variables.
  const std::string& name() const { return name_; }
  int null_index() const { return null_index_; }

  std::string str() const {
    switch (kind_) {
      case Kind::Variable: return "?" + name_;
      case Kind::Null: return "_:" + std::to_string(null_index_);
      default: return name_;
    }
  }

  friend auto operator<=>(const Term&, const Term&) = default;

 private:
  Term(Kind kind, std::string name, int null_index)
      : kind_(kind), name_(std::move(name)), null_index_(null_index) {}

  Kind kind_;
  std::string name_;
  int null_index_;
};

inline std::size_t hash_combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

inline std::size_t hash_value(const Term& t) {
  std::size_t h = static_cast<std::size_t>(t.kind());
  h = hash_combine(h, std::hash<std::string>{}(t.name()));
  h = hash_combine(h, static_cast<std::size_t>(t.null_index() + 1));
  return h;
}

}  // namespace dkb
