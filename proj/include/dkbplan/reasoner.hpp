#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "dkbplan/atom.hpp"
#include "dkbplan/query.hpp"
#include "dkbplan/tbox.hpp"

namespace dkb {

// Result of chasing an ABox: the base assertions plus everything derived from
// positive inclusions and simple joins, possibly over labelled nulls. Facts
// over named constants are closed to fixpoint; null-generation chains are cut
// at the configured depth bound.
class ChasedABox {
 public:
  ChasedABox(ABox base, const TBox& tbox, int depth_bound);

  const ABox& base() const { return base_; }
  const std::set<Atom>& facts() const { return facts_; }
  bool is_base(const Atom& a) const { return base_.contains(a); }
  int nulls_created() const { return null_counter_; }

  bool contains(const Atom& a) const { return facts_.count(a) > 0; }

  // Facts whose arguments are all named constants, grouped by predicate.
  const std::unordered_map<std::string, std::vector<Atom>>& named_by_pred() const {
    return named_by_pred_;
  }
  const std::vector<Atom>& named_facts(const std::string& pred) const;

  // The named-constant fragment of the chase, as a plain ABox.
  ABox named_fragment() const;

  bool consistent() const { return violation_.empty(); }
  // Human-readable witness of the first violated axiom; empty when consistent.
  const std::string& violation() const { return violation_; }

 private:
  void run(const TBox& tbox, int depth_bound);
  void check_consistency(const TBox& tbox);
  bool add(Atom a);

  ABox base_;
  std::set<Atom> facts_;
  std::unordered_map<std::string, std::vector<Atom>> named_by_pred_;
  std::map<int, int> null_depth_;
  int null_counter_ = 0;
  std::string violation_;
};

// Chases `a` under the positive part of `t`. Never fails; inconsistency is
// detected separately (see ChasedABox::consistent).
std::shared_ptr<const ChasedABox> saturate(const ABox& a, const TBox& t, int depth_bound);

// Reasoning front end over a fixed TBox. Saturations are cached per ABox; the
// cache is safe under concurrent read/insert and all operations are pure given
// their inputs.
class Reasoner {
 public:
  Reasoner(const TBox& tbox, int depth_bound);

  const TBox& tbox() const { return tbox_; }
  int depth_bound() const { return depth_bound_; }

  std::shared_ptr<const ChasedABox> saturation(const ABox& a);

  // True iff the chase of a violates no negative inclusion and no
  // functionality axiom (functionality over named constants, UNA).
  bool consistent(const ABox& a);
  std::string violation(const ABox& a);

  // Certain answers: all substitutions of query variables by constants in
  // adom(a) whose instantiated atoms all hold in the chase. Throws
  // InconsistentState when a is inconsistent w.r.t. the TBox.
  std::vector<Substitution> ans(const UCQ& q, const ABox& a);
  std::vector<Substitution> ans(const CQ& q, const ABox& a);

  // Membership test A in conc(sigma, T): consistent and sigma has an answer.
  bool holds(const CQ& sigma, const ABox& a);
  bool goal_satisfied(const UCQ& goal, const ABox& a);

  std::size_t cache_size() const;
  void clear_cache();

 private:
  bool any_answer(const CQ& q, const ABox& a);

  TBox tbox_;
  int depth_bound_;
  mutable std::mutex mutex_;
  std::unordered_map<ABox, std::shared_ptr<const ChasedABox>, ABoxHash> cache_;
};

}  // namespace dkb
