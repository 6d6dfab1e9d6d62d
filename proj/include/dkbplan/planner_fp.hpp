#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "dkbplan/dkb.hpp"
#include "dkbplan/reasoner.hpp"

namespace dkb {

enum class Strategy { Fifo, Lifo };
enum class Mode { AllPlans, FirstPlan };

struct SearchConfig {
  Strategy strategy = Strategy::Fifo;
  Mode mode = Mode::AllPlans;
  // Abort knobs for the benchmark harness; absent means unbounded.
  std::optional<std::chrono::steady_clock::time_point> deadline;
  std::size_t max_visited = 0;  // 0 = unlimited
};

struct RunMetrics {
  std::size_t edges = 0;         // |P|
  std::size_t visited = 0;       // |V|
  std::size_t inconsistent = 0;  // Inc
  double seconds = 0.0;
  bool timed_out = false;
};

// One transition triple <source, action, substitution>. The target is
// recomputable from the triple; the stored copy is an index convenience and is
// checked against the recomputed value in tests.
struct PlanningEdge {
  ABox source;
  std::string action;
  Substitution theta;
  ABox target;

  friend bool operator==(const PlanningEdge& a, const PlanningEdge& b) {
    return a.source == b.source && a.action == b.action && a.theta == b.theta;
  }
};

// The set of transition triples explored from the initial state.
class PlanningGraph {
 public:
  PlanningGraph() = default;
  explicit PlanningGraph(ABox root) : root_(std::move(root)) {}

  const ABox& root() const { return root_; }
  const std::vector<PlanningEdge>& edges() const { return edges_; }
  std::size_t size() const { return edges_.size(); }

  // Ignores exact duplicates (set semantics on triples).
  void add_edge(PlanningEdge edge);

  // Removes every edge whose target equals `a`; returns how many.
  std::size_t remove_edges_to(const ABox& a);

  std::vector<PlanningEdge> edges_from(const ABox& a) const;
  std::vector<PlanningEdge> edges_into(const ABox& a) const;

  // All states mentioned by the graph: the root plus edge endpoints.
  std::vector<ABox> states() const;

  friend bool operator==(const PlanningGraph& a, const PlanningGraph& b);

 private:
  ABox root_;
  std::vector<PlanningEdge> edges_;
};

// Edges of p whose recomputed target (source united with the instantiated
// effect of the named action) equals a.
std::vector<PlanningEdge> edges_to(const PlanningGraph& p, const std::vector<Action>& gamma,
                                   const ABox& a);

struct PlanStep {
  std::string action;
  Substitution theta;

  std::string str() const { return action + theta.str(); }
  friend auto operator<=>(const PlanStep&, const PlanStep&) = default;
};

// A goal-reaching sequence of action instantiations from the initial state.
struct Plan {
  std::vector<PlanStep> steps;

  std::size_t size() const { return steps.size(); }
  std::string str() const;
  friend auto operator<=>(const Plan&, const Plan&) = default;
};

// Exhaustive (or first-plan) forward construction of the planning graph:
// pop a state, record it visited; drop it and its incoming edges when
// inconsistent; stop expanding at goal states; otherwise push unvisited
// successors and their transition triples.
std::pair<PlanningGraph, RunMetrics> forward_plan(Reasoner& reasoner,
                                                  const PlanningProblem& problem,
                                                  const SearchConfig& cfg = {});

// The search loop shared by forward planning and forward plan instantiation;
// the two differ only in the successor function.
std::pair<PlanningGraph, RunMetrics> plan_search_loop(
    Reasoner& reasoner, const PlanningProblem& problem, const SearchConfig& cfg,
    const std::function<std::vector<Transition>(const ABox&)>& successors);

struct ExtractOptions {
  std::optional<std::size_t> max_len;
  std::size_t max_plans = 0;  // 0 = unlimited
};

// All simple paths (no repeated state) from the root to any goal state.
std::set<Plan> extract_plans(const PlanningGraph& p, const PlanningProblem& problem,
                             Reasoner& reasoner, const ExtractOptions& opts = {});

// True iff some proper (not necessarily contiguous) subsequence of `plan` is
// itself in `plans`.
bool redundant(const Plan& plan, const std::set<Plan>& plans);

}  // namespace dkb
