#include "dkbplan/planner_fp.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

namespace dkb {

void PlanningGraph::add_edge(PlanningEdge edge) {
  for (const PlanningEdge& e : edges_)
    if (e == edge) return;
  edges_.push_back(std::move(edge));
}

std::size_t PlanningGraph::remove_edges_to(const ABox& a) {
  std::size_t before = edges_.size();
  edges_.erase(std::remove_if(edges_.begin(), edges_.end(),
                              [&a](const PlanningEdge& e) { return e.target == a; }),
               edges_.end());
  return before - edges_.size();
}

std::vector<PlanningEdge> PlanningGraph::edges_from(const ABox& a) const {
  std::vector<PlanningEdge> out;
  for (const PlanningEdge& e : edges_)
    if (e.source == a) out.push_back(e);
  return out;
}

std::vector<PlanningEdge> PlanningGraph::edges_into(const ABox& a) const {
  std::vector<PlanningEdge> out;
  for (const PlanningEdge& e : edges_)
    if (e.target == a) out.push_back(e);
  return out;
}

std::vector<ABox> PlanningGraph::states() const {
  std::vector<ABox> out{root_};
  for (const PlanningEdge& e : edges_) {
    out.push_back(e.source);
    out.push_back(e.target);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool operator==(const PlanningGraph& a, const PlanningGraph& b) {
  if (!(a.root_ == b.root_) || a.edges_.size() != b.edges_.size()) return false;
  for (const PlanningEdge& e : a.edges_) {
    bool found = false;
    for (const PlanningEdge& f : b.edges_)
      if (e == f) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

std::vector<PlanningEdge> edges_to(const PlanningGraph& p, const std::vector<Action>& gamma,
                                   const ABox& a) {
  std::vector<PlanningEdge> out;
  for (const PlanningEdge& e : p.edges()) {
    const Action* act = nullptr;
    for (const Action& g : gamma)
      if (g.name == e.action) {
        act = &g;
        break;
      }
    if (!act) continue;
    if (apply(*act, e.theta, e.source) == a) out.push_back(e);
  }
  return out;
}

std::string Plan::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (i) out += ", ";
    out += steps[i].str();
  }
  return out + ")";
}

namespace {

struct FrontierSets {
  std::unordered_set<ABox, ABoxHash> visited;
  std::unordered_set<ABox, ABoxHash> known_inconsistent;
};

bool deadline_passed(const SearchConfig& cfg) {
  return cfg.deadline && std::chrono::steady_clock::now() > *cfg.deadline;
}

}  // namespace

// Shared loop for FP and FPI: the two algorithms differ only in the successor
// function. Self-loop transitions (effect already present) are generated by
// the successor functions but never recorded as edges, and edges towards
// states already found inconsistent are dropped eagerly; both keep the final
// graph equal to the one obtained by removal on extraction.
std::pair<PlanningGraph, RunMetrics> plan_search_loop(
    Reasoner& reasoner, const PlanningProblem& problem, const SearchConfig& cfg,
    const std::function<std::vector<Transition>(const ABox&)>& successors) {
  auto started = std::chrono::steady_clock::now();
  PlanningGraph graph(problem.dkb.initial);
  RunMetrics metrics;
  FrontierSets sets;
  std::deque<ABox> remaining{problem.dkb.initial};

  while (!remaining.empty()) {
    if (deadline_passed(cfg) ||
        (cfg.max_visited && sets.visited.size() >= cfg.max_visited)) {
      metrics.timed_out = true;
      break;
    }
    ABox state = cfg.strategy == Strategy::Fifo ? remaining.front() : remaining.back();
    if (cfg.strategy == Strategy::Fifo) remaining.pop_front();
    else remaining.pop_back();

    if (sets.visited.count(state)) continue;
    sets.visited.insert(state);

    if (!reasoner.consistent(state)) {
      ++metrics.inconsistent;
      sets.known_inconsistent.insert(state);
      graph.remove_edges_to(state);
      continue;
    }
    if (reasoner.goal_satisfied(problem.goal, state)) {
      if (cfg.mode == Mode::FirstPlan) break;
      continue;
    }
    for (Transition& tr : successors(state)) {
      if (tr.target == state) continue;
      if (!sets.known_inconsistent.count(tr.target))
        graph.add_edge(PlanningEdge{state, tr.action->name, tr.theta, tr.target});
      if (!sets.visited.count(tr.target)) remaining.push_back(std::move(tr.target));
    }
  }

  metrics.edges = graph.size();
  metrics.visited = sets.visited.size();
  metrics.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return {std::move(graph), metrics};
}

std::pair<PlanningGraph, RunMetrics> forward_plan(Reasoner& reasoner,
                                                  const PlanningProblem& problem,
                                                  const SearchConfig& cfg) {
  return plan_search_loop(reasoner, problem, cfg, [&](const ABox& state) {
    return next(reasoner, state, problem.dkb.actions);
  });
}

std::set<Plan> extract_plans(const PlanningGraph& p, const PlanningProblem& problem,
                             Reasoner& reasoner, const ExtractOptions& opts) {
  std::set<Plan> plans;
  std::unordered_map<ABox, std::vector<const PlanningEdge*>, ABoxHash> out_edges;
  for (const PlanningEdge& e : p.edges()) out_edges[e.source].push_back(&e);

  std::vector<PlanStep> path;
  std::unordered_set<ABox, ABoxHash> on_path;
  bool overflow = false;

  auto walk = [&](auto&& self, const ABox& state) -> void {
    if (overflow) return;
    if (reasoner.consistent(state) && reasoner.goal_satisfied(problem.goal, state)) {
      // A goal reached with zero steps is not counted as a plan.
      if (!path.empty()) {
        plans.insert(Plan{path});
        if (opts.max_plans && plans.size() >= opts.max_plans) overflow = true;
      }
      return;
    }
    if (opts.max_len && path.size() >= *opts.max_len) return;
    auto it = out_edges.find(state);
    if (it == out_edges.end()) return;
    for (const PlanningEdge* e : it->second) {
      if (on_path.count(e->target)) continue;
      on_path.insert(e->target);
      path.push_back(PlanStep{e->action, e->theta});
      self(self, e->target);
      path.pop_back();
      on_path.erase(e->target);
    }
  };

  on_path.insert(p.root());
  walk(walk, p.root());
  return plans;
}

bool redundant(const Plan& plan, const std::set<Plan>& plans) {
  for (const Plan& candidate : plans) {
    if (candidate.size() == 0 || candidate.size() >= plan.size()) continue;
    std::size_t i = 0;
    for (const PlanStep& step : plan.steps) {
      if (i < candidate.steps.size() && candidate.steps[i] == step) ++i;
    }
    if (i == candidate.steps.size()) return true;
  }
  return false;
}

}  // namespace dkb
