#include "dkbplan/graph_export.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

namespace dkb {

namespace {

using nlohmann::json;

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

// Node label: what the state adds on top of the root ABox.
std::string delta_label(const ABox& root, const ABox& state) {
  if (state == root) return "A0";
  std::string out = "A0";
  for (const Atom& a : state)
    if (!root.contains(a)) out += "\\n+ " + a.str();
  return out;
}

struct StateIndex {
  std::vector<ABox> states;
  std::map<ABox, int> ids;

  explicit StateIndex(const PlanningGraph& graph) {
    states = graph.states();
    // Root first, keeping ids stable and the root at id 0.
    std::stable_sort(states.begin(), states.end(), [&](const ABox& a, const ABox& b) {
      return (a == graph.root()) > (b == graph.root());
    });
    for (std::size_t i = 0; i < states.size(); ++i) ids.emplace(states[i], static_cast<int>(i));
  }
};

}  // namespace

std::string to_dot(const PlanningGraph& graph, const PlanningProblem& problem,
                   Reasoner& reasoner) {
  StateIndex index(graph);
  std::ostringstream out;
  out << "digraph planning_graph {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=circle];\n";
  for (const ABox& state : index.states) {
    int id = index.ids.at(state);
    bool goal = reasoner.consistent(state) && reasoner.goal_satisfied(problem.goal, state);
    out << "  s" << id << " [label=\"" << dot_escape(delta_label(graph.root(), state)) << "\"";
    if (goal) out << ", shape=doublecircle";
    if (state == graph.root()) out << ", style=bold, xlabel=\"initial\"";
    out << "];\n";
  }
  for (const PlanningEdge& e : graph.edges()) {
    out << "  s" << index.ids.at(e.source) << " -> s" << index.ids.at(e.target) << " [label=\""
        << dot_escape(e.action + " " + e.theta.str()) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::string to_json(const PlanningGraph& graph, const PlanningProblem& problem,
                    Reasoner& reasoner) {
  StateIndex index(graph);
  json doc;
  doc["version"] = 1;
  doc["root"] = 0;
  json states = json::array();
  for (const ABox& state : index.states) {
    json s;
    s["id"] = index.ids.at(state);
    json assertions = json::array();
    for (const Atom& a : state) assertions.push_back(a.str());
    s["assertions"] = assertions;
    s["goal"] = reasoner.consistent(state) && reasoner.goal_satisfied(problem.goal, state);
    states.push_back(s);
  }
  doc["states"] = states;
  json edges = json::array();
  for (const PlanningEdge& e : graph.edges()) {
    json edge;
    edge["src"] = index.ids.at(e.source);
    edge["action"] = e.action;
    json subst = json::object();
    for (const auto& [var, term] : e.theta.entries()) subst[var] = term.str();
    edge["subst"] = subst;
    edge["dst"] = index.ids.at(e.target);
    edges.push_back(edge);
  }
  doc["edges"] = edges;
  return doc.dump(2) + "\n";
}

std::string to_dot(const AbstractPlanningGraph& graph) {
  std::ostringstream out;
  out << "digraph abstract_planning_graph {\n";
  out << "  node [shape=circle];\n";
  for (const AbstractState& s : graph.states) {
    out << "  s" << s.id << " [label=\"S" << s.id << "\\n" << dot_escape(s.query.str()) << "\"";
    if (s.initial_satisfied) out << ", style=filled, fillcolor=gray";
    out << "];\n";
  }
  for (const AbstractEdge& e : graph.edges) {
    out << "  s" << e.from << " -> s" << e.to << " [label=\"" << dot_escape(e.label) << "\"";
    if (e.kind == AbstractEdge::Kind::SjAxiom) out << ", style=dashed";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::string to_json(const AbstractPlanningGraph& graph) {
  json doc;
  doc["version"] = 1;
  json states = json::array();
  for (const AbstractState& s : graph.states) {
    json st;
    st["id"] = s.id;
    st["query"] = s.query.str();
    st["initial_satisfied"] = s.initial_satisfied;
    st["sj_intermediate"] = s.sj_intermediate;
    states.push_back(st);
  }
  doc["states"] = states;
  json pairs = json::array();
  for (const AbstractPair& p : graph.pairs) {
    json pr;
    pr["state"] = p.state_id;
    pr["action"] = p.action;
    json link = json::object();
    for (const auto& [param, term] : p.link) link[param] = term.str();
    pr["link"] = link;
    pairs.push_back(pr);
  }
  doc["pairs"] = pairs;
  json edges = json::array();
  for (const AbstractEdge& e : graph.edges) {
    json edge;
    edge["src"] = e.from;
    edge["dst"] = e.to;
    edge["kind"] = e.kind == AbstractEdge::Kind::SjAxiom ? "sj" : "action";
    edge["label"] = e.label;
    edges.push_back(edge);
  }
  doc["edges"] = edges;
  return doc.dump(2) + "\n";
}

std::string to_text(const PlanningGraph& graph, const PlanningProblem& problem,
                    Reasoner& reasoner) {
  StateIndex index(graph);
  std::ostringstream out;
  out << "states: " << index.states.size() << "\n";
  for (const ABox& state : index.states) {
    bool goal = reasoner.consistent(state) && reasoner.goal_satisfied(problem.goal, state);
    out << "  S" << index.ids.at(state) << (goal ? " [goal]" : "") << " = " << state.str() << "\n";
  }
  out << "edges: " << graph.edges().size() << "\n";
  for (const PlanningEdge& e : graph.edges())
    out << "  S" << index.ids.at(e.source) << " --" << e.action << " " << e.theta.str() << "--> S"
        << index.ids.at(e.target) << "\n";
  return out.str();
}

std::string to_text(const AbstractPlanningGraph& graph) {
  std::ostringstream out;
  out << "abstract states: " << graph.states.size() << "\n";
  for (const AbstractState& s : graph.states)
    out << "  S" << s.id << (s.initial_satisfied ? " [initial]" : "")
        << (s.sj_intermediate ? " [sj]" : "") << " = " << s.query.str() << "\n";
  out << "pairs: " << graph.pairs.size() << "\n";
  for (const AbstractPair& p : graph.pairs)
    out << "  <S" << p.state_id << ", " << p.action << " " << p.link_str() << ">\n";
  out << "edges: " << graph.edges.size() << "\n";
  for (const AbstractEdge& e : graph.edges)
    out << "  S" << e.from << " --" << e.label << "--> S" << e.to << "\n";
  return out.str();
}

}  // namespace dkb
