#include <pybind11/chrono.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dkbplan/bench.hpp"
#include "dkbplan/casegen.hpp"
#include "dkbplan/errors.hpp"
#include "dkbplan/graph_export.hpp"
#include "dkbplan/parser.hpp"
#include "dkbplan/planner_fp.hpp"
#include "dkbplan/planner_fpi.hpp"

namespace py = pybind11;
using namespace dkb;

namespace {

py::dict subst_to_dict(const Substitution& s) {
  py::dict out;
  for (const auto& [var, term] : s.entries()) out[py::str(var)] = term.str();
  return out;
}

py::list plans_to_list(const std::set<Plan>& plans) {
  py::list out;
  for (const Plan& plan : plans) {
    py::list steps;
    for (const PlanStep& step : plan.steps)
      steps.append(py::make_tuple(step.action, subst_to_dict(step.theta)));
    out.append(steps);
  }
  return out;
}

struct Session {
  PlanningProblem problem;
  Reasoner reasoner;

  explicit Session(const ProblemSpec& spec)
      : problem(make_problem(spec)), reasoner(problem.dkb.tbox, default_depth_bound(problem)) {}

  SearchConfig config(const std::string& strategy, const std::string& mode) const {
    SearchConfig cfg;
    cfg.strategy = strategy == "lifo" ? Strategy::Lifo : Strategy::Fifo;
    cfg.mode = mode == "first" ? Mode::FirstPlan : Mode::AllPlans;
    return cfg;
  }
};

py::dict metrics_to_dict(const RunMetrics& m) {
  py::dict out;
  out["edges"] = m.edges;
  out["visited"] = m.visited;
  out["inconsistent"] = m.inconsistent;
  out["seconds"] = m.seconds;
  out["timed_out"] = m.timed_out;
  return out;
}

}  // namespace

PYBIND11_MODULE(dkbplan, m) {
  m.doc() = "Planning over DL-Lite dynamic knowledge bases";

  py::register_exception<Error>(m, "DkbError");

  py::class_<ProblemSpec>(m, "ProblemSpec")
      .def_property_readonly("dl_axioms", [](const ProblemSpec& s) { return s.tbox.dl_size(); })
      .def_property_readonly("sj_axioms", [](const ProblemSpec& s) { return s.tbox.sj_size(); })
      .def_property_readonly("assertions", [](const ProblemSpec& s) { return s.abox.size(); })
      .def_property_readonly("actions",
                             [](const ProblemSpec& s) {
                               std::vector<std::string> names;
                               for (const Action& a : s.actions) names.push_back(a.name);
                               return names;
                             })
      .def_property_readonly("goal", [](const ProblemSpec& s) { return s.goal.str(); })
      .def("serialize", &serialize_kb)
      .def("__repr__", [](const ProblemSpec& s) {
        return "<ProblemSpec dl=" + std::to_string(s.tbox.dl_size()) +
               " sj=" + std::to_string(s.tbox.sj_size()) +
               " abox=" + std::to_string(s.abox.size()) +
               " actions=" + std::to_string(s.actions.size()) + ">";
      });

  py::class_<PlanningGraph>(m, "PlanningGraph")
      .def_property_readonly("size", &PlanningGraph::size)
      .def_property_readonly("edges",
                             [](const PlanningGraph& g) {
                               py::list out;
                               for (const PlanningEdge& e : g.edges())
                                 out.append(py::make_tuple(e.source.str(), e.action,
                                                           subst_to_dict(e.theta),
                                                           e.target.str()));
                               return out;
                             })
      .def("states", [](const PlanningGraph& g) {
        py::list out;
        for (const ABox& s : g.states()) out.append(s.str());
        return out;
      });

  py::class_<AbstractPlanningGraph>(m, "AbstractPlanningGraph")
      .def_property_readonly("states",
                             [](const AbstractPlanningGraph& g) {
                               py::list out;
                               for (const AbstractState& s : g.states) {
                                 py::dict item;
                                 item["id"] = s.id;
                                 item["query"] = s.query.str();
                                 item["initial_satisfied"] = s.initial_satisfied;
                                 item["sj_intermediate"] = s.sj_intermediate;
                                 out.append(item);
                               }
                               return out;
                             })
      .def_property_readonly("pairs",
                             [](const AbstractPlanningGraph& g) {
                               py::list out;
                               for (const AbstractPair& p : g.pairs) {
                                 py::dict item;
                                 item["state"] = p.state_id;
                                 item["action"] = p.action;
                                 item["query"] = p.query.str();
                                 py::dict link;
                                 for (const auto& [param, term] : p.link)
                                   link[py::str(param)] = term.str();
                                 item["link"] = link;
                                 out.append(item);
                               }
                               return out;
                             })
      .def("to_dot", [](const AbstractPlanningGraph& g) { return to_dot(g); });

  m.def("parse_kb", &parse_kb, py::arg("text"), "Parse a KB document");
  m.def("parse_kb_file", &parse_kb_file, py::arg("path"));
  m.def("serialize_kb", &serialize_kb, py::arg("spec"));
  m.def("appendix_fixture", &appendix_fixture, "The built-in document-review case study");
  m.def(
      "generate",
      [](int managers, int employees, int techdocs, bool include_administrative,
         int urgent_doc_index) {
        return generate(
            ScenarioParams{managers, employees, techdocs, include_administrative,
                           urgent_doc_index});
      },
      py::arg("managers"), py::arg("employees"), py::arg("techdocs"),
      py::arg("include_administrative") = false, py::arg("urgent_doc_index") = 0);

  m.def(
      "consistent",
      [](const ProblemSpec& spec) {
        Reasoner reasoner(spec.tbox, 2);
        return reasoner.consistent(spec.abox);
      },
      py::arg("spec"), "Is the spec's ABox consistent w.r.t. its TBox?");

  m.def(
      "ans",
      [](const ProblemSpec& spec, const std::string& query) {
        UCQ q = parse_query(query);
        std::size_t longest = 1;
        for (const CQ& cq : q.disjuncts) longest = std::max(longest, cq.atoms.size());
        Reasoner reasoner(spec.tbox, static_cast<int>(longest) + 1);
        py::list out;
        for (const Substitution& s : reasoner.ans(q, spec.abox)) out.append(subst_to_dict(s));
        return out;
      },
      py::arg("spec"), py::arg("query"), "Certain answers of a query over the spec's ABox");

  m.def(
      "forward_plan",
      [](const ProblemSpec& spec, const std::string& strategy, const std::string& mode) {
        Session session(spec);
        auto [graph, metrics] = forward_plan(session.reasoner, session.problem,
                                             session.config(strategy, mode));
        std::set<Plan> plans = extract_plans(graph, session.problem, session.reasoner);
        return py::make_tuple(graph, metrics_to_dict(metrics), plans_to_list(plans));
      },
      py::arg("spec"), py::arg("strategy") = "fifo", py::arg("mode") = "all",
      "Run forward planning; returns (graph, metrics, plans)");

  m.def(
      "abstract_backward_plan",
      [](const ProblemSpec& spec) {
        Session session(spec);
        return abstract_backward_plan(session.reasoner, session.problem);
      },
      py::arg("spec"));

  m.def(
      "abp_fpi",
      [](const ProblemSpec& spec, const std::string& strategy, const std::string& mode) {
        Session session(spec);
        AbpFpiResult result =
            abp_fpi(session.reasoner, session.problem, session.config(strategy, mode));
        std::set<Plan> plans = extract_plans(result.graph, session.problem, session.reasoner);
        py::dict metrics = metrics_to_dict(result.fpi_metrics);
        metrics["abp_seconds"] = result.abp_seconds;
        metrics["total_seconds"] = result.total_seconds;
        return py::make_tuple(result.abstract, result.graph, metrics, plans_to_list(plans));
      },
      py::arg("spec"), py::arg("strategy") = "fifo", py::arg("mode") = "all",
      "Run ABP then FPI; returns (abstract_graph, graph, metrics, plans)");

  m.def(
      "planning_graph_dot",
      [](const ProblemSpec& spec, const PlanningGraph& graph) {
        Session session(spec);
        return to_dot(graph, session.problem, session.reasoner);
      },
      py::arg("spec"), py::arg("graph"));

  m.def(
      "planning_graph_json",
      [](const ProblemSpec& spec, const PlanningGraph& graph) {
        Session session(spec);
        return to_json(graph, session.problem, session.reasoner);
      },
      py::arg("spec"), py::arg("graph"));

  m.def(
      "random_dkb",
      [](unsigned seed) {
        PlanningProblem problem = random_dkb(seed);
        ProblemSpec spec;
        spec.tbox = problem.dkb.tbox;
        spec.abox = problem.dkb.initial;
        spec.actions = problem.dkb.actions;
        spec.goal = problem.goal;
        return spec;
      },
      py::arg("seed"), "Deterministic small random planning problem");

  m.def(
      "check_inclusion",
      [](const ProblemSpec& spec) {
        InclusionVerdict verdict = check_inclusion(make_problem(spec));
        py::dict out;
        out["included"] = verdict.included;
        out["plans_fp"] = plans_to_list(verdict.plans_fp);
        out["plans_fpi"] = plans_to_list(verdict.plans_fpi);
        py::list missing;
        for (const Plan& p : verdict.missing_nonredundant) missing.append(p.str());
        out["missing_nonredundant"] = missing;
        return out;
      },
      py::arg("spec"), "Check plans(abp-fpi) is a subset of plans(fp)");
}
