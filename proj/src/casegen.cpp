#include "dkbplan/casegen.hpp"

#include <iomanip>
#include <sstream>

#include "dkbplan/errors.hpp"

namespace dkb {

namespace {

Term c(const std::string& name) { return Term::constant(name); }
Term v(const std::string& name) { return Term::variable(name); }

std::string padded(const std::string& prefix, int index) {
  std::ostringstream out;
  out << prefix << std::setw(3) << std::setfill('0') << index;
  return out.str();
}

TBox scenario_tbox() {
  std::vector<RawAxiom> axioms;
  auto incl = [&](const std::string& lhs, const std::string& rhs, bool negated = false) {
    ConceptInclusion ci;
    ci.lhs = BasicConcept::atomic(lhs);
    ci.rhs = BasicConcept::atomic(rhs);
    ci.rhs_negated = negated;
    axioms.push_back(ci);
  };
  auto domain = [&](const std::string& role, bool inverted, const std::string& rhs) {
    ConceptInclusion ci;
    ci.lhs = BasicConcept::exists(RoleExpr{role, inverted});
    ci.rhs = BasicConcept::atomic(rhs);
    axioms.push_back(ci);
  };

  incl("Document", "Employee", true);
  incl("Document", "DocumentState", true);
  incl("DocumentState", "Employee", true);
  incl("Technician", "Employee");
  incl("Administrative", "Employee");
  incl("Manager", "Employee");
  incl("Technician", "Administrative", true);
  incl("Technician", "Manager", true);
  incl("Administrative", "Manager", true);
  incl("TechnicalDoc", "Document");
  incl("AdministrativeDoc", "Document");
  incl("UrgentDoc", "Document");
  incl("TechnicalDoc", "AdministrativeDoc", true);

  {
    ConceptInclusion ci;
    ci.lhs = BasicConcept::atomic("Technician");
    ci.rhs = BasicConcept::exists(RoleExpr{"canManage", false}, "TechnicalDoc");
    axioms.push_back(ci);
  }
  {
    ConceptInclusion ci;
    ci.lhs = BasicConcept::atomic("Administrative");
    ci.rhs = BasicConcept::exists(RoleExpr{"canManage", false}, "AdministrativeDoc");
    axioms.push_back(ci);
  }
  {
    ConceptInclusion ci;
    ci.lhs = BasicConcept::atomic("Document");
    ci.rhs = BasicConcept::exists(RoleExpr{"canManage", true});
    axioms.push_back(ci);
  }
  domain("canManage", true, "Document");
  domain("assignedTo", false, "Document");
  domain("assignedTo", true, "Employee");
  axioms.push_back(Functionality{RoleExpr{"assignedTo", false}});
  domain("hasStatus", false, "Document");
  domain("hasStatus", true, "DocumentState");

  axioms.push_back(RawSimpleJoin{
      {Atom("Technician", v("x")), Atom("TechnicalDoc", v("y"))},
      Atom("canManage", v("x"), v("y"))});
  axioms.push_back(RawSimpleJoin{
      {Atom("Administrative", v("x")), Atom("AdministrativeDoc", v("y"))},
      Atom("canManage", v("x"), v("y"))});

  return validate_tbox(axioms);
}

std::vector<Action> scenario_actions() {
  std::vector<Action> actions;
  {
    Action a;
    a.name = "appoint";
    a.params = {"x", "y", "z"};
    a.guard = CQ{Atom("Manager", v("x")), Atom("canManage", v("y"), v("z"))};
    a.effect = Atom("assignedTo", v("z"), v("y"));
    actions.push_back(a);
  }
  {
    Action a;
    a.name = "review";
    a.params = {"x", "y"};
    a.guard = CQ{Atom("assignedTo", v("x"), v("y"))};
    a.effect = Atom("hasStatus", v("x"), c("reviewed"));
    actions.push_back(a);
  }
  {
    Action a;
    a.name = "setAdmDoc";
    a.params = {"x", "y"};
    a.guard = CQ{Atom("Manager", v("x")), Atom("Document", v("y"))};
    a.effect = Atom("AdministrativeDoc", v("y"));
    actions.push_back(a);
  }
  {
    Action a;
    a.name = "setTechnician";
    a.params = {"x", "y"};
    a.guard = CQ{Atom("Manager", v("x")), Atom("Employee", v("y"))};
    a.effect = Atom("Technician", v("y"));
    actions.push_back(a);
  }
  return actions;
}

UCQ scenario_goal() {
  return UCQ(CQ{Atom("hasStatus", v("x"), c("reviewed")), Atom("UrgentDoc", v("x"))});
}

}  // namespace

ProblemSpec appendix_fixture() {
  ProblemSpec spec;
  spec.tbox = scenario_tbox();
  spec.abox = ABox({Atom("Manager", c("e001")), Atom("Technician", c("e002")),
                    Atom("Administrative", c("e003")), Atom("TechnicalDoc", c("d001")),
                    Atom("UrgentDoc", c("d001")), Atom("DocumentState", c("reviewed"))});
  spec.actions = scenario_actions();
  spec.goal = scenario_goal();
  return spec;
}

ProblemSpec generate(const ScenarioParams& params) {
  if (params.n_managers < 0 || params.n_employees < 0 || params.n_techdocs < 0)
    throw InvalidParams("instance counts must be non-negative");
  if (params.n_techdocs == 0)
    throw InvalidParams("the goal ranges over documents: at least one technical document is required");
  if (params.urgent_doc_index < 0 || params.urgent_doc_index >= params.n_techdocs)
    throw InvalidParams("urgent_doc_index must name one of the technical documents");

  std::vector<Atom> atoms;
  // Managers first, then plain employees, sharing the e-prefix: a 1/1/1
  // instance names its manager e001, its employee e002, its document d001.
  for (int i = 1; i <= params.n_managers; ++i)
    atoms.push_back(Atom("Manager", c(padded("e", i))));
  for (int i = 1; i <= params.n_employees; ++i)
    atoms.push_back(Atom("Employee", c(padded("e", params.n_managers + i))));
  for (int i = 1; i <= params.n_techdocs; ++i)
    atoms.push_back(Atom("TechnicalDoc", c(padded("d", i))));
  atoms.push_back(Atom("UrgentDoc", c(padded("d", params.urgent_doc_index + 1))));
  atoms.push_back(Atom("DocumentState", c("reviewed")));
  if (params.include_administrative) atoms.push_back(Atom("Administrative", c("a001")));

  ProblemSpec spec;
  spec.tbox = scenario_tbox();
  spec.abox = ABox(std::move(atoms));
  spec.actions = scenario_actions();
  spec.goal = scenario_goal();
  return spec;
}

}  // namespace dkb
