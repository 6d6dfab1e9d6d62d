#include <doctest.h>

#include <random>

#include "dkbplan/casegen.hpp"
#include "dkbplan/errors.hpp"
#include "dkbplan/reasoner.hpp"
#include "oracles.hpp"

using namespace dkb;

namespace {

Term c(const char* n) { return Term::constant(n); }
Term v(const char* n) { return Term::variable(n); }

// The employee-hierarchy schema: Technician/Manager below Employee, disjoint.
TBox hierarchy_tbox() {
  ConceptInclusion t1;
  t1.lhs = BasicConcept::atomic("Technician");
  t1.rhs = BasicConcept::atomic("Employee");
  ConceptInclusion t2;
  t2.lhs = BasicConcept::atomic("Manager");
  t2.rhs = BasicConcept::atomic("Employee");
  ConceptInclusion t3;
  t3.lhs = BasicConcept::atomic("Technician");
  t3.rhs = BasicConcept::atomic("Manager");
  t3.rhs_negated = true;
  return validate_tbox({t1, t2, t3});
}

// Extends the hierarchy with the assignedTo role: domain Document, range
// Employee, functional.
std::vector<RawAxiom> assigned_axioms() {
  ConceptInclusion dom;
  dom.lhs = BasicConcept::exists(RoleExpr{"assignedTo", false});
  dom.rhs = BasicConcept::atomic("Document");
  ConceptInclusion rng;
  rng.lhs = BasicConcept::exists(RoleExpr{"assignedTo", true});
  rng.rhs = BasicConcept::atomic("Employee");
  return {dom, rng, Functionality{RoleExpr{"assignedTo", false}}};
}

TBox document_tbox() {
  ConceptInclusion t1;
  t1.lhs = BasicConcept::atomic("Technician");
  t1.rhs = BasicConcept::atomic("Employee");
  ConceptInclusion t2;
  t2.lhs = BasicConcept::atomic("Manager");
  t2.rhs = BasicConcept::atomic("Employee");
  ConceptInclusion t3;
  t3.lhs = BasicConcept::atomic("Technician");
  t3.rhs = BasicConcept::atomic("Manager");
  t3.rhs_negated = true;
  ConceptInclusion t4;
  t4.lhs = BasicConcept::atomic("TechnicalDoc");
  t4.rhs = BasicConcept::atomic("Document");
  RawSimpleJoin sj{{Atom("Technician", v("x")), Atom("TechnicalDoc", v("y"))},
                   Atom("canManage", v("x"), v("y"))};
  std::vector<RawAxiom> axioms = {t1, t2, t3, t4, sj};
  for (const RawAxiom& a : assigned_axioms()) axioms.push_back(a);
  return validate_tbox(axioms);
}

}  // namespace

TEST_CASE("saturation derives concept inclusions upward") {
  TBox t = hierarchy_tbox();
  Reasoner reasoner(t, 2);
  ABox a({Atom("Technician", c("e002"))});
  auto chase = reasoner.saturation(a);
  CHECK(chase->contains(Atom("Employee", c("e002"))));
  CHECK(chase->consistent());

  auto empty = reasoner.saturation(ABox());
  CHECK(empty->facts().empty());
}

TEST_CASE("simple joins fire for every named premise pair") {
  TBox t = document_tbox();
  Reasoner reasoner(t, 2);
  ABox a({Atom("Manager", c("e001")), Atom("Technician", c("e002")),
          Atom("Technician", c("e003")), Atom("TechnicalDoc", c("d001"))});
  auto chase = reasoner.saturation(a);
  CHECK(chase->contains(Atom("canManage", c("e002"), c("d001"))));
  CHECK(chase->contains(Atom("canManage", c("e003"), c("d001"))));
  CHECK(!chase->contains(Atom("canManage", c("e001"), c("d001"))));
}

TEST_CASE("consistency flags disjointness and functionality violations") {
  TBox t = hierarchy_tbox();
  Reasoner reasoner(t, 2);
  CHECK(reasoner.consistent(ABox({Atom("Technician", c("e002"))})));
  CHECK(!reasoner.consistent(ABox({Atom("Technician", c("e002")), Atom("Manager", c("e002"))})));
  CHECK(reasoner.violation(
            ABox({Atom("Technician", c("e002")), Atom("Manager", c("e002"))})) ==
        "Technician <= not Manager at e002");

  TBox docs = document_tbox();
  Reasoner doc_reasoner(docs, 2);
  CHECK(doc_reasoner.consistent(ABox()));
  ABox both({Atom("assignedTo", c("d001"), c("e002")), Atom("assignedTo", c("d001"), c("e003"))});
  CHECK(!doc_reasoner.consistent(both));
}

TEST_CASE("qualified existentials chase a typed witness") {
  ConceptInclusion quali;
  quali.lhs = BasicConcept::atomic("Technician");
  quali.rhs = BasicConcept::exists(RoleExpr{"canManage", false}, "TechnicalDoc");
  ConceptInclusion range;
  range.lhs = BasicConcept::exists(RoleExpr{"canManage", true});
  range.rhs = BasicConcept::atomic("Document");
  TBox t = validate_tbox({quali, range});
  Reasoner reasoner(t, 3);
  auto chase = reasoner.saturation(ABox({Atom("Technician", c("e002"))}));

  bool has_null_witness = false;
  for (const Atom& f : chase->facts())
    if (f.pred == "canManage" && f.args[0] == c("e002") && f.args[1].is_null()) {
      has_null_witness = true;
      CHECK(chase->contains(Atom("TechnicalDoc", f.args[1])));
      CHECK(chase->contains(Atom("Document", f.args[1])));
    }
  CHECK(has_null_witness);

  // A named witness of the right type suppresses the null.
  auto chase2 = reasoner.saturation(ABox({Atom("Technician", c("e002")),
                                          Atom("canManage", c("e002"), c("d001")),
                                          Atom("TechnicalDoc", c("d001"))}));
  CHECK(chase2->nulls_created() == 0);
}

TEST_CASE("null chains stop at the depth bound but named facts close") {
  // A <= exists R, exists R- <= A: an infinite chase without a bound.
  ConceptInclusion gen;
  gen.lhs = BasicConcept::atomic("A");
  gen.rhs = BasicConcept::exists(RoleExpr{"R", false});
  ConceptInclusion back;
  back.lhs = BasicConcept::exists(RoleExpr{"R", true});
  back.rhs = BasicConcept::atomic("A");
  TBox t = validate_tbox({gen, back});

  Reasoner shallow(t, 1);
  auto chase1 = shallow.saturation(ABox({Atom("A", c("a"))}));
  CHECK(chase1->nulls_created() == 1);

  Reasoner deeper(t, 3);
  auto chase3 = deeper.saturation(ABox({Atom("A", c("a"))}));
  CHECK(chase3->nulls_created() == 3);
}

TEST_CASE("certain answers require named constants, nulls cannot serve") {
  // Document <= exists canManage-: someone manages every document, but no
  // named manager exists, so the guard has no certain answers.
  ConceptInclusion managed;
  managed.lhs = BasicConcept::atomic("Document");
  managed.rhs = BasicConcept::exists(RoleExpr{"canManage", true});
  TBox t = validate_tbox({managed});
  Reasoner reasoner(t, 2);
  ABox a({Atom("Document", c("d001"))});
  CHECK(reasoner.ans(CQ{Atom("canManage", v("x"), v("y"))}, a).empty());
  // The null witness exists in the chase all the same.
  CHECK(reasoner.saturation(a)->nulls_created() == 1);
}

TEST_CASE("ans enumerates the guard answers of the appoint example") {
  TBox t = document_tbox();
  Reasoner reasoner(t, 3);
  ABox a({Atom("Manager", c("e001")), Atom("Technician", c("e002")),
          Atom("Technician", c("e003")), Atom("TechnicalDoc", c("d001"))});
  CQ guard{Atom("Manager", v("x")), Atom("canManage", v("y"), v("z"))};
  std::vector<Substitution> answers = reasoner.ans(guard, a);
  REQUIRE(answers.size() == 2);
  Substitution theta1 = Substitution::of({{"x", c("e001")}, {"y", c("e002")}, {"z", c("d001")}});
  Substitution theta2 = Substitution::of({{"x", c("e001")}, {"y", c("e003")}, {"z", c("d001")}});
  CHECK((answers[0] == theta1 || answers[1] == theta1));
  CHECK((answers[0] == theta2 || answers[1] == theta2));

  CHECK(reasoner.ans(CQ{Atom("Technician", c("e002"))}, a) ==
        std::vector<Substitution>{Substitution{}});
  CHECK(reasoner.ans(CQ{Atom("Greeted", v("x"))}, a).empty());
}

TEST_CASE("ans raises on inconsistent input") {
  TBox t = hierarchy_tbox();
  Reasoner reasoner(t, 2);
  ABox bad({Atom("Technician", c("e002")), Atom("Manager", c("e002"))});
  CHECK_THROWS_AS(reasoner.ans(CQ{Atom("Employee", v("x"))}, bad), InconsistentState);
  CHECK(!reasoner.holds(CQ{Atom("Employee", v("x"))}, bad));
}

TEST_CASE("holds tests conc membership") {
  TBox t = document_tbox();
  Reasoner reasoner(t, 3);
  ABox a0({Atom("Technician", c("e002")), Atom("Manager", c("e001")),
           Atom("TechnicalDoc", c("d001")), Atom("canManage", c("e002"), c("d001"))});
  CHECK(reasoner.holds(CQ{Atom("Manager", v("x")), Atom("canManage", c("e002"), c("d001"))}, a0));
  CHECK(!reasoner.holds(CQ{Atom("assignedTo", c("d001"), c("e002"))}, a0));
  ABox goal_state = a0.with(Atom("assignedTo", c("d001"), c("e002")));
  CHECK(reasoner.holds(CQ{Atom("assignedTo", c("d001"), c("e002"))}, goal_state));
}

TEST_CASE("goal over the fixture initial state has no answers") {
  ProblemSpec fixture = appendix_fixture();
  Reasoner reasoner(fixture.tbox, 3);
  for (const CQ& cq : fixture.goal.disjuncts)
    CHECK(reasoner.ans(cq, fixture.abox).empty());

  // Cross-check against the enumeration oracle.
  for (const CQ& cq : fixture.goal.disjuncts)
    CHECK(testing::oracle_ans(cq, fixture.tbox, fixture.abox, 3).empty());
}

TEST_CASE("ans equals exhaustive enumeration on small instances") {
  std::mt19937 rng(23);
  TBox t = document_tbox();
  const std::vector<std::string> concepts = {"Technician", "Manager", "TechnicalDoc", "Document"};
  const std::vector<std::string> roles = {"canManage", "assignedTo"};
  const std::vector<std::string> consts = {"a", "b", "d", "e", "f", "g"};
  std::uniform_int_distribution<std::size_t> pc(0, concepts.size() - 1);
  std::uniform_int_distribution<std::size_t> pr(0, roles.size() - 1);
  std::uniform_int_distribution<std::size_t> pk(0, consts.size() - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> n_assertions(0, 6);
  std::uniform_int_distribution<int> n_atoms(1, 3);
  const std::vector<std::string> vars = {"x", "y", "z"};
  std::uniform_int_distribution<std::size_t> pvar(0, vars.size() - 1);

  int checked = 0;
  for (int i = 0; i < 250; ++i) {
    std::vector<Atom> atoms;
    int n = n_assertions(rng);
    for (int k = 0; k < n; ++k) {
      if (coin(rng)) {
        atoms.push_back(Atom(concepts[pc(rng)], Term::constant(consts[pk(rng)])));
      } else {
        atoms.push_back(Atom(roles[pr(rng)], Term::constant(consts[pk(rng)]),
                             Term::constant(consts[pk(rng)])));
      }
    }
    ABox a(std::move(atoms));
    Reasoner reasoner(t, 4);
    if (!reasoner.consistent(a)) continue;

    CQ q;
    int m = n_atoms(rng);
    for (int k = 0; k < m; ++k) {
      auto arg = [&]() -> Term {
        return coin(rng) ? Term::variable(vars[pvar(rng)]) : Term::constant(consts[pk(rng)]);
      };
      if (coin(rng)) {
        q.atoms.push_back(Atom(roles[pr(rng)], arg(), arg()));
      } else {
        q.atoms.push_back(Atom(concepts[pc(rng)], arg()));
      }
    }

    std::vector<Substitution> fast = reasoner.ans(q, a);
    std::vector<Substitution> slow = testing::oracle_ans(q, t, a, 4);
    std::set<Substitution> fast_set(fast.begin(), fast.end());
    std::set<Substitution> slow_set(slow.begin(), slow.end());
    CHECK(fast_set == slow_set);
    ++checked;
  }
  CHECK(checked >= 200);
}

TEST_CASE("chase is monotone and idempotent on the named fragment") {
  std::mt19937 rng(29);
  ProblemSpec fixture = appendix_fixture();
  const std::vector<std::string> concepts = {"Technician", "Manager", "Administrative",
                                             "TechnicalDoc", "UrgentDoc", "Employee"};
  const std::vector<std::string> roles = {"canManage", "assignedTo", "hasStatus"};
  const std::vector<std::string> consts = {"e1", "e2", "d1", "d2", "s1"};
  std::uniform_int_distribution<std::size_t> pc(0, concepts.size() - 1);
  std::uniform_int_distribution<std::size_t> pr(0, roles.size() - 1);
  std::uniform_int_distribution<std::size_t> pk(0, consts.size() - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> n_assertions(0, 6);

  for (int i = 0; i < 250; ++i) {
    std::vector<Atom> atoms;
    int n = n_assertions(rng);
    for (int k = 0; k < n; ++k) {
      if (coin(rng)) {
        atoms.push_back(Atom(concepts[pc(rng)], Term::constant(consts[pk(rng)])));
      } else {
        atoms.push_back(Atom(roles[pr(rng)], Term::constant(consts[pk(rng)]),
                             Term::constant(consts[pk(rng)])));
      }
    }
    ABox a(atoms);
    auto chase = saturate(a, fixture.tbox, 3);

    // Monotone: every base assertion survives.
    for (const Atom& atom : a) CHECK(chase->contains(atom));

    // Idempotent on named facts: re-chasing the named fragment adds nothing.
    ABox named = chase->named_fragment();
    auto rechase = saturate(named, fixture.tbox, 3);
    CHECK(rechase->named_fragment() == named);
  }
}

TEST_CASE("consistency is antitone under assertion addition") {
  std::mt19937 rng(31);
  ProblemSpec fixture = appendix_fixture();
  const std::vector<std::string> concepts = {"Technician", "Manager", "Administrative",
                                             "TechnicalDoc", "AdministrativeDoc", "UrgentDoc"};
  const std::vector<std::string> roles = {"canManage", "assignedTo", "hasStatus"};
  const std::vector<std::string> consts = {"e1", "e2", "d1", "s1"};
  std::uniform_int_distribution<std::size_t> pc(0, concepts.size() - 1);
  std::uniform_int_distribution<std::size_t> pr(0, roles.size() - 1);
  std::uniform_int_distribution<std::size_t> pk(0, consts.size() - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> n_assertions(1, 7);

  Reasoner reasoner(fixture.tbox, 3);
  int consistent_supersets = 0;
  for (int i = 0; i < 300; ++i) {
    std::vector<Atom> atoms;
    int n = n_assertions(rng);
    for (int k = 0; k < n; ++k) {
      if (coin(rng)) {
        atoms.push_back(Atom(concepts[pc(rng)], Term::constant(consts[pk(rng)])));
      } else {
        atoms.push_back(Atom(roles[pr(rng)], Term::constant(consts[pk(rng)]),
                             Term::constant(consts[pk(rng)])));
      }
    }
    ABox superset(atoms);
    // Random subset.
    std::vector<Atom> fewer;
    for (const Atom& atom : superset)
      if (coin(rng)) fewer.push_back(atom);
    ABox subset(fewer);

    if (reasoner.consistent(superset)) {
      ++consistent_supersets;
      CHECK(reasoner.consistent(subset));
    }
  }
  CHECK(consistent_supersets > 30);
}
