#include <doctest.h>

#include "dkbplan/casegen.hpp"
#include "dkbplan/errors.hpp"
#include "dkbplan/parser.hpp"

using namespace dkb;

namespace {

const char* kSmallKb = R"(
# employee hierarchy with an assignment role
[tbox]
Technician <= Employee
Manager <= Employee
Technician <= not Manager
exists assignedTo <= Document
exists assignedTo- <= Employee
funct assignedTo
TechnicalDoc <= Document

[sj]
Technician(?x), TechnicalDoc(?y) -> canManage(?x,?y)

[abox]
Manager(e001)
Technician(e002)
TechnicalDoc(d001)

[actions]
appoint(?x,?y,?z) : Manager(?x), canManage(?y,?z) => assignedTo(?z,?y)
sayHello(x,y) : Manager(?x), Technician(?y) => Greeted(?y)

[goal]
assignedTo(d001,e002)
)";

}  // namespace

TEST_CASE("parse_kb reads every section") {
  ProblemSpec spec = parse_kb(kSmallKb);
  CHECK(spec.tbox.dl_size() == 7);
  CHECK(spec.tbox.sj_size() == 1);
  CHECK(spec.abox.size() == 3);
  REQUIRE(spec.actions.size() == 2);
  CHECK(spec.actions[0].name == "appoint");
  CHECK(spec.actions[0].params == std::vector<std::string>{"x", "y", "z"});
  CHECK(spec.actions[1].params == std::vector<std::string>{"x", "y"});  // bare-name header
  REQUIRE(spec.goal.disjuncts.size() == 1);
  CHECK(spec.goal.disjuncts[0].ground());
}

TEST_CASE("round-trip: parse, serialize, parse is the identity") {
  ProblemSpec first = parse_kb(kSmallKb);
  std::string emitted = serialize_kb(first);
  ProblemSpec second = parse_kb(emitted);
  CHECK(first == second);

  ProblemSpec fixture = appendix_fixture();
  CHECK(parse_kb(serialize_kb(fixture)) == fixture);
}

TEST_CASE("parse errors carry a position") {
  try {
    parse_kb("[tbox]\nTechnician <) Employee\n[goal]\nA(?x)\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(e.column > 0);
  }
}

TEST_CASE("missing goal is rejected") {
  CHECK_THROWS_AS(parse_kb("[abox]\nManager(e001)\n"), ValidationError);
  CHECK_THROWS_AS(parse_kb("[abox]\nManager(e001)\n[goal]\n"), ValidationError);
}

TEST_CASE("unknown sections and free effect variables are rejected") {
  CHECK_THROWS_AS(parse_kb("[abox]\nC(a)\n[rbox]\n[goal]\nC(?x)\n"), ValidationError);
  CHECK_THROWS_AS(
      parse_kb("[actions]\nbad(?x) : C(?x) => R(?x,?y)\n[goal]\nC(?x)\n"), ValidationError);
  // Parameter list must cover exactly the guard variables.
  CHECK_THROWS_AS(
      parse_kb("[actions]\nbad(?x,?w) : C(?x) => C(?x)\n[goal]\nC(?x)\n"), ValidationError);
}

TEST_CASE("variables need their marker outside action headers") {
  // 'y' in the guard without '?' is a constant, so it is not a parameter.
  ProblemSpec spec = parse_kb(
      "[abox]\nR(a,b)\n[actions]\nact(?x) : R(?x,b) => S(?x,b)\n[goal]\nS(?x,?y)\n");
  CHECK(spec.actions[0].params == std::vector<std::string>{"x"});
  CHECK(spec.actions[0].guard.atoms[0].args[1] == Term::constant("b"));
}

TEST_CASE("plain inclusions classify by usage evidence") {
  // worksFor appears as a binary predicate in the ABox, so 'worksFor <= memberOf'
  // is a role inclusion; the reverse evidence never appears for A/B.
  ProblemSpec spec = parse_kb(R"(
[tbox]
worksFor <= memberOf
A <= B
[abox]
worksFor(e001,g1)
[goal]
memberOf(?x,?y)
)");
  CHECK(spec.tbox.role_inclusions().size() == 1);
  CHECK(spec.tbox.role_inclusions()[0].lhs.name == "worksFor");
  CHECK(spec.tbox.concept_inclusions().size() == 1);

  // Conflicting evidence is an error.
  CHECK_THROWS_AS(parse_kb(R"(
[tbox]
A <= memberOf
[abox]
A(e001)
memberOf(e001,g1)
[goal]
A(?x)
)"),
                  ValidationError);
}

TEST_CASE("arity misuse is rejected") {
  CHECK_THROWS_AS(parse_kb("[abox]\nC(a)\nC(a,b)\n[goal]\nC(?x)\n"), ValidationError);
}

TEST_CASE("multiple goal lines form a union query") {
  ProblemSpec spec = parse_kb("[abox]\nC(a)\n[goal]\nC(?x)\nD(?x), E(?x,?y)\n");
  CHECK(spec.goal.disjuncts.size() == 2);
  CHECK(spec.goal.disjuncts[1].atoms.size() == 2);
}

TEST_CASE("parse_query splits disjuncts on bars") {
  UCQ q = parse_query("Manager(?x), canManage(?y,?z) | Greeted(?x)");
  REQUIRE(q.disjuncts.size() == 2);
  CHECK(q.disjuncts[0].atoms.size() == 2);
  CHECK(q.disjuncts[1].atoms.size() == 1);
  CHECK_THROWS_AS(parse_query("Manager(?x) extra"), ParseError);
}

TEST_CASE("appendix fixture file content matches the builtin") {
  ProblemSpec fixture = appendix_fixture();
  CHECK(fixture.tbox.dl_size() == 22);
  CHECK(fixture.tbox.sj_size() == 2);
  CHECK(fixture.abox.size() == 6);
  CHECK(fixture.actions.size() == 4);
  CHECK(fixture.goal.disjuncts.size() == 1);
}
