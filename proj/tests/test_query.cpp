#include <doctest.h>

#include <random>

#include "dkbplan/query.hpp"
#include "oracles.hpp"

using namespace dkb;

namespace {
Term c(const char* n) { return Term::constant(n); }
Term v(const char* n) { return Term::variable(n); }
}  // namespace

TEST_CASE("unify computes the expected bindings") {
  auto s = unify(Atom("assignedTo", v("z"), v("y")), Atom("assignedTo", c("d001"), c("e002")));
  REQUIRE(s.has_value());
  CHECK(s->apply(v("z")) == c("d001"));
  CHECK(s->apply(v("y")) == c("e002"));

  auto empty = unify(Atom("C", c("a")), Atom("C", c("a")));
  REQUIRE(empty.has_value());
  CHECK(empty->empty());

  CHECK(!unify(Atom("C", c("a")), Atom("D", c("a"))).has_value());
  CHECK(!unify(Atom("C", c("a")), Atom("C", c("b"))).has_value());
  CHECK(!unify(Atom("R", c("a"), c("b")), Atom("R", c("b"), c("a"))).has_value());
}

TEST_CASE("unify handles shared and repeated variables") {
  // P(x,x) vs P(a,y): x -> a and y -> a.
  auto s = unify(Atom("P", v("x"), v("x")), Atom("P", c("a"), v("y")));
  REQUIRE(s.has_value());
  CHECK(s->apply(v("x")) == c("a"));
  CHECK(s->apply(v("y")) == c("a"));

  // P(x,x) vs P(a,b) cannot unify.
  CHECK(!unify(Atom("P", v("x"), v("x")), Atom("P", c("a"), c("b"))).has_value());
}

TEST_CASE("unify returns an idempotent mgu and both atoms agree under it") {
  std::mt19937 rng(7);
  const std::vector<Term> pool = {c("a"), c("b"), v("x"), v("y"), v("z")};
  auto random_atom = [&](const std::string& pred) {
    std::uniform_int_distribution<std::size_t> d(0, pool.size() - 1);
    return Atom(pred, pool[d(rng)], pool[d(rng)]);
  };
  int unified = 0;
  for (int i = 0; i < 500; ++i) {
    Atom a = random_atom("P");
    Atom b = random_atom("P");
    auto s = unify(a, b);
    if (!s) continue;
    ++unified;
    // Idempotent: applying twice changes nothing.
    for (const auto& [var, term] : s->entries()) CHECK(s->apply(term) == term);
    CHECK(s->apply(a) == s->apply(b));

    // Most general: every ground unifier factors through it.
    const std::vector<Term> consts = {c("a"), c("b"), c("d")};
    std::set<std::string> vars;
    for (const Term& t : a.args)
      if (t.is_variable()) vars.insert(t.name());
    for (const Term& t : b.args)
      if (t.is_variable()) vars.insert(t.name());
    std::vector<std::string> var_list(vars.begin(), vars.end());
    std::vector<std::size_t> idx(var_list.size(), 0);
    bool done = var_list.empty();
    while (!done) {
      Substitution u;
      for (std::size_t k = 0; k < var_list.size(); ++k) u.bind(var_list[k], consts[idx[k]]);
      if (u.apply(a) == u.apply(b)) {
        for (const std::string& var : var_list)
          CHECK(u.apply(Term::variable(var)) == u.apply(s->apply(Term::variable(var))));
      }
      std::size_t k = 0;
      while (k < idx.size() && ++idx[k] == consts.size()) idx[k++] = 0;
      done = k == idx.size();
    }
  }
  CHECK(unified > 50);
}

TEST_CASE("apply substitutes variables and leaves the rest") {
  CQ q{Atom("Manager", v("x"))};
  CHECK(apply(Substitution::of({{"x", c("e001")}}), q).atoms[0] == Atom("Manager", c("e001")));
  CHECK(apply(Substitution{}, q) == q);

  CQ body{Atom("Manager", v("x")), Atom("canManage", v("y"), v("z"))};
  CQ applied = apply(Substitution::of({{"y", c("e002")}, {"z", c("d001")}}), body);
  CHECK(applied == CQ{Atom("Manager", v("x")), Atom("canManage", c("e002"), c("d001"))});
}

TEST_CASE("canonicalize identifies alpha-order-equivalent queries") {
  CQ a{Atom("Manager", v("a")), Atom("Technician", c("e002"))};
  CQ b{Atom("Technician", c("e002")), Atom("Manager", v("q"))};
  CHECK(canonicalize(a).key == canonicalize(b).key);

  CQ ground{Atom("B", c("b")), Atom("A", c("a"))};
  CanonicalCQ canon = canonicalize(ground);
  CHECK(canon.query == CQ{Atom("A", c("a")), Atom("B", c("b"))});

  // The same three-atom backward state under two variable namings.
  CQ s3_a{Atom("Manager", v("x")), Atom("canManage", v("y"), v("z")), Atom("UrgentDoc", v("z"))};
  CQ s3_b{Atom("Manager", v("u")), Atom("canManage", v("v"), v("w")), Atom("UrgentDoc", v("w"))};
  CHECK(canonicalize(s3_a).key == canonicalize(s3_b).key);

  CQ different{Atom("Manager", v("x")), Atom("canManage", v("x"), v("z")),
               Atom("UrgentDoc", v("z"))};
  CHECK(canonicalize(s3_a).key != canonicalize(different).key);
}

TEST_CASE("canonicalize agrees with brute-force renaming enumeration") {
  std::mt19937 rng(11);
  const std::vector<std::string> preds1 = {"A", "B"};
  const std::vector<std::string> preds2 = {"R", "S"};
  const std::vector<std::string> vars = {"x", "y", "z", "w"};
  auto random_cq = [&]() {
    std::uniform_int_distribution<int> n_atoms(1, 4);
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_int_distribution<std::size_t> pv(0, vars.size() - 1);
    CQ q;
    int n = n_atoms(rng);
    for (int i = 0; i < n; ++i) {
      auto arg = [&]() -> Term {
        return coin(rng) ? Term::variable(vars[pv(rng)]) : c("k");
      };
      if (coin(rng)) {
        q.atoms.push_back(Atom(preds2[coin(rng)], arg(), arg()));
      } else {
        q.atoms.push_back(Atom(preds1[coin(rng)], arg()));
      }
    }
    return q;
  };

  int equivalent_seen = 0;
  for (int i = 0; i < 300; ++i) {
    CQ q1 = random_cq();
    CQ q2 = random_cq();
    bool canon_equal = canonicalize(q1).key == canonicalize(q2).key;
    bool oracle_equal = testing::oracle_alpha_equivalent(q1, q2);
    CHECK(canon_equal == oracle_equal);
    if (oracle_equal) ++equivalent_seen;

    // A genuine alpha-variant must always map to the same key.
    std::map<std::string, std::string> renaming;
    CQ variant = rename_apart(q1, q1.variables(), &renaming);
    CHECK(canonicalize(q1).key == canonicalize(variant).key);
  }
  CHECK(equivalent_seen > 0);
}

TEST_CASE("rename_apart avoids the requested variables") {
  CQ q{Atom("Manager", v("x"))};
  CQ renamed = rename_apart(q, {"x"});
  CHECK(renamed.variables().count("x") == 0);
  CHECK(canonicalize(renamed).key == canonicalize(q).key);

  CQ untouched = rename_apart(q, {});
  CHECK(untouched == q);

  std::mt19937 rng(3);
  const std::vector<std::string> vars = {"x", "y", "z", "x0", "y1"};
  std::uniform_int_distribution<std::size_t> pv(0, vars.size() - 1);
  for (int i = 0; i < 200; ++i) {
    CQ random{Atom("R", Term::variable(vars[pv(rng)]), Term::variable(vars[pv(rng)])),
              Atom("A", Term::variable(vars[pv(rng)]))};
    std::set<std::string> avoid;
    for (int k = 0; k < 3; ++k) avoid.insert(vars[pv(rng)]);
    CQ out = rename_apart(random, avoid);
    for (const std::string& name : out.variables()) CHECK(avoid.count(name) == 0);
    CHECK(canonicalize(out).key == canonicalize(random).key);
  }
}

TEST_CASE("substitutions print sorted by variable name") {
  Substitution s = Substitution::of({{"z", c("d001")}, {"x", c("e001")}, {"y", c("e002")}});
  CHECK(s.str() == "{?x->e001, ?y->e002, ?z->d001}");
}
