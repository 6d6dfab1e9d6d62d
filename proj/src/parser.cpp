#include "dkbplan/parser.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "dkbplan/errors.hpp"

namespace dkb {

namespace {

struct LineScanner {
  const std::string& text;
  int line;
  std::size_t pos = 0;

  LineScanner(const std::string& t, int line) : text(t), line(line) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line, static_cast<int>(pos) + 1);
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool done() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  bool accept(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  bool accept(const std::string& word) {
    skip_ws();
    if (text.compare(pos, word.size(), word) == 0) {
      pos += word.size();
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  std::string identifier() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && ident_char(text[pos])) ++pos;
    if (pos == start) fail("expected an identifier");
    return text.substr(start, pos - start);
  }

  // Keyword check without consuming: identifier at current position equals w.
  bool peek_word(const std::string& w) {
    skip_ws();
    if (text.compare(pos, w.size(), w) != 0) return false;
    std::size_t after = pos + w.size();
    return after >= text.size() || !ident_char(text[after]);
  }

  std::string word() {
    skip_ws();
    return identifier();
  }

  Term term() {
    if (accept('?')) return Term::variable(identifier());
    return Term::constant(identifier());
  }

  Atom atom() {
    std::string pred = identifier();
    expect('(');
    std::vector<Term> args;
    args.push_back(term());
    if (accept(',')) args.push_back(term());
    expect(')');
    if (args.size() == 2) return Atom(pred, args[0], args[1]);
    return Atom(pred, args[0]);
  }

  std::vector<Atom> atom_list(const std::string& stop = "") {
    std::vector<Atom> out;
    out.push_back(atom());
    while (accept(',')) out.push_back(atom());
    (void)stop;
    return out;
  }
};

// One side of an inclusion axiom before concept/role disambiguation.
struct RawSide {
  bool negated = false;
  bool has_exists = false;
  bool inverted = false;  // trailing '-'
  std::string name;
  std::optional<std::string> filler;
};

RawSide parse_side(LineScanner& s) {
  RawSide side;
  if (s.peek_word("not")) {
    s.accept(std::string("not"));
    side.negated = true;
  }
  if (s.peek_word("exists")) {
    s.accept(std::string("exists"));
    side.has_exists = true;
  }
  side.name = s.identifier();
  if (s.accept('-')) side.inverted = true;
  if (s.accept('.')) {
    if (!side.has_exists) s.fail("qualifier '.' is only valid after an existential role");
    side.filler = s.identifier();
  }
  return side;
}

struct RawInclusion {
  RawSide lhs;
  RawSide rhs;
  int line;
};

enum class PredUse { Concept, Role };

void note_use(std::map<std::string, PredUse>& uses, const std::string& name, PredUse use,
              int line) {
  auto [it, inserted] = uses.emplace(name, use);
  if (!inserted && it->second != use)
    throw ValidationError("predicate " + name + " is used both as a concept and as a role (line " +
                          std::to_string(line) + ")");
}

void note_atom(std::map<std::string, PredUse>& uses, const Atom& a, int line) {
  note_use(uses, a.pred, a.binary() ? PredUse::Role : PredUse::Concept, line);
}

}  // namespace

ProblemSpec parse_kb(const std::string& text) {
  enum class Section { None, TBox, Sj, ABox, Actions, Goal };
  Section section = Section::None;
  bool saw_goal_section = false;

  std::vector<RawInclusion> inclusions;
  std::vector<RawAxiom> axioms;  // unambiguous ones collected directly
  std::vector<Atom> abox_atoms;
  std::vector<Action> actions;
  std::vector<CQ> goal_disjuncts;
  std::map<std::string, PredUse> uses;

  std::istringstream in(text);
  std::string raw_line;
  int line_no = 0;
  while (std::getline(in, raw_line)) {
    ++line_no;
    std::size_t hash = raw_line.find('#');
    if (hash != std::string::npos) raw_line.erase(hash);
    LineScanner s(raw_line, line_no);
    if (s.done()) continue;

    if (s.peek() == '[') {
      s.expect('[');
      std::string name = s.identifier();
      s.expect(']');
      if (!s.done()) s.fail("unexpected text after section header");
      if (name == "tbox") section = Section::TBox;
      else if (name == "sj") section = Section::Sj;
      else if (name == "abox") section = Section::ABox;
      else if (name == "actions") section = Section::Actions;
      else if (name == "goal") { section = Section::Goal; saw_goal_section = true; }
      else throw ValidationError("unknown section [" + name + "] at line " +
                                 std::to_string(line_no));
      continue;
    }

    switch (section) {
      case Section::None:
        s.fail("content before the first section header");
      case Section::TBox: {
        if (s.peek_word("funct")) {
          s.accept(std::string("funct"));
          std::string role = s.identifier();
          bool inv = s.accept('-');
          if (!s.done()) s.fail("unexpected text after functionality axiom");
          note_use(uses, role, PredUse::Role, line_no);
          axioms.push_back(Functionality{RoleExpr{role, inv}});
          break;
        }
        RawSide lhs = parse_side(s);
        if (!s.accept(std::string("<="))) s.fail("expected '<='");
        RawSide rhs = parse_side(s);
        if (!s.done()) s.fail("unexpected text after axiom");

        bool role_shape = lhs.inverted || rhs.inverted;
        bool concept_shape = lhs.has_exists || rhs.has_exists || rhs.filler.has_value();
        if (lhs.has_exists && lhs.inverted) role_shape = false;  // 'exists R-' is a concept side
        if (rhs.has_exists && rhs.inverted) role_shape = lhs.inverted && !lhs.has_exists;

        auto as_concept = [&]() {
          auto side_concept = [&](const RawSide& side) {
            if (side.has_exists) {
              note_use(uses, side.name, PredUse::Role, line_no);
              if (side.filler) note_use(uses, *side.filler, PredUse::Concept, line_no);
              return BasicConcept::exists(RoleExpr{side.name, side.inverted}, side.filler);
            }
            if (side.inverted) s.fail("'-' marks an inverse role, not a concept");
            note_use(uses, side.name, PredUse::Concept, line_no);
            return BasicConcept::atomic(side.name);
          };
          ConceptInclusion ci;
          ci.lhs_negated = lhs.negated;
          ci.lhs = side_concept(lhs);
          ci.rhs_negated = rhs.negated;
          ci.rhs = side_concept(rhs);
          axioms.push_back(ci);
        };
        auto as_role = [&]() {
          note_use(uses, lhs.name, PredUse::Role, line_no);
          note_use(uses, rhs.name, PredUse::Role, line_no);
          RoleInclusion ri;
          ri.lhs_negated = lhs.negated;
          ri.lhs = RoleExpr{lhs.name, lhs.inverted};
          ri.rhs_negated = rhs.negated;
          ri.rhs = RoleExpr{rhs.name, rhs.inverted};
          axioms.push_back(ri);
        };

        if (concept_shape && role_shape && !(lhs.has_exists || rhs.has_exists))
          s.fail("cannot mix concept and role syntax in one axiom");
        if (concept_shape) {
          as_concept();
        } else if (role_shape) {
          as_role();
        } else {
          // Plain 'X <= [not] Y': concept vs role decided after the whole
          // file is read, from how the names are used elsewhere.
          inclusions.push_back(RawInclusion{lhs, rhs, line_no});
        }
        break;
      }
      case Section::Sj: {
        std::vector<Atom> premise;
        premise.push_back(s.atom());
        s.expect(',');
        premise.push_back(s.atom());
        if (!s.accept(std::string("->"))) s.fail("expected '->'");
        Atom conclusion = s.atom();
        if (!s.done()) s.fail("unexpected text after simple join axiom");
        for (const Atom& p : premise) note_atom(uses, p, line_no);
        note_atom(uses, conclusion, line_no);
        axioms.push_back(RawSimpleJoin{premise, conclusion});
        break;
      }
      case Section::ABox: {
        Atom a = s.atom();
        if (!s.done()) s.fail("unexpected text after assertion");
        if (!a.over_constants()) s.fail("ABox assertions must be ground over constants");
        note_atom(uses, a, line_no);
        abox_atoms.push_back(a);
        break;
      }
      case Section::Actions: {
        Action act;
        act.name = s.identifier();
        s.expect('(');
        if (s.peek() != ')') {
          do {
            s.accept('?');  // parameters may omit the variable marker
            act.params.push_back(s.identifier());
          } while (s.accept(','));
        }
        s.expect(')');
        s.expect(':');
        std::vector<Atom> guard_atoms;
        guard_atoms.push_back(s.atom());
        while (s.accept(',')) guard_atoms.push_back(s.atom());
        if (!s.accept(std::string("=>"))) s.fail("expected '=>'");
        act.effect = s.atom();
        if (!s.done()) s.fail("unexpected text after action effect");
        act.guard = CQ(std::move(guard_atoms));
        for (const Atom& g : act.guard.atoms) note_atom(uses, g, line_no);
        note_atom(uses, act.effect, line_no);
        try {
          check_action_shape(act);
        } catch (const ValidationError& e) {
          throw ValidationError(std::string(e.what()) + " (line " + std::to_string(line_no) + ")");
        }
        actions.push_back(std::move(act));
        break;
      }
      case Section::Goal: {
        std::vector<Atom> atoms;
        atoms.push_back(s.atom());
        while (s.accept(',')) atoms.push_back(s.atom());
        if (!s.done()) s.fail("unexpected text after goal query");
        for (const Atom& g : atoms) note_atom(uses, g, line_no);
        goal_disjuncts.push_back(CQ(std::move(atoms)));
        break;
      }
    }
  }

  // Resolve deferred plain inclusions against collected usage evidence.
  for (const RawInclusion& inc : inclusions) {
    auto use_of = [&](const std::string& name) -> std::optional<PredUse> {
      auto it = uses.find(name);
      if (it == uses.end()) return std::nullopt;
      return it->second;
    };
    std::optional<PredUse> lu = use_of(inc.lhs.name);
    std::optional<PredUse> ru = use_of(inc.rhs.name);
    PredUse decided;
    if (lu && ru && *lu != *ru)
      throw ValidationError("axiom at line " + std::to_string(inc.line) +
                            " mixes a concept and a role name");
    if (lu) decided = *lu;
    else if (ru) decided = *ru;
    else decided = PredUse::Concept;  // no evidence anywhere: default to concepts

    if (decided == PredUse::Concept) {
      ConceptInclusion ci;
      ci.lhs_negated = inc.lhs.negated;
      ci.lhs = BasicConcept::atomic(inc.lhs.name);
      ci.rhs_negated = inc.rhs.negated;
      ci.rhs = BasicConcept::atomic(inc.rhs.name);
      note_use(uses, inc.lhs.name, PredUse::Concept, inc.line);
      note_use(uses, inc.rhs.name, PredUse::Concept, inc.line);
      axioms.push_back(ci);
    } else {
      RoleInclusion ri;
      ri.lhs_negated = inc.lhs.negated;
      ri.lhs = RoleExpr{inc.lhs.name, false};
      ri.rhs_negated = inc.rhs.negated;
      ri.rhs = RoleExpr{inc.rhs.name, false};
      note_use(uses, inc.lhs.name, PredUse::Role, inc.line);
      note_use(uses, inc.rhs.name, PredUse::Role, inc.line);
      axioms.push_back(ri);
    }
  }

  if (!saw_goal_section || goal_disjuncts.empty())
    throw ValidationError("missing goal: a [goal] section with at least one query is required");

  ProblemSpec spec;
  spec.tbox = validate_tbox(axioms);

  // Inverse-role assertions were already excluded syntactically ('-' cannot
  // appear inside an atom), so assertions are in the atomic direction.
  spec.abox = ABox(std::move(abox_atoms));
  spec.actions = std::move(actions);
  spec.goal = UCQ(std::move(goal_disjuncts));
  return spec;
}

ProblemSpec parse_kb_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_kb(buf.str());
}

namespace {

std::string concept_text(const BasicConcept& b) {
  if (b.is_atomic()) return b.concept_name;
  std::string out = "exists " + b.role.str();
  if (b.filler) out += " . " + *b.filler;
  return out;
}

}  // namespace

std::string serialize_kb(const ProblemSpec& spec) {
  std::ostringstream out;
  out << "[tbox]\n";
  for (const ConceptInclusion& ci : spec.tbox.concept_inclusions())
    out << concept_text(ci.lhs) << " <= " << (ci.rhs_negated ? "not " : "")
        << concept_text(ci.rhs) << "\n";
  for (const RoleInclusion& ri : spec.tbox.role_inclusions())
    out << ri.lhs.str() << " <= " << (ri.rhs_negated ? "not " : "") << ri.rhs.str() << "\n";
  for (const Functionality& f : spec.tbox.functionalities())
    out << "funct " << f.role.str() << "\n";
  out << "\n[sj]\n";
  for (const SimpleJoinAxiom& sj : spec.tbox.sj())
    out << sj.premise_first << "(?x), " << sj.premise_second << "(?y) -> " << sj.conclusion_role
        << "(?x,?y)\n";
  out << "\n[abox]\n";
  for (const Atom& a : spec.abox) out << a.str() << "\n";
  out << "\n[actions]\n";
  for (const Action& act : spec.actions) {
    out << act.name << "(";
    for (std::size_t i = 0; i < act.params.size(); ++i) {
      if (i) out << ",";
      out << "?" << act.params[i];
    }
    out << ") : " << act.guard.str() << " => " << act.effect.str() << "\n";
  }
  out << "\n[goal]\n";
  for (const CQ& cq : spec.goal.disjuncts) out << cq.str() << "\n";
  return out.str();
}

UCQ parse_query(const std::string& text) {
  std::vector<CQ> disjuncts;
  std::size_t start = 0;
  int part_no = 0;
  while (start <= text.size()) {
    std::size_t bar = text.find('|', start);
    std::string part = text.substr(start, bar == std::string::npos ? bar : bar - start);
    ++part_no;
    LineScanner s(part, part_no);
    std::vector<Atom> atoms;
    atoms.push_back(s.atom());
    while (s.accept(',')) atoms.push_back(s.atom());
    if (!s.done()) s.fail("unexpected text after query");
    disjuncts.push_back(CQ(std::move(atoms)));
    if (bar == std::string::npos) break;
    start = bar + 1;
  }
  if (disjuncts.empty()) throw ParseError("empty query", 1, 1);
  return UCQ(std::move(disjuncts));
}

PlanningProblem make_problem(const ProblemSpec& spec) {
  return make_problem(spec.tbox, spec.abox, spec.actions, spec.goal);
}

}  // namespace dkb
