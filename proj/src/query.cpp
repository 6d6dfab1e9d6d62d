#include "dkbplan/query.hpp"

#include <algorithm>
#include <cstdint>

namespace dkb {

Substitution compose(const Substitution& outer, const Substitution& inner) {
  Substitution out;
  for (const auto& [v, t] : inner.entries()) out.bind(v, outer.apply(t));
  for (const auto& [v, t] : outer.entries())
    if (!inner.lookup(v)) out.bind(v, t);
  return out;
}

std::optional<Substitution> unify(const Atom& a, const Atom& b) {
  if (a.pred != b.pred || a.args.size() != b.args.size()) return std::nullopt;
  Substitution s;
  auto walk = [&s](Term t) {
    while (t.is_variable()) {
      auto bound = s.lookup(t.name());
      if (!bound) break;
      t = *bound;
    }
    return t;
  };
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    Term x = walk(a.args[i]);
    Term y = walk(b.args[i]);
    if (x == y) continue;
    if (x.is_variable()) {
      s.bind(x.name(), y);
    } else if (y.is_variable()) {
      s.bind(y.name(), x);
    } else {
      return std::nullopt;
    }
  }
  // Path-compress so the result is idempotent.
  Substitution out;
  for (const auto& [v, t] : s.entries()) {
    Term r = t;
    while (r.is_variable()) {
      auto bound = s.lookup(r.name());
      if (!bound) break;
      r = *bound;
    }
    out.bind(v, r);
  }
  return out;
}

CQ apply(const Substitution& s, const CQ& q) {
  CQ out;
  out.atoms.reserve(q.atoms.size());
  for (const Atom& a : q.atoms) out.atoms.push_back(s.apply(a));
  return out;
}

namespace {

// Atom rendering where every variable is blinded; used to group atoms whose
// relative order is not fixed by predicates and constants alone.
std::string blind_key(const Atom& a) {
  std::string out = a.pred;
  out += '/';
  for (const Term& t : a.args) {
    out += t.is_variable() ? std::string("\x01?") : "\x02" + t.str();
    out += ';';
  }
  return out;
}

struct Rendered {
  std::string text;
  std::vector<std::string> order;  // original var names in first-occurrence order
};

Rendered render(const std::vector<Atom>& atoms) {
  Rendered r;
  std::map<std::string, int> ids;
  for (const Atom& a : atoms) {
    r.text += a.pred;
    r.text += '(';
    for (const Term& t : a.args) {
      if (t.is_variable()) {
        auto [it, inserted] = ids.emplace(t.name(), static_cast<int>(ids.size()));
        if (inserted) r.order.push_back(t.name());
        r.text += "?v" + std::to_string(it->second);
      } else {
        r.text += t.str();
      }
      r.text += ',';
    }
    r.text += ')';
  }
  return r;
}

}  // namespace

CanonicalCQ canonicalize(const CQ& q) {
  std::vector<Atom> atoms = q.atoms;
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  std::stable_sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) {
    return blind_key(a) < blind_key(b);
  });

  // Group boundaries between atoms that blind-compare equal.
  std::vector<std::pair<std::size_t, std::size_t>> groups;
  for (std::size_t i = 0; i < atoms.size();) {
    std::size_t j = i + 1;
    while (j < atoms.size() && blind_key(atoms[j]) == blind_key(atoms[i])) ++j;
    if (j - i > 1) groups.emplace_back(i, j);
    i = j;
  }

  Rendered best = render(atoms);
  std::vector<Atom> best_atoms = atoms;

  // Exhaust permutations inside ambiguous groups and keep the least rendering.
  // Group sizes stay tiny for the query shapes this engine manipulates.
  std::uint64_t combos = 1;
  for (const auto& [lo, hi] : groups) {
    for (std::size_t k = 2; k <= hi - lo; ++k) combos *= k;
    if (combos > 40320) break;
  }
  if (!groups.empty() && combos <= 40320) {
    std::vector<Atom> work = atoms;
    auto explore = [&](auto&& self, std::size_t g) -> void {
      if (g == groups.size()) {
        Rendered r = render(work);
        if (r.text < best.text) {
          best = r;
          best_atoms = work;
        }
        return;
      }
      auto [lo, hi] = groups[g];
      std::vector<Atom> slice(work.begin() + lo, work.begin() + hi);
      std::sort(slice.begin(), slice.end());
      do {
        std::copy(slice.begin(), slice.end(), work.begin() + lo);
        self(self, g + 1);
      } while (std::next_permutation(slice.begin(), slice.end()));
      std::copy(atoms.begin() + lo, atoms.begin() + hi, work.begin() + lo);
    };
    explore(explore, 0);
  }

  CanonicalCQ out;
  out.key = best.text;
  for (std::size_t i = 0; i < best.order.size(); ++i)
    out.renaming[best.order[i]] = "v" + std::to_string(i);
  Substitution rename;
  for (const auto& [from, to] : out.renaming) rename.bind(from, Term::variable(to));
  out.query.atoms.reserve(best_atoms.size());
  for (const Atom& a : best_atoms) out.query.atoms.push_back(rename.apply(a));
  return out;
}

CQ rename_apart(const CQ& q, const std::set<std::string>& avoid,
                std::map<std::string, std::string>* renaming_out) {
  std::set<std::string> used = avoid;
  for (const std::string& v : q.variables()) used.insert(v);
  Substitution rename;
  std::map<std::string, std::string> mapping;
  for (const std::string& v : q.variables()) {
    if (!avoid.count(v)) {
      mapping[v] = v;
      continue;
    }
    for (int i = 0;; ++i) {
      std::string candidate = v + std::to_string(i);
      if (!used.count(candidate)) {
        used.insert(candidate);
        mapping[v] = candidate;
        rename.bind(v, Term::variable(candidate));
        break;
      }
    }
  }
  if (renaming_out) *renaming_out = std::move(mapping);
  return apply(rename, q);
}

}  // namespace dkb
