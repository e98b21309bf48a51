#ifndef MKNF_SYNTAX_HPP
#define MKNF_SYNTAX_HPP

#include <algorithm>
#include <compare>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mknf {

/// A ground propositional atom, compared by name.
struct Atom {
  std::string name;

  friend bool operator==(const Atom&, const Atom&) = default;
  friend auto operator<=>(const Atom&, const Atom&) = default;
};

/// Insertion-ordered, duplicate-free list of atoms. All enumeration order in
/// the library derives from these, so results are reproducible.
using AtomList = std::vector<Atom>;

inline bool contains(const AtomList& xs, const Atom& a) {
  return std::find(xs.begin(), xs.end(), a) != xs.end();
}

/// Appends `a` unless already present; returns true if inserted.
inline bool insert_unique(AtomList& xs, const Atom& a) {
  if (contains(xs, a)) return false;
  xs.push_back(a);
  return true;
}

inline bool subset_of(const AtomList& xs, const AtomList& ys) {
  return std::all_of(xs.begin(), xs.end(),
                     [&](const Atom& a) { return contains(ys, a); });
}

inline bool intersects(const AtomList& xs, const AtomList& ys) {
  return std::any_of(xs.begin(), xs.end(),
                     [&](const Atom& a) { return contains(ys, a); });
}

/// Set equality, independent of element order.
inline bool set_equal(const AtomList& xs, const AtomList& ys) {
  return xs.size() == ys.size() && subset_of(xs, ys);
}

// ---------------------------------------------------------------------------
// Propositional formulas (ontology language)

enum class FormulaKind : std::uint8_t {
  True,
  False,
  Var,
  Not,
  And,
  Or,
  Implies,
  Iff,
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Immutable propositional formula over atoms. Connectives are structural;
/// `Not` uses `lhs` only.
struct Formula {
  FormulaKind kind;
  Atom var;  // kind == Var
  FormulaPtr lhs;
  FormulaPtr rhs;
};

inline FormulaPtr f_true() {
  static const FormulaPtr t = std::make_shared<Formula>(Formula{FormulaKind::True, {}, {}, {}});
  return t;
}

inline FormulaPtr f_false() {
  static const FormulaPtr f = std::make_shared<Formula>(Formula{FormulaKind::False, {}, {}, {}});
  return f;
}

inline FormulaPtr f_var(Atom a) {
  return std::make_shared<Formula>(Formula{FormulaKind::Var, std::move(a), {}, {}});
}

inline FormulaPtr f_not(FormulaPtr f) {
  return std::make_shared<Formula>(Formula{FormulaKind::Not, {}, std::move(f), {}});
}

inline FormulaPtr f_binary(FormulaKind k, FormulaPtr l, FormulaPtr r) {
  return std::make_shared<Formula>(Formula{k, {}, std::move(l), std::move(r)});
}

inline FormulaPtr f_and(FormulaPtr l, FormulaPtr r) { return f_binary(FormulaKind::And, std::move(l), std::move(r)); }
inline FormulaPtr f_or(FormulaPtr l, FormulaPtr r) { return f_binary(FormulaKind::Or, std::move(l), std::move(r)); }
inline FormulaPtr f_implies(FormulaPtr l, FormulaPtr r) { return f_binary(FormulaKind::Implies, std::move(l), std::move(r)); }
inline FormulaPtr f_iff(FormulaPtr l, FormulaPtr r) { return f_binary(FormulaKind::Iff, std::move(l), std::move(r)); }

inline void collect_atoms(const FormulaPtr& f, AtomList& out) {
  if (!f) return;
  if (f->kind == FormulaKind::Var) insert_unique(out, f->var);
  collect_atoms(f->lhs, out);
  collect_atoms(f->rhs, out);
}

/// Classical two-valued evaluation; `val` maps Atom -> bool.
template <class Pred>
bool eval_formula(const Formula& f, Pred&& val) {
  switch (f.kind) {
    case FormulaKind::True: return true;
    case FormulaKind::False: return false;
    case FormulaKind::Var: return val(f.var);
    case FormulaKind::Not: return !eval_formula(*f.lhs, val);
    case FormulaKind::And: return eval_formula(*f.lhs, val) && eval_formula(*f.rhs, val);
    case FormulaKind::Or: return eval_formula(*f.lhs, val) || eval_formula(*f.rhs, val);
    case FormulaKind::Implies: return !eval_formula(*f.lhs, val) || eval_formula(*f.rhs, val);
    case FormulaKind::Iff: return eval_formula(*f.lhs, val) == eval_formula(*f.rhs, val);
  }
  return false;
}

inline bool structurally_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  if (a->kind == FormulaKind::Var) return a->var == b->var;
  return structurally_equal(a->lhs, b->lhs) && structurally_equal(a->rhs, b->rhs);
}

// ---------------------------------------------------------------------------
// Rules and knowledge bases

/// Ground disjunctive rule: nonempty head of K-atoms, positive body K-atoms,
/// negative body not-atoms. `id` is the 1-based position in the program.
struct Rule {
  int id = 0;
  AtomList head;
  AtomList body_pos;
  AtomList body_neg;

  bool is_normal() const { return head.size() == 1; }
};

/// A hybrid knowledge base: a propositional ontology plus a rule program.
/// `signature` lists every atom in order of first occurrence; `ka` lists the
/// atoms occurring in rule heads or bodies.
struct KnowledgeBase {
  std::vector<FormulaPtr> ontology;
  std::vector<Rule> program;
  AtomList signature;
  AtomList ka;

  bool is_normal() const {
    return std::all_of(program.begin(), program.end(),
                       [](const Rule& r) { return r.is_normal(); });
  }
};

/// The atoms occurring under K/not in any rule head or body, in order of
/// first occurrence. Ontology-only atoms are excluded.
inline AtomList compute_ka(const KnowledgeBase& kb) {
  AtomList ka;
  for (const Rule& r : kb.program) {
    for (const Atom& a : r.head) insert_unique(ka, a);
    for (const Atom& a : r.body_pos) insert_unique(ka, a);
    for (const Atom& a : r.body_neg) insert_unique(ka, a);
  }
  return ka;
}

/// Builds a knowledge base from parts, assigning rule ids and deriving the
/// signature and KA set. Throws std::invalid_argument on malformed rules.
inline KnowledgeBase make_kb(std::vector<FormulaPtr> ontology, std::vector<Rule> program) {
  KnowledgeBase kb;
  kb.ontology = std::move(ontology);
  kb.program = std::move(program);
  for (std::size_t i = 0; i < kb.program.size(); ++i) {
    Rule& r = kb.program[i];
    r.id = static_cast<int>(i) + 1;
    if (r.head.empty()) throw std::invalid_argument("rule " + std::to_string(r.id) + ": empty head");
    auto check_dups = [&](const AtomList& part, const char* what) {
      AtomList seen;
      for (const Atom& a : part) {
        if (!insert_unique(seen, a))
          throw std::invalid_argument("rule " + std::to_string(r.id) + ": duplicate atom '" + a.name + "' in " + what);
      }
    };
    check_dups(r.head, "head");
    check_dups(r.body_pos, "positive body");
    check_dups(r.body_neg, "negative body");
  }
  for (const FormulaPtr& f : kb.ontology) collect_atoms(f, kb.signature);
  kb.ka = compute_ka(kb);
  for (const Atom& a : kb.ka) insert_unique(kb.signature, a);
  return kb;
}

/// The normal knowledge base obtained by fixing one head atom per rule.
/// `choices[i]` is the chosen head atom of rule i+1.
inline KnowledgeBase induced_normal_kb(const KnowledgeBase& kb, const AtomList& choices) {
  if (choices.size() != kb.program.size())
    throw std::invalid_argument("head choice count does not match program size");
  std::vector<Rule> rules;
  rules.reserve(kb.program.size());
  for (std::size_t i = 0; i < kb.program.size(); ++i) {
    const Rule& r = kb.program[i];
    if (!contains(r.head, choices[i]))
      throw std::invalid_argument("chosen atom not in head of rule " + std::to_string(r.id));
    rules.push_back(Rule{0, {choices[i]}, r.body_pos, r.body_neg});
  }
  return make_kb(kb.ontology, std::move(rules));
}

}  // namespace mknf

#endif
