#ifndef MKNF_ORACLES_HPP
#define MKNF_ORACLES_HPP

#include <memory>
#include <stdexcept>
#include <vector>

#include "mknf/entailment.hpp"
#include "mknf/partition.hpp"
#include "mknf/qfix.hpp"
#include "mknf/truth.hpp"

namespace mknf {

/// A set of classical interpretations over the knowledge-base signature,
/// used as one component of an MKNF structure.
struct InterpSet {
  std::vector<Assignment> members;
};

/// Total three-valued interpretation over KA, interconvertible with a
/// partition.
struct ThreeValuedInterp {
  AtomList ka;
  std::vector<Truth> value;  // parallel to ka

  static ThreeValuedInterp from_partition(const KnowledgeBase& kb, const Partition& part) {
    validate_partition(kb, part);
    ThreeValuedInterp out;
    out.ka = kb.ka;
    for (const Atom& a : kb.ka) out.value.push_back(atom_value(kb, part, a));
    return out;
  }

  Partition to_partition() const {
    Partition part;
    for (std::size_t i = 0; i < ka.size(); ++i) {
      if (value[i] != Truth::False) part.p_set.push_back(ka[i]);
      if (value[i] == Truth::True) part.t_set.push_back(ka[i]);
    }
    return part;
  }
};

/// Modal formulas of the knowledge-base fragment: objective subformulas,
/// K over an objective formula, not over an atom, and the three-valued
/// connectives used by the program translation.
struct MknfFormula;
using MknfPtr = std::shared_ptr<const MknfFormula>;

enum class MknfKind { Objective, Known, NotAtom, And, Or, Sup };

struct MknfFormula {
  MknfKind kind;
  FormulaPtr objective;  // Objective, Known
  Atom atom;             // NotAtom
  MknfPtr lhs, rhs;      // And, Or, Sup
};

inline MknfPtr m_objective(FormulaPtr f) {
  return std::make_shared<MknfFormula>(MknfFormula{MknfKind::Objective, std::move(f), {}, nullptr, nullptr});
}
inline MknfPtr m_known(FormulaPtr f) {
  return std::make_shared<MknfFormula>(MknfFormula{MknfKind::Known, std::move(f), {}, nullptr, nullptr});
}
inline MknfPtr m_not(Atom a) {
  return std::make_shared<MknfFormula>(MknfFormula{MknfKind::NotAtom, nullptr, std::move(a), nullptr, nullptr});
}
inline MknfPtr m_and(MknfPtr a, MknfPtr b) {
  return std::make_shared<MknfFormula>(MknfFormula{MknfKind::And, nullptr, {}, std::move(a), std::move(b)});
}
inline MknfPtr m_or(MknfPtr a, MknfPtr b) {
  return std::make_shared<MknfFormula>(MknfFormula{MknfKind::Or, nullptr, {}, std::move(a), std::move(b)});
}
/// `sup(a, b)` is true when the value of `a` is at least the value of `b`,
/// and false otherwise; it is never undefined.
inline MknfPtr m_sup(MknfPtr a, MknfPtr b) {
  return std::make_shared<MknfFormula>(MknfFormula{MknfKind::Sup, nullptr, {}, std::move(a), std::move(b)});
}

/// Translation of one rule: disjunction of known head atoms, implied by the
/// conjunction of known positive body atoms and not-atoms.
inline MknfPtr pi_rule(const Rule& r) {
  MknfPtr head;
  for (const Atom& a : r.head) {
    MknfPtr k = m_known(f_var(a));
    head = head ? m_or(head, k) : k;
  }
  MknfPtr body;
  auto add = [&](MknfPtr f) { body = body ? m_and(body, std::move(f)) : std::move(f); };
  for (const Atom& a : r.body_pos) add(m_known(f_var(a)));
  for (const Atom& a : r.body_neg) add(m_not(a));
  if (!body) body = m_objective(f_true());
  return m_sup(head, body);
}

/// Translation of the whole program (conjunction; true when empty).
inline MknfPtr pi_program(const KnowledgeBase& kb) {
  MknfPtr out;
  for (const Rule& r : kb.program) {
    MknfPtr p = pi_rule(r);
    out = out ? m_and(out, p) : p;
  }
  return out ? out : m_objective(f_true());
}

/// Evaluation of an MKNF structure (I, (M, N), (M, N)) on a fragment
/// formula. K phi is true when phi holds in every member of M and false when
/// it fails in some member of N; not a mirrors that; objective formulas are
/// classical under I.
inline Truth eval_mknf(const KnowledgeBase& kb, const InterpSet& m, const InterpSet& n,
                       const Assignment& i, const MknfPtr& formula) {
  if (!formula) throw std::invalid_argument("null formula");
  auto holds = [&](const Assignment& j, const FormulaPtr& f) {
    return eval_formula(*f, [&](const Atom& a) { return j.value(a); });
  };
  switch (formula->kind) {
    case MknfKind::Objective:
      return holds(i, formula->objective) ? Truth::True : Truth::False;
    case MknfKind::Known: {
      bool all_m = true;
      for (const Assignment& j : m.members) {
        if (!holds(j, formula->objective)) { all_m = false; break; }
      }
      if (all_m) return Truth::True;
      for (const Assignment& j : n.members) {
        if (!holds(j, formula->objective)) return Truth::False;
      }
      return Truth::Undef;
    }
    case MknfKind::NotAtom: {
      FormulaPtr v = f_var(formula->atom);
      for (const Assignment& j : n.members) {
        if (!holds(j, v)) return Truth::True;
      }
      bool all_m = true;
      for (const Assignment& j : m.members) {
        if (!holds(j, v)) { all_m = false; break; }
      }
      return all_m ? Truth::False : Truth::Undef;
    }
    case MknfKind::And:
      return meet(eval_mknf(kb, m, n, i, formula->lhs), eval_mknf(kb, m, n, i, formula->rhs));
    case MknfKind::Or:
      return join(eval_mknf(kb, m, n, i, formula->lhs), eval_mknf(kb, m, n, i, formula->rhs));
    case MknfKind::Sup:
      return eval_mknf(kb, m, n, i, formula->lhs) >= eval_mknf(kb, m, n, i, formula->rhs)
                 ? Truth::True
                 : Truth::False;
  }
  throw std::logic_error("unreachable");
}

/// Whether every objective subformula is a truth constant, in which case the
/// formula's value does not depend on the interpretation component I.
inline bool modally_closed(const MknfPtr& f) {
  if (!f) return true;
  if (f->kind == MknfKind::Objective)
    return f->objective->kind == FormulaKind::True || f->objective->kind == FormulaKind::False;
  return modally_closed(f->lhs) && modally_closed(f->rhs);
}

/// Direct satisfaction check for the canonical interpretation pair of a
/// partition: M and N are all classical models of OB_T and OB_P, and the
/// structure must make the program translation and K of the ontology true
/// for every interpretation in M.
inline bool satisfies_program(const KnowledgeBase& kb, const Partition& part, std::size_t sig_cap = 16) {
  validate_partition(kb, part);
  InterpSet m{all_models(ob(kb, part.t_set), sig_cap)};
  InterpSet n{all_models(ob(kb, part.p_set), sig_cap)};
  MknfPtr goal = pi_program(kb);
  for (const FormulaPtr& f : kb.ontology) goal = m_and(goal, m_known(f));
  if (m.members.empty()) return true;
  if (modally_closed(goal)) return eval_mknf(kb, m, n, m.members.front(), goal) == Truth::True;
  for (const Assignment& i : m.members) {
    if (eval_mknf(kb, m, n, i, goal) != Truth::True) return false;
  }
  return true;
}

namespace detail {

/// Three-valued value of KA atom `i` under (t, p) masks.
inline Truth mask_value(Mask t, Mask p, int i) {
  if ((t >> i) & 1) return Truth::True;
  if ((p >> i) & 1) return Truth::Undef;
  return Truth::False;
}

/// Whether (t2, p2) is a three-valued model of the reduct of the program
/// under (t, p): not-atoms are replaced by the constant negation of their
/// value under (t, p), and each rule needs max head value >= min body value.
inline bool models_reduct(const KbIndex& idx, Mask t, Mask p, Mask t2, Mask p2) {
  for (const RuleMasks& r : idx.rules()) {
    Truth body = Truth::True;
    for (int i = 0; i < static_cast<int>(idx.ka_size()); ++i) {
      if ((r.pos >> i) & 1) body = meet(body, mask_value(t2, p2, i));
      if ((r.neg >> i) & 1) body = meet(body, negate(mask_value(t, p, i)));
    }
    Truth head = Truth::False;
    for (int h : r.head_order) head = join(head, mask_value(t2, p2, h));
    if (head < body) return false;
  }
  return true;
}

}  // namespace detail

/// Przymusinski partial stable models by brute force, for empty-ontology
/// knowledge bases: (T, P) models its own reduct and no componentwise
/// smaller pair does. Results in base-3 candidate order over KA.
inline std::vector<Partition> partial_stable_bruteforce(const KnowledgeBase& kb, std::size_t ka_cap = 12) {
  if (!kb.ontology.empty()) throw std::invalid_argument("partial stable oracle requires an empty ontology");
  std::size_t nn = kb.ka.size();
  if (nn > ka_cap) throw CapExceeded("KA size " + std::to_string(nn) + " exceeds cap " + std::to_string(ka_cap));
  detail::KbIndex idx(kb);
  std::vector<Partition> out;
  std::uint64_t total = detail::pow3(nn);
  for (std::uint64_t c = 0; c < total; ++c) {
    detail::Mask t, p;
    detail::candidate_masks(c, nn, t, p);
    if (!detail::models_reduct(idx, t, p, t, p)) continue;
    bool minimal = true;
    // Enumerate pairs (t2, p2) with t2 within t and p2 within p; t2 within p2
    // holds by the mask_value reading only when enforced, so skip violators.
    for (detail::Mask p2 = p;; p2 = (p2 - 1) & p) {
      for (detail::Mask t2 = t & p2;; t2 = (t2 - 1) & (t & p2)) {
        if (!(t2 == t && p2 == p) && detail::models_reduct(idx, t, p, t2, p2)) minimal = false;
        if (t2 == 0 || !minimal) break;
      }
      if (p2 == 0 || !minimal) break;
    }
    if (minimal) out.push_back(Partition{idx.atoms(t), idx.atoms(p)});
  }
  return out;
}

/// Two-valued stable models by brute force, for empty-ontology knowledge
/// bases: S is a minimal classical model of the positive program obtained by
/// deleting rules whose negative body intersects S and stripping the rest.
/// Results in increasing mask order over KA.
inline std::vector<AtomList> two_valued_stable_bruteforce(const KnowledgeBase& kb, std::size_t ka_cap = 12) {
  if (!kb.ontology.empty()) throw std::invalid_argument("two-valued oracle requires an empty ontology");
  std::size_t nn = kb.ka.size();
  if (nn > ka_cap) throw CapExceeded("KA size " + std::to_string(nn) + " exceeds cap " + std::to_string(ka_cap));
  detail::KbIndex idx(kb);
  auto models_positive_reduct = [&](detail::Mask s, detail::Mask cand) {
    for (const detail::RuleMasks& r : idx.rules()) {
      if ((r.neg & s) != 0) continue;
      if ((r.pos & ~cand) == 0 && (r.head & cand) == 0) return false;
    }
    return true;
  };
  std::vector<AtomList> out;
  detail::Mask all = idx.ka_all();
  for (detail::Mask s = 0; s <= all; ++s) {
    if (!models_positive_reduct(s, s)) continue;
    bool minimal = true;
    for (detail::Mask s2 = (s - 1) & s;; s2 = (s2 - 1) & s) {
      if (models_positive_reduct(s, s2)) { minimal = false; break; }
      if (s2 == 0) break;
    }
    if (s == 0 || minimal) out.push_back(idx.atoms(s));
    if (s == all) break;
  }
  return out;
}

}  // namespace mknf

#endif
