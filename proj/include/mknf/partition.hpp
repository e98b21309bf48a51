#ifndef MKNF_PARTITION_HPP
#define MKNF_PARTITION_HPP

#include <bit>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "mknf/detail/kb_index.hpp"
#include "mknf/parse.hpp"
#include "mknf/syntax.hpp"
#include "mknf/truth.hpp"

namespace mknf {

/// Partial partition (T, P) of the KA set: atoms in T are true, atoms
/// outside P are false, the rest undefined.
struct Partition {
  AtomList t_set;
  AtomList p_set;

  friend bool operator==(const Partition& a, const Partition& b) {
    return set_equal(a.t_set, b.t_set) && set_equal(a.p_set, b.p_set);
  }
};

/// Throws std::invalid_argument unless T subset of P subset of KA(kb).
inline void validate_partition(const KnowledgeBase& kb, const Partition& part) {
  for (const Atom& a : part.p_set) {
    if (!contains(kb.ka, a)) throw std::invalid_argument("partition atom '" + a.name + "' is not a K-atom");
  }
  for (const Atom& a : part.t_set) {
    if (!contains(part.p_set, a)) throw std::invalid_argument("partition atom '" + a.name + "' is in T but not in P");
  }
}

inline Truth atom_value(const KnowledgeBase& kb, const Partition& part, const Atom& a) {
  if (!contains(kb.ka, a)) throw std::invalid_argument("atom '" + a.name + "' is not a K-atom");
  if (contains(part.t_set, a)) return Truth::True;
  if (!contains(part.p_set, a)) return Truth::False;
  return Truth::Undef;
}

/// Three-valued value of a rule body: conjunction of the positive K-atoms and
/// the negated values of the not-atoms. An empty body is true.
inline Truth body_value(const KnowledgeBase& kb, const Partition& part, const Rule& r) {
  Truth v = Truth::True;
  for (const Atom& a : r.body_pos) v = meet(v, atom_value(kb, part, a));
  for (const Atom& a : r.body_neg) v = meet(v, negate(atom_value(kb, part, a)));
  return v;
}

/// Outcome of the saturation test. `clause` identifies the first violated
/// requirement: 1 = OB_P inconsistent, 2 = OB_T entails an atom outside T,
/// 3 = OB_P entails an atom outside P.
struct SaturationReport {
  bool saturated = true;
  int clause = 0;
  std::optional<Atom> witness;
};

namespace detail {

inline SaturationReport saturation_report(KbIndex& idx, Mask t, Mask p) {
  SaturationReport rep;
  if (!idx.consistent(p)) {
    rep = {false, 1, std::nullopt};
    return rep;
  }
  if (Mask extra = idx.entailed(t) & ~t & idx.ka_all()) {
    int i = std::countr_zero(extra);
    rep = {false, 2, idx.kb().ka[static_cast<std::size_t>(i)]};
    return rep;
  }
  if (Mask extra = idx.entailed(p) & ~p & idx.ka_all()) {
    int i = std::countr_zero(extra);
    rep = {false, 3, idx.kb().ka[static_cast<std::size_t>(i)]};
    return rep;
  }
  return rep;
}

}  // namespace detail

inline SaturationReport is_saturated(const KnowledgeBase& kb, const Partition& part) {
  validate_partition(kb, part);
  detail::KbIndex idx(kb);
  return detail::saturation_report(idx, idx.mask(part.t_set), idx.mask(part.p_set));
}

/// Entailment closure: repeatedly adds OB_T-consequences to T and
/// OB_P-consequences to P. Returns nullopt if OB_P becomes inconsistent.
inline std::optional<Partition> saturate(const KnowledgeBase& kb, const Partition& part) {
  validate_partition(kb, part);
  detail::KbIndex idx(kb);
  detail::Mask t = idx.mask(part.t_set);
  detail::Mask p = idx.mask(part.p_set);
  for (;;) {
    if (!idx.consistent(p)) return std::nullopt;
    detail::Mask t2 = t | (idx.entailed(t) & idx.ka_all());
    detail::Mask p2 = p | (idx.entailed(p) & idx.ka_all());
    if (t2 == t && p2 == p) break;
    t = t2;
    p = p2;
  }
  return Partition{idx.atoms(t), idx.atoms(p)};
}

/// Parses the partition text format `T: a, b. P: a, b, c.`.
inline Partition parse_partition(std::string_view text) {
  detail::Cursor cur(text);
  auto atom_set = [&](char label) {
    cur.skip_ws_and_comments();
    if (!cur.try_consume(label)) cur.fail(std::string("expected '") + label + ":'");
    cur.expect(':', "after set label");
    AtomList out;
    cur.skip_ws_and_comments();
    if (!cur.try_consume('.')) {
      do {
        if (!insert_unique(out, cur.atom())) cur.fail("duplicate atom in partition set");
        cur.skip_ws_and_comments();
      } while (cur.try_consume(','));
      cur.expect('.', "to end set");
    }
    return out;
  };
  Partition part;
  part.t_set = atom_set('T');
  part.p_set = atom_set('P');
  cur.skip_ws_and_comments();
  if (!cur.at_end()) cur.fail("trailing input after partition");
  return part;
}

inline std::string render_partition(const Partition& part) {
  std::ostringstream os;
  os << "T: ";
  render_atoms(part.t_set, os, ", ");
  os << ". P: ";
  render_atoms(part.p_set, os, ", ");
  os << ".";
  return os.str();
}

}  // namespace mknf

#endif
