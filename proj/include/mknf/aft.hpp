#ifndef MKNF_AFT_HPP
#define MKNF_AFT_HPP

#include <stdexcept>
#include <utility>
#include <vector>

#include "mknf/qfix.hpp"

namespace mknf {

/// Element of the product bilattice over subsets of KA. `lo`
/// under-approximates the true atoms, `hi` over-approximates the possibly
/// true atoms. Inconsistent pairs (lo not within hi) are representable.
struct LatticePair {
  AtomList lo;
  AtomList hi;

  bool consistent() const { return subset_of(lo, hi); }

  friend bool operator==(const LatticePair& a, const LatticePair& b) {
    return set_equal(a.lo, b.lo) && set_equal(a.hi, b.hi);
  }
};

/// Precision order: (lo, hi) <=p (lo', hi') iff lo within lo' and hi' within hi.
inline bool leq_p(const LatticePair& a, const LatticePair& b) {
  return subset_of(a.lo, b.lo) && subset_of(b.hi, a.hi);
}

namespace detail {

struct SingleRule {
  int head;  // KA index
  Mask pos = 0;
  Mask neg = 0;
};

inline std::vector<SingleRule> single_rules(const KbIndex& idx) {
  std::vector<SingleRule> out;
  out.reserve(idx.rules().size());
  for (const RuleMasks& r : idx.rules()) {
    if (r.head_order.size() != 1) throw std::invalid_argument("disjunctive rule present; approximator requires a normal program");
    out.push_back(SingleRule{r.head_order[0], r.pos, r.neg});
  }
  return out;
}

inline Mask phi1_masks(KbIndex& idx, const std::vector<SingleRule>& rules, Mask t, Mask p) {
  Mask out = idx.entailed(t) & idx.ka_all();
  for (const SingleRule& r : rules) {
    if ((r.pos & ~t) == 0 && (r.neg & p) == 0) out |= KbIndex::bit(r.head);
  }
  return out;
}

inline Mask phi2_masks(KbIndex& idx, const std::vector<SingleRule>& rules, Mask t, Mask p) {
  Mask out = idx.entailed(p) & idx.ka_all();
  for (const SingleRule& r : rules) {
    if ((r.pos & ~p) == 0 && (r.neg & t) == 0 && idx.consistent_with(t, r.head)) out |= KbIndex::bit(r.head);
  }
  return out;
}

inline Mask lfp_phi1(KbIndex& idx, const std::vector<SingleRule>& rules, Mask p) {
  Mask z = 0;
  for (;;) {
    Mask next = phi1_masks(idx, rules, z, p);
    if (next == z) return z;
    z = next;
  }
}

inline Mask lfp_phi2(KbIndex& idx, const std::vector<SingleRule>& rules, Mask t) {
  Mask z = 0;
  for (;;) {
    Mask next = phi2_masks(idx, rules, t, z);
    if (next == z) return z;
    z = next;
  }
}

inline std::pair<Mask, Mask> stable_revision_masks(KbIndex& idx, const std::vector<SingleRule>& rules,
                                                   Mask t, Mask p) {
  return {lfp_phi1(idx, rules, p), lfp_phi2(idx, rules, t)};
}

/// Stable fixpoint check plus the satisfiability side condition on the
/// strictest true set (every non-true atom taken false).
inline bool stable_model_masks(KbIndex& idx, const std::vector<SingleRule>& rules, Mask t, Mask p) {
  auto [rt, rp] = stable_revision_masks(idx, rules, t, p);
  if (rt != t || rp != p) return false;
  return idx.consistent(lfp_phi1(idx, rules, t));
}

}  // namespace detail

/// One application of the approximator for a normal knowledge base: the first
/// component derives true atoms from OB_T and rules with true bodies, the
/// second derives possibly true atoms, guarded against contradicting OB_T.
inline LatticePair phi(const KnowledgeBase& kb_normal, const LatticePair& pair) {
  detail::KbIndex idx(kb_normal);
  auto rules = detail::single_rules(idx);
  detail::Mask t = idx.mask(pair.lo);
  detail::Mask p = idx.mask(pair.hi);
  return LatticePair{idx.atoms(detail::phi1_masks(idx, rules, t, p)),
                     idx.atoms(detail::phi2_masks(idx, rules, t, p))};
}

/// The pair of projection least fixpoints of the approximator.
inline LatticePair stable_revision(const KnowledgeBase& kb_normal, const LatticePair& pair) {
  detail::KbIndex idx(kb_normal);
  auto rules = detail::single_rules(idx);
  auto [t, p] = detail::stable_revision_masks(idx, rules, idx.mask(pair.lo), idx.mask(pair.hi));
  return LatticePair{idx.atoms(t), idx.atoms(p)};
}

/// Least fixpoint of the stable revision operator under the precision order,
/// iterated from the least precise pair (empty, KA).
inline LatticePair well_founded(const KnowledgeBase& kb_normal) {
  detail::KbIndex idx(kb_normal);
  auto rules = detail::single_rules(idx);
  detail::Mask t = 0;
  detail::Mask p = idx.ka_all();
  for (;;) {
    auto [t2, p2] = detail::stable_revision_masks(idx, rules, t, p);
    if (t2 == t && p2 == p) break;
    t = t2;
    p = p2;
  }
  return LatticePair{idx.atoms(t), idx.atoms(p)};
}

/// Whether the pair is a consistent stable fixpoint whose strictest true set
/// keeps the objective knowledge satisfiable; this characterizes the pairs
/// induced by three-valued MKNF models of a normal knowledge base.
inline bool check_model_normal(const KnowledgeBase& kb_normal, const LatticePair& pair) {
  if (!pair.consistent()) throw std::invalid_argument("pair is inconsistent (lo not within hi)");
  detail::KbIndex idx(kb_normal);
  auto rules = detail::single_rules(idx);
  return detail::stable_model_masks(idx, rules, idx.mask(pair.lo), idx.mask(pair.hi));
}

/// Agreement record for the two characterizations of a partition: the
/// approximator route over induced normal knowledge bases versus the
/// head-cut fixpoint route.
struct CrossCheck {
  bool aft_side = false;
  bool headcut_side = false;

  bool agree() const { return aft_side == headcut_side; }
};

/// Evaluates both routes over the ambient KA set. The approximator route
/// requires a saturated partition with a nonempty head-cut set and checks
/// every induced normal knowledge base extending one of its head-cuts.
inline CrossCheck cross_check(const KnowledgeBase& kb, const Partition& part) {
  validate_partition(kb, part);
  detail::KbIndex idx(kb);
  detail::Mask t = idx.mask(part.t_set);
  detail::Mask p = idx.mask(part.p_set);

  CrossCheck result;
  result.headcut_side = detail::check_model_masks(idx, t, p).status == CheckStatus::Model;

  if (!detail::saturation_report(idx, t, p).saturated) return result;
  detail::CutSpace space = detail::cut_space(idx, t, p);
  if (space.empty) return result;

  // Total extensions of the partition's head-cuts: required rules range over
  // their admissible heads, the remaining rules over their full heads.
  detail::CutSpace combined;
  std::vector<char> required(idx.rules().size(), 0);
  for (const auto& [ri, heads] : space.slots) required[static_cast<std::size_t>(ri)] = 1;
  for (std::size_t ri = 0; ri < idx.rules().size(); ++ri) {
    if (required[ri]) {
      for (const auto& slot : space.slots) {
        if (slot.first == static_cast<int>(ri)) combined.slots.push_back(slot);
      }
    } else {
      combined.slots.emplace_back(static_cast<int>(ri), idx.rules()[ri].head_order);
    }
  }

  for (detail::CutEnumerator en(combined); !en.done(); en.next()) {
    std::vector<detail::SingleRule> rules;
    rules.reserve(idx.rules().size());
    for (const auto& [ri, h] : en.current()) {
      const detail::RuleMasks& r = idx.rules()[static_cast<std::size_t>(ri)];
      rules.push_back(detail::SingleRule{h, r.pos, r.neg});
    }
    if (!detail::stable_model_masks(idx, rules, t, p)) return result;
  }
  result.aft_side = true;
  return result;
}

}  // namespace mknf

#endif
