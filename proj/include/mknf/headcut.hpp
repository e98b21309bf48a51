#ifndef MKNF_HEADCUT_HPP
#define MKNF_HEADCUT_HPP

#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "mknf/partition.hpp"
#include "mknf/syntax.hpp"

namespace mknf {

/// A choice of at most one head atom per rule, keyed by rule id.
struct HeadCut {
  std::map<int, Atom> pairs;

  friend bool operator==(const HeadCut&, const HeadCut&) = default;

  std::string to_string() const {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (const auto& [rid, atom] : pairs) {
      if (!first) os << ", ";
      os << '(' << rid << ", " << atom.name << ')';
      first = false;
    }
    os << '}';
    return os.str();
  }
};

namespace detail {

inline bool rule_required_masks(const RuleMasks& r, Mask t, Mask p) {
  if ((r.pos & ~p) != 0 || (r.neg & t) != 0) return false;
  return (r.head & t) == 0 || ((r.pos & ~t) == 0 && (r.neg & p) == 0);
}

/// Head atoms admitted by a required rule, as KA indices in head order.
inline std::vector<int> admissible_heads_masks(const RuleMasks& r, Mask t, Mask p) {
  bool body_true = (r.pos & ~t) == 0 && (r.neg & p) == 0;
  std::vector<int> out;
  for (int h : r.head_order) {
    if (((p >> h) & 1) == 0) continue;
    if ((((t >> h) & 1) != 0) == body_true) out.push_back(h);
  }
  return out;
}

/// Per-rule choice sets, in rule-id order. `empty` is set when some required
/// rule admits no head atom.
struct CutSpace {
  std::vector<std::pair<int, std::vector<int>>> slots;  // (rule index, KA indices)
  bool empty = false;
};

inline CutSpace cut_space(const KbIndex& idx, Mask t, Mask p) {
  CutSpace space;
  for (std::size_t ri = 0; ri < idx.rules().size(); ++ri) {
    const RuleMasks& r = idx.rules()[ri];
    if (!rule_required_masks(r, t, p)) continue;
    auto heads = admissible_heads_masks(r, t, p);
    if (heads.empty()) space.empty = true;
    space.slots.emplace_back(static_cast<int>(ri), std::move(heads));
  }
  return space;
}

inline CutSpace total_cut_space(const KbIndex& idx) {
  CutSpace space;
  for (std::size_t ri = 0; ri < idx.rules().size(); ++ri) {
    space.slots.emplace_back(static_cast<int>(ri), idx.rules()[ri].head_order);
  }
  return space;
}

/// Odometer over a CutSpace: yields one (rule index -> KA index) selection at
/// a time, rule ids ascending and head atoms in declaration order.
class CutEnumerator {
 public:
  explicit CutEnumerator(CutSpace space) : space_(std::move(space)) {
    done_ = space_.empty;
    digits_.assign(space_.slots.size(), 0);
  }

  bool done() const { return done_; }

  const std::vector<std::size_t>& digits() const { return digits_; }
  const CutSpace& space() const { return space_; }

  std::vector<std::pair<int, int>> current() const {
    std::vector<std::pair<int, int>> cut;
    cut.reserve(space_.slots.size());
    for (std::size_t i = 0; i < space_.slots.size(); ++i) {
      cut.emplace_back(space_.slots[i].first, space_.slots[i].second[digits_[i]]);
    }
    return cut;
  }

  void next() {
    for (std::size_t i = space_.slots.size(); i-- > 0;) {
      if (++digits_[i] < space_.slots[i].second.size()) return;
      digits_[i] = 0;
    }
    done_ = true;
  }

 private:
  CutSpace space_;
  std::vector<std::size_t> digits_;
  bool done_ = false;
};

inline HeadCut to_headcut(const KbIndex& idx, const std::vector<std::pair<int, int>>& cut) {
  HeadCut hc;
  for (const auto& [ri, ka] : cut) {
    hc.pairs.emplace(idx.kb().program[static_cast<std::size_t>(ri)].id, idx.kb().ka[static_cast<std::size_t>(ka)]);
  }
  return hc;
}

}  // namespace detail

/// Whether a rule must appear in every head-cut of the partition: its body is
/// not false, and it is not an undefined-body rule with true head atoms.
inline bool rule_required(const KnowledgeBase& kb, const Partition& part, const Rule& r) {
  detail::KbIndex idx(kb);
  return detail::rule_required_masks(idx.rules()[static_cast<std::size_t>(r.id) - 1], idx.mask(part.t_set),
                                     idx.mask(part.p_set));
}

/// Head atoms a required rule may select: atoms of P whose truth matches the
/// truth of the rule body.
inline AtomList admissible_heads(const KnowledgeBase& kb, const Partition& part, const Rule& r) {
  detail::KbIndex idx(kb);
  auto heads = detail::admissible_heads_masks(idx.rules()[static_cast<std::size_t>(r.id) - 1],
                                              idx.mask(part.t_set), idx.mask(part.p_set));
  AtomList out;
  for (int h : heads) out.push_back(kb.ka[static_cast<std::size_t>(h)]);
  return out;
}

/// Single-consumer range over head-cuts. Empty when some required rule has no
/// admissible head atom.
class HeadCutRange {
 public:
  class iterator {
   public:
    using value_type = HeadCut;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::input_iterator_tag;

    iterator() = default;
    iterator(const detail::KbIndex* idx, detail::CutEnumerator* en) : idx_(idx), en_(en) {
      if (en_ && en_->done()) en_ = nullptr;
    }

    HeadCut operator*() const { return detail::to_headcut(*idx_, en_->current()); }

    iterator& operator++() {
      en_->next();
      if (en_->done()) en_ = nullptr;
      return *this;
    }

    void operator++(int) { ++(*this); }

    friend bool operator==(const iterator& a, const iterator& b) { return a.en_ == b.en_; }

   private:
    const detail::KbIndex* idx_ = nullptr;
    detail::CutEnumerator* en_ = nullptr;
  };

  HeadCutRange(const KnowledgeBase& kb, detail::CutSpace space)
      : idx_(std::make_shared<detail::KbIndex>(kb)),
        en_(std::make_shared<detail::CutEnumerator>(std::move(space))) {}

  iterator begin() const { return iterator(idx_.get(), en_.get()); }
  iterator end() const { return iterator(); }

  std::vector<HeadCut> to_vector() const {
    std::vector<HeadCut> out;
    for (auto it = begin(); it != end(); ++it) out.push_back(*it);
    return out;
  }

 private:
  std::shared_ptr<detail::KbIndex> idx_;
  std::shared_ptr<detail::CutEnumerator> en_;
};

/// All head-cuts compatible with a saturated partition, in lexicographic
/// order (rule id ascending, head atoms in declaration order).
inline HeadCutRange enumerate_headcuts(const KnowledgeBase& kb, const Partition& part) {
  validate_partition(kb, part);
  detail::KbIndex idx(kb);
  return HeadCutRange(kb, detail::cut_space(idx, idx.mask(part.t_set), idx.mask(part.p_set)));
}

/// All total head-cuts: one head atom chosen for every rule of the program.
inline HeadCutRange total_headcuts(const KnowledgeBase& kb) {
  detail::KbIndex idx(kb);
  return HeadCutRange(kb, detail::total_cut_space(idx));
}

}  // namespace mknf

#endif
