#ifndef MKNF_DETAIL_KB_INDEX_HPP
#define MKNF_DETAIL_KB_INDEX_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "mknf/detail/compiled.hpp"
#include "mknf/syntax.hpp"

namespace mknf::detail {

using Mask = std::uint64_t;

struct RuleMasks {
  Mask head = 0;
  Mask pos = 0;
  Mask neg = 0;
  std::vector<int> head_order;  // KA indices in head declaration order
};

/// Bitmask view of a knowledge base over its KA set, with memoized classical
/// consequence of OB_S for subsets S of KA. Not thread-safe; use one instance
/// per worker.
class KbIndex {
 public:
  explicit KbIndex(const KnowledgeBase& kb) : kb_(&kb) {
    for (std::size_t i = 0; i < kb.ka.size(); ++i) ka_pos_.emplace(kb.ka[i].name, static_cast<int>(i));
    if (kb.ka.size() > 62) throw std::invalid_argument("KA set too large for bitmask representation");
    rules_.reserve(kb.program.size());
    for (const Rule& r : kb.program) {
      RuleMasks m;
      for (const Atom& a : r.head) {
        int i = ka_index(a);
        m.head |= bit(i);
        m.head_order.push_back(i);
      }
      for (const Atom& a : r.body_pos) m.pos |= bit(ka_index(a));
      for (const Atom& a : r.body_neg) m.neg |= bit(ka_index(a));
      rules_.push_back(std::move(m));
    }
  }

  const KnowledgeBase& kb() const { return *kb_; }
  std::size_t ka_size() const { return kb_->ka.size(); }
  Mask ka_all() const { return ka_size() == 0 ? 0 : (Mask(1) << ka_size()) - 1; }
  static Mask bit(int i) { return Mask(1) << i; }
  const std::vector<RuleMasks>& rules() const { return rules_; }

  int ka_index(const Atom& a) const {
    auto it = ka_pos_.find(a.name);
    return it == ka_pos_.end() ? -1 : it->second;
  }

  Mask mask(const AtomList& atoms) const {
    Mask m = 0;
    for (const Atom& a : atoms) {
      int i = ka_index(a);
      if (i < 0) throw std::invalid_argument("atom '" + a.name + "' is not a K-atom of the knowledge base");
      m |= bit(i);
    }
    return m;
  }

  /// KA atoms of a mask, in KA declaration order.
  AtomList atoms(Mask m) const {
    AtomList out;
    for (std::size_t i = 0; i < ka_size(); ++i) {
      if ((m >> i) & 1) out.push_back(kb_->ka[i]);
    }
    return out;
  }

  /// {a in KA | OB_S |= a} as a mask. All of KA when OB_S is inconsistent.
  Mask entailed(Mask s) {
    if (kb_->ontology.empty()) return s;
    auto it = entailed_memo_.find(s);
    if (it != entailed_memo_.end()) return it->second;
    ensure_models();
    Mask acc = ka_all();
    bool found = false;
    for (Mask model : ka_models_) {
      if ((model & s) == s) {
        acc &= model;
        found = true;
      }
    }
    if (!found) acc = ka_all();  // ex falso
    entailed_memo_.emplace(s, acc);
    consistent_memo_.emplace(s, found);
    return acc;
  }

  /// Whether OB_S is satisfiable.
  bool consistent(Mask s) {
    if (kb_->ontology.empty()) return true;
    auto it = consistent_memo_.find(s);
    if (it != consistent_memo_.end()) return it->second;
    entailed(s);
    return consistent_memo_.at(s);
  }

  /// Whether OB_S together with atom `ka_idx` is satisfiable, i.e. OB_S does
  /// not entail the atom's negation.
  bool consistent_with(Mask s, int ka_idx) { return consistent(s | bit(ka_idx)); }

 private:
  void ensure_models() {
    if (models_built_) return;
    models_built_ = true;
    const AtomList& sig = kb_->signature;
    if (sig.size() > 24) throw std::invalid_argument("signature too large for ontology model enumeration");
    std::unordered_map<std::string, int> sig_idx;
    for (std::size_t i = 0; i < sig.size(); ++i) sig_idx.emplace(sig[i].name, static_cast<int>(i));
    std::vector<CompiledFormula> compiled;
    for (const FormulaPtr& f : kb_->ontology) compiled.push_back(CompiledFormula::compile(*f, sig_idx));
    std::vector<int> ka_to_sig(ka_size());
    for (std::size_t i = 0; i < ka_size(); ++i) ka_to_sig[i] = sig_idx.at(kb_->ka[i].name);
    // Only KA projections matter to entailment queries; ontology-only atoms
    // are existentially absorbed by the enumeration.
    std::vector<char> seen(std::size_t(1) << ka_size(), 0);
    for (Mask m = 0; m < (Mask(1) << sig.size()); ++m) {
      bool sat = true;
      for (const CompiledFormula& f : compiled) {
        if (!f.eval(m)) {
          sat = false;
          break;
        }
      }
      if (!sat) continue;
      Mask proj = 0;
      for (std::size_t i = 0; i < ka_size(); ++i) {
        if ((m >> ka_to_sig[i]) & 1) proj |= bit(static_cast<int>(i));
      }
      if (!seen[proj]) {
        seen[proj] = 1;
        ka_models_.push_back(proj);
      }
    }
  }

  const KnowledgeBase* kb_;
  std::unordered_map<std::string, int> ka_pos_;
  std::vector<RuleMasks> rules_;
  bool models_built_ = false;
  std::vector<Mask> ka_models_;
  std::unordered_map<Mask, Mask> entailed_memo_;
  std::unordered_map<Mask, bool> consistent_memo_;
};

}  // namespace mknf::detail

#endif
