#ifndef MKNF_ENTAILMENT_HPP
#define MKNF_ENTAILMENT_HPP

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "mknf/detail/compiled.hpp"
#include "mknf/syntax.hpp"

namespace mknf {

/// Raised when an operation would enumerate more assignments or candidates
/// than the configured cap allows.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A propositional theory over a fixed signature.
struct Theory {
  std::vector<FormulaPtr> formulas;
  AtomList signature;
};

/// Total truth assignment over a theory's signature.
class Assignment {
 public:
  Assignment(std::shared_ptr<const AtomList> sig, std::uint64_t bits)
      : sig_(std::move(sig)), bits_(bits) {}

  const AtomList& signature() const { return *sig_; }

  bool value(const Atom& a) const {
    for (std::size_t i = 0; i < sig_->size(); ++i) {
      if ((*sig_)[i] == a) return bit(i);
    }
    throw std::invalid_argument("unknown atom '" + a.name + "'");
  }

  bool bit(std::size_t i) const { return (bits_ >> i) & 1; }
  std::uint64_t bits() const { return bits_; }

  friend bool operator==(const Assignment& a, const Assignment& b) {
    return a.bits_ == b.bits_ && set_equal(*a.sig_, *b.sig_);
  }

 private:
  std::shared_ptr<const AtomList> sig_;
  std::uint64_t bits_;
};

/// The objective knowledge of a set of K-atoms: the ontology formulas plus
/// one unit formula per atom of `s`. Requires s to lie inside KA.
inline Theory ob(const KnowledgeBase& kb, const AtomList& s) {
  Theory t;
  for (const Atom& a : s) {
    if (!contains(kb.ka, a)) throw std::invalid_argument("atom '" + a.name + "' is not a K-atom of the knowledge base");
  }
  t.formulas = kb.ontology;
  for (const Atom& a : s) t.formulas.push_back(f_var(a));
  t.signature = kb.signature;
  return t;
}

namespace detail {

inline std::unordered_map<std::string, int> signature_index(const AtomList& sig) {
  std::unordered_map<std::string, int> idx;
  for (std::size_t i = 0; i < sig.size(); ++i) idx.emplace(sig[i].name, static_cast<int>(i));
  return idx;
}

inline std::vector<CompiledFormula> compile_all(const std::vector<FormulaPtr>& fs,
                                                const std::unordered_map<std::string, int>& idx) {
  std::vector<CompiledFormula> out;
  out.reserve(fs.size());
  for (const FormulaPtr& f : fs) out.push_back(CompiledFormula::compile(*f, idx));
  return out;
}

template <class Visit>
void for_each_model(const Theory& t, Visit&& visit) {
  auto idx = signature_index(t.signature);
  auto compiled = compile_all(t.formulas, idx);
  std::size_t n = t.signature.size();
  for (std::uint64_t m = 0; m < (std::uint64_t(1) << n); ++m) {
    bool sat = true;
    for (const CompiledFormula& f : compiled) {
      if (!f.eval(m)) {
        sat = false;
        break;
      }
    }
    if (sat && !visit(m)) return;
  }
}

}  // namespace detail

/// Decision procedure seam. The default implementation is exhaustive
/// assignment enumeration; alternatives must implement the same three
/// operations and agree with it.
class DecisionProcedure {
 public:
  virtual ~DecisionProcedure() = default;
  virtual bool is_consistent(const Theory& t) const = 0;
  virtual bool entails(const Theory& t, const Atom& a) const = 0;
  virtual std::vector<Assignment> all_models(const Theory& t, std::size_t cap) const = 0;
};

/// Reference procedure: full truth-table enumeration over the signature.
class TruthTableProcedure final : public DecisionProcedure {
 public:
  bool is_consistent(const Theory& t) const override {
    if (t.signature.size() >= 63) throw CapExceeded("signature too large for enumeration");
    bool found = false;
    detail::for_each_model(t, [&](std::uint64_t) {
      found = true;
      return false;
    });
    return found;
  }

  bool entails(const Theory& t, const Atom& a) const override {
    int pos = -1;
    for (std::size_t i = 0; i < t.signature.size(); ++i) {
      if (t.signature[i] == a) pos = static_cast<int>(i);
    }
    if (pos < 0) throw std::invalid_argument("atom '" + a.name + "' is not in the theory signature");
    if (t.signature.size() >= 63) throw CapExceeded("signature too large for enumeration");
    bool holds = true;  // an inconsistent theory entails everything
    detail::for_each_model(t, [&](std::uint64_t m) {
      if (!((m >> pos) & 1)) {
        holds = false;
        return false;
      }
      return true;
    });
    return holds;
  }

  std::vector<Assignment> all_models(const Theory& t, std::size_t cap) const override {
    std::size_t n = t.signature.size();
    if (n > cap) throw CapExceeded("signature size " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
    auto sig = std::make_shared<const AtomList>(t.signature);
    auto index = detail::signature_index(t.signature);
    auto compiled = detail::compile_all(t.formulas, index);
    std::vector<Assignment> out;
    // Lexicographic order of the signature: the first signature atom is the
    // most significant digit, false before true.
    for (std::uint64_t lex = 0; lex < (std::uint64_t(1) << n); ++lex) {
      std::uint64_t m = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if ((lex >> (n - 1 - i)) & 1) m |= std::uint64_t(1) << i;
      }
      bool sat = true;
      for (const detail::CompiledFormula& f : compiled) {
        if (!f.eval(m)) {
          sat = false;
          break;
        }
      }
      if (sat) out.emplace_back(sig, m);
    }
    return out;
  }
};

inline const DecisionProcedure& default_procedure() {
  static const TruthTableProcedure proc;
  return proc;
}

inline bool is_consistent(const Theory& t) { return default_procedure().is_consistent(t); }
inline bool entails(const Theory& t, const Atom& a) { return default_procedure().entails(t, a); }
inline std::vector<Assignment> all_models(const Theory& t, std::size_t cap = 16) {
  return default_procedure().all_models(t, cap);
}

}  // namespace mknf

#endif
