#ifndef MKNF_DETAIL_COMPILED_HPP
#define MKNF_DETAIL_COMPILED_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "mknf/syntax.hpp"

namespace mknf::detail {

/// Propositional formula flattened to postfix code with atom occurrences
/// resolved to bit positions, for fast evaluation under bitmask assignments.
class CompiledFormula {
 public:
  enum class Op : std::uint8_t { PushTrue, PushFalse, PushVar, Not, And, Or, Implies, Iff };

  struct Ins {
    Op op;
    int var = 0;
  };

  static CompiledFormula compile(const Formula& f, const std::unordered_map<std::string, int>& index) {
    CompiledFormula out;
    out.emit(f, index);
    return out;
  }

  bool eval(std::uint64_t assignment) const {
    std::uint64_t stack = 0;  // bit-stack, top at bit 0
    for (const Ins& ins : code_) {
      switch (ins.op) {
        case Op::PushTrue: stack = (stack << 1) | 1; break;
        case Op::PushFalse: stack = stack << 1; break;
        case Op::PushVar: stack = (stack << 1) | ((assignment >> ins.var) & 1); break;
        case Op::Not: stack ^= 1; break;
        case Op::And: stack = apply2(stack, [](bool a, bool b) { return a && b; }); break;
        case Op::Or: stack = apply2(stack, [](bool a, bool b) { return a || b; }); break;
        case Op::Implies: stack = apply2(stack, [](bool a, bool b) { return !a || b; }); break;
        case Op::Iff: stack = apply2(stack, [](bool a, bool b) { return a == b; }); break;
      }
    }
    return stack & 1;
  }

 private:
  template <class F>
  static std::uint64_t apply2(std::uint64_t stack, F f) {
    bool rhs = stack & 1;
    bool lhs = (stack >> 1) & 1;
    return ((stack >> 2) << 1) | std::uint64_t(f(lhs, rhs));
  }

  void emit(const Formula& f, const std::unordered_map<std::string, int>& index) {
    switch (f.kind) {
      case FormulaKind::True: code_.push_back({Op::PushTrue}); break;
      case FormulaKind::False: code_.push_back({Op::PushFalse}); break;
      case FormulaKind::Var: {
        auto it = index.find(f.var.name);
        if (it == index.end()) throw std::invalid_argument("unknown atom '" + f.var.name + "'");
        code_.push_back({Op::PushVar, it->second});
        break;
      }
      case FormulaKind::Not:
        emit(*f.lhs, index);
        code_.push_back({Op::Not});
        break;
      default:
        emit(*f.lhs, index);
        emit(*f.rhs, index);
        Op op = f.kind == FormulaKind::And ? Op::And
                : f.kind == FormulaKind::Or ? Op::Or
                : f.kind == FormulaKind::Implies ? Op::Implies
                                                 : Op::Iff;
        code_.push_back({op});
        break;
    }
  }

  std::vector<Ins> code_;
};

}  // namespace mknf::detail

#endif
