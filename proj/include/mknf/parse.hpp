#ifndef MKNF_PARSE_HPP
#define MKNF_PARSE_HPP

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mknf/syntax.hpp"

namespace mknf {

/// Syntax error with 1-based source location.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int col, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + what),
        line_(line),
        col_(col) {}

  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_;
  int col_;
};

namespace detail {

// Single-pass character cursor shared by the KB and partition parsers.
class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  char advance() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_ws_and_comments() {
    while (!at_end()) {
      char c = peek();
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '%') {
        while (!at_end() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }

  bool try_consume(char c) {
    if (peek() == c) {
      advance();
      return true;
    }
    return false;
  }

  bool try_consume_word(std::string_view w) {
    if (text_.substr(pos_, w.size()) != w) return false;
    // must not run into a longer identifier
    std::size_t after = pos_ + w.size();
    if (after < text_.size()) {
      char c = text_[after];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') return false;
    }
    for (std::size_t i = 0; i < w.size(); ++i) advance();
    return true;
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, col_, msg); }

  void expect(char c, const char* what) {
    if (!try_consume(c)) fail(std::string("expected '") + c + "' " + what);
  }

  /// Identifier matching [a-z][A-Za-z0-9_]*. "not", "true" and "false" are
  /// reserved words and rejected here.
  Atom atom() {
    skip_ws_and_comments();
    if (at_end() || !std::islower(static_cast<unsigned char>(peek()))) fail("expected atom");
    std::string name;
    name.push_back(advance());
    while (!at_end()) {
      char c = peek();
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
        name.push_back(advance());
      } else {
        break;
      }
    }
    if (name == "not" || name == "true" || name == "false") fail("'" + name + "' is reserved");
    return Atom{std::move(name)};
  }

  int line() const { return line_; }
  int col() const { return col_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// Formula grammar, lowest precedence first: <-> | -> | "|" | & | ~ | primary.
// "->" is right-associative; the other binaries associate left.
inline FormulaPtr parse_iff(Cursor& cur);

inline FormulaPtr parse_primary(Cursor& cur) {
  cur.skip_ws_and_comments();
  if (cur.try_consume('(')) {
    FormulaPtr f = parse_iff(cur);
    cur.skip_ws_and_comments();
    cur.expect(')', "to close group");
    return f;
  }
  if (cur.try_consume('~')) return f_not(parse_primary(cur));
  if (cur.try_consume_word("true")) return f_true();
  if (cur.try_consume_word("false")) return f_false();
  return f_var(cur.atom());
}

inline FormulaPtr parse_and(Cursor& cur) {
  FormulaPtr f = parse_primary(cur);
  cur.skip_ws_and_comments();
  while (cur.try_consume('&')) {
    f = f_and(std::move(f), parse_primary(cur));
    cur.skip_ws_and_comments();
  }
  return f;
}

inline FormulaPtr parse_or(Cursor& cur) {
  FormulaPtr f = parse_and(cur);
  cur.skip_ws_and_comments();
  while (cur.peek() == '|') {
    cur.advance();
    f = f_or(std::move(f), parse_and(cur));
    cur.skip_ws_and_comments();
  }
  return f;
}

inline FormulaPtr parse_implies(Cursor& cur) {
  FormulaPtr lhs = parse_or(cur);
  cur.skip_ws_and_comments();
  if (cur.peek() == '-') {
    cur.advance();
    cur.expect('>', "after '-'");
    return f_implies(std::move(lhs), parse_implies(cur));
  }
  return lhs;
}

inline FormulaPtr parse_iff(Cursor& cur) {
  FormulaPtr f = parse_implies(cur);
  cur.skip_ws_and_comments();
  while (cur.peek() == '<') {
    cur.advance();
    cur.expect('-', "in '<->'");
    cur.expect('>', "in '<->'");
    f = f_iff(std::move(f), parse_implies(cur));
    cur.skip_ws_and_comments();
  }
  return f;
}

inline int precedence(FormulaKind k) {
  switch (k) {
    case FormulaKind::Iff: return 1;
    case FormulaKind::Implies: return 2;
    case FormulaKind::Or: return 3;
    case FormulaKind::And: return 4;
    case FormulaKind::Not: return 5;
    default: return 6;
  }
}

inline void render_formula(const Formula& f, std::ostream& os, int parent_prec, bool right_side) {
  int prec = precedence(f.kind);
  // Right operand of a left-associative binary needs parens at equal
  // precedence; "->" is the mirror case.
  bool parens = prec < parent_prec ||
                (prec == parent_prec && right_side && f.kind != FormulaKind::Implies) ||
                (prec == parent_prec && !right_side && f.kind == FormulaKind::Implies);
  if (parens) os << '(';
  switch (f.kind) {
    case FormulaKind::True: os << "true"; break;
    case FormulaKind::False: os << "false"; break;
    case FormulaKind::Var: os << f.var.name; break;
    case FormulaKind::Not:
      os << '~';
      render_formula(*f.lhs, os, prec, false);
      break;
    default: {
      const char* op = f.kind == FormulaKind::And ? " & "
                       : f.kind == FormulaKind::Or ? " | "
                       : f.kind == FormulaKind::Implies ? " -> "
                                                        : " <-> ";
      render_formula(*f.lhs, os, prec, false);
      os << op;
      render_formula(*f.rhs, os, prec, true);
      break;
    }
  }
  if (parens) os << ')';
}

}  // namespace detail

inline std::string render_formula(const FormulaPtr& f) {
  std::ostringstream os;
  detail::render_formula(*f, os, 0, false);
  return os.str();
}

/// Parses the line-oriented KB text format: `% comment`, `#ont <formula>.`
/// and rule lines `h1 ; h2 :- b1, not c1.`.
inline KnowledgeBase parse_kb(std::string_view text) {
  detail::Cursor cur(text);
  std::vector<FormulaPtr> ontology;
  std::vector<Rule> rules;
  for (;;) {
    cur.skip_ws_and_comments();
    if (cur.at_end()) break;
    if (cur.try_consume('#')) {
      if (!cur.try_consume_word("ont")) cur.fail("expected 'ont' after '#'");
      ontology.push_back(detail::parse_iff(cur));
      cur.skip_ws_and_comments();
      cur.expect('.', "to end ontology line");
      continue;
    }
    if (cur.try_consume(':')) {
      // A rule starting with ":-" would be a constraint; constraints have no
      // head atom and are not part of the language.
      cur.fail("empty rule head");
    }
    Rule r;
    r.head.push_back(cur.atom());
    cur.skip_ws_and_comments();
    while (cur.try_consume(';')) {
      if (!insert_unique(r.head, cur.atom())) cur.fail("duplicate atom in head");
      cur.skip_ws_and_comments();
    }
    if (cur.try_consume(':')) {
      cur.expect('-', "after ':'");
      do {
        cur.skip_ws_and_comments();
        if (cur.try_consume_word("not")) {
          if (!insert_unique(r.body_neg, cur.atom())) cur.fail("duplicate atom in negative body");
        } else {
          if (!insert_unique(r.body_pos, cur.atom())) cur.fail("duplicate atom in positive body");
        }
        cur.skip_ws_and_comments();
      } while (cur.try_consume(','));
    }
    cur.expect('.', "to end rule");
    rules.push_back(std::move(r));
  }
  try {
    return make_kb(std::move(ontology), std::move(rules));
  } catch (const std::invalid_argument& e) {
    throw ParseError(cur.line(), cur.col(), e.what());
  }
}

inline void render_atoms(const AtomList& atoms, std::ostream& os, const char* sep) {
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i) os << sep;
    os << atoms[i].name;
  }
}

/// Canonical text form; parse_kb(render_kb(kb)) is structurally equal to kb.
inline std::string render_kb(const KnowledgeBase& kb) {
  std::ostringstream os;
  os << "% knowledge base\n";
  for (const FormulaPtr& f : kb.ontology) os << "#ont " << render_formula(f) << ".\n";
  for (const Rule& r : kb.program) {
    render_atoms(r.head, os, " ; ");
    if (!r.body_pos.empty() || !r.body_neg.empty()) {
      os << " :- ";
      bool first = true;
      for (const Atom& a : r.body_pos) {
        if (!first) os << ", ";
        os << a.name;
        first = false;
      }
      for (const Atom& a : r.body_neg) {
        if (!first) os << ", ";
        os << "not " << a.name;
        first = false;
      }
    }
    os << ".\n";
  }
  return os.str();
}

}  // namespace mknf

#endif
