#ifndef THETA_FORGE_PARSER_HPP
#define THETA_FORGE_PARSER_HPP

#include <cctype>
#include <string>
#include <string_view>

#include "theta_forge/polynomial.hpp"

namespace theta_forge {

namespace detail {

// Recursive descent over
//   expr    := unary (('+' | '-') unary)*      (leading sign handled by unary)
//   term    := unary (('*' | '/') unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' exponent)?
//   primary := integer | identifier | '(' expr ')'
// Division is only accepted by a nonzero constant, so that printed rationals
// such as "1/2*x" read back.
class PolyParser {
 public:
  PolyParser(std::string_view text, RingPtr ring) : text_(text), ring_(std::move(ring)) {}

  Polynomial parse() {
    skip_ws();
    if (at_end()) fail(ErrorCode::SYNTAX_ERROR, "empty expression");
    Polynomial p = expr();
    skip_ws();
    if (!at_end()) fail(ErrorCode::SYNTAX_ERROR, std::string("unexpected '") + peek() + "'");
    return p;
  }

 private:
  Polynomial expr() {
    Polynomial acc = term();
    for (;;) {
      skip_ws();
      if (at_end()) return acc;
      char c = peek();
      if (c != '+' && c != '-') return acc;
      advance();
      Polynomial rhs = term();
      acc = c == '+' ? acc + rhs : acc - rhs;
    }
  }

  Polynomial term() {
    Polynomial acc = unary();
    for (;;) {
      skip_ws();
      if (at_end()) return acc;
      char c = peek();
      if (c == '*') {
        advance();
        acc = acc * unary();
      } else if (c == '/') {
        SourcePosition at = pos();
        advance();
        Polynomial d = unary();
        if (!d.is_nonzero_constant())
          throw Error(ErrorCode::SYNTAX_ERROR, "division only by a nonzero constant", at);
        if (!ring_->coeffs().is_field())
          throw Error(ErrorCode::SYNTAX_ERROR, "division is not available over ZZ", at);
        acc = acc.scaled(ring_->coeffs().inv(d.constant_term()));
      } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '(' || c == '_') {
        fail(ErrorCode::SYNTAX_ERROR, "implicit multiplication is not allowed; use '*'");
      } else {
        return acc;
      }
    }
  }

  Polynomial unary() {
    skip_ws();
    if (at_end()) fail(ErrorCode::SYNTAX_ERROR, "unexpected end of expression");
    char c = peek();
    if (c == '-') {
      advance();
      return -unary();
    }
    if (c == '+') {
      advance();
      return unary();
    }
    return power();
  }

  Polynomial power() {
    Polynomial base = primary();
    skip_ws();
    if (at_end() || peek() != '^') return base;
    advance();
    skip_ws();
    if (!at_end() && peek() == '-') fail(ErrorCode::NEGATIVE_EXPONENT, "negative exponent");
    bool paren = false;
    if (!at_end() && peek() == '(') {
      paren = true;
      advance();
      skip_ws();
      if (!at_end() && peek() == '-') fail(ErrorCode::NEGATIVE_EXPONENT, "negative exponent");
    }
    if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
      fail(ErrorCode::SYNTAX_ERROR, "exponent must be a non-negative integer");
    SourcePosition at = pos();
    mpz_class e = integer();
    if (paren) {
      skip_ws();
      if (at_end() || peek() != ')') fail(ErrorCode::SYNTAX_ERROR, "expected ')'");
      advance();
    }
    if (e > 65535) throw Error(ErrorCode::SYNTAX_ERROR, "exponent too large", at);
    skip_ws();
    if (!at_end() && peek() == '^') fail(ErrorCode::SYNTAX_ERROR, "chained '^' is ambiguous; use parentheses");
    return base.pow(static_cast<unsigned>(e.get_ui()));
  }

  Polynomial primary() {
    skip_ws();
    if (at_end()) fail(ErrorCode::SYNTAX_ERROR, "unexpected end of expression");
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class v = integer();
      if (!at_end() && (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_'))
        fail(ErrorCode::SYNTAX_ERROR, "implicit multiplication is not allowed; use '*'");
      return Polynomial::constant(ring_, Scalar(v));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      SourcePosition at = pos();
      std::string name;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
        name += peek();
        advance();
      }
      int idx = ring_->index_of(name);
      if (idx < 0) throw Error(ErrorCode::UNDECLARED_VARIABLE, "undeclared variable '" + name + "'", at);
      return Polynomial::variable(ring_, static_cast<std::size_t>(idx));
    }
    if (c == '(') {
      advance();
      Polynomial inner = expr();
      skip_ws();
      if (at_end() || peek() != ')') fail(ErrorCode::SYNTAX_ERROR, "expected ')'");
      advance();
      return inner;
    }
    fail(ErrorCode::SYNTAX_ERROR, std::string("unexpected '") + c + "'");
  }

  mpz_class integer() {
    std::string digits;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      digits += peek();
      advance();
    }
    return mpz_class(digits, 10);
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }
  bool at_end() const { return i_ >= text_.size(); }
  char peek() const { return text_[i_]; }
  void advance() {
    if (text_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }
  SourcePosition pos() const { return {line_, col_}; }
  [[noreturn]] void fail(ErrorCode code, const std::string& msg) const {
    throw Error(code, msg + " at line " + std::to_string(line_) + ", column " + std::to_string(col_), pos());
  }

  std::string_view text_;
  RingPtr ring_;
  std::size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace detail

/// Parses a polynomial expression over `ring`.
inline Polynomial parse_poly(std::string_view text, const RingPtr& ring) {
  return detail::PolyParser(text, ring).parse();
}

}  // namespace theta_forge

#endif  // THETA_FORGE_PARSER_HPP
