#pragma once

#include <memory>
#include <string_view>
#include <variant>

#include "krd/poly.hpp"

namespace krd {

/// Syntax tree of a polynomial expression.
///
///   expr   := term (('+' | '-') term)*
///   term   := factor ('*' factor)*
///   factor := '-' factor | atom ('^' nat)?
///   atom   := nat | nat '/' nat | var | '(' expr ')'
///   var    := x | y | z | t | s
///
/// Whitespace is ignored; multiplication must be explicit.
struct Expr {
  struct Literal {
    Rat value;
  };
  struct Variable {
    Var var;
  };
  struct Binary {
    char op;  // '+', '-' or '*'
    std::unique_ptr<Expr> lhs;
    std::unique_ptr<Expr> rhs;
  };
  struct Negate {
    std::unique_ptr<Expr> operand;
  };
  struct Power {
    std::unique_ptr<Expr> base;
    unsigned exponent;
  };

  std::variant<Literal, Variable, Binary, Negate, Power> node;
};

/// Throws ParseError carrying the byte offset of the problem.
std::unique_ptr<Expr> parse_expr(std::string_view text);

MPoly evaluate(const Expr& e);

MPoly parse_poly(std::string_view text);

}  // namespace krd
