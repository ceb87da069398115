#pragma once

#include <string_view>

#include "stochsym/expr/expr.hpp"

namespace stochsym::expr {

/// Parses infix text. Grammar:
///   expr   := term (('+'|'-') term)*
///   term   := unary (('*'|'/') unary)*
///   unary  := '-' unary | power
///   power  := atom ('^' unary)?
///   atom   := number | ident | ident '(' expr ')' | '(' expr ')'
/// Functions: exp, log, integral. x, t, w are variables; other identifiers
/// are parameters. Literals without an exponent are exact rationals.
/// Throws ParseError on malformed input. The result is not simplified.
Expr parse(std::string_view source);

}  // namespace stochsym::expr
