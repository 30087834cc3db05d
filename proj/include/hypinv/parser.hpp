#pragma once

#include <string_view>

#include "hypinv/expr.hpp"

namespace hypinv {

/// Parses the expression language:
///
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := base ('^' ['-'] integer)?
///   base   := number | name | name '\''* '(' ('t'|'x') ')' | '(' expr ')'
///           | '-' factor | 'ln' '(' expr ')' | 'exp' '(' expr ')'
///
/// Bare names are parameters except t and x. Decimal literals are read as
/// exact rationals. Throws ParseError carrying the byte offset.
Expr parse(std::string_view text);

}  // namespace hypinv
