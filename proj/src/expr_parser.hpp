#pragma once

#include "lexer.hpp"
#include "rdnet/expr.hpp"

namespace rdnet::detail {

/// Parses one expression starting at the lexer's current token and stops at
/// the first token that cannot continue it.
expr::Expr parse_expr(Lexer& lex);

} // namespace rdnet::detail
