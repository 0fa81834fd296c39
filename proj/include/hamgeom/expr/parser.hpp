#pragma once

// Expression grammar (whitespace insensitive, '#' starts a comment):
//
//   expr    := term { ("+" | "-") term }
//   term    := unary { ("*" | "/") unary }
//   unary   := ("+" | "-") unary | power
//   power   := primary [ "^" integer ]
//   primary := number | identifier | "(" expr ")"
//   number  := digits [ "." digits ]
//
// Identifiers must name a chart coordinate or a declared constant.
// "-x^2" parses as -(x^2); "1/2*x" as (1/2)*x.

#include "hamgeom/expr/rational_function.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace hamgeom {

namespace syntax {

enum class TokenKind { number, identifier, symbol, end };

struct Token {
  TokenKind kind;
  std::string text;
  std::size_t offset, line, column;
};

/// Splits text into tokens; the last token always has kind `end`.
/// Throws ParseError on characters outside the grammar.
std::vector<Token> tokenize(std::string_view text);

[[noreturn]] void fail(const Token& at, const std::string& message);

/// Parses one expression starting at tokens[pos], advancing pos past it.
/// Stops at the first token that cannot continue the expression.
RationalFunction parse_expression(const std::vector<Token>& tokens, std::size_t& pos,
                                  const Chart& chart);

}  // namespace syntax

/// Parses a complete expression. Throws ParseError (with position) on syntax
/// errors, unknown identifiers and division by a zero polynomial.
RationalFunction parse_expression(std::string_view text, const Chart& chart);

}  // namespace hamgeom
