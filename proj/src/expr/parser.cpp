#include "hamgeom/expr/parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace hamgeom {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto trim = [](std::string& t) {
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.erase(t.begin());
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
  };
  trim(s);
  bool negative = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    negative = s[0] == '-';
    s.erase(s.begin());
  }
  auto digits = [](const std::string& t) {
    return !t.empty() && std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  };
  Rational value;
  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string n = s.substr(0, slash), d = s.substr(slash + 1);
    trim(n);
    trim(d);
    if (!digits(n) || !digits(d)) throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    Integer den(d);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    value = Rational(Integer(n), den);
  } else if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if ((!ip.empty() && !digits(ip)) || !digits(fp))
      throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
    Integer scale = 1;
    for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
    value = Rational(Integer(ip.empty() ? "0" : ip) * scale + Integer(fp), scale);
  } else {
    if (!digits(s)) throw std::invalid_argument("malformed integer '" + std::string(text) + "'");
    value = Rational(Integer(s));
  }
  return negative ? Rational(-value) : value;
}

namespace syntax {

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    Token t{TokenKind::symbol, {}, i, line, col};
    std::size_t j = i;
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && i + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
      t.kind = TokenKind::number;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j < text.size() && text[j] == '.') {
        ++j;
        const std::size_t frac = j;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        if (j == frac) {
          t.text = std::string(text.substr(i, j - i));
          fail(t, "malformed number");
        }
      }
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      t.kind = TokenKind::identifier;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
    } else if (std::string_view("+-*/^()[]{},;:=").find(c) != std::string_view::npos) {
      j = i + 1;
    } else {
      t.text = std::string(1, c);
      fail(t, std::string("unexpected character '") + c + "'");
    }
    t.text = std::string(text.substr(i, j - i));
    out.push_back(std::move(t));
    advance(j - i);
  }
  out.push_back(Token{TokenKind::end, {}, i, line, col});
  return out;
}

void fail(const Token& at, const std::string& message) {
  throw ParseError(message, at.offset, at.line, at.column);
}

namespace {

class Parser {
 public:
  Parser(const std::vector<Token>& tokens, std::size_t& pos, const Chart& chart)
      : toks_(tokens), pos_(pos), chart_(chart), nvars_(chart.num_variables()) {}

  RationalFunction expr() {
    RationalFunction acc = term();
    while (is_symbol("+") || is_symbol("-")) {
      const bool minus = peek().text == "-";
      ++pos_;
      RationalFunction rhs = term();
      acc = minus ? acc - rhs : acc + rhs;
    }
    return acc;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool is_symbol(std::string_view s) const {
    return peek().kind == TokenKind::symbol && peek().text == s;
  }
  void expect(std::string_view s) {
    if (!is_symbol(s)) fail(peek(), "expected '" + std::string(s) + "'" + found());
    ++pos_;
  }
  std::string found() const {
    return peek().kind == TokenKind::end ? " but reached end of input" : " but found '" + peek().text + "'";
  }

  RationalFunction term() {
    RationalFunction acc = unary();
    while (is_symbol("*") || is_symbol("/")) {
      const Token op = peek();
      ++pos_;
      RationalFunction rhs = unary();
      if (op.text == "*") {
        acc = acc * rhs;
      } else {
        if (rhs.is_zero()) fail(op, "division by zero");
        acc = acc / rhs;
      }
    }
    return acc;
  }

  RationalFunction unary() {
    if (is_symbol("-")) {
      ++pos_;
      return -unary();
    }
    if (is_symbol("+")) {
      ++pos_;
      return unary();
    }
    return power();
  }

  RationalFunction power() {
    RationalFunction base = primary();
    if (!is_symbol("^")) return base;
    ++pos_;
    const Token& e = peek();
    if (e.kind != TokenKind::number || e.text.find('.') != std::string::npos)
      fail(e, "exponent must be a non-negative integer literal");
    unsigned long value = 0;
    auto [ptr, ec] = std::from_chars(e.text.data(), e.text.data() + e.text.size(), value);
    if (ec != std::errc() || value > kMaxExponent) fail(e, "exponent exceeds 2^16");
    ++pos_;
    try {
      return base.pow(static_cast<unsigned>(value));
    } catch (const std::domain_error& err) {
      fail(e, err.what());
    }
  }

  RationalFunction primary() {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::number:
        ++pos_;
        return RationalFunction::constant(nvars_, parse_rational(t.text));
      case TokenKind::identifier: {
        auto idx = chart_.variable_index(t.text);
        if (!idx) fail(t, "unknown identifier '" + t.text + "'");
        ++pos_;
        return RationalFunction::variable(nvars_, *idx);
      }
      case TokenKind::symbol:
        if (t.text == "(") {
          ++pos_;
          RationalFunction inner = expr();
          expect(")");
          return inner;
        }
        break;
      case TokenKind::end:
        break;
    }
    fail(t, "expected a number, identifier or '('" + found());
  }

  const std::vector<Token>& toks_;
  std::size_t& pos_;
  const Chart& chart_;
  std::size_t nvars_;
};

}  // namespace

RationalFunction parse_expression(const std::vector<Token>& tokens, std::size_t& pos,
                                  const Chart& chart) {
  return Parser(tokens, pos, chart).expr();
}

}  // namespace syntax

RationalFunction parse_expression(std::string_view text, const Chart& chart) {
  const auto tokens = syntax::tokenize(text);
  std::size_t pos = 0;
  RationalFunction f = syntax::parse_expression(tokens, pos, chart);
  if (tokens[pos].kind != syntax::TokenKind::end) syntax::fail(tokens[pos], "unexpected '" + tokens[pos].text + "'");
  return f;
}

}  // namespace hamgeom
