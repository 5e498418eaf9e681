#pragma once

#include <cctype>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "stel/syntax.hpp"

namespace stel {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line, int column)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) +
                           ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

struct ParseOptions {
  /// Machine-generated names (containing "__") are rejected in user input by
  /// default; tools reading back their own output enable this.
  bool allow_reserved_names = false;
};

namespace detail {

enum class Tok {
  KwGci, KwCond, KwTop, KwIn, KwEx,
  Name, Int, Decimal,
  LParen, RParen, LBracket, RBracket,
  Amp, Bang, Pipe, Dot, Comma, Slash, Subsumes,
  Newline, End,
};

struct Token {
  Tok type;
  std::string text;
  int line;
  int column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '\n') {
        out.push_back({Tok::Newline, "\n", line_, col_});
        advance();
        ++line_;
        col_ = 1;
        continue;
      }
      if (c == '#') {  // comment to end of line
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c))) {
        out.push_back(name_token());
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        out.push_back(number_token());
        continue;
      }
      out.push_back(symbol_token());
    }
    out.push_back({Tok::End, "", line_, col_});
    return out;
  }

 private:
  void advance() {
    ++pos_;
    ++col_;
  }

  Token name_token() {
    const int line = line_, col = col_;
    std::string text;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      text += src_[pos_];
      advance();
    }
    Tok type = Tok::Name;
    if (text == "gci") type = Tok::KwGci;
    else if (text == "cond") type = Tok::KwCond;
    else if (text == "top") type = Tok::KwTop;
    else if (text == "in") type = Tok::KwIn;
    else if (text == "ex") type = Tok::KwEx;
    return {type, std::move(text), line, col};
  }

  Token number_token() {
    const int line = line_, col = col_;
    std::string text;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      text += src_[pos_];
      advance();
    }
    // "0.5" is one decimal token; a lone '.' stays a symbol.
    if (pos_ + 1 < src_.size() && src_[pos_] == '.' &&
        std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
      text += '.';
      advance();
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        text += src_[pos_];
        advance();
      }
      return {Tok::Decimal, std::move(text), line, col};
    }
    return {Tok::Int, std::move(text), line, col};
  }

  Token symbol_token() {
    const int line = line_, col = col_;
    const char c = src_[pos_];
    if (c == '<' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '=') {
      advance();
      advance();
      return {Tok::Subsumes, "<=", line, col};
    }
    advance();
    switch (c) {
      case '(': return {Tok::LParen, "(", line, col};
      case ')': return {Tok::RParen, ")", line, col};
      case '[': return {Tok::LBracket, "[", line, col};
      case ']': return {Tok::RBracket, "]", line, col};
      case '&': return {Tok::Amp, "&", line, col};
      case '!': return {Tok::Bang, "!", line, col};
      case '|': return {Tok::Pipe, "|", line, col};
      case '.': return {Tok::Dot, ".", line, col};
      case ',': return {Tok::Comma, ",", line, col};
      case '/': return {Tok::Slash, "/", line, col};
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  Parser(std::vector<Token> tokens, ParseOptions options)
      : tokens_(std::move(tokens)), options_(options) {}

  Ontology run() {
    std::vector<Axiom> axioms;
    while (true) {
      while (at(Tok::Newline)) next();
      if (at(Tok::End)) break;
      axioms.push_back(axiom());
      if (!at(Tok::End)) expect(Tok::Newline, "end of line after axiom");
    }
    if (axioms.empty()) {
      throw ParseError("empty ontology", peek().line, peek().column);
    }
    try {
      return Ontology(std::move(axioms));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), 1, 1);
    }
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  bool at(Tok t) const { return peek().type == t; }
  Token next() { return tokens_[pos_++]; }

  Token expect(Tok t, const std::string& what) {
    if (!at(t)) {
      throw ParseError("expected " + what + ", found '" + describe(peek()) + "'",
                       peek().line, peek().column);
    }
    return next();
  }

  static std::string describe(const Token& t) {
    if (t.type == Tok::End) return "end of input";
    if (t.type == Tok::Newline) return "end of line";
    return t.text;
  }

  Axiom axiom() {
    if (at(Tok::KwGci)) {
      next();
      Concept lhs = concept_expr();
      expect(Tok::Subsumes, "'<='");
      Concept rhs = concept_expr();
      return Gci{std::move(lhs), std::move(rhs)};
    }
    if (at(Tok::KwCond)) {
      const Token kw = next();
      Concept subject = concept_expr();
      expect(Tok::Pipe, "'|'");
      Concept given = concept_expr();
      expect(Tok::KwIn, "'in'");
      expect(Tok::LBracket, "'['");
      Rational lo = rational();
      expect(Tok::Comma, "','");
      Rational hi = rational();
      expect(Tok::RBracket, "']'");
      if (lo > hi) throw ParseError("conditional bounds: lo > hi", kw.line, kw.column);
      if (hi > kOne) throw ParseError("conditional bounds out of [0,1]", kw.line, kw.column);
      return Conditional{std::move(subject), std::move(given), lo, hi};
    }
    throw ParseError("expected 'gci' or 'cond', found '" + describe(peek()) + "'",
                     peek().line, peek().column);
  }

  Concept concept_expr() {
    if (at(Tok::KwTop)) {
      next();
      return Concept::top();
    }
    if (at(Tok::Name)) return Concept::atom(name("concept name"));
    if (at(Tok::Bang)) {
      next();
      return Concept::neg_atom(name("concept name after '!'"));
    }
    if (at(Tok::LParen)) {
      next();
      if (at(Tok::KwEx)) {
        next();
        std::string role = name("role name");
        expect(Tok::Dot, "'.'");
        Concept inner = concept_expr();
        expect(Tok::RParen, "')'");
        return Concept::exists(std::move(role), std::move(inner));
      }
      Concept lhs = concept_expr();
      expect(Tok::Amp, "'&'");
      Concept rhs = concept_expr();
      expect(Tok::RParen, "')'");
      return Concept::conj(std::move(lhs), std::move(rhs));
    }
    throw ParseError("expected concept, found '" + describe(peek()) + "'",
                     peek().line, peek().column);
  }

  std::string name(const std::string& what) {
    const Token t = expect(Tok::Name, what);
    if (!options_.allow_reserved_names && is_reserved_name(t.text)) {
      throw ParseError("name '" + t.text + "' uses the reserved \"__\" namespace",
                       t.line, t.column);
    }
    return t.text;
  }

  std::int64_t integer(const Token& t) {
    try {
      return std::stoll(t.text);
    } catch (const std::exception&) {
      throw ParseError("integer out of range", t.line, t.column);
    }
  }

  Rational rational() {
    if (at(Tok::Decimal)) {
      const Token t = next();
      const auto dot = t.text.find('.');
      const std::string ipart = t.text.substr(0, dot);
      const std::string fpart = t.text.substr(dot + 1);
      if (ipart.size() > 18 || fpart.size() > 18) {
        throw ParseError("decimal out of range", t.line, t.column);
      }
      std::int64_t den = 1;
      for (std::size_t i = 0; i < fpart.size(); ++i) den *= 10;
      const __int128 num =
          static_cast<__int128>(std::stoll(ipart)) * den + (fpart.empty() ? 0 : std::stoll(fpart));
      if (num > std::numeric_limits<std::int64_t>::max()) {
        throw ParseError("decimal out of range", t.line, t.column);
      }
      return Rational(static_cast<std::int64_t>(num), den);
    }
    const Token t = expect(Tok::Int, "rational number");
    const std::int64_t num = integer(t);
    if (at(Tok::Slash)) {
      next();
      const Token d = expect(Tok::Int, "denominator");
      const std::int64_t den = integer(d);
      if (den == 0) throw ParseError("zero denominator", d.line, d.column);
      return Rational(num, den);
    }
    return Rational(num, 1);
  }

  std::vector<Token> tokens_;
  ParseOptions options_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the line-oriented ontology format. Reports syntax errors,
/// reserved-name violations and malformed conditional bounds with the
/// offending line and column.
inline Ontology parse_ontology(std::string_view text, const ParseOptions& options = {}) {
  detail::Lexer lexer(text);
  detail::Parser parser(lexer.run(), options);
  return parser.run();
}

}  // namespace stel
