#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fragcheck/json_value.hpp"

namespace fragcheck {

/// Token stream shared by the type-definition, formula and script grammars.
/// Tokenizes the whole input up front so parsers can backtrack by index.
struct Token {
  enum class Kind {
    Ident,     // identifiers and keywords
    Int,       // integer literal (non-negative; '-' is a separate token)
    String,    // "quoted"
    Punct,     // operators and punctuation, in `text`
    End,
  };
  Kind kind;
  std::string text;
  std::int64_t int_value = 0;
  int line = 1;
  int column = 1;

  bool is(Kind k) const { return kind == k; }
  bool is_punct(std::string_view p) const {
    return kind == Kind::Punct && text == p;
  }
  bool is_ident(std::string_view w) const {
    return kind == Kind::Ident && text == w;
  }
};

class Lexer {
public:
  explicit Lexer(std::string_view text);

  const Token& peek(size_t ahead = 0) const {
    size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < tokens_.size() - 1) ++pos_;
    return t;
  }
  bool at_end() const { return peek().is(Token::Kind::End); }

  size_t mark() const { return pos_; }
  void rewind(size_t m) { pos_ = m; }

  bool accept_punct(std::string_view p) {
    if (peek().is_punct(p)) { next(); return true; }
    return false;
  }
  bool accept_ident(std::string_view w) {
    if (peek().is_ident(w)) { next(); return true; }
    return false;
  }
  void expect_punct(std::string_view p);
  std::string expect_ident(const char* what);

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    throw ParseError(msg + (t.is(Token::Kind::End)
                                ? " (at end of input)"
                                : " (found '" + t.text + "')"),
                     t.line, t.column);
  }

private:
  std::vector<Token> tokens_;
  size_t pos_ = 0;
};

}  // namespace fragcheck
