#include "fragcheck/lexer.hpp"

namespace fragcheck {

namespace {

bool ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool ident_char(char c) {
  return ident_start(c) || (c >= '0' && c <= '9');
}

}  // namespace

Lexer::Lexer(std::string_view text) {
  size_t pos = 0;
  int line = 1, col = 1;
  auto advance = [&]() {
    if (text[pos] == '\n') { ++line; col = 1; } else { ++col; }
    ++pos;
  };
  while (pos < text.size()) {
    char c = text[pos];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') { advance(); continue; }
    // line comments with '#'
    if (c == '#') {
      while (pos < text.size() && text[pos] != '\n') advance();
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    if (ident_start(c)) {
      std::string w;
      while (pos < text.size() && ident_char(text[pos])) {
        w += text[pos];
        advance();
      }
      t.kind = Token::Kind::Ident;
      t.text = std::move(w);
    } else if (c >= '0' && c <= '9') {
      std::string digits;
      while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
        digits += text[pos];
        advance();
      }
      errno = 0;
      char* end = nullptr;
      long long v = std::strtoll(digits.c_str(), &end, 10);
      if (errno == ERANGE)
        throw ParseError("integer literal out of range", t.line, t.column);
      t.kind = Token::Kind::Int;
      t.text = digits;
      t.int_value = v;
    } else if (c == '"') {
      advance();
      std::string s;
      for (;;) {
        if (pos >= text.size())
          throw ParseError("unterminated string literal", t.line, t.column);
        char d = text[pos];
        advance();
        if (d == '"') break;
        if (d == '\\') {
          if (pos >= text.size())
            throw ParseError("unterminated escape", t.line, t.column);
          char e = text[pos];
          advance();
          switch (e) {
            case '"': s += '"'; break;
            case '\\': s += '\\'; break;
            case 'n': s += '\n'; break;
            case 't': s += '\t'; break;
            default:
              throw ParseError("invalid escape in string literal", t.line,
                               t.column);
          }
        } else {
          s += d;
        }
      }
      t.kind = Token::Kind::String;
      t.text = std::move(s);
    } else {
      // longest-match punctuation
      static const char* puncts[] = {
          "<=>", "=>", "&&", "||", "<>", "<=", ">=",
          "(", ")", "[", "]", "{", "}", ",", ";", ":", ".",
          "=", "<", ">", "+", "-", "~", "*",
      };
      std::string_view rest = text.substr(pos);
      const char* found = nullptr;
      for (const char* p : puncts) {
        std::string_view sv(p);
        if (rest.substr(0, sv.size()) == sv) { found = p; break; }
      }
      if (!found)
        throw ParseError(std::string("unexpected character '") + c + "'",
                         line, col);
      t.kind = Token::Kind::Punct;
      t.text = found;
      for (size_t i = 0; i < t.text.size(); ++i) advance();
    }
    tokens_.push_back(std::move(t));
  }
  Token end;
  end.kind = Token::Kind::End;
  end.line = line;
  end.column = col;
  tokens_.push_back(std::move(end));
}

void Lexer::expect_punct(std::string_view p) {
  if (!accept_punct(p)) fail(std::string("expected '") + std::string(p) + "'");
}

std::string Lexer::expect_ident(const char* what) {
  if (!peek().is(Token::Kind::Ident))
    fail(std::string("expected ") + what);
  return next().text;
}

}  // namespace fragcheck
