#include "gpv/lexer.hpp"

#include "gpv/diagnostics.hpp"

#include <cctype>

namespace gpv {

Lexer::Lexer(const std::string& text, std::string origin) : origin_(std::move(origin)) {
  int line = 1, col = 1;
  size_t i = 0;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k) {
      if (text[i + k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += n;
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace((unsigned char)c)) {
      advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (std::isdigit((unsigned char)c)) {
      size_t j = i;
      while (j < text.size() && std::isdigit((unsigned char)text[j])) ++j;
      t.kind = Token::Int;
      t.text = text.substr(i, j - i);
      t.num = std::stoll(t.text);
      advance(j - i);
      tokens_.push_back(std::move(t));
      continue;
    }
    if (std::isalpha((unsigned char)c) || c == '_') {
      size_t j = i;
      while (j < text.size() && (std::isalnum((unsigned char)text[j]) || text[j] == '_' ||
                                 text[j] == '\''))
        ++j;
      t.kind = Token::Ident;
      t.text = text.substr(i, j - i);
      advance(j - i);
      tokens_.push_back(std::move(t));
      continue;
    }
    if (c == '"') {
      size_t j = i + 1;
      while (j < text.size() && text[j] != '"') ++j;
      if (j >= text.size())
        throw GpvError(Err::Syntax, origin_ + " unterminated string at line " +
                                        std::to_string(line));
      t.kind = Token::Str;
      t.text = text.substr(i + 1, j - i - 1);
      advance(j - i + 1);
      tokens_.push_back(std::move(t));
      continue;
    }
    // multi-char symbols first
    static const char* multi[] = {"/\\", "\\/", "!=", "<=", ">=", "=>"};
    bool matched = false;
    for (const char* m : multi) {
      size_t len = 2;
      if (text.compare(i, len, m) == 0) {
        t.kind = Token::Sym;
        t.text = m;
        advance(len);
        tokens_.push_back(std::move(t));
        matched = true;
        break;
      }
    }
    if (matched) continue;
    static const std::string singles = "(){}[],;=<>+-*/:.~!#";
    if (singles.find(c) != std::string::npos) {
      t.kind = Token::Sym;
      t.text = std::string(1, c);
      advance(1);
      tokens_.push_back(std::move(t));
      continue;
    }
    throw GpvError(Err::Syntax, origin_ + " unexpected character '" + std::string(1, c) +
                                    "' at line " + std::to_string(line) + ":" +
                                    std::to_string(col));
  }
  Token end;
  end.kind = Token::End;
  end.line = line;
  end.col = col;
  tokens_.push_back(end);
}

const Token& Lexer::peek(int ahead) const {
  size_t idx = pos_ + (size_t)ahead;
  if (idx >= tokens_.size()) idx = tokens_.size() - 1;
  return tokens_[idx];
}

Token Lexer::next() {
  Token t = peek();
  if (pos_ + 1 < tokens_.size()) ++pos_;
  return t;
}

bool Lexer::is_sym(const char* s, int ahead) const {
  const Token& t = peek(ahead);
  return t.kind == Token::Sym && t.text == s;
}

bool Lexer::is_ident(const char* s, int ahead) const {
  const Token& t = peek(ahead);
  return t.kind == Token::Ident && t.text == s;
}

bool Lexer::accept_sym(const char* s) {
  if (is_sym(s)) {
    next();
    return true;
  }
  return false;
}

bool Lexer::accept_ident(const char* s) {
  if (is_ident(s)) {
    next();
    return true;
  }
  return false;
}

void Lexer::expect_sym(const char* s) {
  if (!accept_sym(s)) error(std::string("expected '") + s + "'");
}

std::string Lexer::expect_ident(const char* what) {
  if (peek().kind != Token::Ident) error(std::string("expected ") + what);
  return next().text;
}

void Lexer::error(const std::string& msg) const {
  const Token& t = peek();
  std::string where = origin_.empty() ? "" : origin_ + " ";
  throw GpvError(Err::Syntax, where + msg + " at line " + std::to_string(t.line) + ":" +
                                  std::to_string(t.col) + " (got '" +
                                  (t.kind == Token::End ? "<end>" : t.text) + "')");
}

}  // namespace gpv
