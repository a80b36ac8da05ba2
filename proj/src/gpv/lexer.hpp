#pragma once

#include <string>
#include <vector>

namespace gpv {

struct Token {
  enum Kind { Ident, Int, Str, Sym, End } kind = End;
  std::string text;
  long long num = 0;
  int line = 1, col = 1;
};

// Tokenises the shared surface syntax of .fol/.gpr/.gpp/.graph files.
// `//` starts a line comment. Multi-char symbols: /\ \/ != <= >= =>
class Lexer {
 public:
  explicit Lexer(const std::string& text, std::string origin = "");

  const Token& peek(int ahead = 0) const;
  Token next();
  bool at_end() const { return peek().kind == Token::End; }

  bool is_sym(const char* s, int ahead = 0) const;
  bool is_ident(const char* s, int ahead = 0) const;
  bool accept_sym(const char* s);
  bool accept_ident(const char* s);
  void expect_sym(const char* s);
  std::string expect_ident(const char* what);

  size_t position() const { return pos_; }
  void rewind(size_t pos) { pos_ = pos; }

  [[noreturn]] void error(const std::string& msg) const;

 private:
  std::vector<Token> tokens_;
  size_t pos_ = 0;
  std::string origin_;
};

}  // namespace gpv
