#pragma once

#include <string>
#include <vector>

#include "core/util.hpp"

namespace asnets::ppddl {

struct Token {
  enum Kind { LParen, RParen, Symbol, Number, End } kind;
  std::string text;  // lowercased for symbols
  int line = 1;
  int col = 1;
};

// S-expression token stream; ';' comments run to end of line.
class Lexer {
 public:
  explicit Lexer(const std::string& src);
  const Token& peek() const { return tokens_[pos_]; }
  Token next() { return tokens_[pos_ == tokens_.size() - 1 ? pos_ : pos_++]; }

 private:
  std::vector<Token> tokens_;
  size_t pos_ = 0;
};

[[noreturn]] void syntax_error(const Token& at, const std::string& msg);

}  // namespace asnets::ppddl
