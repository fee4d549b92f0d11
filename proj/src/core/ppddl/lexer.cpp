#include "core/ppddl/lexer.hpp"

#include <cctype>

namespace asnets::ppddl {

void syntax_error(const Token& at, const std::string& msg) {
  fail(ErrKind::syntax,
       "syntax error at line " + std::to_string(at.line) + ", col " + std::to_string(at.col) +
           ": " + msg);
}

Lexer::Lexer(const std::string& src) {
  int line = 1, col = 1;
  size_t i = 0;
  auto advance = [&](char c) {
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == ';') {
      while (i < src.size() && src[i] != '\n') advance(src[i++]);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(c);
      ++i;
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (c == '(') {
      t.kind = Token::LParen;
      t.text = "(";
      advance(c);
      ++i;
    } else if (c == ')') {
      t.kind = Token::RParen;
      t.text = ")";
      advance(c);
      ++i;
    } else {
      size_t start = i;
      while (i < src.size() && !std::isspace(static_cast<unsigned char>(src[i])) &&
             src[i] != '(' && src[i] != ')' && src[i] != ';') {
        advance(src[i]);
        ++i;
      }
      std::string word = src.substr(start, i - start);
      bool numeric = !word.empty() &&
                     (std::isdigit(static_cast<unsigned char>(word[0])) ||
                      ((word[0] == '-' || word[0] == '+' || word[0] == '.') && word.size() > 1 &&
                       std::isdigit(static_cast<unsigned char>(word[1]))));
      t.kind = numeric ? Token::Number : Token::Symbol;
      t.text = numeric ? word : lowercase(word);
    }
    tokens_.push_back(t);
  }
  Token end;
  end.kind = Token::End;
  end.line = line;
  end.col = col;
  tokens_.push_back(end);
}

}  // namespace asnets::ppddl
