#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "admarf/source.hpp"

namespace admarf {

enum class TokenKind {
  Keyword,     // UPPERCASE grammar words (FLUENT, EVENTS, AND, ...)
  Ident,       // [A-Za-z_][A-Za-z0-9_]*, including contextual `call`/`set`/`in`
  Path,        // dotted path: ident(.ident)+ lexed as one token
  Int,         // non-negative integer literal
  Bool,        // `true` | `false`
  LBrace,
  RBrace,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Semicolon,
  Equals,
  Dot,
  DotDot,
  ShiftLeft,   // << (receive)
  ShiftRight,  // >> (send)
  Eof,
};

struct Token {
  TokenKind kind = TokenKind::Eof;
  std::string text;       // exact spelling (empty for Eof)
  std::int64_t int_value = 0;
  bool bool_value = false;
  SourceSpan span;

  bool is_keyword(const char* kw) const {
    return kind == TokenKind::Keyword && text == kw;
  }
  // Contextual statement keywords (`call`, `set`, `in`) lex as identifiers.
  bool is_ident(const char* word) const {
    return kind == TokenKind::Ident && text == word;
  }
};

const char* token_kind_name(TokenKind kind);

}  // namespace admarf
