// Copyright 2026 The oosketch Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OOSK_LEXER_HPP_
#define OOSK_LEXER_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "oosk/source.hpp"

namespace oosk {

enum class Tok {
  Ident,
  IntLit,
  CharLit,
  StringLit,
  // keywords
  KwClass,
  KwInterface,
  KwExtends,
  KwImplements,
  KwNew,
  KwReturn,
  KwIf,
  KwElse,
  KwWhile,
  KwAssert,
  KwThis,
  KwSuper,
  KwNull,
  KwTrue,
  KwFalse,
  KwPublic,
  KwPrivate,
  KwProtected,
  KwStatic,
  KwFinal,
  KwAbstract,
  // sketch extensions
  KwMinrepeat,
  KwHarness,
  KwGenerator,
  Hole,      // ??
  GenOpen,   // {|
  GenClose,  // |}
  // punctuation and operators
  LParen,
  RParen,
  LBrace,
  RBrace,
  Semi,
  Comma,
  Dot,
  Colon,
  Assign,
  Plus,
  Minus,
  Star,
  Slash,
  Percent,
  Bang,
  EqEq,
  NotEq,
  Lt,
  Le,
  Gt,
  Ge,
  AndAnd,
  OrOr,
};

const char* tok_name(Tok kind);

struct Token {
  Tok kind;
  std::string text;     // identifier name, decoded string literal, or lexeme
  std::int64_t value;   // integer / char literal value
  SourceSpan span;
};

// Splits source text into tokens.  Comments and whitespace are dropped; the
// result has no end-of-input marker.  Throws SketchError(Lex) on characters
// outside the grammar or unterminated comments and literals.
std::vector<Token> tokenize(std::string_view source, const std::string& file);

}  // namespace oosk

#endif  // OOSK_LEXER_HPP_
