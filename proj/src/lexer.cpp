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

#include "oosk/lexer.hpp"

#include <cctype>
#include <limits>
#include <unordered_map>

namespace oosk {

const char* tok_name(Tok kind) {
  switch (kind) {
    case Tok::Ident: return "identifier";
    case Tok::IntLit: return "integer literal";
    case Tok::CharLit: return "char literal";
    case Tok::StringLit: return "string literal";
    case Tok::KwClass: return "'class'";
    case Tok::KwInterface: return "'interface'";
    case Tok::KwExtends: return "'extends'";
    case Tok::KwImplements: return "'implements'";
    case Tok::KwNew: return "'new'";
    case Tok::KwReturn: return "'return'";
    case Tok::KwIf: return "'if'";
    case Tok::KwElse: return "'else'";
    case Tok::KwWhile: return "'while'";
    case Tok::KwAssert: return "'assert'";
    case Tok::KwThis: return "'this'";
    case Tok::KwSuper: return "'super'";
    case Tok::KwNull: return "'null'";
    case Tok::KwTrue: return "'true'";
    case Tok::KwFalse: return "'false'";
    case Tok::KwPublic: return "'public'";
    case Tok::KwPrivate: return "'private'";
    case Tok::KwProtected: return "'protected'";
    case Tok::KwStatic: return "'static'";
    case Tok::KwFinal: return "'final'";
    case Tok::KwAbstract: return "'abstract'";
    case Tok::KwMinrepeat: return "'minrepeat'";
    case Tok::KwHarness: return "'harness'";
    case Tok::KwGenerator: return "'generator'";
    case Tok::Hole: return "'?" "?'";
    case Tok::GenOpen: return "'{|'";
    case Tok::GenClose: return "'|}'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Semi: return "';'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::Colon: return "':'";
    case Tok::Assign: return "'='";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::Percent: return "'%'";
    case Tok::Bang: return "'!'";
    case Tok::EqEq: return "'=='";
    case Tok::NotEq: return "'!='";
    case Tok::Lt: return "'<'";
    case Tok::Le: return "'<='";
    case Tok::Gt: return "'>'";
    case Tok::Ge: return "'>='";
    case Tok::AndAnd: return "'&&'";
    case Tok::OrOr: return "'||'";
  }
  return "token";
}

namespace {

const std::unordered_map<std::string_view, Tok>& keywords() {
  static const std::unordered_map<std::string_view, Tok> table = {
      {"class", Tok::KwClass},         {"interface", Tok::KwInterface},
      {"extends", Tok::KwExtends},     {"implements", Tok::KwImplements},
      {"new", Tok::KwNew},             {"return", Tok::KwReturn},
      {"if", Tok::KwIf},               {"else", Tok::KwElse},
      {"while", Tok::KwWhile},         {"assert", Tok::KwAssert},
      {"this", Tok::KwThis},           {"super", Tok::KwSuper},
      {"null", Tok::KwNull},           {"true", Tok::KwTrue},
      {"false", Tok::KwFalse},         {"public", Tok::KwPublic},
      {"private", Tok::KwPrivate},     {"protected", Tok::KwProtected},
      {"static", Tok::KwStatic},       {"final", Tok::KwFinal},
      {"abstract", Tok::KwAbstract},   {"minrepeat", Tok::KwMinrepeat},
      {"harness", Tok::KwHarness},     {"generator", Tok::KwGenerator},
  };
  return table;
}

class Lexer {
 public:
  Lexer(std::string_view src, const std::string& file) : src_(src), file_(file) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_trivia();
      if (pos_ >= src_.size()) break;
      out.push_back(next());
    }
    return out;
  }

 private:
  char peek(size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void advance() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
      ++col_;
    }
  }

  SourceSpan here() const { return SourceSpan{file_, line_, col_, 0}; }

  void skip_trivia() {
    while (pos_ < src_.size()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f') {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (pos_ < src_.size() && peek() != '\n') advance();
      } else if (c == '/' && peek(1) == '*') {
        SourceSpan start = here();
        advance();
        advance();
        while (!(peek() == '*' && peek(1) == '/')) {
          if (pos_ >= src_.size()) fail(ErrorKind::Lex, start, "unterminated comment");
          advance();
        }
        advance();
        advance();
      } else {
        return;
      }
    }
  }

  Token make(Tok kind, SourceSpan start, std::string text, std::int64_t value = 0) {
    start.length = col_ - start.col;
    if (start.line != line_ || start.length < 0) start.length = static_cast<int>(text.size());
    return Token{kind, std::move(text), value, std::move(start)};
  }

  Token punct(Tok kind, int width, SourceSpan start) {
    std::string text(src_.substr(pos_, width));
    for (int i = 0; i < width; ++i) advance();
    return make(kind, std::move(start), std::move(text));
  }

  int read_escape(const SourceSpan& start) {
    advance();  // backslash
    if (pos_ >= src_.size()) fail(ErrorKind::Lex, start, "unterminated escape");
    char e = peek();
    advance();
    switch (e) {
      case 'n': return '\n';
      case 't': return '\t';
      case 'r': return '\r';
      case '0': return 0;
      case '\\': return '\\';
      case '\'': return '\'';
      case '"': return '"';
      default: fail(ErrorKind::Lex, start, std::string("unknown escape '\\") + e + "'");
    }
  }

  // Decodes one UTF-8 code point at the cursor.
  int read_code_point(const SourceSpan& start) {
    unsigned char c = static_cast<unsigned char>(peek());
    int extra = 0;
    int cp = c;
    if (c >= 0xF0) {
      extra = 3;
      cp = c & 0x07;
    } else if (c >= 0xE0) {
      extra = 2;
      cp = c & 0x0F;
    } else if (c >= 0xC0) {
      extra = 1;
      cp = c & 0x1F;
    } else if (c >= 0x80) {
      fail(ErrorKind::Lex, start, "invalid UTF-8 sequence");
    }
    advance();
    for (int i = 0; i < extra; ++i) {
      unsigned char cc = static_cast<unsigned char>(peek());
      if ((cc & 0xC0) != 0x80) fail(ErrorKind::Lex, start, "invalid UTF-8 sequence");
      cp = (cp << 6) | (cc & 0x3F);
      advance();
    }
    return cp;
  }

  static void append_utf8(std::string& out, int cp) {
    if (cp < 0x80) {
      out += static_cast<char>(cp);
    } else if (cp < 0x800) {
      out += static_cast<char>(0xC0 | (cp >> 6));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
      out += static_cast<char>(0xE0 | (cp >> 12));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (cp >> 18));
      out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    }
  }

  Token next() {
    SourceSpan start = here();
    char c = peek();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$') {
      size_t begin = pos_;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '$') {
        advance();
      }
      std::string word(src_.substr(begin, pos_ - begin));
      auto kw = keywords().find(word);
      return make(kw == keywords().end() ? Tok::Ident : kw->second, start, word);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t begin = pos_;
      std::int64_t value = 0;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        int d = peek() - '0';
        if (value > (std::numeric_limits<std::int64_t>::max() - d) / 10) {
          fail(ErrorKind::Lex, start, "integer literal out of range");
        }
        value = value * 10 + d;
        advance();
      }
      if (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_') {
        fail(ErrorKind::Lex, here(), "malformed integer literal");
      }
      return make(Tok::IntLit, start, std::string(src_.substr(begin, pos_ - begin)), value);
    }
    if (c == '"') {
      advance();
      std::string text;
      while (peek() != '"') {
        if (pos_ >= src_.size() || peek() == '\n') {
          fail(ErrorKind::Lex, start, "unterminated string literal");
        }
        if (peek() == '\\') {
          append_utf8(text, read_escape(start));
        } else {
          append_utf8(text, read_code_point(start));
        }
      }
      advance();
      return make(Tok::StringLit, start, std::move(text));
    }
    if (c == '\'') {
      advance();
      if (pos_ >= src_.size() || peek() == '\n' || peek() == '\'') {
        fail(ErrorKind::Lex, start, "malformed char literal");
      }
      int cp = peek() == '\\' ? read_escape(start) : read_code_point(start);
      if (peek() != '\'') fail(ErrorKind::Lex, start, "unterminated char literal");
      advance();
      std::string text;
      append_utf8(text, cp);
      return make(Tok::CharLit, start, std::move(text), cp);
    }
    char n = peek(1);
    switch (c) {
      case '?':
        if (n == '?') return punct(Tok::Hole, 2, start);
        break;
      case '{':
        if (n == '|') return punct(Tok::GenOpen, 2, start);
        return punct(Tok::LBrace, 1, start);
      case '|':
        if (n == '}') return punct(Tok::GenClose, 2, start);
        if (n == '|') return punct(Tok::OrOr, 2, start);
        break;
      case '&':
        if (n == '&') return punct(Tok::AndAnd, 2, start);
        break;
      case '}': return punct(Tok::RBrace, 1, start);
      case '(': return punct(Tok::LParen, 1, start);
      case ')': return punct(Tok::RParen, 1, start);
      case ';': return punct(Tok::Semi, 1, start);
      case ',': return punct(Tok::Comma, 1, start);
      case '.': return punct(Tok::Dot, 1, start);
      case ':': return punct(Tok::Colon, 1, start);
      case '+': return punct(Tok::Plus, 1, start);
      case '-': return punct(Tok::Minus, 1, start);
      case '*': return punct(Tok::Star, 1, start);
      case '/': return punct(Tok::Slash, 1, start);
      case '%': return punct(Tok::Percent, 1, start);
      case '=':
        return n == '=' ? punct(Tok::EqEq, 2, start) : punct(Tok::Assign, 1, start);
      case '!':
        return n == '=' ? punct(Tok::NotEq, 2, start) : punct(Tok::Bang, 1, start);
      case '<':
        return n == '=' ? punct(Tok::Le, 2, start) : punct(Tok::Lt, 1, start);
      case '>':
        return n == '=' ? punct(Tok::Ge, 2, start) : punct(Tok::Gt, 1, start);
      default:
        break;
    }
    std::string shown = std::isprint(static_cast<unsigned char>(c))
                            ? std::string(1, c)
                            : "\\x" + std::to_string(static_cast<unsigned char>(c));
    fail(ErrorKind::Lex, start, "unexpected character '" + shown + "'");
  }

  std::string_view src_;
  std::string file_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

std::vector<Token> tokenize(std::string_view source, const std::string& file) {
  return Lexer(source, file).run();
}

}  // namespace oosk
