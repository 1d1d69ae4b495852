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

#include "oosk/parser.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace oosk {

namespace {

class Parser {
 public:
  Parser(const std::vector<Token>& toks, std::string file)
      : toks_(toks), file_(std::move(file)) {}

  CompilationUnit unit() {
    CompilationUnit u;
    u.file = file_;
    while (!at_end()) {
      if (accept(Tok::Semi)) continue;
      unsigned mods = modifiers();
      u.types.push_back(type_decl(mods));
    }
    return u;
  }

 private:
  // --- token helpers -------------------------------------------------------

  bool at_end() const { return pos_ >= toks_.size(); }
  const Token* peek_tok(size_t ahead = 0) const {
    return pos_ + ahead < toks_.size() ? &toks_[pos_ + ahead] : nullptr;
  }
  bool check(Tok kind, size_t ahead = 0) const {
    const Token* t = peek_tok(ahead);
    return t && t->kind == kind;
  }
  bool accept(Tok kind) {
    if (!check(kind)) return false;
    ++pos_;
    return true;
  }
  SourceSpan span() const {
    if (!at_end()) return toks_[pos_].span;
    if (toks_.empty()) return SourceSpan{file_, 1, 1, 0};
    SourceSpan s = toks_.back().span;
    s.col += s.length;
    s.length = 0;
    return s;
  }
  [[noreturn]] void error(const std::string& expected) const {
    std::string found = at_end() ? "end of input"
                                 : std::string(tok_name(toks_[pos_].kind)) +
                                       " '" + toks_[pos_].text + "'";
    fail(ErrorKind::Parse, span(), "expected " + expected + ", found " + found);
  }
  const Token& expect(Tok kind) {
    if (!check(kind)) error(tok_name(kind));
    return toks_[pos_++];
  }
  std::string ident() { return expect(Tok::Ident).text; }

  // --- declarations --------------------------------------------------------

  unsigned modifiers() {
    unsigned mods = 0;
    while (!at_end()) {
      switch (toks_[pos_].kind) {
        case Tok::KwPublic: mods |= kModPublic; break;
        case Tok::KwPrivate: mods |= kModPrivate; break;
        case Tok::KwProtected: mods |= kModProtected; break;
        case Tok::KwStatic: mods |= kModStatic; break;
        case Tok::KwFinal: mods |= kModFinal; break;
        case Tok::KwAbstract: mods |= kModAbstract; break;
        case Tok::KwGenerator: mods |= kModGenerator; break;
        case Tok::KwHarness: mods |= kModHarness; break;
        default: return mods;
      }
      ++pos_;
    }
    return mods;
  }

  ClassDecl type_decl(unsigned mods) {
    ClassDecl c;
    c.mods = mods;
    c.span = span();
    if (accept(Tok::KwInterface)) {
      c.is_interface = true;
    } else if (!accept(Tok::KwClass)) {
      error("'class' or 'interface'");
    }
    c.name = ident();
    skip_type_params();
    if (c.is_interface) {
      if (accept(Tok::KwExtends)) {
        do c.interfaces.push_back(type()); while (accept(Tok::Comma));
      }
    } else {
      if (accept(Tok::KwExtends)) {
        c.has_super = true;
        c.super = type();
      }
      if (accept(Tok::KwImplements)) {
        do c.interfaces.push_back(type()); while (accept(Tok::Comma));
      }
    }
    class_body(c);
    return c;
  }

  // Class-level type parameters carry no meaning after erasure.
  void skip_type_params() {
    if (!accept(Tok::Lt)) return;
    do {
      ident();
      if (accept(Tok::KwExtends)) type();
    } while (accept(Tok::Comma));
    expect(Tok::Gt);
  }

  void class_body(ClassDecl& c) {
    expect(Tok::LBrace);
    while (!accept(Tok::RBrace)) {
      if (at_end()) error("'}'");
      if (accept(Tok::Semi)) continue;
      member(c);
    }
  }

  void member(ClassDecl& c) {
    SourceSpan start = span();
    unsigned mods = modifiers();
    if (check(Tok::KwClass) || check(Tok::KwInterface)) {
      Member m;
      m.kind = MemberKind::Type;
      m.type.push_back(type_decl(mods));
      c.members.push_back(std::move(m));
      return;
    }
    if (check(Tok::Ident) && toks_[pos_].text == c.name && check(Tok::LParen, 1)) {
      Member m;
      m.kind = MemberKind::Method;
      m.method.mods = mods;
      m.method.is_ctor = true;
      m.method.name = ident();
      m.method.span = start;
      m.method.params = params();
      m.method.has_body = true;
      m.method.body = block_items();
      c.members.push_back(std::move(m));
      return;
    }
    TypeRef t = type();
    SourceSpan name_span = span();
    std::string name = ident();
    if (check(Tok::LParen)) {
      Member m;
      m.kind = MemberKind::Method;
      m.method.mods = mods;
      m.method.ret = std::move(t);
      m.method.name = std::move(name);
      m.method.span = start;
      m.method.params = params();
      if (accept(Tok::Semi)) {
        m.method.has_body = false;
      } else {
        m.method.has_body = true;
        m.method.body = block_items();
      }
      c.members.push_back(std::move(m));
      return;
    }
    while (true) {
      Member m;
      m.kind = MemberKind::Field;
      m.field.mods = mods;
      m.field.type = t;
      m.field.name = name;
      m.field.span = name_span;
      if (accept(Tok::Assign)) m.field.init.push_back(expr());
      c.members.push_back(std::move(m));
      if (!accept(Tok::Comma)) break;
      name_span = span();
      name = ident();
    }
    expect(Tok::Semi);
  }

  std::vector<Param> params() {
    std::vector<Param> out;
    expect(Tok::LParen);
    if (accept(Tok::RParen)) return out;
    do {
      modifiers();  // 'final' on parameters
      Param p;
      p.span = span();
      p.type = type();
      p.name = ident();
      out.push_back(std::move(p));
    } while (accept(Tok::Comma));
    expect(Tok::RParen);
    return out;
  }

  TypeRef type() {
    TypeRef t;
    t.span = span();
    t.name = ident();
    while (check(Tok::Dot) && check(Tok::Ident, 1)) {
      ++pos_;
      t.name += "." + ident();
    }
    if (accept(Tok::Lt)) {
      do t.args.push_back(type()); while (accept(Tok::Comma));
      expect(Tok::Gt);
    }
    return t;
  }

  // Ident ('.' Ident)* ['<' ... '>'] Ident, scanned without consuming.
  bool looks_like_decl() const {
    size_t i = pos_;
    auto is = [&](size_t k, Tok kind) { return k < toks_.size() && toks_[k].kind == kind; };
    if (!is(i, Tok::Ident)) return false;
    ++i;
    while (is(i, Tok::Dot) && is(i + 1, Tok::Ident)) i += 2;
    if (is(i, Tok::Lt)) {
      int depth = 0;
      while (i < toks_.size()) {
        Tok k = toks_[i].kind;
        if (k == Tok::Lt) {
          ++depth;
        } else if (k == Tok::Gt) {
          if (--depth == 0) {
            ++i;
            break;
          }
        } else if (k != Tok::Ident && k != Tok::Dot && k != Tok::Comma) {
          return false;
        }
        ++i;
      }
      if (depth != 0) return false;
    }
    return is(i, Tok::Ident);
  }

  // --- statements ----------------------------------------------------------

  std::vector<Stmt> block_items() {
    expect(Tok::LBrace);
    std::vector<Stmt> out;
    while (!accept(Tok::RBrace)) {
      if (at_end()) error("'}'");
      statement_into(out);
    }
    return out;
  }

  void statement_into(std::vector<Stmt>& out) {
    if (check(Tok::KwFinal) || looks_like_decl()) {
      modifiers();
      TypeRef t = type();
      do {
        Stmt s;
        s.kind = StmtKind::LocalDecl;
        s.span = span();
        s.type = t;
        s.name = ident();
        if (accept(Tok::Assign)) s.exprs.push_back(expr());
        out.push_back(std::move(s));
      } while (accept(Tok::Comma));
      expect(Tok::Semi);
      return;
    }
    out.push_back(statement());
  }

  Stmt single_statement() {
    std::vector<Stmt> items;
    statement_into(items);
    if (items.size() == 1) return std::move(items.front());
    Stmt block;
    block.kind = StmtKind::Block;
    block.span = items.front().span;
    block.body = std::move(items);
    return block;
  }

  Stmt statement() {
    Stmt s;
    s.span = span();
    if (check(Tok::LBrace)) {
      s.kind = StmtKind::Block;
      s.body = block_items();
    } else if (accept(Tok::Semi)) {
      s.kind = StmtKind::Empty;
    } else if (accept(Tok::KwIf)) {
      s.kind = StmtKind::If;
      expect(Tok::LParen);
      s.exprs.push_back(expr());
      expect(Tok::RParen);
      s.body.push_back(single_statement());
      if (accept(Tok::KwElse)) s.body.push_back(single_statement());
    } else if (accept(Tok::KwWhile)) {
      s.kind = StmtKind::While;
      expect(Tok::LParen);
      s.exprs.push_back(expr());
      expect(Tok::RParen);
      s.body.push_back(single_statement());
    } else if (accept(Tok::KwReturn)) {
      s.kind = StmtKind::Return;
      if (!check(Tok::Semi)) s.exprs.push_back(expr());
      expect(Tok::Semi);
    } else if (accept(Tok::KwAssert)) {
      s.kind = StmtKind::Assert;
      s.exprs.push_back(expr());
      if (accept(Tok::Colon)) expr();  // message is not part of the semantics
      expect(Tok::Semi);
    } else if (accept(Tok::KwMinrepeat)) {
      s.kind = StmtKind::MinRepeat;
      s.body = block_items();
    } else if (check(Tok::KwSuper) && check(Tok::LParen, 1)) {
      ++pos_;
      s.kind = StmtKind::ExprStmt;
      Expr call;
      call.kind = ExprKind::Call;
      call.span = s.span;
      call.text = "super";
      call.kids = args();
      s.exprs.push_back(std::move(call));
      expect(Tok::Semi);
    } else {
      s.kind = StmtKind::ExprStmt;
      s.exprs.push_back(expr());
      expect(Tok::Semi);
    }
    return s;
  }

  // --- expressions ---------------------------------------------------------

  Expr expr() {
    Expr lhs = binary(0);
    if (check(Tok::Assign)) {
      SourceSpan at = span();
      ++pos_;
      if (lhs.kind != ExprKind::Name && lhs.kind != ExprKind::Field) {
        fail(ErrorKind::Parse, at, "left side of assignment is not assignable");
      }
      Expr a;
      a.kind = ExprKind::Assign;
      a.span = lhs.span;
      a.kids.push_back(std::move(lhs));
      a.kids.push_back(expr());
      return a;
    }
    return lhs;
  }

  static int precedence(Tok k) {
    switch (k) {
      case Tok::OrOr: return 1;
      case Tok::AndAnd: return 2;
      case Tok::EqEq:
      case Tok::NotEq: return 3;
      case Tok::Lt:
      case Tok::Le:
      case Tok::Gt:
      case Tok::Ge: return 4;
      case Tok::Plus:
      case Tok::Minus: return 5;
      case Tok::Star:
      case Tok::Slash:
      case Tok::Percent: return 6;
      default: return -1;
    }
  }

  // Precedence climbing; every binary operator is left-associative.
  Expr binary(int min_prec) {
    Expr lhs = unary();
    while (!at_end()) {
      int prec = precedence(toks_[pos_].kind);
      if (prec < 0 || prec < min_prec) break;
      const Token& op = toks_[pos_++];
      Expr rhs = binary(prec + 1);
      Expr b;
      b.kind = ExprKind::Binary;
      b.span = lhs.span;
      b.text = op.text;
      b.kids.push_back(std::move(lhs));
      b.kids.push_back(std::move(rhs));
      lhs = std::move(b);
    }
    return lhs;
  }

  Expr unary() {
    if (check(Tok::Bang) || check(Tok::Minus)) {
      Expr u;
      u.kind = ExprKind::Unary;
      u.span = span();
      u.text = toks_[pos_++].text;
      u.kids.push_back(unary());
      return u;
    }
    return postfix(primary());
  }

  Expr postfix(Expr e) {
    while (check(Tok::Dot)) {
      ++pos_;
      std::string name = ident();
      if (check(Tok::LParen)) {
        Expr call;
        call.kind = ExprKind::Call;
        call.span = e.span;
        call.text = std::move(name);
        call.has_receiver = true;
        call.kids.push_back(std::move(e));
        for (auto& a : args()) call.kids.push_back(std::move(a));
        e = std::move(call);
      } else {
        Expr f;
        f.kind = ExprKind::Field;
        f.span = e.span;
        f.text = std::move(name);
        f.kids.push_back(std::move(e));
        e = std::move(f);
      }
    }
    return e;
  }

  std::vector<Expr> args() {
    std::vector<Expr> out;
    expect(Tok::LParen);
    if (accept(Tok::RParen)) return out;
    do out.push_back(expr()); while (accept(Tok::Comma));
    expect(Tok::RParen);
    return out;
  }

  Expr primary() {
    Expr e;
    e.span = span();
    if (at_end()) error("expression");
    const Token& t = toks_[pos_];
    switch (t.kind) {
      case Tok::IntLit:
        ++pos_;
        e.kind = ExprKind::IntLit;
        e.value = t.value;
        return e;
      case Tok::CharLit:
        ++pos_;
        e.kind = ExprKind::CharLit;
        e.value = t.value;
        e.text = t.text;
        return e;
      case Tok::StringLit:
        ++pos_;
        e.kind = ExprKind::StringLit;
        e.text = t.text;
        return e;
      case Tok::KwTrue:
      case Tok::KwFalse:
        ++pos_;
        e.kind = ExprKind::BoolLit;
        e.value = t.kind == Tok::KwTrue ? 1 : 0;
        return e;
      case Tok::KwNull:
        ++pos_;
        e.kind = ExprKind::Null;
        return e;
      case Tok::KwThis:
        ++pos_;
        e.kind = ExprKind::This;
        return e;
      case Tok::Hole:
        ++pos_;
        e.kind = ExprKind::Hole;
        return e;
      case Tok::GenOpen:
        ++pos_;
        e.kind = ExprKind::Choice;
        do e.kids.push_back(expr()); while (accept(Tok::Comma));
        expect(Tok::GenClose);
        return e;
      case Tok::LParen: {
        ++pos_;
        Expr inner = expr();
        expect(Tok::RParen);
        return inner;
      }
      case Tok::KwNew: {
        ++pos_;
        e.kind = ExprKind::New;
        e.type = type();
        e.kids = args();
        if (check(Tok::LBrace)) {
          ClassDecl anon;
          anon.is_anonymous = true;
          anon.name = e.type.name;
          anon.span = span();
          class_body(anon);
          e.has_body = true;
          e.anon.push_back(std::move(anon));
        }
        return e;
      }
      case Tok::Ident: {
        ++pos_;
        if (check(Tok::LParen)) {
          e.kind = ExprKind::Call;
          e.text = t.text;
          e.kids = args();
          return e;
        }
        e.kind = ExprKind::Name;
        e.text = t.text;
        return e;
      }
      default:
        error("expression");
    }
  }

  const std::vector<Token>& toks_;
  std::string file_;
  size_t pos_ = 0;
};

}  // namespace

CompilationUnit parse_unit(const std::vector<Token>& tokens, const std::string& file) {
  return Parser(tokens, file).unit();
}

SketchAst parse_sources(const std::vector<SourceFile>& files) {
  SketchAst ast;
  std::map<std::string, SourceSpan> seen;
  for (const auto& f : files) {
    CompilationUnit u = parse_unit(tokenize(f.text, f.path), f.path);
    for (const auto& c : u.types) {
      auto [it, inserted] = seen.emplace(c.name, c.span);
      if (!inserted) {
        fail(ErrorKind::DuplicateType, c.span,
             "duplicate type '" + c.name + "' (first declared at " + it->second.str() + ")");
      }
    }
    ast.units.push_back(std::move(u));
  }
  return ast;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Parse, SourceSpan{path, 1, 1, 0}, "cannot read file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

SketchAst parse_program(const std::vector<std::string>& paths) {
  std::vector<SourceFile> files;
  files.reserve(paths.size());
  for (const auto& p : paths) files.push_back(SourceFile{p, read_file(p)});
  return parse_sources(files);
}

}  // namespace oosk
