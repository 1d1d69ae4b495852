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

#include "oosk/unparse.hpp"

#include <sstream>

namespace oosk {

namespace {

constexpr int kPrecAssign = 0;
constexpr int kPrecUnary = 7;
constexpr int kPrecPostfix = 8;
constexpr int kPrecPrimary = 9;

int binary_prec(const std::string& op) {
  if (op == "||") return 1;
  if (op == "&&") return 2;
  if (op == "==" || op == "!=") return 3;
  if (op == "<" || op == "<=" || op == ">" || op == ">=") return 4;
  if (op == "+" || op == "-") return 5;
  return 6;
}

int prec_of(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Assign: return kPrecAssign;
    case ExprKind::Binary: return binary_prec(e.text);
    case ExprKind::Unary: return kPrecUnary;
    case ExprKind::IntLit: return e.value < 0 ? kPrecUnary : kPrecPrimary;
    case ExprKind::Field:
    case ExprKind::Call: return kPrecPostfix;
    default: return kPrecPrimary;
  }
}

std::string escape_char(std::int64_t cp, char quote) {
  switch (cp) {
    case '\n': return "\\n";
    case '\t': return "\\t";
    case '\r': return "\\r";
    case 0: return "\\0";
    case '\\': return "\\\\";
    default: break;
  }
  if (cp == quote) return std::string("\\") + quote;
  std::string out;
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
  return out;
}

std::string escape_string(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      case '\0': out += "\\0"; break;
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      default: out += c;
    }
  }
  return out;
}

class Printer {
 public:
  explicit Printer(const UnparseOptions& opts) : opts_(opts) {}

  std::string take() { return out_.str(); }
  void blank_line() { out_ << '\n'; }

  void type(const TypeRef& t) {
    out_ << t.name;
    if (!t.args.empty()) {
      out_ << '<';
      for (size_t i = 0; i < t.args.size(); ++i) {
        if (i) out_ << ", ";
        type(t.args[i]);
      }
      out_ << '>';
    }
  }

  void mods(unsigned m) {
    if (m & kModPublic) out_ << "public ";
    if (m & kModPrivate) out_ << "private ";
    if (m & kModProtected) out_ << "protected ";
    if (m & kModAbstract) out_ << "abstract ";
    if (opts_.sketch_modifiers && (m & kModGenerator)) out_ << "generator ";
    if (opts_.sketch_modifiers && (m & kModHarness)) out_ << "harness ";
    if (m & kModStatic) out_ << "static ";
    if (m & kModFinal) out_ << "final ";
  }

  void indent(int level) {
    for (int i = 0; i < level; ++i) out_ << "    ";
  }

  void cls(const ClassDecl& c, int level) {
    indent(level);
    mods(c.mods);
    out_ << (c.is_interface ? "interface " : "class ") << c.name;
    if (c.has_super && c.super.name != "Object") {
      out_ << " extends ";
      type(c.super);
    }
    if (!c.interfaces.empty()) {
      out_ << (c.is_interface ? " extends " : " implements ");
      for (size_t i = 0; i < c.interfaces.size(); ++i) {
        if (i) out_ << ", ";
        type(c.interfaces[i]);
      }
    }
    out_ << ' ';
    class_body(c, level);
    out_ << '\n';
  }

  void class_body(const ClassDecl& c, int level) {
    if (c.members.empty()) {
      out_ << "{ }";
      return;
    }
    out_ << "{\n";
    for (const auto& m : c.members) member(m, c, level + 1);
    indent(level);
    out_ << '}';
  }

  void member(const Member& m, const ClassDecl& owner, int level) {
    switch (m.kind) {
      case MemberKind::Type:
        cls(m.type.front(), level);
        return;
      case MemberKind::Field:
        indent(level);
        mods(m.field.mods);
        type(m.field.type);
        out_ << ' ' << m.field.name;
        if (!m.field.init.empty()) {
          out_ << " = ";
          expr(m.field.init.front(), level);
        }
        out_ << ";\n";
        return;
      case MemberKind::Method: {
        const MethodDecl& md = m.method;
        indent(level);
        mods(md.mods);
        if (md.is_ctor) {
          out_ << owner.name;
        } else {
          type(md.ret);
          out_ << ' ' << md.name;
        }
        out_ << '(';
        for (size_t i = 0; i < md.params.size(); ++i) {
          if (i) out_ << ", ";
          type(md.params[i].type);
          out_ << ' ' << md.params[i].name;
        }
        out_ << ')';
        if (!md.has_body) {
          out_ << ";\n";
          return;
        }
        out_ << ' ';
        block(md.body, level);
        out_ << '\n';
        return;
      }
    }
  }

  // Prints `{ ... }` starting at the current column; the closing brace is
  // indented to `level`.
  void block(const std::vector<Stmt>& items, int level) {
    if (items.empty()) {
      out_ << "{ }";
      return;
    }
    out_ << "{\n";
    for (const auto& s : items) stmt(s, level + 1);
    indent(level);
    out_ << '}';
  }

  // Body of if/while: blocks stay on the header line.
  void nested(const Stmt& s, int level) {
    if (s.kind == StmtKind::Block) {
      out_ << ' ';
      block(s.body, level);
      out_ << '\n';
    } else {
      out_ << '\n';
      stmt(s, level + 1);
    }
  }

  void stmt(const Stmt& s, int level) {
    indent(level);
    stmt_inline(s, level);
  }

  void stmt_inline(const Stmt& s, int level) {
    switch (s.kind) {
      case StmtKind::Block:
        block(s.body, level);
        out_ << '\n';
        return;
      case StmtKind::Empty:
        out_ << ";\n";
        return;
      case StmtKind::LocalDecl:
        type(s.type);
        out_ << ' ' << s.name;
        if (!s.exprs.empty()) {
          out_ << " = ";
          expr(s.exprs.front(), level);
        }
        out_ << ";\n";
        return;
      case StmtKind::ExprStmt:
        expr(s.exprs.front(), level);
        out_ << ";\n";
        return;
      case StmtKind::Return:
        out_ << "return";
        if (!s.exprs.empty()) {
          out_ << ' ';
          expr(s.exprs.front(), level);
        }
        out_ << ";\n";
        return;
      case StmtKind::Assert:
        out_ << "assert ";
        expr(s.exprs.front(), level);
        out_ << ";\n";
        return;
      case StmtKind::MinRepeat:
        out_ << "minrepeat ";
        block(s.body, level);
        out_ << '\n';
        return;
      case StmtKind::While:
        out_ << "while (";
        expr(s.exprs.front(), level);
        out_ << ')';
        nested(s.body.front(), level);
        return;
      case StmtKind::If: {
        out_ << "if (";
        expr(s.exprs.front(), level);
        out_ << ')';
        const Stmt& then = s.body.front();
        bool has_else = s.body.size() > 1;
        if (then.kind == StmtKind::Block && has_else) {
          out_ << ' ';
          block(then.body, level);
          out_ << " else";
        } else {
          nested(then, level);
          if (has_else) {
            indent(level);
            out_ << "else";
          }
        }
        if (has_else) {
          const Stmt& els = s.body[1];
          if (els.kind == StmtKind::If) {
            out_ << ' ';
            stmt_inline(els, level);
          } else {
            nested(els, level);
          }
        }
        return;
      }
    }
  }

  void sub(const Expr& e, int min_prec, int level) {
    bool parens = prec_of(e) < min_prec;
    if (parens) out_ << '(';
    expr(e, level);
    if (parens) out_ << ')';
  }

  void args(const Expr& e, int level) {
    out_ << '(';
    for (size_t i = 0; i < e.arg_count(); ++i) {
      if (i) out_ << ", ";
      expr(e.arg(i), level);
    }
    out_ << ')';
  }

  void expr(const Expr& e, int level) {
    switch (e.kind) {
      case ExprKind::IntLit: out_ << e.value; return;
      case ExprKind::BoolLit: out_ << (e.value ? "true" : "false"); return;
      case ExprKind::CharLit: out_ << '\'' << escape_char(e.value, '\'') << '\''; return;
      case ExprKind::StringLit: out_ << '"' << escape_string(e.text) << '"'; return;
      case ExprKind::Null: out_ << "null"; return;
      case ExprKind::This: out_ << "this"; return;
      case ExprKind::Name: out_ << e.text; return;
      case ExprKind::Hole: out_ << "??"; return;
      case ExprKind::Field:
        sub(e.kids.front(), kPrecPostfix, level);
        out_ << '.' << e.text;
        return;
      case ExprKind::Call:
        if (e.has_receiver) {
          sub(e.receiver(), kPrecPostfix, level);
          out_ << '.';
        }
        out_ << e.text;
        args(e, level);
        return;
      case ExprKind::New:
        out_ << "new ";
        type(e.type);
        args(e, level);
        if (e.has_body) {
          out_ << ' ';
          class_body(e.anon.front(), level);
        }
        return;
      case ExprKind::Unary:
        out_ << e.text;
        sub(e.kids.front(), kPrecUnary, level);
        return;
      case ExprKind::Binary: {
        int p = binary_prec(e.text);
        sub(e.kids[0], p, level);
        out_ << ' ' << e.text << ' ';
        sub(e.kids[1], p + 1, level);
        return;
      }
      case ExprKind::Assign:
        sub(e.kids[0], kPrecPostfix, level);
        out_ << " = ";
        expr(e.kids[1], level);
        return;
      case ExprKind::Choice:
        out_ << "{| ";
        for (size_t i = 0; i < e.kids.size(); ++i) {
          if (i) out_ << ", ";
          expr(e.kids[i], level);
        }
        out_ << " |}";
        return;
    }
  }

 private:
  UnparseOptions opts_;
  std::ostringstream out_;
};

}  // namespace

std::string unparse_unit(const CompilationUnit& unit, const UnparseOptions& opts) {
  Printer p(opts);
  for (size_t i = 0; i < unit.types.size(); ++i) {
    if (i) p.blank_line();
    p.cls(unit.types[i], 0);
  }
  return p.take();
}

std::string unparse_class(const ClassDecl& c, const UnparseOptions& opts) {
  Printer p(opts);
  p.cls(c, 0);
  return p.take();
}

std::string unparse_expr(const Expr& e) {
  Printer p(UnparseOptions{});
  p.expr(e, 0);
  return p.take();
}

std::string unparse_stmt(const Stmt& s) {
  Printer p(UnparseOptions{});
  p.stmt(s, 0);
  return p.take();
}

std::map<std::string, std::string> unparse(const SketchAst& ast, const UnparseOptions& opts) {
  std::map<std::string, std::string> out;
  for (const auto& u : ast.units) out[u.file] = unparse_unit(u, opts);
  return out;
}

// --- structural equality ---------------------------------------------------

bool same_structure(const Expr& a, const Expr& b);

namespace {

bool same_members(const std::vector<Member>& a, const std::vector<Member>& b);

bool same_stmts(const std::vector<Stmt>& a, const std::vector<Stmt>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!same_structure(a[i], b[i])) return false;
  return true;
}

bool same_exprs(const std::vector<Expr>& a, const std::vector<Expr>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!same_structure(a[i], b[i])) return false;
  return true;
}

bool same_members(const std::vector<Member>& a, const std::vector<Member>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    const Member& x = a[i];
    const Member& y = b[i];
    if (x.kind != y.kind) return false;
    switch (x.kind) {
      case MemberKind::Field:
        if (x.field.mods != y.field.mods || !(x.field.type == y.field.type) ||
            x.field.name != y.field.name || !same_exprs(x.field.init, y.field.init))
          return false;
        break;
      case MemberKind::Method: {
        const MethodDecl& p = x.method;
        const MethodDecl& q = y.method;
        if (p.mods != q.mods || p.is_ctor != q.is_ctor || p.name != q.name ||
            p.has_body != q.has_body || p.params.size() != q.params.size())
          return false;
        if (!p.is_ctor && !(p.ret == q.ret)) return false;
        for (size_t k = 0; k < p.params.size(); ++k)
          if (!(p.params[k].type == q.params[k].type) || p.params[k].name != q.params[k].name)
            return false;
        if (!same_stmts(p.body, q.body)) return false;
        break;
      }
      case MemberKind::Type:
        if (!same_structure(x.type.front(), y.type.front())) return false;
        break;
    }
  }
  return true;
}

}  // namespace

bool same_structure(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.has_receiver != b.has_receiver || a.has_body != b.has_body)
    return false;
  switch (a.kind) {
    case ExprKind::IntLit:
    case ExprKind::BoolLit:
    case ExprKind::CharLit:
      if (a.value != b.value) return false;
      break;
    case ExprKind::StringLit:
    case ExprKind::Name:
    case ExprKind::Field:
    case ExprKind::Call:
    case ExprKind::Unary:
    case ExprKind::Binary:
      if (a.text != b.text) return false;
      break;
    case ExprKind::New:
      if (!(a.type == b.type)) return false;
      break;
    default:
      break;
  }
  if (!same_exprs(a.kids, b.kids)) return false;
  if (a.has_body && !same_structure(a.anon.front(), b.anon.front())) return false;
  return true;
}

bool same_structure(const Stmt& a, const Stmt& b) {
  return a.kind == b.kind && a.name == b.name && a.type == b.type &&
         same_exprs(a.exprs, b.exprs) && same_stmts(a.body, b.body);
}

bool same_structure(const ClassDecl& a, const ClassDecl& b) {
  return a.mods == b.mods && a.is_interface == b.is_interface &&
         a.is_anonymous == b.is_anonymous && a.name == b.name &&
         a.has_super == b.has_super && (!a.has_super || a.super == b.super) &&
         a.interfaces == b.interfaces && same_members(a.members, b.members);
}

bool same_structure(const SketchAst& a, const SketchAst& b) {
  if (a.units.size() != b.units.size()) return false;
  for (size_t i = 0; i < a.units.size(); ++i) {
    const auto& x = a.units[i].types;
    const auto& y = b.units[i].types;
    if (x.size() != y.size()) return false;
    for (size_t k = 0; k < x.size(); ++k)
      if (!same_structure(x[k], y[k])) return false;
  }
  return true;
}

}  // namespace oosk
