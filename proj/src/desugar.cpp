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

#include "oosk/desugar.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "oosk/classtable.hpp"
#include "oosk/lexer.hpp"

namespace oosk {

std::string unknown_name(UnknownKind kind, int ordinal) {
  const char* tag = kind == UnknownKind::Hole ? "e_h" : kind == UnknownKind::Choice ? "e_c" : "e_r";
  return tag + std::to_string(ordinal);
}

std::string instance_name(const std::string& base, int iteration) {
  return base + "_" + std::to_string(iteration);
}

int bits_for(long long v) {
  int bits = 1;
  while (bits < 62 && (v >> bits) > 0) ++bits;
  return bits;
}

double UnknownRegistry::log2_space(const std::vector<int>& repeat_counts) const {
  auto copies = [&](int repeat) {
    if (repeat == 0) return 1.0;
    return static_cast<double>(repeat_counts.at(repeat - 1));
  };
  double total = 0;
  for (const auto& h : holes) total += copies(h.repeat) * (h.boolean ? 1 : h.bits);
  for (const auto& c : choices) total += copies(c.repeat) * std::log2(static_cast<double>(c.arity));
  return total;
}

namespace {

// Applies `fn` to every TypeRef in the program, including nested generic
// arguments' owners but not the arguments themselves.
template <typename F>
void for_each_typeref(SketchAst& ast, F&& fn) {
  struct V : AstVisitorBase {
    using AstVisitorBase::on_class;
    using AstVisitorBase::on_method;
    using AstVisitorBase::on_stmt;
    using AstVisitorBase::on_expr;
    F* f;
    void on_class(ClassDecl& c) {
      if (c.has_super) (*f)(c.super);
      for (auto& i : c.interfaces) (*f)(i);
      for (auto& m : c.members)
        if (m.kind == MemberKind::Field) (*f)(m.field.type);
    }
    void on_method(MethodDecl& m) {
      if (!m.is_ctor) (*f)(m.ret);
      for (auto& p : m.params) (*f)(p.type);
    }
    void on_stmt(Stmt& s) {
      if (s.kind == StmtKind::LocalDecl) (*f)(s.type);
    }
    void on_expr(Expr& e) {
      if (e.kind == ExprKind::New) (*f)(e.type);
    }
  } v;
  v.f = &fn;
  walk(ast, v);
}

void decode_code_points(const std::string& s, std::vector<long long>& out) {
  for (size_t i = 0; i < s.size();) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    int len = c < 0x80 ? 1 : (c >> 5) == 6 ? 2 : (c >> 4) == 14 ? 3 : 4;
    long long cp = len == 1 ? c : len == 2 ? (c & 0x1f) : len == 3 ? (c & 0x0f) : (c & 0x07);
    for (int k = 1; k < len && i + k < s.size(); ++k)
      cp = (cp << 6) | (static_cast<unsigned char>(s[i + k]) & 0x3f);
    out.push_back(cp);
    i += len;
  }
}

}  // namespace

// --- erase_sugar -----------------------------------------------------------------

void erase_sugar(SketchAst& ast) {
  for_each_typeref(ast, [](TypeRef& t) { t.args.clear(); });
  for_each_class(ast, [](ClassDecl& c) {
    if (!c.is_interface && !c.is_anonymous && !c.has_super) {
      c.has_super = true;
      c.super = TypeRef{"Object", {}, c.span};
    }
  });
}

// --- specialize_class_generators ------------------------------------------------

namespace {

// Renames every reference to `from` (types, constructor names, static
// receivers) inside one class copy.
void rename_self(ClassDecl& c, const std::string& from, const std::string& to) {
  SketchAst tmp;
  tmp.units.emplace_back();
  tmp.units[0].types.push_back(std::move(c));
  for_each_typeref(tmp, [&](TypeRef& t) {
    if (t.name == from) t.name = to;
  });
  struct V : AstVisitorBase {
    using AstVisitorBase::on_method;
    using AstVisitorBase::on_expr;
    using AstVisitorBase::on_class;
    const std::string* from;
    const std::string* to;
    void on_class(ClassDecl& k) {
      if (k.is_anonymous && k.name == *from) k.name = *to;
    }
    void on_method(MethodDecl& m) {
      if (m.is_ctor && m.name == *from) m.name = *to;
    }
    void on_expr(Expr& e) {
      if (e.kind == ExprKind::Name && e.text == *from) e.text = *to;
    }
  } v;
  v.from = &from;
  v.to = &to;
  walk(tmp, v);
  c = std::move(tmp.units[0].types[0]);
  c.name = to;
}

}  // namespace

SpecializationMap specialize_class_generators(SketchAst& ast) {
  SpecializationMap map;
  std::map<std::string, const ClassDecl*> generators;
  std::set<std::string> used;
  for (const auto& u : ast.units)
    for (const auto& c : u.types) {
      used.insert(c.name);
      if (c.is_generator()) generators[c.name] = &c;
    }
  for_each_class(static_cast<const SketchAst&>(ast), [&](const ClassDecl& c) {
    if (c.is_generator() && !generators.count(c.name)) {
      fail(ErrorKind::DirectGeneratorUse, c.span, "generator class '" + c.name + "' must be a top-level class");
    }
    if (c.is_generator() && c.is_interface) {
      fail(ErrorKind::DirectGeneratorUse, c.span, "an interface cannot be a generator");
    }
  });
  if (generators.empty()) return map;
  for (const auto& [name, g] : generators) {
    if (g->has_super && generators.count(g->super.name)) {
      fail(ErrorKind::DirectGeneratorUse, g->span,
           "generator class '" + name + "' extends generator class '" + g->super.name + "'; nested generators are not supported");
    }
  }

  // Any use of a generator name outside its own body and outside `extends`
  // clauses is a direct use.
  for (auto& u : ast.units) {
    for (auto& c : u.types) {
      if (c.is_generator()) continue;
      SketchAst one;
      one.units.emplace_back();
      one.units[0].types.push_back(c);
      std::set<const TypeRef*> extends_refs;
      for_each_class(one, [&](ClassDecl& k) {
        if (k.has_super) extends_refs.insert(&k.super);
      });
      for_each_typeref(one, [&](TypeRef& t) {
        if (generators.count(t.name) && !extends_refs.count(&t)) {
          fail(ErrorKind::DirectGeneratorUse, t.span, "generator class '" + t.name + "' used directly");
        }
      });
      for_each_class(one, [&](ClassDecl& k) {
        if (k.is_anonymous && generators.count(k.name)) {
          fail(ErrorKind::DirectGeneratorUse, k.span, "generator class '" + k.name + "' instantiated directly");
        }
        for (auto& i : k.interfaces)
          if (generators.count(i.name)) {
            fail(ErrorKind::DirectGeneratorUse, i.span, "generator class '" + i.name + "' used as an interface");
          }
      });
      struct NameCheck : AstVisitorBase {
        using AstVisitorBase::on_expr;
        const std::map<std::string, const ClassDecl*>* gens;
        void on_expr(const Expr& e) {
          if (e.kind == ExprKind::Name && gens->count(e.text)) {
            fail(ErrorKind::DirectGeneratorUse, e.span, "generator class '" + e.text + "' used directly");
          }
        }
      } nc;
      nc.gens = &generators;
      walk(static_cast<const SketchAst&>(one), nc);
    }
  }

  // Contexts in traversal order; each gets its own copy.
  SketchAst named = ast;
  assign_class_names(named);
  std::vector<std::string> context_names;
  for_each_class(static_cast<const SketchAst&>(named), [&](const ClassDecl& c) {
    if (!c.is_generator() && c.has_super && generators.count(c.super.name))
      context_names.push_back(c.mangled);
  });
  std::map<std::string, std::vector<ClassDecl>> copies;
  std::map<std::string, int> next_k;
  size_t ctx = 0;
  for_each_class(ast, [&](ClassDecl& c) {
    if (c.is_generator() || !c.has_super || !generators.count(c.super.name)) return;
    const std::string gen = c.super.name;
    std::string fresh;
    do {
      fresh = gen + std::to_string(++next_k[gen]);
    } while (used.count(fresh));
    used.insert(fresh);
    ClassDecl copy = *generators.at(gen);
    copy.mods &= ~static_cast<unsigned>(kModGenerator);
    copy.specialized_from = gen;
    rename_self(copy, gen, fresh);
    copies[gen].push_back(std::move(copy));
    map.entries.push_back({gen, context_names.at(ctx++), fresh});
    c.super.name = fresh;
  });

  for (auto& u : ast.units) {
    std::vector<ClassDecl> out;
    for (auto& c : u.types) {
      if (!c.is_generator()) {
        out.push_back(std::move(c));
        continue;
      }
      for (auto& k : copies[c.name]) out.push_back(std::move(k));
    }
    u.types = std::move(out);
  }
  return map;
}

// --- assign_unknown_ids -------------------------------------------------------------

UnknownRegistry assign_unknown_ids(SketchAst& ast, const DesugarConfig& cfg) {
  assign_class_names(ast);

  long long max_literal = 0;
  struct Lits : AstVisitorBase {
    using AstVisitorBase::on_expr;
    long long* max;
    void on_expr(const Expr& e) {
      if (e.kind == ExprKind::IntLit || e.kind == ExprKind::CharLit) {
        *max = std::max(*max, static_cast<long long>(e.value));
      } else if (e.kind == ExprKind::StringLit) {
        std::vector<long long> cps;
        decode_code_points(e.text, cps);
        for (long long cp : cps) *max = std::max(*max, cp);
      }
    }
  } lits;
  lits.max = &max_literal;
  walk(static_cast<const SketchAst&>(ast), lits);
  int bits = std::min(31, std::max(cfg.hole_bits, bits_for(max_literal)));

  struct Ids : AstVisitorBase {
    using AstVisitorBase::on_class;
    using AstVisitorBase::after_class;
    using AstVisitorBase::on_stmt;
    using AstVisitorBase::after_stmt;
    using AstVisitorBase::on_expr;
    UnknownRegistry reg;
    int bits = 5;
    int unroll_max = 8;
    std::vector<std::string> owners;
    int repeat = 0;
    const Stmt* repeat_stmt = nullptr;
    void on_class(ClassDecl& c) {
      if (repeat) fail(ErrorKind::Parse, c.span, "class declarations are not allowed inside minrepeat");
      owners.push_back(c.mangled);
    }
    void after_class(ClassDecl&) { owners.pop_back(); }
    void on_stmt(Stmt& s) {
      if (s.kind != StmtKind::MinRepeat) return;
      if (repeat) fail(ErrorKind::Parse, s.span, "nested minrepeat is not supported");
      RepeatInfo r;
      r.id = {UnknownKind::Repeat, static_cast<int>(reg.repeats.size()) + 1, {}, owners.back()};
      r.id.name = unknown_name(UnknownKind::Repeat, r.id.ordinal);
      r.max = unroll_max;
      r.span = s.span;
      s.unknown = r.id.ordinal;
      repeat = r.id.ordinal;
      repeat_stmt = &s;
      reg.repeats.push_back(std::move(r));
    }
    void after_stmt(Stmt& s) {
      if (&s == repeat_stmt) {
        repeat = 0;
        repeat_stmt = nullptr;
      }
    }
    void on_expr(Expr& e) {
      if (e.kind == ExprKind::Hole) {
        HoleInfo h;
        h.id = {UnknownKind::Hole, static_cast<int>(reg.holes.size()) + 1, {}, owners.back()};
        h.id.name = unknown_name(UnknownKind::Hole, h.id.ordinal);
        h.bits = bits;
        h.repeat = repeat;
        h.span = e.span;
        e.unknown = h.id.ordinal;
        if (repeat) reg.repeats[repeat - 1].holes.push_back(h.id.ordinal);
        reg.holes.push_back(std::move(h));
      } else if (e.kind == ExprKind::Choice) {
        ChoiceInfo c;
        c.id = {UnknownKind::Choice, static_cast<int>(reg.choices.size()) + 1, {}, owners.back()};
        c.id.name = unknown_name(UnknownKind::Choice, c.id.ordinal);
        c.arity = static_cast<int>(e.kids.size());
        c.repeat = repeat;
        c.span = e.span;
        e.unknown = c.id.ordinal;
        if (repeat) reg.repeats[repeat - 1].choices.push_back(c.id.ordinal);
        reg.choices.push_back(std::move(c));
      }
    }
  } ids;
  ids.bits = bits;
  ids.unroll_max = cfg.unroll_max;
  walk(ast, ids);
  return std::move(ids.reg);
}

// --- hoist_initializers ---------------------------------------------------------------

namespace {

bool has_anonymous_class(const Expr& e) {
  if (e.has_body) return true;
  for (const auto& k : e.kids)
    if (has_anonymous_class(k)) return true;
  return false;
}

Stmt assign_stmt(Expr target, Expr value, const SourceSpan& span) {
  Expr a;
  a.kind = ExprKind::Assign;
  a.span = span;
  a.kids.push_back(std::move(target));
  a.kids.push_back(std::move(value));
  Stmt s;
  s.kind = StmtKind::ExprStmt;
  s.span = span;
  s.exprs.push_back(std::move(a));
  return s;
}

bool is_super_call(const Stmt& s) {
  return s.kind == StmtKind::ExprStmt && s.exprs.size() == 1 && s.exprs[0].kind == ExprKind::Call &&
         !s.exprs[0].has_receiver && s.exprs[0].text == "super";
}

void hoist_class(ClassDecl& c) {
  std::vector<Stmt> instance_inits;
  std::vector<Stmt> static_inits;
  bool anon_in_instance_init = false;
  for (auto& m : c.members) {
    if (m.kind != MemberKind::Field || m.field.init.empty()) continue;
    bool is_static = c.is_interface || (m.field.mods & kModStatic);
    Expr value = std::move(m.field.init.front());
    m.field.init.clear();
    SourceSpan span = m.field.span;
    if (is_static) {
      Expr target;
      target.kind = ExprKind::Name;
      target.span = span;
      target.text = m.field.name;
      static_inits.push_back(assign_stmt(std::move(target), std::move(value), span));
    } else {
      anon_in_instance_init = anon_in_instance_init || has_anonymous_class(value);
      Expr self;
      self.kind = ExprKind::This;
      self.span = span;
      Expr target;
      target.kind = ExprKind::Field;
      target.span = span;
      target.text = m.field.name;
      target.kids.push_back(std::move(self));
      instance_inits.push_back(assign_stmt(std::move(target), std::move(value), span));
    }
  }
  if (c.is_interface) {
    if (!instance_inits.empty()) fail(ErrorKind::Internal, c.span, "interface with instance fields");
  } else {
    int ctors = 0;
    for (const auto& m : c.members)
      if (m.kind == MemberKind::Method && m.method.is_ctor) ++ctors;
    if (ctors == 0) {
      Member m;
      m.kind = MemberKind::Method;
      m.method.mods = kModPublic;
      m.method.is_ctor = true;
      m.method.name = c.name;
      m.method.has_body = true;
      m.method.span = c.span;
      c.members.push_back(std::move(m));
      ctors = 1;
    }
    if (ctors > 1 && anon_in_instance_init) {
      fail(ErrorKind::TypeLowering, c.span,
           "anonymous class in an instance field initializer of a class with several constructors");
    }
    for (auto& m : c.members) {
      if (m.kind != MemberKind::Method || !m.method.is_ctor) continue;
      auto& body = m.method.body;
      size_t at = !body.empty() && is_super_call(body.front()) ? 1 : 0;
      body.insert(body.begin() + static_cast<long>(at), instance_inits.begin(), instance_inits.end());
    }
  }
  if (!static_inits.empty()) {
    Member m;
    m.kind = MemberKind::Method;
    m.method.mods = kModStatic;
    m.method.ret = TypeRef{"void", {}, c.span};
    m.method.name = kStaticInitName;
    m.method.has_body = true;
    m.method.body = std::move(static_inits);
    m.method.span = c.span;
    c.members.push_back(std::move(m));
  }
}

}  // namespace

void hoist_initializers(SketchAst& ast) {
  std::vector<ClassDecl*> order;
  for_each_class(ast, [&](ClassDecl& c) { order.push_back(&c); });
  // Children first: moving a member keeps the buffers of the class vectors
  // it owns, so the remaining pointers stay valid.
  for (auto it = order.rbegin(); it != order.rend(); ++it) hoist_class(**it);
  int next = 0;
  for_each_class(ast, [&](ClassDecl& c) { c.decl_id = next++; });
}

void normalize(SketchAst& ast) {
  erase_sugar(ast);
  hoist_initializers(ast);
}

}  // namespace oosk
