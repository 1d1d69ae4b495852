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

#include "ref_interp.hpp"

#include <cstdint>
#include <functional>

namespace oosk::testing {

namespace {

std::int64_t wrap(std::int64_t v) {
  return static_cast<std::int32_t>(static_cast<std::uint32_t>(static_cast<std::uint64_t>(v)));
}

bool is_lib_type(const std::string& n) {
  return n == "LinkedList" || n == "ArrayList" || n == "List" || n == "Iterator" || n == "StringBuilder";
}

[[noreturn]] void error(const std::string& why) { throw RefError{why}; }

}  // namespace

struct RefInterp::Scope {
  std::map<std::string, RValue> vars;
};

struct RefInterp::Ctx {
  const ClassDecl* cls = nullptr;  // lexical class
  RValue self;                     // Null in static context
  std::vector<Scope> scopes;
  RValue ret;

  RValue* lookup(const std::string& n) {
    for (auto it = scopes.rbegin(); it != scopes.rend(); ++it) {
      auto f = it->vars.find(n);
      if (f != it->vars.end()) return &f->second;
    }
    return nullptr;
  }
};

RefInterp::RefInterp(const SketchAst& ast, std::int64_t step_limit) : ast_(ast), step_limit_(step_limit) {
  for_each_class(ast_, [&](const ClassDecl& c) { classes_.push_back(&c); });
  // Lexical nesting, including anonymous classes inside method bodies.
  std::function<void(const ClassDecl&)> visit_class;
  std::function<void(const Expr&, const ClassDecl&)> visit_expr = [&](const Expr& e, const ClassDecl& in) {
    for (const auto& k : e.kids) visit_expr(k, in);
    for (const auto& a : e.anon) {
      outer_[&a] = &in;
      visit_class(a);
    }
  };
  std::function<void(const Stmt&, const ClassDecl&)> visit_stmt = [&](const Stmt& s, const ClassDecl& in) {
    for (const auto& e : s.exprs) visit_expr(e, in);
    for (const auto& b : s.body) visit_stmt(b, in);
  };
  visit_class = [&](const ClassDecl& c) {
    for (const auto& m : c.members) {
      if (m.kind == MemberKind::Type) {
        outer_[&m.type.front()] = &c;
        visit_class(m.type.front());
      } else if (m.kind == MemberKind::Field) {
        for (const auto& e : m.field.init) visit_expr(e, c);
      } else {
        for (const auto& s : m.method.body) visit_stmt(s, c);
      }
    }
  };
  for (const auto& u : ast_.units)
    for (const auto& c : u.types) visit_class(c);
}

// --- class model -------------------------------------------------------------

const ClassDecl* RefInterp::find_class(const std::string& name, const ClassDecl* from) const {
  auto dot = name.find('.');
  if (dot != std::string::npos) {
    const ClassDecl* head = find_class(name.substr(0, dot), from);
    if (!head) return nullptr;
    std::string rest = name.substr(dot + 1);
    std::string first = rest.substr(0, rest.find('.'));
    for (const auto& m : head->members)
      if (m.kind == MemberKind::Type && m.type.front().name == first) {
        if (first == rest) return &m.type.front();
        return find_class(rest, &m.type.front());
      }
    return nullptr;
  }
  for (const ClassDecl* c = from; c; c = outer_.count(c) ? outer_.at(c) : nullptr) {
    if (!c->is_anonymous && c->name == name) return c;
    for (const auto& m : c->members)
      if (m.kind == MemberKind::Type && m.type.front().name == name) return &m.type.front();
  }
  for (const auto& u : ast_.units)
    for (const auto& c : u.types)
      if (c.name == name) return &c;
  for (const ClassDecl* c : classes_)
    if (!c->is_anonymous && c->name == name) return c;
  return nullptr;
}

const ClassDecl* RefInterp::super_of(const ClassDecl* c) const {
  const ClassDecl* ctx = outer_.count(c) ? outer_.at(c) : nullptr;
  const ClassDecl* s = nullptr;
  if (c->is_anonymous) {
    s = find_class(c->name, ctx);
  } else if (c->has_super) {
    s = find_class(c->super.name, ctx);
  }
  if (s && s->is_interface) return nullptr;
  return s;
}

bool RefInterp::is_subclass(const ClassDecl* sub, const ClassDecl* sup) const {
  for (const ClassDecl* c = sub; c; c = super_of(c)) {
    if (c == sup) return true;
    if (sup->is_interface) {
      for (const auto& i : c->interfaces)
        if (find_class(i.name, c) == sup) return true;
      if (c->is_anonymous && find_class(c->name, outer_.count(c) ? outer_.at(c) : nullptr) == sup) return true;
    }
  }
  return false;
}

const ClassDecl* RefInterp::field_owner(const ClassDecl* c, const std::string& name, bool* is_static) const {
  for (const ClassDecl* k = c; k; k = super_of(k))
    for (const auto& m : k->members)
      if (m.kind == MemberKind::Field && m.field.name == name) {
        *is_static = (m.field.mods & kModStatic) != 0;
        return k;
      }
  return nullptr;
}

bool RefInterp::applicable(const MethodDecl& m, const ClassDecl* owner, const std::vector<RValue>& args) const {
  if (m.params.size() != args.size()) return false;
  for (size_t i = 0; i < args.size(); ++i) {
    const std::string& t = m.params[i].type.name;
    const RValue& a = args[i];
    if (t == "int" || t == "char") {
      if (a.kind != RValue::Int && a.kind != RValue::Char) return false;
    } else if (t == "boolean") {
      if (a.kind != RValue::Bool) return false;
    } else if (t == "String") {
      if (a.kind != RValue::Str && a.kind != RValue::Null) return false;
    } else {
      if (a.kind == RValue::Null) continue;
      if (a.kind != RValue::Ref) return false;
      const ClassDecl* want = find_class(t, owner);
      if (want && a.o->cls && !want->is_interface && !is_subclass(a.o->cls, want)) return false;
      if (want && !a.o->cls && !want->is_interface) return false;
    }
  }
  return true;
}

const MethodDecl* RefInterp::find_method(const ClassDecl* c, const std::string& name, const std::vector<RValue>& args,
                                         const ClassDecl** owner) const {
  for (const ClassDecl* k = c; k; k = super_of(k))
    for (const auto& m : k->members)
      if (m.kind == MemberKind::Method && !m.method.is_ctor && m.method.has_body && m.method.name == name &&
          applicable(m.method, k, args)) {
        *owner = k;
        return &m.method;
      }
  return nullptr;
}

RValue RefInterp::default_of(const TypeRef& t) const {
  if (t.name == "int") return RValue::integer(0);
  if (t.name == "char") return RValue::character(0);
  if (t.name == "boolean") return RValue::boolean(false);
  return RValue::null();
}

// --- public entry points -----------------------------------------------------

void RefInterp::reset() {
  statics_.clear();
  minimized_.clear();
  for (const ClassDecl* c : classes_)
    for (const auto& m : c->members)
      if (m.kind == MemberKind::Field && (m.field.mods & kModStatic)) statics_[{c, m.field.name}] = default_of(m.field.type);
  for (const ClassDecl* c : classes_)
    for (const auto& m : c->members)
      if (m.kind == MemberKind::Field && (m.field.mods & kModStatic) && !m.field.init.empty()) {
        Ctx ctx;
        ctx.cls = c;
        ctx.scopes.emplace_back();
        statics_[{c, m.field.name}] = eval(m.field.init.front(), ctx);
      }
}

std::vector<std::pair<std::string, std::string>> RefInterp::harnesses() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const ClassDecl* c : classes_)
    for (const auto& m : c->members)
      if (m.kind == MemberKind::Method && (m.method.mods & kModHarness)) out.emplace_back(c->name, m.method.name);
  return out;
}

RefInterp::Outcome RefInterp::run_harness(const std::string& cls, const std::string& method) {
  steps_ = 0;
  depth_ = 0;
  last_error_.clear();
  try {
    reset();
    call_static(cls, method);
    return Outcome::Pass;
  } catch (const RefAssertFailure&) {
    return Outcome::AssertFail;
  } catch (const RefError& e) {
    last_error_ = e.reason;
    return Outcome::Error;
  }
}

RValue RefInterp::construct(const std::string& cls, std::vector<RValue> args) {
  const ClassDecl* c = find_class(cls, nullptr);
  if (!c) error("no class " + cls);
  return instantiate(c, std::move(args));
}

RValue RefInterp::invoke(const RValue& self, const std::string& method, std::vector<RValue> args) {
  if (self.kind != RValue::Ref) error("call on non-object");
  if (!self.o->cls) return builtin(self, method, std::move(args));
  const ClassDecl* owner = nullptr;
  const MethodDecl* m = find_method(self.o->cls, method, args, &owner);
  if (!m) error("no method " + method);
  return call(owner, *m, self, std::move(args));
}

RValue RefInterp::call_static(const std::string& cls, const std::string& method, std::vector<RValue> args) {
  const ClassDecl* c = find_class(cls, nullptr);
  if (!c) error("no class " + cls);
  const ClassDecl* owner = nullptr;
  const MethodDecl* m = find_method(c, method, args, &owner);
  if (!m) error("no method " + method);
  return call(owner, *m, RValue::null(), std::move(args));
}

RValue RefInterp::get_static(const std::string& cls, const std::string& field) {
  const ClassDecl* c = find_class(cls, nullptr);
  bool st = false;
  const ClassDecl* owner = c ? field_owner(c, field, &st) : nullptr;
  if (!owner || !st) error("no static " + field);
  return statics_[{owner, field}];
}

RValue RefInterp::get_field(const RValue& self, const std::string& field) {
  bool st = false;
  const ClassDecl* owner = self.kind == RValue::Ref && self.o->cls ? field_owner(self.o->cls, field, &st) : nullptr;
  if (!owner) error("no field " + field);
  return st ? statics_[{owner, field}] : self.o->fields[{owner, field}];
}

void RefInterp::set_field(const RValue& self, const std::string& field, RValue v) {
  bool st = false;
  const ClassDecl* owner = self.kind == RValue::Ref && self.o->cls ? field_owner(self.o->cls, field, &st) : nullptr;
  if (!owner) error("no field " + field);
  (st ? statics_[{owner, field}] : self.o->fields[{owner, field}]) = std::move(v);
}

// --- execution ---------------------------------------------------------------

void RefInterp::tick() {
  if (++steps_ > step_limit_) error("step limit");
}

RValue RefInterp::instantiate(const ClassDecl* c, std::vector<RValue> args) {
  if (c->is_interface) error("instantiating interface");
  auto obj = std::make_shared<RObject>();
  obj->cls = c;
  for (const ClassDecl* k = c; k; k = super_of(k))
    for (const auto& m : k->members)
      if (m.kind == MemberKind::Field && !(m.field.mods & kModStatic)) obj->fields[{k, m.field.name}] = default_of(m.field.type);
  RValue self;
  self.kind = RValue::Ref;
  self.o = obj;
  run_ctor(c, self, std::move(args));
  return self;
}

void RefInterp::run_ctor(const ClassDecl* c, const RValue& self, std::vector<RValue> args) {
  tick();
  const MethodDecl* ctor = nullptr;
  bool any = false;
  for (const auto& m : c->members)
    if (m.kind == MemberKind::Method && m.method.is_ctor) {
      any = true;
      if (applicable(m.method, c, args)) {
        ctor = &m.method;
        break;
      }
    }
  if (any && !ctor) error("no matching constructor for " + c->name);
  if (++depth_ > 256) error("call depth");
  Ctx ctx;
  ctx.cls = c;
  ctx.self = self;
  ctx.scopes.emplace_back();
  size_t first = 0;
  const ClassDecl* sup = super_of(c);
  bool explicit_super = ctor && !ctor->body.empty() && ctor->body.front().kind == StmtKind::ExprStmt &&
                        ctor->body.front().exprs.front().kind == ExprKind::Call &&
                        !ctor->body.front().exprs.front().has_receiver &&
                        ctor->body.front().exprs.front().text == "super";
  if (ctor)
    for (size_t i = 0; i < ctor->params.size(); ++i) ctx.scopes.back().vars[ctor->params[i].name] = args[i];
  if (explicit_super) {
    std::vector<RValue> sargs;
    for (const auto& a : ctor->body.front().exprs.front().kids) sargs.push_back(eval(a, ctx));
    if (sup) run_ctor(sup, self, std::move(sargs));
    first = 1;
  } else if (sup) {
    run_ctor(sup, self, c->is_anonymous ? std::move(args) : std::vector<RValue>{});
  }
  for (const auto& m : c->members)
    if (m.kind == MemberKind::Field && !(m.field.mods & kModStatic) && !m.field.init.empty())
      self.o->fields[{c, m.field.name}] = eval(m.field.init.front(), ctx);
  if (ctor) {
    ctx.scopes.emplace_back();
    for (size_t i = first; i < ctor->body.size(); ++i)
      if (exec(ctor->body[i], ctx) == Flow::Return) break;
  }
  --depth_;
}

RValue RefInterp::call(const ClassDecl* owner, const MethodDecl& m, const RValue& self, std::vector<RValue> args) {
  tick();
  if (++depth_ > 256) error("call depth");
  Ctx ctx;
  ctx.cls = owner;
  if (!(m.mods & kModStatic)) ctx.self = self;
  ctx.scopes.emplace_back();
  for (size_t i = 0; i < m.params.size(); ++i) ctx.scopes.back().vars[m.params[i].name] = args[i];
  Flow f = exec_block(m.body, ctx);
  --depth_;
  if (f != Flow::Return && !m.ret.is_void()) error("missing return in " + m.name);
  return ctx.ret;
}

RefInterp::Flow RefInterp::exec_block(const std::vector<Stmt>& body, Ctx& ctx) {
  ctx.scopes.emplace_back();
  Flow f = Flow::Normal;
  for (const auto& s : body) {
    f = exec(s, ctx);
    if (f == Flow::Return) break;
  }
  ctx.scopes.pop_back();
  return f;
}

RefInterp::Flow RefInterp::exec_scoped(const Stmt& s, Ctx& ctx) {
  ctx.scopes.emplace_back();
  Flow f = exec(s, ctx);
  ctx.scopes.pop_back();
  return f;
}

RefInterp::Flow RefInterp::exec(const Stmt& s, Ctx& ctx) {
  tick();
  switch (s.kind) {
    case StmtKind::Block:
      return exec_block(s.body, ctx);
    case StmtKind::LocalDecl:
      ctx.scopes.back().vars[s.name] = s.exprs.empty() ? default_of(s.type) : eval(s.exprs.front(), ctx);
      return Flow::Normal;
    case StmtKind::If:
      if (truth(eval(s.exprs.front(), ctx))) return exec_scoped(s.body[0], ctx);
      if (s.body.size() > 1) return exec_scoped(s.body[1], ctx);
      return Flow::Normal;
    case StmtKind::While:
      while (truth(eval(s.exprs.front(), ctx)))
        if (exec_scoped(s.body[0], ctx) == Flow::Return) return Flow::Return;
      return Flow::Normal;
    case StmtKind::Return:
      ctx.ret = s.exprs.empty() ? RValue::null() : eval(s.exprs.front(), ctx);
      return Flow::Return;
    case StmtKind::ExprStmt:
      eval(s.exprs.front(), ctx);
      return Flow::Normal;
    case StmtKind::Assert:
      if (!truth(eval(s.exprs.front(), ctx))) throw RefAssertFailure{};
      return Flow::Normal;
    case StmtKind::MinRepeat:
      error("minrepeat in concrete program");
    case StmtKind::Empty:
      return Flow::Normal;
  }
  return Flow::Normal;
}

bool RefInterp::truth(const RValue& v) const {
  if (v.kind != RValue::Bool) error("non-boolean condition");
  return v.i != 0;
}

std::int64_t RefInterp::num(const RValue& v) const {
  if (v.kind != RValue::Int && v.kind != RValue::Char && v.kind != RValue::Bool) error("non-numeric operand");
  return v.i;
}

std::string RefInterp::render(const RValue& v) const {
  switch (v.kind) {
    case RValue::Int: return std::to_string(v.i);
    case RValue::Bool: return v.i ? "true" : "false";
    case RValue::Char: {
      std::string out;
      auto c = static_cast<std::uint32_t>(v.i);
      if (c < 0x80) {
        out += static_cast<char>(c);
      } else if (c < 0x800) {
        out += static_cast<char>(0xc0 | (c >> 6));
        out += static_cast<char>(0x80 | (c & 0x3f));
      } else {
        out += static_cast<char>(0xe0 | (c >> 12));
        out += static_cast<char>(0x80 | ((c >> 6) & 0x3f));
        out += static_cast<char>(0x80 | (c & 0x3f));
      }
      return out;
    }
    case RValue::Null: return "null";
    case RValue::Str: return v.s;
    case RValue::Ref: return v.o->cls ? v.o->cls->name : v.o->lib;
  }
  return "";
}

bool RefInterp::same(const RValue& a, const RValue& b) const {
  if (a.kind == RValue::Null || b.kind == RValue::Null) return a.kind == b.kind;
  if (a.kind == RValue::Ref || b.kind == RValue::Ref) return a.kind == b.kind && a.o == b.o;
  if (a.kind == RValue::Str || b.kind == RValue::Str) return a.kind == b.kind && a.s == b.s;
  return a.i == b.i;
}

void RefInterp::assign(const Expr& target, RValue v, Ctx& ctx) {
  if (target.kind == ExprKind::Name) {
    if (RValue* local = ctx.lookup(target.text)) {
      *local = std::move(v);
      return;
    }
    for (const ClassDecl* c = ctx.cls; c; c = outer_.count(c) ? outer_.at(c) : nullptr) {
      bool st = false;
      const ClassDecl* owner = field_owner(c, target.text, &st);
      if (!owner) continue;
      if (st) {
        statics_[{owner, target.text}] = std::move(v);
      } else {
        if (ctx.self.kind != RValue::Ref || c != ctx.cls) error("instance field without receiver");
        ctx.self.o->fields[{owner, target.text}] = std::move(v);
      }
      return;
    }
    error("unknown name " + target.text);
  }
  const Expr& recv = target.kids.front();
  if (recv.kind == ExprKind::Name && !ctx.lookup(recv.text)) {
    bool st = false;
    if (!field_owner(ctx.cls, recv.text, &st))
      if (const ClassDecl* c = find_class(recv.text, ctx.cls)) {
        const ClassDecl* owner = field_owner(c, target.text, &st);
        if (!owner || !st) error("no static " + target.text);
        statics_[{owner, target.text}] = std::move(v);
        return;
      }
  }
  RValue obj = eval(recv, ctx);
  if (obj.kind != RValue::Ref) error("field write on null");
  set_field(obj, target.text, std::move(v));
}

RValue RefInterp::eval(const Expr& e, Ctx& ctx) {
  tick();
  switch (e.kind) {
    case ExprKind::IntLit: return RValue::integer(wrap(e.value));
    case ExprKind::BoolLit: return RValue::boolean(e.value != 0);
    case ExprKind::CharLit: return RValue::character(e.value);
    case ExprKind::StringLit: return RValue::string(e.text);
    case ExprKind::Null: return RValue::null();
    case ExprKind::This:
      if (ctx.self.kind != RValue::Ref) error("this in static context");
      return ctx.self;
    case ExprKind::Hole:
    case ExprKind::Choice: error("unknown in concrete program");
    case ExprKind::Name: {
      if (RValue* local = ctx.lookup(e.text)) return *local;
      for (const ClassDecl* c = ctx.cls; c; c = outer_.count(c) ? outer_.at(c) : nullptr) {
        bool st = false;
        const ClassDecl* owner = field_owner(c, e.text, &st);
        if (!owner) continue;
        if (st) return statics_[{owner, e.text}];
        if (ctx.self.kind != RValue::Ref || c != ctx.cls) error("instance field without receiver");
        return ctx.self.o->fields[{owner, e.text}];
      }
      error("unknown name " + e.text);
    }
    case ExprKind::Field: {
      const Expr& recv = e.kids.front();
      // Static access through a (possibly dotted) class name.
      std::function<const ClassDecl*(const Expr&)> as_class = [&](const Expr& r) -> const ClassDecl* {
        if (r.kind == ExprKind::Name) {
          if (ctx.lookup(r.text)) return nullptr;
          bool st = false;
          for (const ClassDecl* c = ctx.cls; c; c = outer_.count(c) ? outer_.at(c) : nullptr)
            if (field_owner(c, r.text, &st)) return nullptr;
          return find_class(r.text, ctx.cls);
        }
        if (r.kind == ExprKind::Field) {
          const ClassDecl* head = as_class(r.kids.front());
          if (!head) return nullptr;
          for (const auto& m : head->members)
            if (m.kind == MemberKind::Type && m.type.front().name == r.text) return &m.type.front();
        }
        return nullptr;
      };
      if (const ClassDecl* c = as_class(recv)) {
        bool st = false;
        const ClassDecl* owner = field_owner(c, e.text, &st);
        if (!owner || !st) error("no static " + e.text);
        return statics_[{owner, e.text}];
      }
      RValue obj = eval(recv, ctx);
      if (obj.kind != RValue::Ref) error("field read on null");
      return get_field(obj, e.text);
    }
    case ExprKind::Call: return eval_call(e, ctx);
    case ExprKind::New: {
      std::vector<RValue> args;
      for (const auto& a : e.kids) args.push_back(eval(a, ctx));
      if (e.has_body) return instantiate(&e.anon.front(), std::move(args));
      const ClassDecl* c = find_class(e.type.name, ctx.cls);
      if (c) return instantiate(c, std::move(args));
      if (is_lib_type(e.type.name)) {
        auto obj = std::make_shared<RObject>();
        obj->lib = e.type.name == "StringBuilder" ? "StringBuilder" : "LinkedList";
        RValue v;
        v.kind = RValue::Ref;
        v.o = obj;
        return v;
      }
      error("unknown class " + e.type.name);
    }
    case ExprKind::Unary: {
      RValue v = eval(e.kids.front(), ctx);
      if (e.text == "!") return RValue::boolean(!truth(v));
      return RValue::integer(wrap(-num(v)));
    }
    case ExprKind::Binary: {
      const std::string& op = e.text;
      if (op == "&&") return RValue::boolean(truth(eval(e.kids[0], ctx)) && truth(eval(e.kids[1], ctx)));
      if (op == "||") return RValue::boolean(truth(eval(e.kids[0], ctx)) || truth(eval(e.kids[1], ctx)));
      RValue a = eval(e.kids[0], ctx);
      RValue b = eval(e.kids[1], ctx);
      if (op == "==") return RValue::boolean(same(a, b));
      if (op == "!=") return RValue::boolean(!same(a, b));
      if (op == "+" && (a.kind == RValue::Str || b.kind == RValue::Str)) return RValue::string(render(a) + render(b));
      std::int64_t x = num(a), y = num(b);
      if (op == "+") return RValue::integer(wrap(x + y));
      if (op == "-") return RValue::integer(wrap(x - y));
      if (op == "*") return RValue::integer(wrap(x * y));
      if (op == "/" || op == "%") {
        if (y == 0) error("division by zero");
        if (x == INT32_MIN && y == -1) return RValue::integer(op == "/" ? INT32_MIN : 0);
        return RValue::integer(op == "/" ? x / y : x % y);
      }
      if (op == "<") return RValue::boolean(x < y);
      if (op == "<=") return RValue::boolean(x <= y);
      if (op == ">") return RValue::boolean(x > y);
      if (op == ">=") return RValue::boolean(x >= y);
      error("operator " + op);
    }
    case ExprKind::Assign: {
      RValue v = eval(e.kids[1], ctx);
      assign(e.kids[0], v, ctx);
      return v;
    }
  }
  error("unhandled expression");
}

RValue RefInterp::eval_call(const Expr& e, Ctx& ctx) {
  std::vector<RValue> args;
  for (size_t i = 0; i < e.arg_count(); ++i) args.push_back(eval(e.arg(i), ctx));
  if (!e.has_receiver) {
    if (e.text == "minimize") {
      minimized_.push_back(num(args.at(0)));
      return RValue::null();
    }
    if (e.text == "convertToIterator") {
      if (args.size() != 1 || args[0].kind != RValue::Str) error("convertToIterator argument");
      auto list = std::make_shared<RObject>();
      list->lib = "LinkedList";
      for (unsigned char ch : args[0].s) {
        auto tok = std::make_shared<RObject>();
        tok->lib = "CharToken";
        tok->token = ch;
        RValue t;
        t.kind = RValue::Ref;
        t.o = tok;
        list->items.push_back(t);
      }
      auto it = std::make_shared<RObject>();
      it->lib = "Iterator";
      it->list = list;
      RValue v;
      v.kind = RValue::Ref;
      v.o = it;
      return v;
    }
    const ClassDecl* owner = nullptr;
    const MethodDecl* m = nullptr;
    if (ctx.self.kind == RValue::Ref) m = find_method(ctx.self.o->cls, e.text, args, &owner);
    for (const ClassDecl* c = ctx.cls; !m && c; c = outer_.count(c) ? outer_.at(c) : nullptr)
      m = find_method(c, e.text, args, &owner);
    if (!m) error("no method " + e.text);
    if (!(m->mods & kModStatic) && ctx.self.kind != RValue::Ref) error("instance call in static context");
    return call(owner, *m, ctx.self, std::move(args));
  }
  const Expr& recv = e.receiver();
  if (recv.kind == ExprKind::Name && !ctx.lookup(recv.text)) {
    bool is_field = false;
    for (const ClassDecl* c = ctx.cls; c && !is_field; c = outer_.count(c) ? outer_.at(c) : nullptr) {
      bool st = false;
      is_field = field_owner(c, recv.text, &st) != nullptr;
    }
    if (!is_field)
      if (const ClassDecl* c = find_class(recv.text, ctx.cls)) {
        const ClassDecl* owner = nullptr;
        const MethodDecl* m = find_method(c, e.text, args, &owner);
        if (!m) error("no static method " + e.text);
        return call(owner, *m, RValue::null(), std::move(args));
      }
  }
  RValue obj = eval(recv, ctx);
  if (obj.kind == RValue::Str) return builtin(obj, e.text, std::move(args));
  if (obj.kind != RValue::Ref) error("method call on null");
  return invoke(obj, e.text, std::move(args));
}

RValue RefInterp::builtin(const RValue& recv, const std::string& name, std::vector<RValue> args) {
  auto ref = [](std::shared_ptr<RObject> o) {
    RValue v;
    v.kind = RValue::Ref;
    v.o = std::move(o);
    return v;
  };
  if (recv.kind == RValue::Str) {
    if (name == "length" && args.empty()) return RValue::integer(static_cast<std::int64_t>(recv.s.size()));
    if (name == "charAt" && args.size() == 1) {
      std::int64_t i = num(args[0]);
      if (i < 0 || i >= static_cast<std::int64_t>(recv.s.size())) error("charAt out of range");
      return RValue::character(static_cast<unsigned char>(recv.s[static_cast<size_t>(i)]));
    }
    if (name == "equals" && args.size() == 1) return RValue::boolean(args[0].kind == RValue::Str && args[0].s == recv.s);
    error("unknown String method " + name);
  }
  RObject& o = *recv.o;
  if (o.lib == "LinkedList") {
    if (name == "add" && args.size() == 1) {
      o.items.push_back(args[0]);
      return RValue::boolean(true);
    }
    if (name == "get" && args.size() == 1) {
      std::int64_t i = num(args[0]);
      if (i < 0 || i >= static_cast<std::int64_t>(o.items.size())) error("index out of range");
      return o.items[static_cast<size_t>(i)];
    }
    if (name == "size" && args.empty()) return RValue::integer(static_cast<std::int64_t>(o.items.size()));
    if (name == "iterator" && args.empty()) {
      auto it = std::make_shared<RObject>();
      it->lib = "Iterator";
      it->list = recv.o;
      return ref(it);
    }
  } else if (o.lib == "Iterator") {
    if (name == "hasNext" && args.empty()) return RValue::boolean(o.pos < o.list->items.size());
    if (name == "next" && args.empty()) {
      if (o.pos >= o.list->items.size()) error("iterator exhausted");
      return o.list->items[o.pos++];
    }
  } else if (o.lib == "StringBuilder") {
    if (name == "append" && args.size() == 1) {
      o.text += render(args[0]);
      return recv;
    }
    if (name == "toString" && args.empty()) return RValue::string(o.text);
  } else if (o.lib == "CharToken") {
    if (name == "getId" && args.empty()) return RValue::integer(o.token);
  }
  error("unknown library method " + o.lib + "." + name);
}

}  // namespace oosk::testing
