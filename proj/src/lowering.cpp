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

#include "oosk/lowering.hpp"

#include <map>
#include <optional>
#include <set>

namespace oosk {

using IE = ir::ExprKind;
using AK = oosk::ExprKind;
using ir::InstrKind;
using ir::Op;

std::string dispatch_name(const std::string& signature) { return "dyn_dispatch_" + signature; }

namespace {

const TypeDesc kInt = TypeDesc::of(TypeTag::Int);
const TypeDesc kBool = TypeDesc::of(TypeTag::Bool);
const TypeDesc kChar = TypeDesc::of(TypeTag::Char);
const TypeDesc kStr = TypeDesc::of(TypeTag::Str);
const TypeDesc kVoid = TypeDesc::of(TypeTag::Void);
const TypeDesc kNull = TypeDesc::of(TypeTag::Null);
const TypeDesc kAny = TypeDesc::object(-1);

[[noreturn]] void type_error(const SourceSpan& span, const std::string& msg) {
  fail(ErrorKind::TypeLowering, span, msg);
}

ir::Expr make(IE kind, TypeDesc type, long long value, const SourceSpan& span) {
  ir::Expr e;
  e.kind = kind;
  e.type = std::move(type);
  e.value = value;
  e.span = span;
  return e;
}

ir::Expr const_int(long long v, TypeDesc t = kInt) { return make(IE::Const, std::move(t), v, {}); }

ir::Expr call(int fn, TypeDesc ret, std::vector<ir::Expr> args, const SourceSpan& span) {
  ir::Expr e = make(IE::Call, std::move(ret), fn, span);
  e.kids = std::move(args);
  return e;
}

ir::Instr instr(InstrKind kind, const SourceSpan& span) {
  ir::Instr i;
  i.kind = kind;
  i.span = span;
  return i;
}

ir::Expr binary_eq(ir::Expr a, ir::Expr b) {
  ir::Expr x = make(IE::Binary, kBool, 0, {});
  x.op = Op::Eq;
  x.kids.push_back(std::move(a));
  x.kids.push_back(std::move(b));
  return x;
}

class Lowerer {
 public:
  Lowerer(const SketchAst& ast, const ClassTable& t, const UnknownRegistry& reg) : ast_(ast), t_(t) {
    p_.registry = reg;
  }

  ir::Program run() {
    p_.num_classes = t_.num_classes();
    for (const auto& c : t_.classes) p_.class_names.push_back(c.name);
    for (int k = 0; k < static_cast<int>(LibClass::kCount); ++k)
      p_.class_names.push_back(lib_class_name(static_cast<LibClass>(k)));
    p_.slot_types.resize(static_cast<size_t>(t_.num_instance_slots));
    p_.slot_names.resize(static_cast<size_t>(t_.num_instance_slots));
    p_.static_types.resize(static_cast<size_t>(t_.num_static_slots));
    p_.static_names.resize(static_cast<size_t>(t_.num_static_slots));
    for (const auto& f : t_.field_layout) {
      auto& types = f.is_static ? p_.static_types : p_.slot_types;
      auto& names = f.is_static ? p_.static_names : p_.slot_names;
      types[static_cast<size_t>(f.slot)] = f.type;
      names[static_cast<size_t>(f.slot)] = f.owner_name + "." + f.name;
    }

    // Reserve every method function first so calls can name their index.
    for (const auto& m : t_.methods) {
      if (!m.has_body) continue;
      reserve(m.mangled);
      if (m.is_ctor) reserve(new_name(m));
    }
    p_.static_init = reserve(kStaticInitName);

    for (const auto& m : t_.methods) {
      if (!m.has_body) continue;
      lower_method(m);
      if (m.is_ctor) make_allocator(m);
    }
    make_static_init();

    // Dispatch chains last: their arms depend only on the table.
    for (size_t i = 0; i < dispatch_order_.size(); ++i) {
      const std::string& sig = dispatch_order_[i];
      int idx = p_.function_index.at(dispatch_name(sig));
      p_.functions[static_cast<size_t>(idx)] = make_dyn_dispatch(sig, t_, p_, uses_char_tokens_);
    }
    return std::move(p_);
  }

 private:
  // --- program structure -------------------------------------------------------

  int reserve(const std::string& name) {
    auto it = p_.function_index.find(name);
    if (it != p_.function_index.end()) return it->second;
    int idx = static_cast<int>(p_.functions.size());
    ir::Function f;
    f.name = name;
    p_.functions.push_back(std::move(f));
    p_.function_index[name] = idx;
    return idx;
  }

  static std::string new_name(const MethodInfo& ctor) { return "new_" + ctor.mangled; }

  int dispatch_for(const std::string& sig) {
    std::string name = dispatch_name(sig);
    if (!p_.function_index.count(name)) dispatch_order_.push_back(sig);
    return reserve(name);
  }

  void make_allocator(const MethodInfo& ctor) {
    ir::Function f;
    f.name = new_name(ctor);
    f.owner = t_.classes[ctor.cls].name;
    f.ret = TypeDesc::object(ctor.cls);
    for (size_t i = 0; i < ctor.params.size(); ++i) {
      f.locals.push_back(ctor.params[i]);
      f.local_names.push_back(ctor.decl->params[i].name);
    }
    f.num_params = static_cast<int>(ctor.params.size());
    int self = static_cast<int>(f.locals.size());
    f.locals.push_back(f.ret);
    f.local_names.push_back("self");
    ir::Instr alloc = instr(InstrKind::AssignLocal, ctor.decl->span);
    alloc.index = self;
    alloc.exprs.push_back(make(IE::Alloc, f.ret, ctor.cls, ctor.decl->span));
    f.body.push_back(std::move(alloc));
    std::vector<ir::Expr> args;
    args.push_back(make(IE::Local, f.ret, self, {}));
    for (int i = 0; i < f.num_params; ++i) args.push_back(make(IE::Local, f.locals[static_cast<size_t>(i)], i, {}));
    ir::Instr init = instr(InstrKind::Eval, ctor.decl->span);
    init.exprs.push_back(call(p_.function_index.at(ctor.mangled), kVoid, std::move(args), ctor.decl->span));
    f.body.push_back(std::move(init));
    ir::Instr ret = instr(InstrKind::Return, ctor.decl->span);
    ret.exprs.push_back(make(IE::Local, f.ret, self, {}));
    f.body.push_back(std::move(ret));
    p_.functions[static_cast<size_t>(p_.function_index.at(f.name))] = std::move(f);
  }

  void make_static_init() {
    ir::Function f;
    f.name = kStaticInitName;
    f.ret = kVoid;
    for (const auto& c : t_.classes) {
      for (int m : c.methods) {
        const MethodInfo& mi = t_.methods[static_cast<size_t>(m)];
        if (mi.name != kStaticInitName || !mi.is_static || !mi.params.empty()) continue;
        ir::Instr i = instr(InstrKind::Eval, mi.decl->span);
        i.exprs.push_back(call(p_.function_index.at(mi.mangled), kVoid, {}, mi.decl->span));
        f.body.push_back(std::move(i));
      }
    }
    p_.functions[static_cast<size_t>(p_.static_init)] = std::move(f);
  }

  // --- methods -----------------------------------------------------------------

  struct Ctx {
    int cls = -1;
    bool is_static = false;
    bool is_ctor = false;
    bool is_harness = false;
    std::string harness;
    int harness_fn = -1;
    int objectives = 0;
    ir::Function fn;
    std::vector<std::map<std::string, int>> scopes;
  };

  int declare(const std::string& name, TypeDesc type) {
    int idx = static_cast<int>(ctx_.fn.locals.size());
    ctx_.fn.locals.push_back(std::move(type));
    ctx_.fn.local_names.push_back(name);
    ctx_.scopes.back()[name] = idx;
    return idx;
  }

  void lower_method(const MethodInfo& m) {
    const MethodDecl& d = *m.decl;
    ctx_ = Ctx{};
    ctx_.cls = m.cls;
    ctx_.is_static = m.is_static;
    ctx_.is_ctor = m.is_ctor;
    ctx_.is_harness = m.is_harness;
    ctx_.fn.name = m.mangled;
    ctx_.fn.owner = t_.classes[m.cls].name;
    ctx_.fn.method_id = m.id;
    ctx_.fn.is_harness = m.is_harness;
    ctx_.fn.ret = m.is_ctor ? kVoid : m.ret;
    ctx_.scopes.emplace_back();
    if (m.is_harness) {
      if (!m.is_static || m.ret.tag != TypeTag::Void || !m.params.empty() || m.is_ctor) {
        type_error(d.span, "harness '" + d.name + "' must be static, void and parameterless");
      }
      ctx_.harness = m.mangled;
      ctx_.harness_fn = p_.function_index.at(m.mangled);
      p_.harnesses.push_back(ctx_.harness_fn);
    }
    if (!m.is_static) declare("this", TypeDesc::object(m.cls));
    for (size_t i = 0; i < m.params.size(); ++i) declare(d.params[i].name, m.params[i]);
    ctx_.fn.num_params = static_cast<int>(ctx_.fn.locals.size());

    std::vector<ir::Instr> body;
    size_t first = 0;
    if (m.is_ctor) {
      const ClassInfo& c = t_.classes[m.cls];
      std::vector<ir::Expr> args;
      SourceSpan span = d.span;
      bool explicit_super = !d.body.empty() && d.body[0].kind == StmtKind::ExprStmt &&
                            d.body[0].exprs[0].kind == AK::Call &&
                            !d.body[0].exprs[0].has_receiver && d.body[0].exprs[0].text == "super";
      if (explicit_super) {
        first = 1;
        span = d.body[0].span;
        for (const auto& a : d.body[0].exprs[0].kids) args.push_back(lower_expr(a, nullptr));
      }
      if (c.super >= 0) {
        int target = pick_ctor(c.super, args, span);
        std::vector<ir::Expr> full;
        full.push_back(self_expr(span));
        for (auto& a : args) full.push_back(std::move(a));
        ir::Instr i = instr(InstrKind::Eval, span);
        i.exprs.push_back(call(p_.function_index.at(t_.methods[static_cast<size_t>(target)].mangled), kVoid,
                               std::move(full), span));
        body.push_back(std::move(i));
      } else if (!args.empty()) {
        type_error(span, "super(...) with arguments but the superclass is Object");
      }
    }
    for (size_t i = first; i < d.body.size(); ++i) lower_stmt(d.body[i], body);
    ctx_.fn.body = std::move(body);
    p_.functions[static_cast<size_t>(p_.function_index.at(m.mangled))] = std::move(ctx_.fn);
  }

  ir::Expr self_expr(const SourceSpan& span) {
    if (ctx_.is_static) type_error(span, "'this' used in a static context");
    return make(IE::Local, TypeDesc::object(ctx_.cls), 0, span);
  }

  // --- statements ----------------------------------------------------------------

  void lower_block(const std::vector<Stmt>& stmts, std::vector<ir::Instr>& out) {
    ctx_.scopes.emplace_back();
    for (const auto& s : stmts) lower_stmt(s, out);
    ctx_.scopes.pop_back();
  }

  ir::Expr condition(const Expr& e) {
    ir::Expr c = lower_expr(e, &kBool);
    if (c.type.tag != TypeTag::Bool) type_error(e.span, "condition is not boolean");
    return c;
  }

  void lower_stmt(const Stmt& s, std::vector<ir::Instr>& out) {
    switch (s.kind) {
      case StmtKind::Block:
        lower_block(s.body, out);
        return;
      case StmtKind::Empty:
        return;
      case StmtKind::LocalDecl: {
        TypeDesc t = t_.resolve(s.type, ctx_.cls);
        if (t.tag == TypeTag::Void) type_error(s.span, "variable of type void");
        ir::Instr i = instr(InstrKind::AssignLocal, s.span);
        if (!s.exprs.empty()) {
          i.exprs.push_back(coerce(lower_expr(s.exprs[0], &t), t, s.exprs[0].span));
        } else {
          i.exprs.push_back(default_value(t));
        }
        // Declared after the initializer: `int x = x;` does not see itself.
        i.index = declare(s.name, t);
        out.push_back(std::move(i));
        return;
      }
      case StmtKind::If: {
        ir::Instr i = instr(InstrKind::If, s.span);
        i.exprs.push_back(condition(s.exprs[0]));
        lower_block({s.body[0]}, i.body);
        if (s.body.size() > 1) lower_block({s.body[1]}, i.orelse);
        out.push_back(std::move(i));
        return;
      }
      case StmtKind::While: {
        ir::Instr i = instr(InstrKind::While, s.span);
        i.exprs.push_back(condition(s.exprs[0]));
        lower_block({s.body[0]}, i.body);
        out.push_back(std::move(i));
        return;
      }
      case StmtKind::Return: {
        ir::Instr i = instr(InstrKind::Return, s.span);
        const TypeDesc& ret = ctx_.fn.ret;
        if (s.exprs.empty()) {
          if (ret.tag != TypeTag::Void) type_error(s.span, "missing return value");
        } else {
          if (ret.tag == TypeTag::Void) type_error(s.span, "return with a value in a void method");
          i.exprs.push_back(coerce(lower_expr(s.exprs[0], &ret), ret, s.exprs[0].span));
        }
        out.push_back(std::move(i));
        return;
      }
      case StmtKind::Assert: {
        ir::Instr i = instr(InstrKind::Assert, s.span);
        i.exprs.push_back(condition(s.exprs[0]));
        out.push_back(std::move(i));
        return;
      }
      case StmtKind::MinRepeat: {
        ir::Instr i = instr(InstrKind::Repeat, s.span);
        i.index = s.unknown;
        if (s.unknown <= 0) type_error(s.span, "minrepeat without an identifier");
        lower_block(s.body, i.body);
        out.push_back(std::move(i));
        return;
      }
      case StmtKind::ExprStmt:
        lower_expr_stmt(s, out);
        return;
    }
  }

  void lower_expr_stmt(const Stmt& s, std::vector<ir::Instr>& out) {
    const Expr& e = s.exprs[0];
    if (e.kind == AK::Assign) {
      out.push_back(lower_assign(e));
      return;
    }
    if (e.kind == AK::Call && !e.has_receiver && e.text == "minimize" &&
        t_.find_methods(ctx_.cls, "minimize").empty()) {
      lower_minimize(e);
      return;
    }
    if (e.kind == AK::Call && !e.has_receiver && e.text == "super") {
      type_error(e.span, "super(...) must be the first statement of a constructor");
    }
    ir::Instr i = instr(InstrKind::Eval, s.span);
    i.exprs.push_back(lower_expr(e, nullptr));
    out.push_back(std::move(i));
  }

  void lower_minimize(const Expr& e) {
    if (!ctx_.is_harness) type_error(e.span, "minimize may only appear in a harness");
    if (e.kids.size() != 1) type_error(e.span, "minimize takes one argument");
    // Objectives are evaluated after static initialization, outside any
    // harness frame, so they may not read locals.
    auto saved = ctx_.scopes;
    ctx_.scopes.assign(1, {});
    objective_mode_ = true;
    ir::Expr value = lower_expr(e.kids[0], &kInt);
    objective_mode_ = false;
    ctx_.scopes = std::move(saved);
    if (!value.type.is_numeric()) type_error(e.span, "minimize needs an int expression");
    ir::Objective o;
    o.name = ctx_.harness;
    if (ctx_.objectives++ > 0) o.name += "_" + std::to_string(ctx_.objectives);
    o.expr = std::move(value);
    o.harness = ctx_.harness_fn;
    o.span = e.span;
    p_.objectives.push_back(std::move(o));
  }

  ir::Instr lower_assign(const Expr& e) {
    const Expr& target = e.kids[0];
    const Expr& value = e.kids[1];
    if (target.kind == AK::Name) {
      Resolved r = resolve_name(target.text, target.span);
      if (r.kind == Resolved::Local) {
        TypeDesc t = ctx_.fn.locals[static_cast<size_t>(r.index)];
        ir::Instr i = instr(InstrKind::AssignLocal, e.span);
        i.index = r.index;
        i.exprs.push_back(coerce(lower_expr(value, &t), t, value.span));
        return i;
      }
      if (r.kind == Resolved::Field) return assign_field(r.index, std::nullopt, value, e.span);
      type_error(target.span, "cannot assign to '" + target.text + "'");
    }
    if (target.kind == AK::Field) {
      FieldRef f = lower_field_ref(target);
      return assign_field(f.field, std::move(f.object), value, e.span);
    }
    type_error(target.span, "left side of assignment is not assignable");
  }

  ir::Instr assign_field(int field, std::optional<ir::Expr> object, const Expr& value, const SourceSpan& span) {
    const FieldSlot& f = t_.field_layout[static_cast<size_t>(field)];
    ir::Expr v = coerce(lower_expr(value, &f.type), f.type, value.span);
    if (f.is_static) {
      ir::Instr i = instr(InstrKind::AssignStatic, span);
      i.index = f.slot;
      i.exprs.push_back(std::move(v));
      return i;
    }
    ir::Instr i = instr(InstrKind::AssignField, span);
    i.index = f.slot;
    i.exprs.push_back(object ? std::move(*object) : self_expr(span));
    i.exprs.push_back(std::move(v));
    return i;
  }

  // --- names -------------------------------------------------------------------------

  struct Resolved {
    enum Kind { None, Local, Field, Class } kind = None;
    int index = -1;
  };

  Resolved resolve_name(const std::string& name, const SourceSpan& span, bool allow_class = false) {
    for (auto it = ctx_.scopes.rbegin(); it != ctx_.scopes.rend(); ++it) {
      auto f = it->find(name);
      if (f != it->end()) return {Resolved::Local, f->second};
    }
    if (objective_mode_ && name_is_harness_local(name)) {
      type_error(span, "objective may not use the local variable '" + name + "'");
    }
    int fld = t_.find_field(ctx_.cls, name);
    if (fld >= 0) {
      if (!t_.field_layout[static_cast<size_t>(fld)].is_static && (ctx_.is_static || objective_mode_)) {
        type_error(span, "instance field '" + name + "' used in a static context");
      }
      return {Resolved::Field, fld};
    }
    for (int o = t_.classes[static_cast<size_t>(ctx_.cls)].outer; o >= 0; o = t_.classes[static_cast<size_t>(o)].outer) {
      int of = t_.find_field(o, name);
      if (of < 0) continue;
      if (!t_.field_layout[static_cast<size_t>(of)].is_static) {
        type_error(span, "instance field '" + name + "' of an enclosing class is not accessible");
      }
      return {Resolved::Field, of};
    }
    int cls = t_.find_class(name, ctx_.cls);
    if (cls >= 0 && allow_class) return {Resolved::Class, cls};
    if (cls >= 0) type_error(span, "class name '" + name + "' used as a value");
    type_error(span, "cannot resolve '" + name + "'");
  }

  bool name_is_harness_local(const std::string& name) const {
    for (const auto& n : ctx_.fn.local_names)
      if (n == name) return true;
    return false;
  }

  struct FieldRef {
    int field = -1;
    std::optional<ir::Expr> object;  // empty for static fields
  };

  FieldRef lower_field_ref(const Expr& e) {
    const Expr& recv = e.kids[0];
    int cls = -1;
    std::optional<ir::Expr> object;
    if (recv.kind == AK::Name) {
      Resolved r = resolve_name(recv.text, recv.span, true);
      if (r.kind == Resolved::Class) cls = r.index;
    }
    if (cls < 0) {
      ir::Expr o = lower_expr(recv, nullptr);
      if (o.type.tag != TypeTag::Obj || o.type.cls < 0) {
        type_error(e.span, "field access '" + e.text + "' on a value of type " + t_.describe(o.type));
      }
      cls = o.type.cls;
      object = std::move(o);
    }
    int f = t_.find_field(cls, e.text);
    if (f < 0) type_error(e.span, "no field '" + e.text + "' in " + t_.classes[static_cast<size_t>(cls)].name);
    const FieldSlot& slot = t_.field_layout[static_cast<size_t>(f)];
    if (!slot.is_static && !object) {
      type_error(e.span, "instance field '" + e.text + "' accessed through a class name");
    }
    if (slot.is_static) object.reset();
    return {f, std::move(object)};
  }

  ir::Expr read_field(int field, std::optional<ir::Expr> object, const SourceSpan& span) {
    const FieldSlot& f = t_.field_layout[static_cast<size_t>(field)];
    if (f.is_static) return make(IE::Static, f.type, f.slot, span);
    ir::Expr e = make(IE::Field, f.type, f.slot, span);
    e.kids.push_back(object ? std::move(*object) : self_expr(span));
    return e;
  }

  // --- types -------------------------------------------------------------------------

  bool assignable(const TypeDesc& from, const TypeDesc& to) const {
    if (from == to) return true;
    switch (to.tag) {
      case TypeTag::Int:
      case TypeTag::Char:
        return from.is_numeric();
      case TypeTag::Bool:
        return from.tag == TypeTag::Bool;
      case TypeTag::Str:
        return from.tag == TypeTag::Null || (from.tag == TypeTag::Obj && from.cls < 0);
      case TypeTag::Obj:
        if (from.tag == TypeTag::Null) return true;
        if (to.cls < 0) return from.is_ref();
        if (from.tag == TypeTag::Obj) return from.cls < 0 || t_.is_subclass(from.cls, to.cls);
        return false;
      case TypeTag::Lib:
        if (from.tag == TypeTag::Null) return true;
        if (from.tag == TypeTag::Obj && from.cls < 0) return true;
        return from.tag == TypeTag::Lib && (from.lib == to.lib || (to.lib == "List" && from.lib == "LinkedList"));
      case TypeTag::Null:
      case TypeTag::Void:
        return false;
    }
    return false;
  }

  ir::Expr coerce(ir::Expr e, const TypeDesc& to, const SourceSpan& span) {
    if (!assignable(e.type, to)) {
      type_error(span, "cannot use a value of type " + t_.describe(e.type) + " as " + t_.describe(to));
    }
    return e;
  }

  ir::Expr default_value(const TypeDesc& t) {
    if (t.tag == TypeTag::Int || t.tag == TypeTag::Char || t.tag == TypeTag::Bool) return const_int(0, t);
    return make(IE::Null, kNull, 0, {});
  }

  std::optional<TypeDesc> unify(const TypeDesc& a, const TypeDesc& b) const {
    if (a == b) return a;
    if (a.is_numeric() && b.is_numeric()) return kInt;
    if (a.tag == TypeTag::Null && b.is_ref()) return b;
    if (b.tag == TypeTag::Null && a.is_ref()) return a;
    if (a.tag == TypeTag::Obj && b.tag == TypeTag::Obj) {
      if (assignable(a, b)) return b;
      if (assignable(b, a)) return a;
      return kAny;
    }
    return std::nullopt;
  }

  // --- expressions -------------------------------------------------------------------

  ir::Expr lower_expr(const Expr& e, const TypeDesc* expected) {
    switch (e.kind) {
      case AK::IntLit: return make(IE::Const, kInt, wrap32(e.value), e.span);
      case AK::CharLit: return make(IE::Const, kChar, e.value, e.span);
      case AK::BoolLit: return make(IE::Const, kBool, e.value, e.span);
      case AK::StringLit: return make(IE::Str, kStr, intern(e.text), e.span);
      case AK::Null: return make(IE::Null, kNull, 0, e.span);
      case AK::This:
        if (objective_mode_) type_error(e.span, "objective may not use 'this'");
        return self_expr(e.span);
      case AK::Name: {
        Resolved r = resolve_name(e.text, e.span);
        if (r.kind == Resolved::Local) {
          return make(IE::Local, ctx_.fn.locals[static_cast<size_t>(r.index)], r.index, e.span);
        }
        return read_field(r.index, std::nullopt, e.span);
      }
      case AK::Field: {
        FieldRef f = lower_field_ref(e);
        return read_field(f.field, std::move(f.object), e.span);
      }
      case AK::Call: return lower_call(e);
      case AK::New: return lower_new(e);
      case AK::Unary: return lower_unary(e);
      case AK::Binary: return lower_binary(e);
      case AK::Assign:
        type_error(e.span, "assignment used as a value");
      case AK::Hole: {
        if (e.unknown <= 0 || e.unknown > static_cast<int>(p_.registry.holes.size())) {
          type_error(e.span, "hole without an identifier");
        }
        bool boolean = expected && expected->tag == TypeTag::Bool;
        if (boolean) p_.registry.hole(e.unknown).boolean = true;
        ir::Expr h = make(IE::Hole, boolean ? kBool : kInt, e.unknown, e.span);
        if (expected && expected->tag == TypeTag::Char) h.type = kChar;
        return h;
      }
      case AK::Choice: {
        if (e.unknown <= 0 || e.unknown > static_cast<int>(p_.registry.choices.size())) {
          type_error(e.span, "generator without an identifier");
        }
        ir::Expr c = make(IE::Choice, kVoid, e.unknown, e.span);
        std::optional<TypeDesc> type;
        for (const auto& alt : e.kids) {
          ir::Expr a = lower_expr(alt, expected);
          type = type ? unify(*type, a.type) : a.type;
          if (!type) type_error(alt.span, "generator alternatives have different types");
          c.kids.push_back(std::move(a));
        }
        c.type = *type;
        return c;
      }
    }
    type_error(e.span, "unsupported expression");
  }

  long long intern(const std::string& s) {
    for (size_t i = 0; i < p_.strings.size(); ++i)
      if (p_.strings[i] == s) return static_cast<long long>(i);
    p_.strings.push_back(s);
    return static_cast<long long>(p_.strings.size()) - 1;
  }

  ir::Expr lower_unary(const Expr& e) {
    if (e.text == "!") {
      ir::Expr k = lower_expr(e.kids[0], &kBool);
      if (k.type.tag != TypeTag::Bool) type_error(e.span, "'!' needs a boolean");
      ir::Expr u = make(IE::Unary, kBool, 0, e.span);
      u.op = Op::Not;
      u.kids.push_back(std::move(k));
      return u;
    }
    ir::Expr k = lower_expr(e.kids[0], &kInt);
    if (!k.type.is_numeric()) type_error(e.span, "unary '-' needs a number");
    ir::Expr u = make(IE::Unary, kInt, 0, e.span);
    u.op = Op::Neg;
    u.kids.push_back(std::move(k));
    return u;
  }

  static std::optional<Op> binary_op(const std::string& t) {
    static const std::map<std::string, Op> ops = {
        {"+", Op::Add}, {"-", Op::Sub}, {"*", Op::Mul}, {"/", Op::Div}, {"%", Op::Mod},
        {"==", Op::Eq}, {"!=", Op::Ne}, {"<", Op::Lt},  {"<=", Op::Le}, {">", Op::Gt},
        {">=", Op::Ge}, {"&&", Op::And}, {"||", Op::Or}};
    auto it = ops.find(t);
    if (it == ops.end()) return std::nullopt;
    return it->second;
  }

  ir::Expr lower_binary(const Expr& e) {
    auto op = binary_op(e.text);
    if (!op) type_error(e.span, "unknown operator '" + e.text + "'");
    const Expr& l = e.kids[0];
    const Expr& r = e.kids[1];
    ir::Expr a, b;
    if (*op == Op::And || *op == Op::Or) {
      a = lower_expr(l, &kBool);
      b = lower_expr(r, &kBool);
      if (a.type.tag != TypeTag::Bool || b.type.tag != TypeTag::Bool) {
        type_error(e.span, "'" + e.text + "' needs booleans");
      }
      return binary(*op, kBool, std::move(a), std::move(b), e.span);
    }
    if (*op == Op::Eq || *op == Op::Ne) {
      // A bare hole takes the type of the other side.
      bool hole_left = l.kind == AK::Hole && r.kind != AK::Hole;
      if (hole_left) {
        b = lower_expr(r, nullptr);
        a = lower_expr(l, &b.type);
      } else {
        a = lower_expr(l, nullptr);
        b = lower_expr(r, &a.type);
      }
      bool ok = (a.type.is_numeric() && b.type.is_numeric()) ||
                (a.type.tag == TypeTag::Bool && b.type.tag == TypeTag::Bool) ||
                (a.type.is_ref() && b.type.is_ref());
      if (!ok) {
        type_error(e.span, "cannot compare " + t_.describe(a.type) + " with " + t_.describe(b.type));
      }
      return binary(*op, kBool, std::move(a), std::move(b), e.span);
    }
    a = lower_expr(l, nullptr);
    b = lower_expr(r, nullptr);
    if (*op == Op::Add && (a.type.tag == TypeTag::Str || b.type.tag == TypeTag::Str)) {
      ir::Expr c = make(IE::Builtin, kStr, static_cast<long long>(Builtin::StrConcat), e.span);
      TypeTag at = a.type.tag, bt = b.type.tag;
      c.kids.push_back(std::move(a));
      c.kids.push_back(std::move(b));
      c.kids.push_back(const_int(static_cast<long long>(at)));
      c.kids.push_back(const_int(static_cast<long long>(bt)));
      return c;
    }
    if (!a.type.is_numeric() || !b.type.is_numeric()) {
      type_error(e.span, "'" + e.text + "' needs numbers, got " + t_.describe(a.type) + " and " +
                             t_.describe(b.type));
    }
    bool cmp = *op == Op::Lt || *op == Op::Le || *op == Op::Gt || *op == Op::Ge;
    return binary(*op, cmp ? kBool : kInt, std::move(a), std::move(b), e.span);
  }

  static ir::Expr binary(Op op, TypeDesc type, ir::Expr a, ir::Expr b, const SourceSpan& span) {
    ir::Expr x = make(IE::Binary, std::move(type), 0, span);
    x.op = op;
    x.kids.push_back(std::move(a));
    x.kids.push_back(std::move(b));
    return x;
  }

  // --- calls -------------------------------------------------------------------------

  std::vector<ir::Expr> lower_args(const Expr& e) {
    std::vector<ir::Expr> out;
    for (size_t i = 0; i < e.arg_count(); ++i) out.push_back(lower_expr(e.arg(i), nullptr));
    return out;
  }

  // Re-lowers bare holes and generators once the parameter types are known.
  void retype_args(const Expr& e, std::vector<ir::Expr>& args, const std::vector<TypeDesc>& params) {
    for (size_t i = 0; i < args.size(); ++i) {
      const Expr& a = e.arg(i);
      if (a.kind == AK::Hole || a.kind == AK::Choice) args[i] = lower_expr(a, &params[i]);
      args[i] = coerce(std::move(args[i]), params[i], a.span);
    }
  }

  // Most specific applicable method among `cands`; -1 when none applies.
  int pick(const std::vector<int>& cands, const std::vector<ir::Expr>& args, const SourceSpan& span,
           const std::string& what) {
    std::vector<int> ok;
    for (int m : cands) {
      const MethodInfo& mi = t_.methods[static_cast<size_t>(m)];
      if (mi.params.size() != args.size()) continue;
      bool fits = true;
      for (size_t i = 0; i < args.size() && fits; ++i) fits = assignable(args[i].type, mi.params[i]);
      if (fits) ok.push_back(m);
    }
    if (ok.empty()) return -1;
    auto more_specific = [&](int x, int y) {
      const auto& px = t_.methods[static_cast<size_t>(x)].params;
      const auto& py = t_.methods[static_cast<size_t>(y)].params;
      for (size_t i = 0; i < px.size(); ++i)
        if (!assignable(px[i], py[i])) return false;
      return true;
    };
    for (int m : ok) {
      bool best = true;
      for (int o : ok)
        if (o != m && !more_specific(m, o)) best = false;
      if (best) return m;
    }
    type_error(span, "ambiguous call to '" + what + "'");
  }

  int pick_ctor(int cls, const std::vector<ir::Expr>& args, const SourceSpan& span) {
    std::vector<int> ctors;
    for (int m : t_.classes[static_cast<size_t>(cls)].methods)
      if (t_.methods[static_cast<size_t>(m)].is_ctor) ctors.push_back(m);
    int m = pick(ctors, args, span, t_.classes[static_cast<size_t>(cls)].name);
    if (m < 0) type_error(span, "no constructor of " + t_.classes[static_cast<size_t>(cls)].name + " matches the arguments");
    return m;
  }

  ir::Expr invoke(int method, std::optional<ir::Expr> receiver, std::vector<ir::Expr> args, const Expr& site) {
    const MethodInfo& mi = t_.methods[static_cast<size_t>(method)];
    retype_args(site, args, mi.params);
    std::vector<ir::Expr> full;
    if (mi.is_static) {
      for (auto& a : args) full.push_back(std::move(a));
      return call(p_.function_index.at(mi.mangled), mi.ret, std::move(full), site.span);
    }
    full.push_back(receiver ? std::move(*receiver) : self_expr(site.span));
    for (auto& a : args) full.push_back(std::move(a));
    return call(dispatch_for(mi.signature), mi.ret, std::move(full), site.span);
  }

  ir::Expr builtin_call(const BuiltinEntry& b, std::optional<ir::Expr> receiver, std::vector<ir::Expr> args,
                        const Expr& site) {
    ir::Expr c = make(IE::Builtin, b.ret, static_cast<long long>(b.id), site.span);
    if (b.id == Builtin::CharTokens) uses_char_tokens_ = true;
    for (size_t i = 0; i < args.size(); ++i) {
      if (b.params[i].tag == TypeTag::Obj && b.params[i].cls < 0) continue;  // accepts anything
      args[i] = coerce(std::move(args[i]), b.params[i], site.arg(i).span);
    }
    if (receiver) c.kids.push_back(std::move(*receiver));
    TypeTag last = args.empty() ? TypeTag::Void : args.back().type.tag;
    for (auto& a : args) c.kids.push_back(std::move(a));
    if (b.id == Builtin::SbAppend) c.kids.push_back(const_int(static_cast<long long>(last)));
    return c;
  }

  ir::Expr lower_call(const Expr& e) {
    if (!e.has_receiver) {
      if (e.text == "super") type_error(e.span, "super(...) must be the first statement of a constructor");
      if (e.text == "minimize") type_error(e.span, "minimize must be a statement of its own");
      std::vector<ir::Expr> args = lower_args(e);
      for (int scope = ctx_.cls; scope >= 0; scope = t_.classes[static_cast<size_t>(scope)].outer) {
        std::vector<int> cands = t_.find_methods(scope, e.text);
        if (cands.empty()) continue;
        int m = pick(cands, args, e.span, e.text);
        if (m < 0) type_error(e.span, "no overload of '" + e.text + "' matches the arguments");
        const MethodInfo& mi = t_.methods[static_cast<size_t>(m)];
        if (!mi.is_static && (scope != ctx_.cls || ctx_.is_static || objective_mode_)) {
          type_error(e.span, "instance method '" + e.text + "' called without an object");
        }
        return invoke(m, std::nullopt, std::move(args), e);
      }
      const BuiltinEntry* b = find_builtin("", e.text, args.size());
      if (!b) fail(ErrorKind::UnknownBuiltin, e.span, "unknown method or builtin '" + e.text + "'");
      return builtin_call(*b, std::nullopt, std::move(args), e);
    }

    const Expr& recv = e.receiver();
    if (recv.kind == AK::Name) {
      Resolved r = resolve_name(recv.text, recv.span, true);
      if (r.kind == Resolved::Class) {
        std::vector<ir::Expr> args = lower_args(e);
        std::vector<int> statics;
        for (int m : t_.find_methods(r.index, e.text))
          if (t_.methods[static_cast<size_t>(m)].is_static) statics.push_back(m);
        int m = pick(statics, args, e.span, e.text);
        if (m < 0) type_error(e.span, "no static method '" + e.text + "' in " + t_.classes[static_cast<size_t>(r.index)].name);
        return invoke(m, std::nullopt, std::move(args), e);
      }
    }
    ir::Expr object = lower_expr(recv, nullptr);
    std::vector<ir::Expr> args = lower_args(e);
    const TypeDesc& rt = object.type;
    if (rt.tag == TypeTag::Obj && rt.cls >= 0) {
      std::vector<int> cands = t_.find_methods(rt.cls, e.text);
      int m = pick(cands, args, e.span, e.text);
      if (m < 0) type_error(e.span, "no method '" + e.text + "' in " + t_.classes[static_cast<size_t>(rt.cls)].name + " matches the arguments");
      return invoke(m, std::move(object), std::move(args), e);
    }
    if (rt.tag == TypeTag::Obj) {
      // Erased element type: any user method with a unique signature.
      std::vector<int> cands;
      std::set<std::string> sigs;
      for (const auto& mi : t_.methods) {
        if (mi.is_ctor || mi.is_static || mi.name != e.text || mi.params.size() != args.size()) continue;
        if (sigs.insert(mi.signature).second) cands.push_back(mi.id);
      }
      if (cands.size() == 1) return invoke(cands[0], std::move(object), std::move(args), e);
      if (cands.size() > 1) type_error(e.span, "call to '" + e.text + "' on an untyped object is ambiguous");
      type_error(e.span, "no method '" + e.text + "' for an untyped object");
    }
    std::string owner = rt.tag == TypeTag::Str ? "String" : rt.tag == TypeTag::Lib ? rt.lib : "";
    const BuiltinEntry* b = owner.empty() ? nullptr : find_builtin(owner, e.text, args.size());
    if (!b) {
      fail(ErrorKind::UnknownBuiltin, e.span,
           "unknown method '" + e.text + "' on " + t_.describe(rt));
    }
    return builtin_call(*b, std::move(object), std::move(args), e);
  }

  ir::Expr lower_new(const Expr& e) {
    std::vector<ir::Expr> args = lower_args(e);
    if (e.has_body) {
      int cls = t_.class_of(&e.anon.front());
      if (cls < 0) type_error(e.span, "anonymous class missing from the class table");
      if (!args.empty()) type_error(e.span, "anonymous classes with constructor arguments are not supported");
      int ctor = pick_ctor(cls, args, e.span);
      return call(p_.function_index.at(new_name(t_.methods[static_cast<size_t>(ctor)])), TypeDesc::object(cls), {},
                  e.span);
    }
    TypeDesc t = t_.resolve(e.type, ctx_.cls);
    if (t.tag == TypeTag::Lib) {
      const BuiltinEntry* b = find_builtin("", t.lib, args.size());
      if (!b) fail(ErrorKind::UnknownBuiltin, e.span, "cannot instantiate library type '" + t.lib + "'");
      return builtin_call(*b, std::nullopt, std::move(args), e);
    }
    if (t.tag != TypeTag::Obj || t.cls < 0) type_error(e.span, "cannot instantiate '" + e.type.name + "'");
    if (t_.classes[static_cast<size_t>(t.cls)].is_interface) {
      type_error(e.span, "cannot instantiate interface '" + e.type.name + "'");
    }
    int ctor = pick_ctor(t.cls, args, e.span);
    const MethodInfo& mi = t_.methods[static_cast<size_t>(ctor)];
    retype_args(e, args, mi.params);
    return call(p_.function_index.at(new_name(mi)), t, std::move(args), e.span);
  }

  const SketchAst& ast_;
  const ClassTable& t_;
  ir::Program p_;
  Ctx ctx_;
  bool objective_mode_ = false;
  bool uses_char_tokens_ = false;
  std::vector<std::string> dispatch_order_;
};

void pin_iteration(ir::Expr& e, int iteration) {
  if (e.kind == IE::Hole || e.kind == IE::Choice) e.iteration = iteration;
  for (auto& k : e.kids) pin_iteration(k, iteration);
}

void pin_iteration(ir::Instr& i, int iteration) {
  for (auto& e : i.exprs) pin_iteration(e, iteration);
  for (auto& b : i.body) pin_iteration(b, iteration);
  for (auto& b : i.orelse) pin_iteration(b, iteration);
}

}  // namespace

ir::Function make_dyn_dispatch(const std::string& signature, const ClassTable& t, const ir::Program& p,
                               bool char_tokens) {
  ir::Function f;
  f.name = dispatch_name(signature);
  f.is_dispatch = true;
  // Parameter and return types come from any declaration of the signature.
  const MethodInfo* proto = nullptr;
  for (const auto& m : t.methods)
    if (!m.is_ctor && !m.is_static && m.signature == signature) {
      proto = &m;
      break;
    }
  f.locals.push_back(kAny);
  f.local_names.push_back("self");
  if (proto) {
    for (size_t i = 0; i < proto->params.size(); ++i) {
      f.locals.push_back(proto->params[i]);
      f.local_names.push_back("a" + std::to_string(i));
    }
    f.ret = proto->ret;
  }
  f.num_params = static_cast<int>(f.locals.size());

  auto arm = [&](int cls_id, ir::Expr target_call) {
    ir::Instr i;
    i.kind = InstrKind::If;
    ir::Expr cid = make(IE::ClassId, kInt, 0, {});
    cid.kids.push_back(make(IE::Local, kAny, 0, {}));
    i.exprs.push_back(binary_eq(std::move(cid), const_int(cls_id)));
    if (f.ret.tag == TypeTag::Void) {
      ir::Instr ev;
      ev.kind = InstrKind::Eval;
      ev.exprs.push_back(std::move(target_call));
      i.body.push_back(std::move(ev));
      ir::Instr r;
      r.kind = InstrKind::Return;
      i.body.push_back(std::move(r));
    } else {
      ir::Instr r;
      r.kind = InstrKind::Return;
      r.exprs.push_back(std::move(target_call));
      i.body.push_back(std::move(r));
    }
    f.body.push_back(std::move(i));
  };

  for (const auto& c : t.classes) {
    if (c.is_interface) continue;
    auto it = t.vtable.find({c.id, signature});
    if (it == t.vtable.end()) continue;
    std::vector<ir::Expr> args;
    for (int k = 0; k < f.num_params; ++k) args.push_back(make(IE::Local, f.locals[static_cast<size_t>(k)], k, {}));
    arm(c.id, call(p.function_index.at(it->second), f.ret, std::move(args), {}));
  }
  if (char_tokens && signature == "getId" && f.ret.tag == TypeTag::Int) {
    ir::Expr b = make(IE::Builtin, kInt, static_cast<long long>(Builtin::TokenGetId), {});
    b.kids.push_back(make(IE::Local, kAny, 0, {}));
    arm(lib_class_id(t.num_classes(), LibClass::CharToken), std::move(b));
  }
  ir::Instr trap;
  trap.kind = InstrKind::Trap;
  trap.message = "no implementation of " + signature + " for the receiver";
  f.body.push_back(std::move(trap));
  return f;
}

std::vector<ir::Instr> lower_minrepeat(const ir::Instr& block, int n) {
  std::vector<ir::Instr> out;
  for (int i = 1; i <= n; ++i) {
    for (const auto& s : block.body) {
      ir::Instr copy = s;
      pin_iteration(copy, i);
      out.push_back(std::move(copy));
    }
  }
  return out;
}

ir::Program lower_program(const SketchAst& ast, const ClassTable& table, const UnknownRegistry& registry) {
  return Lowerer(ast, table, registry).run();
}

}  // namespace oosk
