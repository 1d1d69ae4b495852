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

#include "interp.hpp"

#include "oosk/stdlib.hpp"

namespace oosk::detail {

namespace {

constexpr int kMaxCallDepth = 256;

}  // namespace

Value ConcreteOracle::hole(int ordinal, int iteration) {
  auto it = a_.holes.find({ordinal, iteration});
  return Value::integer(it == a_.holes.end() ? 0 : it->second);
}

int ConcreteOracle::choice(int ordinal, int iteration) {
  auto it = a_.choices.find({ordinal, iteration});
  return it == a_.choices.end() ? 0 : it->second;
}

int ConcreteOracle::repeat(int ordinal) {
  auto it = a_.repeats.find(ordinal);
  return it == a_.repeats.end() ? 0 : it->second;
}

bool ConcreteOracle::decide(Rel, const Value&, const Value&) {
  throw TrapSignal{"symbolic value in concrete evaluation"};
}

std::int64_t ConcreteOracle::concrete(const Value&) {
  throw TrapSignal{"symbolic value in concrete evaluation"};
}

Interpreter::Interpreter(const ir::Program& p, const Limits& limits, Oracle& oracle)
    : p_(p), limits_(limits), oracle_(oracle), heap_(&p.strings) {}

Value Interpreter::default_of(const TypeDesc& t) const {
  if (t.tag == TypeTag::Int || t.tag == TypeTag::Char || t.tag == TypeTag::Bool) return Value::integer(0);
  return Value::null();
}

void Interpreter::tick() {
  if (++steps_ > limits_.step_limit) throw ResourceSignal{"step limit exceeded"};
}

void Interpreter::begin() {
  heap_ = Heap(&p_.strings);
  heap_.statics.clear();
  for (const auto& t : p_.static_types) heap_.statics.push_back(default_of(t));
  if (p_.static_init >= 0) call(p_.static_init, {});
}

Value Interpreter::eval_objective(const ir::Expr& e) {
  Frame f;
  return eval(e, f);
}

void Interpreter::run(int fn) { call(fn, {}); }

HeapObject& Interpreter::object(const Value& v, const char* what) {
  if (v.kind != Value::Ref) throw TrapSignal{std::string("null dereference in ") + what};
  return heap_.at(v);
}

Value Interpreter::call(int fn, std::vector<Value> args) {
  tick();
  if (++depth_ > kMaxCallDepth) throw ResourceSignal{"call depth exceeded"};
  const ir::Function& f = p_.functions.at(static_cast<size_t>(fn));
  Frame frame;
  frame.locals = std::move(args);
  for (size_t i = frame.locals.size(); i < f.locals.size(); ++i) frame.locals.push_back(default_of(f.locals[i]));
  Flow flow = exec(f.body, frame);
  --depth_;
  if (flow == Flow::Normal && f.ret.tag != TypeTag::Void) {
    throw TrapSignal{"missing return in " + f.name};
  }
  return frame.ret;
}

Interpreter::Flow Interpreter::exec(const std::vector<ir::Instr>& body, Frame& f) {
  using ir::InstrKind;
  for (const auto& i : body) {
    tick();
    switch (i.kind) {
      case InstrKind::AssignLocal:
        f.locals[static_cast<size_t>(i.index)] = eval(i.exprs[0], f);
        break;
      case InstrKind::AssignField: {
        Value o = eval(i.exprs[0], f);
        Value v = eval(i.exprs[1], f);
        HeapObject& obj = object(o, "field store");
        if (static_cast<size_t>(i.index) >= obj.slots.size()) throw TrapSignal{"field store on a library object"};
        obj.slots[static_cast<size_t>(i.index)] = v;
        break;
      }
      case InstrKind::AssignStatic:
        heap_.statics[static_cast<size_t>(i.index)] = eval(i.exprs[0], f);
        break;
      case InstrKind::If:
        if (truth(eval(i.exprs[0], f))) {
          if (exec(i.body, f) == Flow::Return) return Flow::Return;
        } else if (exec(i.orelse, f) == Flow::Return) {
          return Flow::Return;
        }
        break;
      case InstrKind::While: {
        int n = 0;
        while (truth(eval(i.exprs[0], f))) {
          if (++n > limits_.loop_bound) throw ResourceSignal{"loop bound exceeded"};
          if (exec(i.body, f) == Flow::Return) return Flow::Return;
        }
        break;
      }
      case InstrKind::Return:
        f.ret = i.exprs.empty() ? Value::null() : eval(i.exprs[0], f);
        return Flow::Return;
      case InstrKind::Assert:
        if (!truth(eval(i.exprs[0], f))) throw AssertSignal{i.span};
        break;
      case InstrKind::Eval:
        eval(i.exprs[0], f);
        break;
      case InstrKind::Repeat: {
        int n = oracle_.repeat(i.index);
        int saved = f.iteration;
        for (int k = 1; k <= n; ++k) {
          f.iteration = k;
          if (exec(i.body, f) == Flow::Return) {
            f.iteration = saved;
            return Flow::Return;
          }
        }
        f.iteration = saved;
        break;
      }
      case InstrKind::Trap:
        throw TrapSignal{i.message};
    }
  }
  return Flow::Normal;
}

bool Interpreter::truth(const Value& v) {
  if (v.kind == Value::Sym) return oracle_.decide(Rel::Ne, v, Value::integer(0));
  return v.v != 0;
}

std::int64_t Interpreter::number(const Value& v) {
  if (v.kind == Value::Sym) return oracle_.concrete(v);
  if (v.kind != Value::Int) throw TrapSignal{"arithmetic on a reference"};
  return v.v;
}

bool Interpreter::compare(ir::Op op, const Value& a, const Value& b) {
  using ir::Op;
  if (a.kind == Value::Sym || b.kind == Value::Sym) {
    switch (op) {
      case Op::Eq: return oracle_.decide(Rel::Eq, a, b);
      case Op::Ne: return oracle_.decide(Rel::Ne, a, b);
      case Op::Lt: return oracle_.decide(Rel::Lt, a, b);
      case Op::Le: return oracle_.decide(Rel::Le, a, b);
      case Op::Gt: return oracle_.decide(Rel::Lt, b, a);
      case Op::Ge: return oracle_.decide(Rel::Le, b, a);
      default: break;
    }
    throw TrapSignal{"bad comparison"};
  }
  switch (op) {
    case Op::Eq: return a == b;
    case Op::Ne: return !(a == b);
    case Op::Lt: return number(a) < number(b);
    case Op::Le: return number(a) <= number(b);
    case Op::Gt: return number(a) > number(b);
    case Op::Ge: return number(a) >= number(b);
    default: break;
  }
  throw TrapSignal{"bad comparison"};
}

Value Interpreter::eval(const ir::Expr& e, Frame& f) {
  using ir::ExprKind;
  using ir::Op;
  switch (e.kind) {
    case ExprKind::Const: return Value::integer(e.value);
    case ExprKind::Str: return Value::str(e.value);
    case ExprKind::Null: return Value::null();
    case ExprKind::Local: return f.locals[static_cast<size_t>(e.value)];
    case ExprKind::Field: {
      HeapObject& o = object(eval(e.kids[0], f), "field read");
      if (static_cast<size_t>(e.value) >= o.slots.size()) throw TrapSignal{"field read on a library object"};
      return o.slots[static_cast<size_t>(e.value)];
    }
    case ExprKind::Static: return heap_.statics[static_cast<size_t>(e.value)];
    case ExprKind::Hole: {
      int ord = static_cast<int>(e.value);
      int iter = e.iteration > 0 ? e.iteration : (p_.registry.hole(ord).repeat > 0 ? f.iteration : 0);
      return oracle_.hole(ord, iter);
    }
    case ExprKind::Choice: {
      int ord = static_cast<int>(e.value);
      int iter = e.iteration > 0 ? e.iteration : (p_.registry.choice(ord).repeat > 0 ? f.iteration : 0);
      int k = oracle_.choice(ord, iter);
      if (k < 0 || k >= static_cast<int>(e.kids.size())) throw TrapSignal{"choice index out of range"};
      return eval(e.kids[static_cast<size_t>(k)], f);
    }
    case ExprKind::Unary: {
      Value v = eval(e.kids[0], f);
      if (e.op == Op::Not) return Value::boolean(!truth(v));
      return Value::integer(wrap32(-number(v)));
    }
    case ExprKind::Binary: {
      if (e.op == Op::And) return Value::boolean(truth(eval(e.kids[0], f)) && truth(eval(e.kids[1], f)));
      if (e.op == Op::Or) return Value::boolean(truth(eval(e.kids[0], f)) || truth(eval(e.kids[1], f)));
      Value a = eval(e.kids[0], f);
      Value b = eval(e.kids[1], f);
      switch (e.op) {
        case Op::Eq: case Op::Ne: case Op::Lt: case Op::Le: case Op::Gt: case Op::Ge:
          return Value::boolean(compare(e.op, a, b));
        default: break;
      }
      std::int64_t x = number(a), y = number(b);
      switch (e.op) {
        case Op::Add: return Value::integer(wrap32(x + y));
        case Op::Sub: return Value::integer(wrap32(x - y));
        case Op::Mul: return Value::integer(wrap32(x * y));
        case Op::Div:
          if (y == 0) throw TrapSignal{"division by zero"};
          return Value::integer(wrap32(x / y));
        case Op::Mod:
          if (y == 0) throw TrapSignal{"division by zero"};
          return Value::integer(wrap32(x % y));
        default: break;
      }
      throw TrapSignal{"bad operator"};
    }
    case ExprKind::Call: {
      std::vector<Value> args;
      args.reserve(e.kids.size());
      for (const auto& k : e.kids) args.push_back(eval(k, f));
      return call(static_cast<int>(e.value), std::move(args));
    }
    case ExprKind::Builtin: {
      tick();
      auto b = static_cast<Builtin>(e.value);
      std::vector<Value> args;
      args.reserve(e.kids.size());
      for (size_t k = 0; k < e.kids.size(); ++k) {
        Value v = eval(e.kids[k], f);
        // List elements may stay symbolic; everything else is concrete.
        if (v.kind == Value::Sym && !(b == Builtin::ListAdd && k == 1)) v = Value::integer(oracle_.concrete(v));
        args.push_back(v);
      }
      return builtin_eval(b, args, heap_, p_.num_classes);
    }
    case ExprKind::Alloc: {
      HeapObject o;
      o.cls = static_cast<int>(e.value);
      for (const auto& t : p_.slot_types) o.slots.push_back(default_of(t));
      return Value::ref(heap_.alloc(std::move(o)));
    }
    case ExprKind::ClassId: {
      Value v = eval(e.kids[0], f);
      if (v.kind == Value::Null) throw TrapSignal{"method call on null"};
      if (v.kind != Value::Ref) throw TrapSignal{"method call on a non-object"};
      return Value::integer(heap_.at(v).cls);
    }
  }
  throw TrapSignal{"bad expression"};
}

EvalOutcome run_harness(const ir::Program& p, int harness_fn, const Limits& limits, Oracle& oracle,
                        bool objectives) {
  EvalOutcome out;
  Interpreter in(p, limits, oracle);
  try {
    in.begin();
    for (const auto& o : p.objectives) {
      if (!objectives || o.harness != harness_fn) continue;
      Value v = in.eval_objective(o.expr);
      if (v.kind == Value::Sym) v = Value::integer(oracle.concrete(v));
      out.objective_values[o.name] = v.v;
    }
    in.run(harness_fn);
  } catch (const AssertSignal& a) {
    out.status = EvalStatus::AssertFail;
    out.site = a.site;
  } catch (const TrapSignal& t) {
    out.status = EvalStatus::Trap;
    out.reason = t.reason;
  } catch (const ResourceSignal& r) {
    out.status = EvalStatus::ResourceExceeded;
    out.reason = r.reason;
  }
  out.steps = in.steps();
  if (out.status != EvalStatus::Pass) out.objective_values.clear();
  return out;
}

}  // namespace oosk::detail
