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

// Flat imperative program: functions over scalars and uniform object
// records.  Objects are a class id plus one slot per instance field of the
// whole program.

#ifndef OOSK_IR_HPP_
#define OOSK_IR_HPP_

#include <map>
#include <string>
#include <vector>

#include "oosk/classtable.hpp"
#include "oosk/desugar.hpp"
#include "oosk/stdlib.hpp"

namespace oosk::ir {

enum class Op { Add, Sub, Mul, Div, Mod, Eq, Ne, Lt, Le, Gt, Ge, And, Or, Not, Neg };

const char* op_text(Op op);

enum class ExprKind {
  Const,    // value; type says int / char / boolean
  Str,      // value = string constant index
  Null,
  Local,    // value = local index
  Field,    // kids[0] object; value = instance slot
  Static,   // value = static slot
  Hole,     // value = hole ordinal
  Choice,   // value = choice ordinal; kids are the alternatives
  Unary,    // op; kids[0]
  Binary,   // op; kids[0], kids[1] (And/Or short-circuit)
  Call,     // value = function index; kids are the arguments
  Builtin,  // value = Builtin id; kids are receiver (if any) then arguments
  Alloc,    // value = class id
  ClassId,  // kids[0] object
};

struct Expr {
  ExprKind kind = ExprKind::Null;
  TypeDesc type;
  long long value = 0;
  Op op = Op::Add;
  std::vector<Expr> kids;
  // Hole / Choice: 0 inside a repeat template means "current iteration";
  // unrolled copies carry their fixed iteration here (1-based).
  int iteration = 0;
  SourceSpan span;
};

enum class InstrKind {
  AssignLocal,   // index = local; exprs[0]
  AssignField,   // index = slot; exprs[0] object, exprs[1] value
  AssignStatic,  // index = static slot; exprs[0]
  If,            // exprs[0]; body, orelse
  While,         // exprs[0]; body
  Return,        // exprs[0] optional
  Assert,        // exprs[0]
  Eval,          // exprs[0]
  Repeat,        // index = repeat ordinal; body is the template
  Trap,          // message
};

struct Instr {
  InstrKind kind = InstrKind::Eval;
  int index = 0;
  std::vector<Expr> exprs;
  std::vector<Instr> body;
  std::vector<Instr> orelse;
  std::string message;
  SourceSpan span;
};

struct Function {
  std::string name;
  int num_params = 0;                    // including self
  std::vector<TypeDesc> locals;          // params first
  std::vector<std::string> local_names;
  TypeDesc ret;
  std::vector<Instr> body;
  bool is_harness = false;
  bool is_dispatch = false;
  int method_id = -1;                    // class-table id, -1 for synthetic functions
  std::string owner;                     // mangled class, empty for synthetic functions
};

struct Objective {
  std::string name;     // harness that declared it, plus a suffix when it declares several
  Expr expr;
  int harness = -1;     // function index
  SourceSpan span;
};

struct Program {
  std::vector<Function> functions;
  std::map<std::string, int> function_index;
  std::vector<int> harnesses;            // declaration order
  std::vector<Objective> objectives;     // declaration order
  int static_init = -1;
  std::vector<std::string> strings;
  UnknownRegistry registry;

  int num_classes = 0;                   // user classes; library objects use ids above
  std::vector<std::string> class_names;  // user classes then library classes
  std::vector<TypeDesc> slot_types;      // per instance slot
  std::vector<TypeDesc> static_types;    // per static slot
  std::vector<std::string> static_names; // Owner.field per static slot
  std::vector<std::string> slot_names;   // Owner.field per instance slot

  int lib_class(LibClass c) const { return num_classes + static_cast<int>(c); }
  const Function& fn(const std::string& name) const { return functions.at(function_index.at(name)); }
  int find(const std::string& name) const {
    auto it = function_index.find(name);
    return it == function_index.end() ? -1 : it->second;
  }
};

// Human-readable listing for --emit-ir.
std::string listing(const Program& p);
std::string expr_text(const Program& p, const Function& f, const Expr& e);

}  // namespace oosk::ir

#endif  // OOSK_IR_HPP_
