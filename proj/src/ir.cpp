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

#include "oosk/ir.hpp"

#include <sstream>

namespace oosk::ir {

const char* op_text(Op op) {
  switch (op) {
    case Op::Add: return "+";
    case Op::Sub: return "-";
    case Op::Mul: return "*";
    case Op::Div: return "/";
    case Op::Mod: return "%";
    case Op::Eq: return "==";
    case Op::Ne: return "!=";
    case Op::Lt: return "<";
    case Op::Le: return "<=";
    case Op::Gt: return ">";
    case Op::Ge: return ">=";
    case Op::And: return "&&";
    case Op::Or: return "||";
    case Op::Not: return "!";
    case Op::Neg: return "-";
  }
  return "?";
}

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

std::string unknown_text(UnknownKind kind, const Expr& e) {
  std::string base = unknown_name(kind, static_cast<int>(e.value));
  return e.iteration > 0 ? instance_name(base, e.iteration) : base;
}

std::string type_text(const Program& p, const TypeDesc& t) {
  switch (t.tag) {
    case TypeTag::Int: return "int";
    case TypeTag::Bool: return "boolean";
    case TypeTag::Char: return "char";
    case TypeTag::Str: return "String";
    case TypeTag::Null: return "null";
    case TypeTag::Void: return "void";
    case TypeTag::Lib: return t.lib;
    case TypeTag::Obj:
      return t.cls >= 0 && t.cls < static_cast<int>(p.class_names.size()) ? p.class_names[static_cast<size_t>(t.cls)]
                                                                          : "Object";
  }
  return "?";
}

void emit(const Program& p, const Function& f, const std::vector<Instr>& body, int depth, std::ostringstream& os) {
  std::string pad(static_cast<size_t>(depth) * 2, ' ');
  for (const auto& i : body) {
    switch (i.kind) {
      case InstrKind::AssignLocal:
        os << pad << f.local_names.at(static_cast<size_t>(i.index)) << " = " << expr_text(p, f, i.exprs[0]) << "\n";
        break;
      case InstrKind::AssignField:
        os << pad << expr_text(p, f, i.exprs[0]) << "." << p.slot_names.at(static_cast<size_t>(i.index)) << " = "
           << expr_text(p, f, i.exprs[1]) << "\n";
        break;
      case InstrKind::AssignStatic:
        os << pad << p.static_names.at(static_cast<size_t>(i.index)) << " = " << expr_text(p, f, i.exprs[0]) << "\n";
        break;
      case InstrKind::If:
        os << pad << "if " << expr_text(p, f, i.exprs[0]) << " {\n";
        emit(p, f, i.body, depth + 1, os);
        if (!i.orelse.empty()) {
          os << pad << "} else {\n";
          emit(p, f, i.orelse, depth + 1, os);
        }
        os << pad << "}\n";
        break;
      case InstrKind::While:
        os << pad << "while " << expr_text(p, f, i.exprs[0]) << " {\n";
        emit(p, f, i.body, depth + 1, os);
        os << pad << "}\n";
        break;
      case InstrKind::Return:
        os << pad << "return";
        if (!i.exprs.empty()) os << " " << expr_text(p, f, i.exprs[0]);
        os << "\n";
        break;
      case InstrKind::Assert:
        os << pad << "assert " << expr_text(p, f, i.exprs[0]) << "\n";
        break;
      case InstrKind::Eval:
        os << pad << expr_text(p, f, i.exprs[0]) << "\n";
        break;
      case InstrKind::Repeat:
        os << pad << "repeat " << unknown_name(UnknownKind::Repeat, i.index) << " {";
        if (i.body.empty()) {
          os << " }\n";
        } else {
          os << "\n";
          emit(p, f, i.body, depth + 1, os);
          os << pad << "}\n";
        }
        break;
      case InstrKind::Trap:
        os << pad << "trap " << quoted(i.message) << "\n";
        break;
    }
  }
}

}  // namespace

std::string expr_text(const Program& p, const Function& f, const Expr& e) {
  auto kid = [&](size_t k) { return expr_text(p, f, e.kids.at(k)); };
  switch (e.kind) {
    case ExprKind::Const:
      if (e.type.tag == TypeTag::Bool) return e.value ? "true" : "false";
      if (e.type.tag == TypeTag::Char) return "'" + encode_utf8(e.value) + "'";
      return std::to_string(e.value);
    case ExprKind::Str: return quoted(p.strings.at(static_cast<size_t>(e.value)));
    case ExprKind::Null: return "null";
    case ExprKind::Local: return f.local_names.at(static_cast<size_t>(e.value));
    case ExprKind::Field: return kid(0) + "." + p.slot_names.at(static_cast<size_t>(e.value));
    case ExprKind::Static: return p.static_names.at(static_cast<size_t>(e.value));
    case ExprKind::Hole: return unknown_text(UnknownKind::Hole, e);
    case ExprKind::Choice: {
      std::string out = "choice(" + unknown_text(UnknownKind::Choice, e) + ": [";
      for (size_t k = 0; k < e.kids.size(); ++k) out += (k ? ", " : "") + kid(k);
      return out + "])";
    }
    case ExprKind::Unary: return std::string(op_text(e.op)) + kid(0);
    case ExprKind::Binary: {
      auto side = [&](size_t k) {
        const Expr& x = e.kids[k];
        std::string t = kid(k);
        return x.kind == ExprKind::Binary ? "(" + t + ")" : t;
      };
      return side(0) + " " + op_text(e.op) + " " + side(1);
    }
    case ExprKind::Call:
    case ExprKind::Builtin: {
      std::string name = e.kind == ExprKind::Call ? p.functions.at(static_cast<size_t>(e.value)).name
                                                  : "builtin." + builtin_entry(static_cast<Builtin>(e.value)).name;
      std::string out = name + "(";
      for (size_t k = 0; k < e.kids.size(); ++k) out += (k ? ", " : "") + kid(k);
      return out + ")";
    }
    case ExprKind::Alloc:
      return "alloc " + p.class_names.at(static_cast<size_t>(e.value));
    case ExprKind::ClassId: return "classid(" + kid(0) + ")";
  }
  return "?";
}

std::string listing(const Program& p) {
  std::ostringstream os;
  for (const auto& f : p.functions) {
    os << (f.is_harness ? "harness " : "") << "func " << f.name << "(";
    for (int k = 0; k < f.num_params; ++k) {
      os << (k ? ", " : "") << f.local_names[static_cast<size_t>(k)] << ": "
         << type_text(p, f.locals[static_cast<size_t>(k)]);
    }
    os << "): " << type_text(p, f.ret) << " {\n";
    emit(p, f, f.body, 1, os);
    os << "}\n";
  }
  for (const auto& o : p.objectives) {
    static const Function empty;
    os << "minimize " << o.name << ": " << expr_text(p, empty, o.expr) << "\n";
  }
  return os.str();
}

}  // namespace oosk::ir
