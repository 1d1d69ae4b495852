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

// Syntax tree of a partial program.  Nodes are plain values: copying a
// ClassDecl deep-copies everything below it, which is what generator
// specialization relies on.

#ifndef OOSK_AST_HPP_
#define OOSK_AST_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "oosk/source.hpp"

namespace oosk {

struct ClassDecl;
struct Member;

enum Modifier : unsigned {
  kModPublic = 1u << 0,
  kModPrivate = 1u << 1,
  kModProtected = 1u << 2,
  kModStatic = 1u << 3,
  kModFinal = 1u << 4,
  kModAbstract = 1u << 5,
  kModGenerator = 1u << 6,
  kModHarness = 1u << 7,
};

struct TypeRef {
  std::string name;  // "int", "boolean", "Token", "DBConnection.Monitor", ...
  std::vector<TypeRef> args;  // generic arguments; erased by normalize
  SourceSpan span;

  bool is_void() const { return name == "void"; }
  bool operator==(const TypeRef& other) const {
    return name == other.name && args == other.args;
  }
};

enum class ExprKind {
  IntLit,
  BoolLit,
  CharLit,
  StringLit,
  Null,
  This,
  Name,
  Field,   // kids[0].text
  Call,    // [kids[0] = receiver if has_receiver] + args
  New,     // type(args) [ { anonymous members } ]
  Unary,   // text is the operator
  Binary,  // text is the operator
  Assign,  // kids[0] = target, kids[1] = value
  Hole,
  Choice,  // kids are the alternatives
};

struct Expr {
  ExprKind kind = ExprKind::Null;
  SourceSpan span;
  std::string text;
  std::int64_t value = 0;
  std::vector<Expr> kids;
  bool has_receiver = false;
  TypeRef type;                        // New
  bool has_body = false;               // New with anonymous class body
  std::vector<ClassDecl> anon;         // exactly one element when has_body
  int unknown = 0;                     // Hole / Choice ordinal, 0 = unassigned

  const Expr& receiver() const { return kids.front(); }
  size_t arg_begin() const { return has_receiver ? 1 : 0; }
  size_t arg_count() const { return kids.size() - arg_begin(); }
  const Expr& arg(size_t i) const { return kids[arg_begin() + i]; }
};

enum class StmtKind {
  Block,
  LocalDecl,  // type name [= exprs[0]]
  If,         // exprs[0]; body[0] then, body[1] else (optional)
  While,      // exprs[0]; body[0]
  Return,     // exprs[0] optional
  ExprStmt,   // exprs[0]
  Assert,     // exprs[0]
  MinRepeat,  // body is the repeated statement list
  Empty,
};

struct Stmt {
  StmtKind kind = StmtKind::Empty;
  SourceSpan span;
  std::vector<Stmt> body;
  std::vector<Expr> exprs;
  TypeRef type;
  std::string name;
  int unknown = 0;  // MinRepeat ordinal
};

struct Param {
  TypeRef type;
  std::string name;
  SourceSpan span;
};

struct FieldDecl {
  unsigned mods = 0;
  TypeRef type;
  std::string name;
  std::vector<Expr> init;  // zero or one initializer
  SourceSpan span;
};

struct MethodDecl {
  unsigned mods = 0;
  bool is_ctor = false;
  TypeRef ret;  // unused for constructors
  std::string name;
  std::vector<Param> params;
  bool has_body = false;
  std::vector<Stmt> body;  // statements of the body block
  SourceSpan span;
};

enum class MemberKind { Field, Method, Type };

struct Member {
  MemberKind kind = MemberKind::Field;
  FieldDecl field;
  MethodDecl method;
  std::vector<ClassDecl> type;  // exactly one element for MemberKind::Type
};

struct ClassDecl {
  unsigned mods = 0;
  bool is_interface = false;
  bool is_anonymous = false;
  std::string name;  // anonymous classes carry the base type name here
  bool has_super = false;
  TypeRef super;
  std::vector<TypeRef> interfaces;
  std::vector<Member> members;
  SourceSpan span;
  // Assigned by normalize: dense traversal-order number, used by the class
  // table to map declarations to ids.
  int decl_id = -1;
  // Set on specialized generator copies: the generator they came from.
  std::string specialized_from;
  // Flat name (`Monitor_DBConnection`, `Token_1`); set by assign_class_names.
  std::string mangled;

  bool is_generator() const { return (mods & kModGenerator) != 0; }
};

struct CompilationUnit {
  std::string file;
  std::vector<ClassDecl> types;
};

struct SketchAst {
  std::vector<CompilationUnit> units;
};

// Structural equality ignoring spans and desugar annotations.
bool same_structure(const SketchAst& a, const SketchAst& b);
bool same_structure(const Expr& a, const Expr& b);
bool same_structure(const Stmt& a, const Stmt& b);
bool same_structure(const ClassDecl& a, const ClassDecl& b);

// Visits every class declaration (nested, then anonymous ones in bodies) in
// deterministic pre-order.
template <typename F>
void for_each_class(SketchAst& ast, F&& fn);
template <typename F>
void for_each_class(const SketchAst& ast, F&& fn);

}  // namespace oosk

#include "oosk/ast_walk.hpp"

#endif  // OOSK_AST_HPP_
