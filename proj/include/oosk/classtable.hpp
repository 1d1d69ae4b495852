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

// Flat identifier world for a desugared program: dense class, method and
// field ids, the subclass matrix and the mangled names used by the IR.

#ifndef OOSK_CLASSTABLE_HPP_
#define OOSK_CLASSTABLE_HPP_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "oosk/ast.hpp"

namespace oosk {

// Type tags.  Obj carries a class id (-1 is "any object", used for erased
// generic elements and the implicit root).  Lib names a library type.
enum class TypeTag { Int, Bool, Str, Char, Obj, Lib, Null, Void };

struct TypeDesc {
  TypeTag tag = TypeTag::Void;
  int cls = -1;
  std::string lib;

  static TypeDesc of(TypeTag t) { return TypeDesc{t, -1, {}}; }
  static TypeDesc object(int cls) { return TypeDesc{TypeTag::Obj, cls, {}}; }
  static TypeDesc library(std::string name) { return TypeDesc{TypeTag::Lib, -1, std::move(name)}; }

  bool is_ref() const { return tag == TypeTag::Obj || tag == TypeTag::Lib || tag == TypeTag::Null || tag == TypeTag::Str; }
  bool is_numeric() const { return tag == TypeTag::Int || tag == TypeTag::Char; }
  bool operator==(const TypeDesc& o) const { return tag == o.tag && cls == o.cls && lib == o.lib; }
  bool operator!=(const TypeDesc& o) const { return !(*this == o); }
};

const char* type_tag_name(TypeTag t);

// `<Inner>_<Outer>`.
std::string mangle_inner(const std::string& inner, const std::string& outer);
// `<Mtd>_<Cls>` followed by `_<T>` per parameter type name.
std::string mangle_method(const std::string& method, const std::string& cls,
                          const std::vector<std::string>& param_type_names);

// Sets ClassDecl::mangled on every class in traversal order.  Nested classes
// get Inner_Outer, anonymous ones Base_n (n counts per base name from 1).
// A name that collides with an earlier one gets a numeric suffix; each such
// rename is appended to `notes` when given.
void assign_class_names(SketchAst& ast, std::vector<std::string>* notes = nullptr);

struct FieldSlot {
  int owner = -1;            // class id
  std::string owner_name;    // mangled
  std::string name;
  TypeDesc type;
  bool is_static = false;
  int slot = -1;             // object-record slot, or static slot when is_static
  const FieldDecl* decl = nullptr;
};

struct MethodInfo {
  int id = -1;
  std::string mangled;
  std::string name;         // source name; constructors use the class's source name
  std::string signature;    // plain signature key, e.g. "transition_Token"
  int cls = -1;
  bool is_static = false;
  bool is_ctor = false;
  bool has_body = true;
  bool is_harness = false;
  std::vector<TypeDesc> params;
  TypeDesc ret;
  const MethodDecl* decl = nullptr;
};

struct ClassInfo {
  int id = -1;
  std::string name;         // mangled
  std::string source_name;  // as written (base name for anonymous classes)
  bool is_interface = false;
  bool is_anonymous = false;
  int super = -1;           // -1: implicit root
  std::vector<int> interfaces;
  int outer = -1;
  std::vector<int> inner;   // named member classes
  std::vector<int> fields;  // indices into field_layout, declaration order
  std::vector<int> methods; // method ids, declaration order
  const ClassDecl* decl = nullptr;
};

// Pointers into the AST stay valid as long as the SketchAst the table was
// built from is alive and not restructured.
struct ClassTable {
  std::vector<ClassInfo> classes;
  std::map<std::string, int> class_ids;
  std::vector<MethodInfo> methods;
  std::map<std::string, int> method_ids;
  std::vector<int> belongs_to;
  std::vector<int> arg_num;
  std::vector<std::vector<TypeDesc>> arg_type;
  std::vector<std::vector<char>> subcls;  // subcls[i][j]: i is a subtype of j
  std::vector<FieldSlot> field_layout;
  int num_instance_slots = 0;
  int num_static_slots = 0;
  // (class id, signature) -> mangled name of the most-derived implementation.
  std::map<std::pair<int, std::string>, std::string> vtable;
  std::vector<std::string> notes;

  int num_classes() const { return static_cast<int>(classes.size()); }
  int class_of(const ClassDecl* decl) const;
  bool is_subclass(int sub, int super) const;

  // Resolves a written type name as seen from inside class `from` (-1 for
  // top level).  Fails with UnresolvedTypeError.
  TypeDesc resolve(const TypeRef& ref, int from) const;
  // Same, returning -1 instead of failing when the name is not a user class.
  int find_class(const std::string& name, int from) const;

  // Field lookup through the superclass chain; -1 when absent.
  int find_field(int cls, const std::string& name) const;
  // Methods named `name` visible in `cls` (own first, then inherited).
  std::vector<int> find_methods(int cls, const std::string& name) const;

  // Type name used in mangled signatures.
  std::string type_name(const TypeDesc& t) const;
  // Source-level spelling, e.g. for diagnostics.
  std::string describe(const TypeDesc& t) const;

  // Text report for --emit-tables.
  std::string report() const;
};

ClassTable build_class_table(const SketchAst& ast);

// Plain signature key: method name plus `_<T>` per parameter.
std::string signature_key(const std::string& name, const std::vector<std::string>& param_type_names);

}  // namespace oosk

#endif  // OOSK_CLASSTABLE_HPP_
