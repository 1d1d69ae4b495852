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

#include "oosk/classtable.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace oosk {

const char* type_tag_name(TypeTag t) {
  switch (t) {
    case TypeTag::Int: return "Int";
    case TypeTag::Bool: return "Bool";
    case TypeTag::Str: return "Str";
    case TypeTag::Char: return "Char";
    case TypeTag::Obj: return "Obj";
    case TypeTag::Lib: return "Lib";
    case TypeTag::Null: return "Null";
    case TypeTag::Void: return "Void";
  }
  return "?";
}

std::string mangle_inner(const std::string& inner, const std::string& outer) {
  return inner + "_" + outer;
}

std::string signature_key(const std::string& name, const std::vector<std::string>& param_type_names) {
  std::string out = name;
  for (const auto& t : param_type_names) out += "_" + t;
  return out;
}

std::string mangle_method(const std::string& method, const std::string& cls,
                          const std::vector<std::string>& param_type_names) {
  return signature_key(method + "_" + cls, param_type_names);
}

namespace {

std::string last_segment(const std::string& dotted) {
  size_t dot = dotted.rfind('.');
  return dot == std::string::npos ? dotted : dotted.substr(dot + 1);
}

std::string fresh(const std::string& want, std::set<std::string>& used,
                  std::vector<std::string>* notes) {
  std::string name = want;
  for (int k = 2; used.count(name); ++k) name = want + std::to_string(k);
  if (name != want && notes) notes->push_back("renamed " + want + " to " + name + " (name collision)");
  used.insert(name);
  return name;
}

}  // namespace

void assign_class_names(SketchAst& ast, std::vector<std::string>* notes) {
  std::set<std::string> used;
  for (const auto& u : ast.units)
    for (const auto& c : u.types) used.insert(c.name);
  std::map<std::string, int> anon_count;

  struct V : AstVisitorBase {
    using AstVisitorBase::on_class;
    using AstVisitorBase::after_class;
    std::vector<ClassDecl*> stack;
    std::set<std::string>* used;
    std::map<std::string, int>* anon_count;
    std::vector<std::string>* notes;
    void on_class(ClassDecl& c) {
      if (stack.empty()) {
        c.mangled = c.name;
      } else if (c.is_anonymous) {
        std::string base = last_segment(c.name);
        std::string want;
        do {
          want = base + "_" + std::to_string(++(*anon_count)[base]);
        } while (used->count(want));
        c.mangled = want;
        used->insert(want);
      } else {
        c.mangled = fresh(mangle_inner(c.name, stack.back()->mangled), *used, notes);
      }
      stack.push_back(&c);
    }
    void after_class(ClassDecl&) { stack.pop_back(); }
  } v;
  v.used = &used;
  v.anon_count = &anon_count;
  v.notes = notes;
  walk(ast, v);
}

// --- ClassTable queries ------------------------------------------------------

int ClassTable::class_of(const ClassDecl* decl) const {
  for (const auto& c : classes)
    if (c.decl == decl) return c.id;
  return -1;
}

bool ClassTable::is_subclass(int sub, int super) const {
  if (sub < 0 || super < 0) return false;
  return subcls[sub][super] != 0;
}

int ClassTable::find_class(const std::string& name, int from) const {
  size_t dot = name.find('.');
  if (dot != std::string::npos) {
    int head = find_class(name.substr(0, dot), from);
    std::string rest = name.substr(dot + 1);
    while (head >= 0) {
      size_t d = rest.find('.');
      std::string seg = rest.substr(0, d);
      int next = -1;
      for (int k : classes[head].inner)
        if (classes[k].source_name == seg) next = k;
      head = next;
      if (d == std::string::npos) break;
      rest = rest.substr(d + 1);
    }
    return head;
  }
  // Enclosing scopes from the inside out, including member classes inherited
  // along each enclosing class's superclass chain.
  for (int scope = from; scope >= 0; scope = classes[scope].outer) {
    if (!classes[scope].is_anonymous && classes[scope].source_name == name &&
        classes[scope].outer < 0)
      return scope;
    for (int c = scope; c >= 0; c = classes[c].super) {
      for (int k : classes[c].inner)
        if (classes[k].source_name == name) return k;
    }
  }
  for (const auto& c : classes)
    if (c.outer < 0 && !c.is_anonymous && c.source_name == name) return c.id;
  return -1;
}

TypeDesc ClassTable::resolve(const TypeRef& ref, int from) const {
  const std::string& n = ref.name;
  if (n == "int") return TypeDesc::of(TypeTag::Int);
  if (n == "boolean") return TypeDesc::of(TypeTag::Bool);
  if (n == "char") return TypeDesc::of(TypeTag::Char);
  if (n == "void") return TypeDesc::of(TypeTag::Void);
  int cls = find_class(n, from);
  if (cls >= 0) return TypeDesc::object(cls);
  if (n == "String") return TypeDesc::of(TypeTag::Str);
  if (n == "Object") return TypeDesc::object(-1);
  if (n == "Iterator" || n == "List" || n == "LinkedList" || n == "ArrayList" ||
      n == "StringBuilder" || n == "CharToken")
    return TypeDesc::library(n == "ArrayList" ? "LinkedList" : n);
  fail(ErrorKind::UnresolvedType, ref.span, "cannot resolve type '" + n + "'");
}

int ClassTable::find_field(int cls, const std::string& name) const {
  // Superclass chain first, then interface constants.
  for (int c = cls; c >= 0; c = classes[c].super)
    for (int f : classes[c].fields)
      if (field_layout[f].name == name) return f;
  std::vector<int> work = cls >= 0 ? classes[cls].interfaces : std::vector<int>{};
  for (int c = cls >= 0 ? classes[cls].super : -1; c >= 0; c = classes[c].super)
    work.insert(work.end(), classes[c].interfaces.begin(), classes[c].interfaces.end());
  for (size_t i = 0; i < work.size(); ++i) {
    for (int f : classes[work[i]].fields)
      if (field_layout[f].name == name) return f;
    work.insert(work.end(), classes[work[i]].interfaces.begin(), classes[work[i]].interfaces.end());
  }
  return -1;
}

std::vector<int> ClassTable::find_methods(int cls, const std::string& name) const {
  std::vector<int> out;
  std::set<std::string> seen;
  std::vector<int> ifaces;
  auto take = [&](int c) {
    for (int m : classes[c].methods) {
      const MethodInfo& mi = methods[m];
      if (mi.is_ctor || mi.name != name) continue;
      if (seen.insert(mi.signature).second) out.push_back(m);
    }
  };
  for (int c = cls; c >= 0; c = classes[c].super) {
    take(c);
    ifaces.insert(ifaces.end(), classes[c].interfaces.begin(), classes[c].interfaces.end());
  }
  for (size_t i = 0; i < ifaces.size(); ++i) {
    take(ifaces[i]);
    ifaces.insert(ifaces.end(), classes[ifaces[i]].interfaces.begin(),
                  classes[ifaces[i]].interfaces.end());
  }
  return out;
}

std::string ClassTable::type_name(const TypeDesc& t) const {
  switch (t.tag) {
    case TypeTag::Int: return "int";
    case TypeTag::Bool: return "boolean";
    case TypeTag::Char: return "char";
    case TypeTag::Str: return "String";
    case TypeTag::Void: return "void";
    case TypeTag::Null: return "null";
    case TypeTag::Lib: return t.lib;
    case TypeTag::Obj: return t.cls < 0 ? "Object" : classes[t.cls].name;
  }
  return "?";
}

std::string ClassTable::describe(const TypeDesc& t) const { return type_name(t); }

std::string ClassTable::report() const {
  std::ostringstream out;
  out << "classes " << classes.size() << "\n";
  for (const auto& c : classes) {
    out << c.id << " " << c.name << (c.is_interface ? " interface" : " class");
    out << " super=" << (c.super < 0 ? std::string("Object") : classes[c.super].name);
    if (!c.interfaces.empty()) {
      out << " implements=";
      for (size_t i = 0; i < c.interfaces.size(); ++i)
        out << (i ? "," : "") << classes[c.interfaces[i]].name;
    }
    out << "\n";
  }
  out << "methods " << methods.size() << "\n";
  for (const auto& m : methods) {
    out << m.id << " " << m.mangled << " belongs_to=" << belongs_to[m.id]
        << " arg_num=" << arg_num[m.id] << " arg_type=";
    if (arg_type[m.id].empty()) out << "-";
    for (size_t i = 0; i < arg_type[m.id].size(); ++i)
      out << (i ? "," : "") << type_name(arg_type[m.id][i]);
    out << "\n";
  }
  out << "fields " << field_layout.size() << "\n";
  for (size_t i = 0; i < field_layout.size(); ++i) {
    const FieldSlot& f = field_layout[i];
    out << i << " " << f.owner_name << "." << f.name << " " << type_name(f.type)
        << (f.is_static ? " static" : " instance") << " slot=" << f.slot << "\n";
  }
  out << "vtable " << vtable.size() << "\n";
  for (const auto& [key, target] : vtable)
    out << classes[key.first].name << " " << key.second << " -> " << target << "\n";
  out << "subcls\n";
  for (const auto& c : classes) {
    out << c.name;
    for (char v : subcls[c.id]) out << " " << (v ? 1 : 0);
    out << "\n";
  }
  return out.str();
}

// --- construction -------------------------------------------------------------

namespace {

struct Collector : AstVisitorBase {
  using AstVisitorBase::on_class;
  using AstVisitorBase::after_class;
  ClassTable* table;
  std::vector<int> stack;
  void on_class(const ClassDecl& c) {
    if (c.mangled.empty()) {
      fail(ErrorKind::Internal, c.span, "class names not assigned before building the class table");
    }
    ClassInfo info;
    info.id = table->num_classes();
    info.name = c.mangled;
    info.source_name = c.is_anonymous ? last_segment(c.name) : c.name;
    info.is_interface = c.is_interface;
    info.is_anonymous = c.is_anonymous;
    info.outer = stack.empty() ? -1 : stack.back();
    info.decl = &c;
    if (info.outer >= 0 && !c.is_anonymous) table->classes[info.outer].inner.push_back(info.id);
    table->class_ids[info.name] = info.id;
    table->classes.push_back(std::move(info));
    stack.push_back(table->num_classes() - 1);
  }
  void after_class(const ClassDecl&) { stack.pop_back(); }
};

void resolve_supertypes(ClassTable& t) {
  for (auto& c : t.classes) {
    const ClassDecl& d = *c.decl;
    auto need = [&](const TypeRef& ref, bool want_interface) {
      TypeDesc td = t.resolve(ref, c.outer >= 0 ? c.outer : c.id);
      if (td.tag != TypeTag::Obj || td.cls < 0) {
        fail(ErrorKind::UnresolvedType, ref.span,
             "'" + ref.name + "' is not a user-defined " + (want_interface ? "interface" : "class"));
      }
      if (t.classes[td.cls].is_interface != want_interface) {
        fail(ErrorKind::UnresolvedType, ref.span,
             "'" + ref.name + "' is " + (want_interface ? "not an interface" : "an interface"));
      }
      return td.cls;
    };
    if (d.is_anonymous) {
      TypeRef base;
      base.name = d.name;
      base.span = d.span;
      if (base.name == "Object") continue;
      TypeDesc td = t.resolve(base, c.outer);
      if (td.tag != TypeTag::Obj || td.cls < 0) {
        fail(ErrorKind::UnresolvedType, d.span, "anonymous class base '" + d.name + "' is not user-defined");
      }
      if (t.classes[td.cls].is_interface)
        c.interfaces.push_back(td.cls);
      else
        c.super = td.cls;
      continue;
    }
    // Supertypes resolve in the enclosing scope; a class may not see its own
    // member classes in its extends clause.
    if (d.has_super && d.super.name != "Object") c.super = need(d.super, false);
    for (const auto& i : d.interfaces) c.interfaces.push_back(need(i, true));
  }
}

void check_cycles(const ClassTable& t) {
  std::vector<int> color(t.classes.size(), 0);
  std::function<void(int)> dfs = [&](int v) {
    color[v] = 1;
    std::vector<int> next = t.classes[v].interfaces;
    if (t.classes[v].super >= 0) next.push_back(t.classes[v].super);
    for (int w : next) {
      if (color[w] == 1) {
        fail(ErrorKind::InheritanceCycle, t.classes[v].decl->span,
             "inheritance cycle through '" + t.classes[w].name + "'");
      }
      if (color[w] == 0) dfs(w);
    }
    color[v] = 2;
  };
  for (size_t v = 0; v < t.classes.size(); ++v)
    if (color[v] == 0) dfs(static_cast<int>(v));
}

void compute_subcls(ClassTable& t) {
  size_t n = t.classes.size();
  t.subcls.assign(n, std::vector<char>(n, 0));
  for (size_t i = 0; i < n; ++i) {
    std::vector<int> work = {static_cast<int>(i)};
    while (!work.empty()) {
      int v = work.back();
      work.pop_back();
      if (t.subcls[i][v]) continue;
      t.subcls[i][v] = 1;
      if (t.classes[v].super >= 0) work.push_back(t.classes[v].super);
      for (int w : t.classes[v].interfaces) work.push_back(w);
    }
  }
}

void collect_fields(ClassTable& t) {
  for (auto& c : t.classes) {
    for (const auto& m : c.decl->members) {
      if (m.kind != MemberKind::Field) continue;
      FieldSlot f;
      f.owner = c.id;
      f.owner_name = c.name;
      f.name = m.field.name;
      f.type = t.resolve(m.field.type, c.id);
      f.is_static = c.is_interface || (m.field.mods & kModStatic);
      f.slot = f.is_static ? t.num_static_slots++ : t.num_instance_slots++;
      f.decl = &m.field;
      for (int other : c.fields) {
        if (t.field_layout[other].name == f.name) {
          fail(ErrorKind::SignatureClash, m.field.span, "duplicate field '" + f.name + "' in " + c.name);
        }
      }
      if (f.type.tag == TypeTag::Void) fail(ErrorKind::TypeLowering, m.field.span, "field of type void");
      c.fields.push_back(static_cast<int>(t.field_layout.size()));
      t.field_layout.push_back(std::move(f));
    }
  }
}

void collect_methods(ClassTable& t) {
  std::set<std::string> used;
  for (auto& c : t.classes) {
    for (const auto& m : c.decl->members) {
      if (m.kind != MemberKind::Method) continue;
      const MethodDecl& d = m.method;
      MethodInfo mi;
      mi.id = static_cast<int>(t.methods.size());
      mi.name = d.name;
      mi.cls = c.id;
      mi.is_static = (d.mods & kModStatic) != 0;
      mi.is_ctor = d.is_ctor;
      mi.has_body = d.has_body;
      mi.is_harness = (d.mods & kModHarness) != 0;
      mi.decl = &d;
      std::vector<std::string> names;
      for (const auto& p : d.params) {
        mi.params.push_back(t.resolve(p.type, c.id));
        if (mi.params.back().tag == TypeTag::Void)
          fail(ErrorKind::TypeLowering, p.span, "parameter of type void");
        names.push_back(t.type_name(mi.params.back()));
      }
      mi.ret = d.is_ctor ? TypeDesc::object(c.id) : t.resolve(d.ret, c.id);
      mi.signature = signature_key(d.is_ctor ? "<init>" : d.name, names);
      for (int other : c.methods) {
        if (t.methods[other].signature == mi.signature) {
          fail(ErrorKind::SignatureClash, d.span,
               "method '" + d.name + "' declared twice with the same parameter types in " + c.name);
        }
      }
      std::string want = mangle_method(d.name, c.name, names);
      mi.mangled = want;
      for (int k = 2; used.count(mi.mangled); ++k) mi.mangled = want + "_" + std::to_string(k);
      if (mi.mangled != want) t.notes.push_back("renamed method " + want + " to " + mi.mangled + " (name collision)");
      used.insert(mi.mangled);
      t.method_ids[mi.mangled] = mi.id;
      t.belongs_to.push_back(c.id);
      t.arg_num.push_back(static_cast<int>(mi.params.size()));
      t.arg_type.push_back(mi.params);
      c.methods.push_back(mi.id);
      t.methods.push_back(std::move(mi));
    }
  }
}

void build_vtable(ClassTable& t) {
  for (const auto& c : t.classes) {
    if (c.is_interface) continue;
    for (int cur = c.id; cur >= 0; cur = t.classes[cur].super) {
      for (int m : t.classes[cur].methods) {
        const MethodInfo& mi = t.methods[m];
        if (mi.is_ctor || mi.is_static || !mi.has_body) continue;
        t.vtable.emplace(std::make_pair(c.id, mi.signature), mi.mangled);
      }
    }
  }
  // An override must agree with what it overrides on staticness and return type.
  for (const auto& c : t.classes) {
    for (int m : c.methods) {
      const MethodInfo& mi = t.methods[m];
      if (mi.is_ctor) continue;
      std::vector<int> supers = c.interfaces;
      if (c.super >= 0) supers.push_back(c.super);
      for (size_t i = 0; i < supers.size(); ++i) {
        const ClassInfo& s = t.classes[supers[i]];
        for (int sm : s.methods) {
          const MethodInfo& smi = t.methods[sm];
          if (smi.is_ctor || smi.signature != mi.signature) continue;
          if (smi.is_static != mi.is_static || smi.ret != mi.ret) {
            fail(ErrorKind::SignatureClash, mi.decl->span,
                 "'" + mi.name + "' in " + c.name + " clashes with the inherited declaration in " + s.name);
          }
        }
        supers.insert(supers.end(), s.interfaces.begin(), s.interfaces.end());
        if (s.super >= 0) supers.push_back(s.super);
      }
    }
  }
  // Two unrelated interface declarations of one signature must agree.
  for (const auto& c : t.classes) {
    std::map<std::string, TypeDesc> seen;
    for (int j = 0; j < t.num_classes(); ++j) {
      if (!t.subcls[c.id][j] || !t.classes[j].is_interface) continue;
      for (int m : t.classes[j].methods) {
        auto [it, fresh] = seen.emplace(t.methods[m].signature, t.methods[m].ret);
        if (!fresh && it->second != t.methods[m].ret) {
          fail(ErrorKind::SignatureClash, c.decl->span,
               c.name + " inherits '" + t.methods[m].name + "' with conflicting return types");
        }
      }
    }
  }
}

}  // namespace

ClassTable build_class_table(const SketchAst& ast) {
  ClassTable t;
  Collector col;
  col.table = &t;
  walk(ast, col);
  resolve_supertypes(t);
  check_cycles(t);
  compute_subcls(t);
  collect_fields(t);
  collect_methods(t);
  build_vtable(t);
  return t;
}

}  // namespace oosk
