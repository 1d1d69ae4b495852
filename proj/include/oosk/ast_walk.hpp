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

#ifndef OOSK_AST_WALK_HPP_
#define OOSK_AST_WALK_HPP_

#include <type_traits>

namespace oosk {

// Pre-order traversal.  Order is part of the contract: unknown numbering and
// class numbering both follow it.  Within a class, members are visited in
// declaration order; an expression is visited before its operands, and an
// anonymous class body after the creation's arguments.
template <typename Visitor, bool Const>
class AstWalker {
  template <typename T>
  using Ref = std::conditional_t<Const, const T&, T&>;

 public:
  explicit AstWalker(Visitor& v) : v_(v) {}

  void ast(Ref<SketchAst> a) {
    for (auto& u : a.units)
      for (auto& c : u.types) cls(c);
  }

  void cls(Ref<ClassDecl> c) {
    v_.on_class(c);
    for (auto& m : c.members) member(m);
    v_.after_class(c);
  }

  void member(Ref<Member> m) {
    switch (m.kind) {
      case MemberKind::Field:
        for (auto& e : m.field.init) expr(e);
        break;
      case MemberKind::Method:
        v_.on_method(m.method);
        for (auto& s : m.method.body) stmt(s);
        v_.after_method(m.method);
        break;
      case MemberKind::Type:
        for (auto& c : m.type) cls(c);
        break;
    }
  }

  void stmt(Ref<Stmt> s) {
    v_.on_stmt(s);
    for (auto& e : s.exprs) expr(e);
    for (auto& b : s.body) stmt(b);
    v_.after_stmt(s);
  }

  void expr(Ref<Expr> e) {
    v_.on_expr(e);
    for (auto& k : e.kids) expr(k);
    for (auto& c : e.anon) cls(c);
  }

 private:
  Visitor& v_;
};

// Default no-op hooks; visitors override what they need.
struct AstVisitorBase {
  template <typename T> void on_class(T&) {}
  template <typename T> void after_class(T&) {}
  template <typename T> void on_method(T&) {}
  template <typename T> void after_method(T&) {}
  template <typename T> void on_stmt(T&) {}
  template <typename T> void after_stmt(T&) {}
  template <typename T> void on_expr(T&) {}
};

template <typename V>
void walk(SketchAst& ast, V& v) {
  AstWalker<V, false>(v).ast(ast);
}
template <typename V>
void walk(const SketchAst& ast, V& v) {
  AstWalker<V, true>(v).ast(ast);
}

template <typename F>
void for_each_class(SketchAst& ast, F&& fn) {
  struct V : AstVisitorBase {
    F* f;
    using AstVisitorBase::on_class;
    void on_class(ClassDecl& c) { (*f)(c); }
  } v;
  v.f = &fn;
  walk(ast, v);
}

template <typename F>
void for_each_class(const SketchAst& ast, F&& fn) {
  struct V : AstVisitorBase {
    F* f;
    using AstVisitorBase::on_class;
    void on_class(const ClassDecl& c) { (*f)(c); }
  } v;
  v.f = &fn;
  walk(ast, v);
}

}  // namespace oosk

#endif  // OOSK_AST_WALK_HPP_
