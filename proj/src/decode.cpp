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

#include "oosk/decode.hpp"

#include "oosk/unparse.hpp"

namespace oosk {

namespace {

class Substituter {
 public:
  Substituter(const UnknownRegistry& reg, const Assignment& a, std::vector<std::string>* replaced)
      : reg_(reg), a_(a), replaced_(replaced) {}

  void cls(ClassDecl& c) {
    for (auto& m : c.members) {
      switch (m.kind) {
        case MemberKind::Field:
          for (auto& e : m.field.init) expr(e, 0);
          break;
        case MemberKind::Method:
          m.method.body = stmts(m.method.body, 0);
          break;
        case MemberKind::Type:
          for (auto& t : m.type) cls(t);
          break;
      }
    }
  }

 private:
  std::vector<Stmt> stmts(const std::vector<Stmt>& in, int iteration) {
    std::vector<Stmt> out;
    for (const auto& s : in) {
      if (s.kind != StmtKind::MinRepeat) {
        Stmt copy = s;
        stmt(copy, iteration);
        out.push_back(std::move(copy));
        continue;
      }
      auto it = a_.repeats.find(s.unknown);
      if (it == a_.repeats.end()) {
        fail(ErrorKind::IncompleteSolution, s.span, "no count for " + unknown_name(UnknownKind::Repeat, s.unknown));
      }
      note(reg_.repeat(s.unknown).id, it->second);
      // Copies that declare locals keep their own block so names do not clash.
      bool scoped = false;
      for (const auto& b : s.body) scoped |= b.kind == StmtKind::LocalDecl;
      for (int i = 1; i <= it->second; ++i) {
        std::vector<Stmt> copy = stmts(s.body, i);
        if (scoped && it->second > 1) {
          Stmt block;
          block.kind = StmtKind::Block;
          block.span = s.span;
          block.body = std::move(copy);
          out.push_back(std::move(block));
        } else {
          for (auto& c : copy) out.push_back(std::move(c));
        }
      }
    }
    return out;
  }

  void stmt(Stmt& s, int iteration) {
    for (auto& e : s.exprs) expr(e, iteration);
    if (s.kind == StmtKind::Block) {
      s.body = stmts(s.body, iteration);
      return;
    }
    for (auto& b : s.body) {
      std::vector<Stmt> one = stmts({b}, iteration);
      if (one.size() == 1) {
        b = std::move(one[0]);
      } else {
        Stmt block;
        block.kind = StmtKind::Block;
        block.span = b.span;
        block.body = std::move(one);
        b = std::move(block);
      }
    }
  }

  void expr(Expr& e, int iteration) {
    if (e.kind == ExprKind::Hole) {
      const HoleInfo& h = reg_.hole(e.unknown);
      int iter = h.repeat ? iteration : 0;
      auto it = a_.holes.find({e.unknown, iter});
      if (it == a_.holes.end()) {
        fail(ErrorKind::IncompleteSolution, e.span, "no value for " + instance_label(UnknownKind::Hole, e.unknown, iter));
      }
      note(h.id, it->second, iter);
      SourceSpan span = e.span;
      e = Expr{};
      e.span = span;
      e.kind = h.boolean ? ExprKind::BoolLit : ExprKind::IntLit;
      e.value = h.boolean ? (it->second != 0) : it->second;
      return;
    }
    if (e.kind == ExprKind::Choice) {
      const ChoiceInfo& c = reg_.choice(e.unknown);
      int iter = c.repeat ? iteration : 0;
      auto it = a_.choices.find({e.unknown, iter});
      if (it == a_.choices.end() || it->second < 0 || it->second >= static_cast<int>(e.kids.size())) {
        fail(ErrorKind::IncompleteSolution, e.span,
             "no valid alternative for " + instance_label(UnknownKind::Choice, e.unknown, iter));
      }
      note(c.id, it->second, iter);
      Expr chosen = e.kids[static_cast<size_t>(it->second)];
      e = std::move(chosen);
      expr(e, iteration);
      return;
    }
    for (auto& k : e.kids) expr(k, iteration);
    for (auto& c : e.anon) cls(c);
  }

  void note(const UnknownId& id, long long value, int iteration = 0) {
    if (!replaced_) return;
    std::string name = iteration > 0 ? instance_name(id.name, iteration) : id.name;
    replaced_->push_back(id.owner + "." + name + " = " + std::to_string(value));
  }

  const UnknownRegistry& reg_;
  const Assignment& a_;
  std::vector<std::string>* replaced_;
};

std::string base_name(const std::string& path) {
  auto slash = path.find_last_of("/\\");
  return slash == std::string::npos ? path : path.substr(slash + 1);
}

}  // namespace

SketchAst apply_solution(const SketchAst& ast, const UnknownRegistry& registry, const Assignment& a,
                         std::vector<std::string>* replaced) {
  SketchAst out = ast;
  Substituter s(registry, a, replaced);
  for (auto& u : out.units)
    for (auto& c : u.types) s.cls(c);
  return out;
}

std::map<std::string, std::string> decode_sources(const SketchAst& concrete) {
  UnparseOptions opts;
  opts.sketch_modifiers = false;
  std::map<std::string, std::string> out;
  for (const auto& u : concrete.units) out[base_name(u.file)] = unparse_unit(u, opts);
  return out;
}

}  // namespace oosk
