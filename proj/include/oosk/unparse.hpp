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

#ifndef OOSK_UNPARSE_HPP_
#define OOSK_UNPARSE_HPP_

#include <map>
#include <string>

#include "oosk/ast.hpp"

namespace oosk {

struct UnparseOptions {
  // Emit `harness` / `generator`.  Decoded output drops them.
  bool sketch_modifiers = true;
};

// Fixed style: 4-space indent, one statement per line, LF line ends.
std::string unparse_unit(const CompilationUnit& unit, const UnparseOptions& opts = {});
std::string unparse_class(const ClassDecl& c, const UnparseOptions& opts = {});
std::string unparse_expr(const Expr& e);
std::string unparse_stmt(const Stmt& s);

// One entry per compilation unit, keyed by the unit's file path.
std::map<std::string, std::string> unparse(const SketchAst& ast, const UnparseOptions& opts = {});

}  // namespace oosk

#endif  // OOSK_UNPARSE_HPP_
