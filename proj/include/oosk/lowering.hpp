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

#ifndef OOSK_LOWERING_HPP_
#define OOSK_LOWERING_HPP_

#include <string>
#include <vector>

#include "oosk/classtable.hpp"
#include "oosk/desugar.hpp"
#include "oosk/ir.hpp"

namespace oosk {

// Lowers a normalized AST.  `table` must have been built from `ast`.  The
// registry is copied into the program; holes found in boolean positions are
// marked there.
ir::Program lower_program(const SketchAst& ast, const ClassTable& table, const UnknownRegistry& registry);

// Name of the dispatch function for a plain signature key.
std::string dispatch_name(const std::string& signature);

// The dispatch chain for `signature`: one arm per implementing class in
// ascending id order, then a trap.  Arms call `p.function_index` entries by
// vtable name; when `char_tokens` is set a `getId` chain also gets an arm for
// library char tokens.
ir::Function make_dyn_dispatch(const std::string& signature, const ClassTable& table,
                               const ir::Program& p, bool char_tokens);

// `n` sequential copies of a repeat block's body; copy i (1-based) pins its
// template unknowns to iteration i.
std::vector<ir::Instr> lower_minrepeat(const ir::Instr& block, int n);

}  // namespace oosk

#endif  // OOSK_LOWERING_HPP_
