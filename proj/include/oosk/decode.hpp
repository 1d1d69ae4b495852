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

// Substitution of a solution back into source: holes become literals,
// generators their chosen alternative, minrepeat blocks n concrete copies.

#ifndef OOSK_DECODE_HPP_
#define OOSK_DECODE_HPP_

#include <map>
#include <string>
#include <vector>

#include "oosk/ast.hpp"
#include "oosk/desugar.hpp"
#include "oosk/engine.hpp"

namespace oosk {

// `ast` is the specialized program with unknown ids assigned (before
// initializer hoisting).  Each substitution is reported in `replaced` as
// `<owner>.<name> = <value>` when given.  Fails with IncompleteSolution
// when a value is missing.
SketchAst apply_solution(const SketchAst& ast, const UnknownRegistry& registry, const Assignment& a,
                         std::vector<std::string>* replaced = nullptr);

// Concrete sources keyed by file name (directory stripped); sketch-only
// modifiers are dropped.
std::map<std::string, std::string> decode_sources(const SketchAst& concrete);

}  // namespace oosk

#endif  // OOSK_DECODE_HPP_
