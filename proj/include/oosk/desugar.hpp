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

// AST-to-AST passes that turn a parsed sketch into the normalized core:
// generator specialization, unknown numbering, sugar erasure and
// initializer hoisting.

#ifndef OOSK_DESUGAR_HPP_
#define OOSK_DESUGAR_HPP_

#include <string>
#include <vector>

#include "oosk/ast.hpp"

namespace oosk {

enum class UnknownKind { Hole, Choice, Repeat };

struct UnknownId {
  UnknownKind kind = UnknownKind::Hole;
  int ordinal = 0;    // dense per kind, from 1
  std::string name;   // e_h<n>, e_c<n>, e_r<n>
  std::string owner;  // mangled name of the enclosing class

  bool operator==(const UnknownId& o) const { return kind == o.kind && ordinal == o.ordinal; }
};

std::string unknown_name(UnknownKind kind, int ordinal);
// Name of the per-iteration instance of a template unknown: e_h4_2.
std::string instance_name(const std::string& base, int iteration);

struct HoleInfo {
  UnknownId id;
  int bits = 5;
  bool is_signed = false;  // holes are unsigned; the flag is kept for the table
  bool boolean = false;    // set by lowering for holes in boolean position
  int repeat = 0;          // ordinal of the enclosing minrepeat (template), 0 if none
  SourceSpan span;

  long long max_value() const { return boolean ? 1 : (1LL << bits) - 1; }
};

struct ChoiceInfo {
  UnknownId id;
  int arity = 0;
  int repeat = 0;
  SourceSpan span;
};

struct RepeatInfo {
  UnknownId id;
  int min = 0;
  int max = 0;
  std::vector<int> holes;    // template hole ordinals in the body
  std::vector<int> choices;  // template choice ordinals in the body
  SourceSpan span;
};

struct UnknownRegistry {
  std::vector<HoleInfo> holes;      // holes[i].id.ordinal == i + 1
  std::vector<ChoiceInfo> choices;
  std::vector<RepeatInfo> repeats;

  const HoleInfo& hole(int ordinal) const { return holes.at(ordinal - 1); }
  HoleInfo& hole(int ordinal) { return holes.at(ordinal - 1); }
  const ChoiceInfo& choice(int ordinal) const { return choices.at(ordinal - 1); }
  const RepeatInfo& repeat(int ordinal) const { return repeats.at(ordinal - 1); }
  bool empty() const { return holes.empty() && choices.empty() && repeats.empty(); }

  // log2 of the number of instantiations for the given repeat counts.
  double log2_space(const std::vector<int>& repeat_counts) const;
};

struct SpecializationEntry {
  std::string generator;  // generator class name
  std::string context;    // extending class (mangled)
  std::string fresh;      // specialized copy, e.g. Automaton1
};

struct SpecializationMap {
  std::vector<SpecializationEntry> entries;
};

struct DesugarConfig {
  int hole_bits = 5;
  int unroll_max = 8;
};

// Generic arguments dropped everywhere; classes without `extends` get the
// implicit root `Object`.
void erase_sugar(SketchAst& ast);

// One copy of a generator class per extending class; copies replace the
// generator at its position.  Fails with DirectGeneratorUseError.
SpecializationMap specialize_class_generators(SketchAst& ast);

// Numbers every Hole, Choice and minrepeat in traversal order.  Also assigns
// mangled class names (needed for owners).  Holes get
// max(cfg.hole_bits, bits of the largest literal in the program).
UnknownRegistry assign_unknown_ids(SketchAst& ast, const DesugarConfig& cfg);

// Field initializers move into constructors (a default constructor is added
// when none exists); static initializers move into a synthetic static method
// `__static_init` per class.  Classes are numbered in decl_id.
void hoist_initializers(SketchAst& ast);

// erase_sugar followed by hoist_initializers.
void normalize(SketchAst& ast);

inline constexpr const char* kStaticInitName = "__static_init";

// Smallest width holding v (at least 1).
int bits_for(long long v);

}  // namespace oosk

#endif  // OOSK_DESUGAR_HPP_
