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

// The synthesis engine: a bounded, complete search for values of every
// unknown such that all harnesses pass, with repeat-count deepening and
// lexicographic objective minimization.

#ifndef OOSK_ENGINE_HPP_
#define OOSK_ENGINE_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oosk/ir.hpp"

namespace oosk {

// Values for every instantiated unknown.  Template unknowns inside a repeat
// block are keyed by (ordinal, iteration) with iteration >= 1; all others
// use iteration 0.
struct Assignment {
  std::map<std::pair<int, int>, std::int64_t> holes;
  std::map<std::pair<int, int>, int> choices;
  std::map<int, int> repeats;

  bool operator==(const Assignment& o) const {
    return holes == o.holes && choices == o.choices && repeats == o.repeats;
  }
};

struct Limits {
  int loop_bound = 64;              // iterations per loop execution
  std::int64_t step_limit = 100000; // per harness evaluation
};

enum class EvalStatus { Pass, AssertFail, Trap, ResourceExceeded };
const char* eval_status_name(EvalStatus s);

struct EvalOutcome {
  EvalStatus status = EvalStatus::Pass;
  SourceSpan site;       // failing assert
  std::string reason;    // trap or resource message
  std::int64_t steps = 0;
  // Objectives declared by the harness, evaluated after static
  // initialization.  Filled only on Pass.
  std::map<std::string, std::int64_t> objective_values;
};

struct SolveStats {
  std::int64_t candidates = 0;  // harness evaluations, summed over all search tasks
  int depth = 0;                // total repeat count of the solution
  std::int64_t ms = 0;
};

struct Solution {
  Assignment assignment;
  std::map<std::string, std::int64_t> objective_values;
  SolveStats stats;
};

struct EngineConfig {
  Limits limits;
  double timeout_seconds = 600;
  int jobs = 1;
  std::uint64_t seed = 0;  // accepted for interface stability; the search is deterministic
  // Split the search into independent groups of harnesses that share no
  // unknowns.  Off means one group for the whole program.
  bool decompose = true;
};

enum class Verdict { Sat, Unsat, Timeout };
const char* verdict_name(Verdict v);

struct SolveResult {
  Verdict verdict = Verdict::Unsat;
  Solution solution;  // meaningful when verdict == Sat
  SolveStats stats;
  std::vector<std::string> notes;
};

// Deterministic interpretation of one harness: fresh heap and statics,
// static initialization, objectives, then the body.  Unknowns missing from
// `a` evaluate to their lower bound.
EvalOutcome eval_harness(const ir::Program& p, int harness_fn, const Assignment& a, const Limits& limits);

// Concrete objective values under `a` (after static initialization).
std::optional<std::map<std::string, std::int64_t>> eval_objectives(const ir::Program& p, const Assignment& a,
                                                                   const Limits& limits);

SolveResult solve(const ir::Program& p, const EngineConfig& cfg);

// Replays every harness with a fresh interpreter; true iff all pass and the
// objective values match the recorded ones.
bool verify_solution(const ir::Program& p, const Solution& s, const Limits& limits);

// Total assignment with every unknown at its lower bound for the given
// repeat counts; the starting point for completing partial assignments.
Assignment default_assignment(const ir::Program& p, const std::map<int, int>& repeats);

// solution.txt: one line per instantiated unknown (holes, then choices, then
// repeats, each in registry order), then objectives in declaration order,
// then the stats line.  LF line ends.
std::string format_solution(const ir::Program& p, const Solution& s);

// Name of a hole or choice instance as written in solution.txt.
std::string instance_label(UnknownKind kind, int ordinal, int iteration);

}  // namespace oosk

#endif  // OOSK_ENGINE_HPP_
