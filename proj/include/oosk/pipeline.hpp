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

// End-to-end driver: parse, desugar, class table, lowering, search and
// decoding, with the output tree and staged log.

#ifndef OOSK_PIPELINE_HPP_
#define OOSK_PIPELINE_HPP_

#include <functional>
#include <map>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "oosk/classtable.hpp"
#include "oosk/desugar.hpp"
#include "oosk/engine.hpp"
#include "oosk/ir.hpp"
#include "oosk/parser.hpp"

namespace oosk {

// A lowered program together with the trees it came from.  Held by
// pointer: the class table and program refer into `core`.
struct Compiled {
  std::unique_ptr<SketchAst> source;  // specialized, unknowns numbered; decode input
  std::unique_ptr<SketchAst> core;    // normalized
  SpecializationMap specializations;
  ClassTable table;
  ir::Program program;  // its registry carries the boolean-hole marks
};

using StageLog = std::function<void(const std::string&)>;

// Runs every pass up to and including lowering on a parsed program.
std::unique_ptr<Compiled> compile(SketchAst parsed, const DesugarConfig& cfg, const StageLog& log = {});
std::unique_ptr<Compiled> compile_sources(const std::vector<SourceFile>& files, const DesugarConfig& cfg = {});
std::unique_ptr<Compiled> compile_files(const std::vector<std::string>& paths, const DesugarConfig& cfg = {});

struct RunOptions {
  std::vector<std::string> inputs;
  std::string out = "result";
  DesugarConfig desugar;
  EngineConfig engine;
  bool emit_ir = false;
  bool emit_tables = false;
  bool emit_desugared = false;
  std::ostream* console = nullptr;  // stage lines are echoed here when set
};

enum ExitCode { kExitSolved = 0, kExitUnsat = 1, kExitInput = 2, kExitTimeout = 3, kExitInternal = 4 };

struct RunResult {
  int exit_code = kExitInternal;
  Verdict verdict = Verdict::Unsat;
  Solution solution;
  std::string solution_text;                 // solution.txt contents; empty unless solved
  std::map<std::string, std::string> java;   // decoded sources by file name
  std::string error;                         // diagnostic for exit codes 2 and 4
  std::vector<std::string> log;              // log.txt lines
};

// Writes <out>/java/, <out>/solution.txt and <out>/log/log.txt (plus the
// optional dumps).  Never throws.
RunResult run(const RunOptions& opts);

}  // namespace oosk

#endif  // OOSK_PIPELINE_HPP_
