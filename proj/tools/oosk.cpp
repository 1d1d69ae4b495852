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

// Command-line synthesizer: oosk [flags] File.java...

#include <iostream>

#include "CLI11.hpp"
#include "oosk/pipeline.hpp"

int main(int argc, char** argv) {
  oosk::RunOptions opts;
  CLI::App app{"Synthesizes the unknowns of Java sketches and writes concrete sources"};
  app.add_option("files", opts.inputs, "Input .java files")->required()->check(CLI::ExistingFile);
  app.add_option("--out", opts.out, "Output directory")->capture_default_str();
  app.add_option("--hole-bits", opts.desugar.hole_bits, "Default hole width in bits")
      ->capture_default_str()
      ->check(CLI::Range(1, 31));
  app.add_option("--unroll-max", opts.desugar.unroll_max, "Largest minrepeat count")
      ->capture_default_str()
      ->check(CLI::Range(0, 64));
  app.add_option("--loop-bound", opts.engine.limits.loop_bound, "Iterations per loop execution")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--step-limit", opts.engine.limits.step_limit, "Steps per harness evaluation")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--timeout", opts.engine.timeout_seconds, "Wall-clock budget in seconds")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", opts.engine.seed, "Seed (the search is deterministic)")->capture_default_str();
  app.add_option("--jobs", opts.engine.jobs, "Worker threads")->capture_default_str()->check(CLI::Range(1, 256));
  app.add_flag("--emit-ir", opts.emit_ir, "Write <out>/ir/<program>.ir");
  app.add_flag("--emit-tables", opts.emit_tables, "Write <out>/tables/<program>.txt");
  app.add_flag("--emit-desugared", opts.emit_desugared, "Write <out>/desugared/*.java");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : oosk::kExitInput;
  }
  opts.console = &std::cout;
  oosk::RunResult r = oosk::run(opts);
  if (!r.error.empty()) std::cerr << r.error << "\n";
  return r.exit_code;
}
