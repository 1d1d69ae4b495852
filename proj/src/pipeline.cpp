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

#include "oosk/pipeline.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "oosk/decode.hpp"
#include "oosk/lowering.hpp"
#include "oosk/unparse.hpp"

namespace oosk {

namespace fs = std::filesystem;

std::unique_ptr<Compiled> compile(SketchAst parsed, const DesugarConfig& cfg, const StageLog& log) {
  auto say = [&](const char* stage) {
    if (log) log(stage);
  };
  auto c = std::make_unique<Compiled>();
  say("rewriting syntax sugar");
  erase_sugar(parsed);
  say("specializing class-level generator");
  c->specializations = specialize_class_generators(parsed);
  UnknownRegistry registry = assign_unknown_ids(parsed, cfg);
  c->source = std::make_unique<SketchAst>(parsed);
  hoist_initializers(parsed);
  c->core = std::make_unique<SketchAst>(std::move(parsed));
  say("building class hierarchy");
  c->table = build_class_table(*c->core);
  say("encoding");
  c->program = lower_program(*c->core, c->table, registry);
  return c;
}

std::unique_ptr<Compiled> compile_sources(const std::vector<SourceFile>& files, const DesugarConfig& cfg) {
  return compile(parse_sources(files), cfg);
}

std::unique_ptr<Compiled> compile_files(const std::vector<std::string>& paths, const DesugarConfig& cfg) {
  return compile(parse_program(paths), cfg);
}

namespace {

std::string clock_text() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  localtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%H:%M:%S");
  return os.str();
}

void write_text(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

std::string program_name(const std::vector<std::string>& inputs) {
  if (inputs.empty()) return "program";
  return fs::path(inputs.front()).stem().string();
}

}  // namespace

RunResult run(const RunOptions& opts) {
  RunResult r;
  fs::path out(opts.out);
  auto stage = [&](const std::string& what) {
    std::string line = clock_text() + " " + what;
    r.log.push_back(line);
    if (opts.console) *opts.console << line << "\n";
  };
  auto flush_log = [&] {
    std::string text;
    for (const auto& l : r.log) text += l + "\n";
    try {
      write_text(out / "log" / "log.txt", text);
    } catch (const std::exception&) {
    }
  };

  try {
    std::error_code ec;
    // Outputs of an earlier run must not survive into this one.
    for (const char* sub : {"java", "ir", "tables", "desugared"}) fs::remove_all(out / sub, ec);
    fs::remove(out / "solution.txt", ec);
    if (opts.inputs.empty()) fail(ErrorKind::Parse, {}, "no input files");
    stage("parsing " + std::to_string(opts.inputs.size()) + " file(s)");
    SketchAst parsed = parse_program(opts.inputs);
    auto c = compile(std::move(parsed), opts.desugar, stage);
    for (const auto& n : c->table.notes) stage("note: " + n);
    std::string name = program_name(opts.inputs);
    if (opts.emit_desugared) {
      for (const auto& [file, text] : unparse(*c->core)) write_text(out / "desugared" / fs::path(file).filename(), text);
    }
    if (opts.emit_tables) write_text(out / "tables" / (name + ".txt"), c->table.report());
    if (opts.emit_ir) write_text(out / "ir" / (name + ".ir"), ir::listing(c->program));

    stage("solving");
    SolveResult s = solve(c->program, opts.engine);
    for (const auto& n : s.notes) stage("note: " + n);
    r.verdict = s.verdict;
    if (s.verdict == Verdict::Timeout) {
      stage("timeout after " + std::to_string(s.stats.candidates) + " candidates");
      r.exit_code = kExitTimeout;
      flush_log();
      return r;
    }
    if (s.verdict == Verdict::Unsat) {
      stage("no solution within the configured bounds (" + std::to_string(s.stats.candidates) + " candidates)");
      r.exit_code = kExitUnsat;
      flush_log();
      return r;
    }
    r.solution = s.solution;
    r.solution_text = format_solution(c->program, s.solution);

    stage("replacing holes");
    std::vector<std::string> replaced;
    SketchAst concrete = apply_solution(*c->source, c->program.registry, s.solution.assignment, &replaced);
    for (const auto& line : replaced) r.log.push_back("replaced: " + line);
    stage("replacing generators");
    for (const auto& e : c->specializations.entries) {
      r.log.push_back("specialized: " + e.generator + " as " + e.fresh + " for " + e.context);
    }
    stage("decoding");
    r.java = decode_sources(concrete);
    write_text(out / "solution.txt", r.solution_text);
    for (const auto& [file, text] : r.java) write_text(out / "java" / file, text);
    stage("synthesis done");
    r.exit_code = kExitSolved;
  } catch (const SketchError& e) {
    r.error = e.what();
    r.exit_code = e.is_input_error() ? kExitInput : kExitInternal;
    stage("error: " + r.error);
  } catch (const std::exception& e) {
    r.error = std::string("InternalError: ") + e.what();
    r.exit_code = kExitInternal;
    stage("error: " + r.error);
  }
  flush_log();
  return r;
}

}  // namespace oosk
