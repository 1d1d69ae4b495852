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

// Python bindings: synthesis from in-memory sources, the file-based
// pipeline, and the IR listing.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>
#include <vector>

#include "oosk/decode.hpp"
#include "oosk/engine.hpp"
#include "oosk/pipeline.hpp"

namespace py = pybind11;

namespace {

struct Options {
  int hole_bits = 5;
  int unroll_max = 8;
  int loop_bound = 64;
  std::int64_t step_limit = 100000;
  double timeout = 600;
  int jobs = 1;
};

struct PyResult {
  std::string verdict;
  std::map<std::string, std::int64_t> values;      // instance label -> value
  std::map<std::string, std::int64_t> objectives;  // objective name -> value
  std::map<std::string, std::string> java;         // decoded sources
  std::string solution_text;
  std::int64_t candidates = 0;
  int depth = 0;
};

oosk::DesugarConfig desugar_of(const Options& o) {
  oosk::DesugarConfig d;
  d.hole_bits = o.hole_bits;
  d.unroll_max = o.unroll_max;
  return d;
}

oosk::EngineConfig engine_of(const Options& o) {
  oosk::EngineConfig e;
  e.limits.loop_bound = o.loop_bound;
  e.limits.step_limit = o.step_limit;
  e.timeout_seconds = o.timeout;
  e.jobs = o.jobs;
  return e;
}

std::vector<oosk::SourceFile> files_of(const std::map<std::string, std::string>& sources) {
  std::vector<oosk::SourceFile> files;
  for (const auto& [name, text] : sources) files.push_back({name, text});
  return files;
}

PyResult synthesize(const std::map<std::string, std::string>& sources, const Options& o) {
  auto c = oosk::compile_sources(files_of(sources), desugar_of(o));
  oosk::SolveResult r;
  {
    py::gil_scoped_release release;
    r = oosk::solve(c->program, engine_of(o));
  }
  PyResult out;
  out.verdict = r.verdict == oosk::Verdict::Sat ? "sat" : r.verdict == oosk::Verdict::Unsat ? "unsat" : "timeout";
  out.candidates = r.stats.candidates;
  out.depth = r.stats.depth;
  if (r.verdict != oosk::Verdict::Sat) return out;
  const oosk::Assignment& a = r.solution.assignment;
  for (const auto& [key, v] : a.holes)
    out.values[oosk::instance_label(oosk::UnknownKind::Hole, key.first, key.second)] = v;
  for (const auto& [key, v] : a.choices)
    out.values[oosk::instance_label(oosk::UnknownKind::Choice, key.first, key.second)] = v;
  for (const auto& [id, v] : a.repeats) out.values[oosk::unknown_name(oosk::UnknownKind::Repeat, id)] = v;
  out.objectives = r.solution.objective_values;
  out.solution_text = oosk::format_solution(c->program, r.solution);
  out.java = oosk::decode_sources(oosk::apply_solution(*c->source, c->program.registry, a));
  return out;
}

py::dict run(const std::vector<std::string>& inputs, const std::string& out, const Options& o) {
  oosk::RunOptions opts;
  opts.inputs = inputs;
  opts.out = out;
  opts.desugar = desugar_of(o);
  opts.engine = engine_of(o);
  oosk::RunResult r;
  {
    py::gil_scoped_release release;
    r = oosk::run(opts);
  }
  py::dict d;
  d["exit_code"] = r.exit_code;
  d["error"] = r.error;
  d["solution_text"] = r.solution_text;
  d["java"] = r.java;
  d["log"] = r.log;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Synthesizer for Java sketches with unknowns";
  py::register_exception<oosk::SketchError>(m, "SketchError", PyExc_ValueError);

  py::class_<PyResult>(m, "Result")
      .def_readonly("verdict", &PyResult::verdict)
      .def_readonly("values", &PyResult::values)
      .def_readonly("objectives", &PyResult::objectives)
      .def_readonly("java", &PyResult::java)
      .def_readonly("solution_text", &PyResult::solution_text)
      .def_readonly("candidates", &PyResult::candidates)
      .def_readonly("depth", &PyResult::depth)
      .def("__repr__", [](const PyResult& r) {
        return "<Result verdict=" + r.verdict + " candidates=" + std::to_string(r.candidates) + ">";
      });

  m.def(
      "synthesize",
      [](const std::map<std::string, std::string>& sources, int hole_bits, int unroll_max, int loop_bound,
         std::int64_t step_limit, double timeout, int jobs) {
        return synthesize(sources, Options{hole_bits, unroll_max, loop_bound, step_limit, timeout, jobs});
      },
      py::arg("sources"), py::kw_only(), py::arg("hole_bits") = 5, py::arg("unroll_max") = 8,
      py::arg("loop_bound") = 64, py::arg("step_limit") = 100000, py::arg("timeout") = 600.0, py::arg("jobs") = 1,
      "Solves a sketch given as {file name: source text}.");

  m.def(
      "run",
      [](const std::vector<std::string>& inputs, const std::string& out, int hole_bits, int unroll_max,
         int loop_bound, std::int64_t step_limit, double timeout, int jobs) {
        return run(inputs, out, Options{hole_bits, unroll_max, loop_bound, step_limit, timeout, jobs});
      },
      py::arg("inputs"), py::arg("out") = "result", py::kw_only(), py::arg("hole_bits") = 5,
      py::arg("unroll_max") = 8, py::arg("loop_bound") = 64, py::arg("step_limit") = 100000,
      py::arg("timeout") = 600.0, py::arg("jobs") = 1,
      "Runs the file-based pipeline and writes its outputs; returns the exit code and results.");

  m.def(
      "ir_listing",
      [](const std::map<std::string, std::string>& sources, int hole_bits, int unroll_max) {
        auto c = oosk::compile_sources(files_of(sources), desugar_of(Options{hole_bits, unroll_max}));
        return oosk::ir::listing(c->program);
      },
      py::arg("sources"), py::kw_only(), py::arg("hole_bits") = 5, py::arg("unroll_max") = 8,
      "Text listing of the lowered program.");
}
