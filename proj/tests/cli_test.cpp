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

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "oosk/pipeline.hpp"
#include "test_util.hpp"

using namespace oosk;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("oosk_cli_test_" + std::to_string(::getpid())) / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path write_file(const fs::path& dir, const std::string& name, const std::string& text) {
  fs::path p = dir / name;
  std::ofstream(p, std::ios::binary) << text;
  return p;
}

int shell(const std::string& cmd) {
  int status = std::system((cmd + " > /dev/null 2>&1").c_str());
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::string shell_quote(const fs::path& p) { return "'" + p.string() + "'"; }

RunOptions options(std::vector<std::string> inputs, const fs::path& out) {
  RunOptions o;
  o.inputs = std::move(inputs);
  o.out = out.string();
  return o;
}

const char* kUnsat = "class U { harness static void h() { int x = ??; assert x != x; } }\n";

}  // namespace

TEST_CASE("solved run writes sources, solution and log") {
  fs::path out = scratch("mult2");
  RunResult r = run(options(oosk::testing::mult2_files(), out));
  REQUIRE(r.exit_code == kExitSolved);
  CHECK(r.verdict == Verdict::Sat);
  CHECK(fs::exists(out / "java" / "SimpleMath.java"));
  CHECK(fs::exists(out / "java" / "Test.java"));
  CHECK(slurp(out / "java" / "SimpleMath.java").find("return 2 * x;") != std::string::npos);
  std::string sol = slurp(out / "solution.txt");
  CHECK(sol == r.solution_text);
  CHECK(sol.rfind("hole e_h1 = 2\nchoice e_c1 = 0\nstats candidates=", 0) == 0);
  CHECK(sol.find('\r') == std::string::npos);
  std::string log = slurp(out / "log" / "log.txt");
  std::vector<std::string> stages = {"parsing 2 file(s)", "rewriting syntax sugar", "building class hierarchy",
                                     "encoding", "solving", "replacing holes", "decoding", "synthesis done"};
  size_t at = 0;
  for (const auto& s : stages) {
    size_t next = log.find(s, at);
    INFO(s);
    REQUIRE(next != std::string::npos);
    at = next;
  }
  CHECK(log.find("replaced: SimpleMath.e_h1 = 2") != std::string::npos);
  CHECK_FALSE(fs::exists(out / "ir"));
}

TEST_CASE("optional dumps") {
  fs::path out = scratch("dumps");
  RunOptions o = options(oosk::testing::automata_files(), out);
  o.emit_ir = o.emit_tables = o.emit_desugared = true;
  RunResult r = run(o);
  REQUIRE(r.exit_code == kExitSolved);
  CHECK(fs::exists(out / "ir" / "Automaton.ir"));
  CHECK(slurp(out / "ir" / "Automaton.ir").find("dyn_dispatch_getId") != std::string::npos);
  CHECK(fs::exists(out / "tables" / "Automaton.txt"));
  CHECK(fs::exists(out / "desugared" / "DBConnection.java"));
  CHECK(slurp(out / "log" / "log.txt").find("specialized: Automaton as Automaton1 for Monitor_DBConnection") !=
        std::string::npos);
}

TEST_CASE("unsatisfiable run clears earlier outputs") {
  fs::path out = scratch("unsat");
  REQUIRE(run(options(oosk::testing::mult2_files(), out)).exit_code == kExitSolved);
  fs::path in = write_file(scratch("unsat_in"), "U.java", kUnsat);
  RunResult r = run(options({in.string()}, out));
  CHECK(r.exit_code == kExitUnsat);
  CHECK(r.verdict == Verdict::Unsat);
  CHECK_FALSE(fs::exists(out / "solution.txt"));
  CHECK_FALSE(fs::exists(out / "java"));
  CHECK(slurp(out / "log" / "log.txt").find("no solution") != std::string::npos);
}

TEST_CASE("input errors carry file, line and column") {
  fs::path dir = scratch("bad_in");
  fs::path bad = write_file(dir, "Bad.java", "class A {\n  int f() { return 1 +; }\n}\n");
  RunResult r = run(options({bad.string()}, scratch("bad_out")));
  CHECK(r.exit_code == kExitInput);
  CHECK(r.error.rfind(bad.string() + ":2:23: ParseError", 0) == 0);
  fs::path cyc = write_file(dir, "Cyc.java", "class A extends B { }\nclass B extends A { }\n");
  RunResult c = run(options({cyc.string()}, scratch("cyc_out")));
  CHECK(c.exit_code == kExitInput);
  CHECK(c.error.find("InheritanceCycle") != std::string::npos);
  CHECK(run(options({(dir / "Missing.java").string()}, scratch("missing_out"))).exit_code == kExitInput);
  CHECK(run(options({}, scratch("none_out"))).exit_code == kExitInput);
}

TEST_CASE("timeout exit code") {
  RunOptions o = options(oosk::testing::automata_files(), scratch("timeout"));
  o.engine.timeout_seconds = 1e-9;
  RunResult r = run(o);
  CHECK(r.exit_code == kExitTimeout);
  CHECK(r.verdict == Verdict::Timeout);
}

TEST_CASE("repeated runs produce identical files") {
  fs::path a = scratch("det_a"), b = scratch("det_b");
  RunOptions oa = options(oosk::testing::automata_files(), a);
  RunOptions ob = options(oosk::testing::automata_files(), b);
  ob.engine.jobs = 4;
  REQUIRE(run(oa).exit_code == kExitSolved);
  REQUIRE(run(ob).exit_code == kExitSolved);
  for (const char* f : {"Automaton.java", "DBConnection.java", "Tests.java"})
    CHECK(slurp(a / "java" / f) == slurp(b / "java" / f));
  auto mask = [](std::string s) { return s.substr(0, s.find(" ms=")); };
  CHECK(mask(slurp(a / "solution.txt")) == mask(slurp(b / "solution.txt")));
}

TEST_CASE("command-line binary") {
  const std::string bin = shell_quote(OOSK_CLI_PATH);
  fs::path out = scratch("bin");
  std::string mult2;
  for (const auto& f : oosk::testing::mult2_files()) mult2 += " " + shell_quote(f);
  CHECK(shell(bin + mult2 + " --out " + shell_quote(out)) == 0);
  CHECK(fs::exists(out / "solution.txt"));
  CHECK(fs::exists(out / "java" / "SimpleMath.java"));
  CHECK(fs::exists(out / "log" / "log.txt"));
  CHECK(shell(bin + " --help") == 0);
  CHECK(shell(bin) == kExitInput);
  CHECK(shell(bin + mult2 + " --hole-bits 0") == kExitInput);
  CHECK(shell(bin + " " + shell_quote(out / "nope.java")) == kExitInput);
  fs::path in = write_file(scratch("bin_in"), "U.java", kUnsat);
  CHECK(shell(bin + " " + shell_quote(in) + " --out " + shell_quote(scratch("bin_unsat"))) == kExitUnsat);
  std::string automata;
  for (const auto& f : oosk::testing::automata_files()) automata += " " + shell_quote(f);
  CHECK(shell(bin + automata + " --timeout 0.000000001 --out " + shell_quote(scratch("bin_timeout"))) == kExitTimeout);
  CHECK(shell(bin + automata + " --jobs 2 --emit-ir --out " + shell_quote(scratch("bin_auto"))) == kExitSolved);
  fs::remove_all(fs::temp_directory_path() / ("oosk_cli_test_" + std::to_string(::getpid())));
}
