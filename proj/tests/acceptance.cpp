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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.  The command-line binary is run as a child process; its
// outputs are checked with the reference interpreter and explicit oracles.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <regex>
#include <set>
#include <sstream>

#include "gen_util.hpp"
#include "oosk/decode.hpp"
#include "oosk/parser.hpp"
#include "oosk/pipeline.hpp"
#include "ref_interp.hpp"
#include "test_util.hpp"

namespace fs = std::filesystem;
using oosk::testing::RefAssertFailure;
using oosk::testing::RefError;
using oosk::testing::RefInterp;
using oosk::testing::RValue;
using oosk::testing::sample_path;

namespace {

// Pinned tolerances.
constexpr double kMult2Seconds = 1.0;
constexpr double kMonitorSeconds = 60.0;
constexpr double kCadsrSeconds = 120.0;
constexpr double kUnsatSeconds = 120.0;
constexpr int kExpectedNumState = 3;
constexpr int kExpectedMonitorDepth = 4;
constexpr int kOracleMaxLength = 6;
constexpr int kTinySketches = 250;
constexpr int kAllowedMismatches = 0;
constexpr std::uint32_t kTinySeed = 20260;

struct CliRun {
  int exit = -1;
  double seconds = 0;
  fs::path out;
  std::string solution;
  std::map<std::string, std::int64_t> values;  // unknown or objective name -> value
  std::map<std::string, std::string> java;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string shell_quote(const std::string& s) { return "'" + s + "'"; }

CliRun run_cli(const std::vector<std::string>& files, const fs::path& out, const std::string& extra = "") {
  std::string cmd = shell_quote(OOSK_CLI_PATH);
  for (const auto& f : files) cmd += " " + shell_quote(f);
  cmd += " --out " + shell_quote(out.string()) + " " + extra + " > /dev/null 2>&1";
  CliRun r;
  r.out = out;
  auto t0 = std::chrono::steady_clock::now();
  int status = std::system(cmd.c_str());
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.exit = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  if (fs::exists(out / "solution.txt")) {
    r.solution = slurp(out / "solution.txt");
    std::istringstream in(r.solution);
    std::string kind, name, eq;
    std::int64_t v = 0;
    std::string line;
    while (std::getline(in, line)) {
      std::istringstream ls(line);
      if (ls >> kind >> name >> eq >> v && eq == "=") r.values[name] = v;
    }
  }
  if (fs::exists(out / "java"))
    for (const auto& e : fs::directory_iterator(out / "java")) r.java[e.path().filename().string()] = slurp(e.path());
  return r;
}

std::int64_t value_or(const CliRun& r, const std::string& name, std::int64_t dflt = -1) {
  auto it = r.values.find(name);
  return it == r.values.end() ? dflt : it->second;
}

oosk::SketchAst reparse(const std::map<std::string, std::string>& java) {
  std::vector<oosk::SourceFile> files;
  for (const auto& [name, text] : java) files.push_back({name, text});
  return oosk::parse_sources(files);
}

// Harness names of a sketch as they appear after specialization.
std::vector<std::pair<std::string, std::string>> sketch_harnesses(const std::vector<std::string>& files) {
  auto c = oosk::compile_files(files);
  RefInterp ref(*c->source);
  return ref.harnesses();
}

bool free_of_sketch_tokens(const std::map<std::string, std::string>& java) {
  for (const auto& [name, text] : java)
    for (const char* tok : {"??", "{|", "minrepeat"})
      if (text.find(tok) != std::string::npos) return false;
  return true;
}

// Reparse plus concrete run of every listed harness.
struct Soundness {
  bool clean = false;
  int passed = 0;
  int total = 0;
  std::string first_failure;
  bool ok() const { return clean && total > 0 && passed == total; }
};

Soundness check_decoded(const std::map<std::string, std::string>& java,
                        const std::vector<std::pair<std::string, std::string>>& harnesses) {
  Soundness s;
  s.clean = free_of_sketch_tokens(java);
  s.total = static_cast<int>(harnesses.size());
  try {
    oosk::SketchAst ast = reparse(java);
    RefInterp ref(ast);
    for (const auto& [cls, m] : harnesses) {
      if (ref.run_harness(cls, m) == RefInterp::Outcome::Pass)
        ++s.passed;
      else if (s.first_failure.empty())
        s.first_failure = cls + "." + m;
    }
  } catch (const std::exception& e) {
    s.first_failure = e.what();
  }
  return s;
}

// --- DBConnection monitor as a DFA over token ids {1, 2} -----------------------

constexpr std::int64_t kTrap = -1;  // a failed assertion: absorbing and rejecting

struct Dfa {
  std::int64_t init = 0;
  std::function<std::int64_t(std::int64_t, int)> step;
  std::function<bool(std::int64_t)> accept;
};

// Open/close discipline: closed (0) and open (1) accept, error (2) absorbs.
Dfa reference_monitor() {
  Dfa d;
  d.init = 0;
  d.step = [](std::int64_t s, int tok) -> std::int64_t {
    if (s == 0) return tok == 1 ? 1 : 2;
    if (s == 1) return tok == 2 ? 0 : 2;
    return 2;
  };
  d.accept = [](std::int64_t s) { return s != 2; };
  return d;
}

Dfa extracted_monitor(RefInterp& ref) {
  ref.reset();
  RValue conn = ref.construct("DBConnection");
  RValue m = ref.get_field(conn, "m");
  std::map<int, RValue> tokens = {{1, ref.get_static("DBConnection.Monitor", "OPEN")},
                                  {2, ref.get_static("DBConnection.Monitor", "CLOSE")}};
  Dfa d;
  d.init = ref.get_field(m, "state").i;
  d.step = [&ref, m, tokens](std::int64_t s, int tok) -> std::int64_t {
    if (s == kTrap) return kTrap;
    ref.set_field(m, "state", RValue::integer(s));
    try {
      ref.invoke(m, "transition", {tokens.at(tok)});
    } catch (const RefAssertFailure&) {
      return kTrap;
    } catch (const RefError&) {
      return kTrap;
    }
    return ref.get_field(m, "state").i;
  };
  d.accept = [&ref, m](std::int64_t s) {
    if (s == kTrap) return false;
    ref.set_field(m, "state", RValue::integer(s));
    return ref.invoke(m, "accept").i != 0;
  };
  return d;
}

// Product construction: true iff no reachable pair disagrees on acceptance.
bool equivalent(const Dfa& a, const Dfa& b, const std::vector<int>& alphabet, std::string* witness) {
  std::map<std::pair<std::int64_t, std::int64_t>, std::string> seen;
  std::vector<std::pair<std::int64_t, std::int64_t>> queue = {{a.init, b.init}};
  seen[queue.front()] = "";
  for (size_t i = 0; i < queue.size(); ++i) {
    auto [x, y] = queue[i];
    if (a.accept(x) != b.accept(y)) {
      *witness = "[" + seen[{x, y}] + "]";
      return false;
    }
    for (int t : alphabet) {
      std::pair<std::int64_t, std::int64_t> next = {a.step(x, t), b.step(y, t)};
      if (seen.count(next)) continue;
      seen[next] = seen[{x, y}] + (seen[{x, y}].empty() ? "" : " ") + std::to_string(t);
      queue.push_back(next);
    }
  }
  return true;
}

// --- CADsR against c(a|d)+r ----------------------------------------------------

struct OracleResult {
  int checked = 0;
  int mismatches = 0;
  std::string example;
};

OracleResult cadsr_oracle(const std::map<std::string, std::string>& java) {
  OracleResult r;
  oosk::SketchAst ast = reparse(java);
  RefInterp ref(ast);
  ref.reset();
  RValue a = ref.construct("CADsR");
  const std::regex lisp("c[ad]+r");
  const std::string letters = "cadr";
  for (int len = 1; len <= kOracleMaxLength; ++len) {
    std::vector<int> digits(static_cast<size_t>(len), 0);
    while (true) {
      std::string s;
      for (int d : digits) s += letters[static_cast<size_t>(d)];
      bool got = false;
      try {
        got = ref.invoke(a, "accept", {RValue::string(s)}).i != 0;
      } catch (const RefAssertFailure&) {
        got = false;
      } catch (const RefError&) {
        got = false;
      }
      ++r.checked;
      if (got != std::regex_match(s, lisp)) {
        if (r.mismatches == 0) r.example = "\"" + s + "\" " + (got ? "accepted" : "rejected");
        ++r.mismatches;
      }
      size_t i = digits.size();
      while (i > 0 && ++digits[i - 1] == 4) digits[--i] = 0;
      if (i == 0) break;
    }
  }
  return r;
}

// --- reporting -------------------------------------------------------------------

int failures = 0;

void report(int n, bool pass, const std::string& what) {
  std::cout << "criterion " << n << ": " << (pass ? "PASS" : "FAIL") << "  " << what << std::endl;
  if (!pass) ++failures;
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f s", s);
  return buf;
}

std::string without_ms(const std::string& text) {
  static const std::regex ms(" ms=[0-9]+");
  return std::regex_replace(text, ms, " ms=*");
}

}  // namespace

int main() {
  fs::path root = fs::temp_directory_path() / ("oosk_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(root);
  fs::create_directories(root);

  const std::vector<std::string> mult2 = oosk::testing::mult2_files();
  const std::vector<std::string> automata = oosk::testing::automata_files();
  const std::vector<std::string> cadsr_short = {sample_path("automata/Automaton.java"),
                                                sample_path("automata/DBConnection.java"),
                                                sample_path("cadsr_short/Tests.java")};
  const std::vector<std::string> two_states = {sample_path("automata_two_states/Automaton.java"),
                                               sample_path("automata/DBConnection.java"),
                                               sample_path("automata/Tests.java")};
  std::vector<Soundness> decoded;

  // 1. mult2 end to end.
  CliRun m2 = run_cli(mult2, root / "mult2");
  {
    Soundness s = check_decoded(m2.java, sketch_harnesses(mult2));
    decoded.push_back(s);
    bool text_ok = m2.java.count("SimpleMath.java") && m2.java["SimpleMath.java"].find("return 2 * x;") != std::string::npos;
    bool pass = m2.exit == 0 && m2.seconds < kMult2Seconds && value_or(m2, "e_h1") == 2 && value_or(m2, "e_c1") == 0 &&
                s.ok() && text_ok;
    report(1, pass,
           "mult2: exit=" + std::to_string(m2.exit) + ", " + fmt_seconds(m2.seconds) + " (limit " +
               fmt_seconds(kMult2Seconds) + "), e_h1=" + std::to_string(value_or(m2, "e_h1")) +
               ", e_c1=" + std::to_string(value_or(m2, "e_c1")) + ", harnesses " + std::to_string(s.passed) + "/" +
               std::to_string(s.total));
  }

  // 2 and 3 share one run of the full automata program.
  CliRun au = run_cli(automata, root / "automata");
  auto au_harnesses = sketch_harnesses(automata);
  Soundness au_sound = check_decoded(au.java, au_harnesses);
  decoded.push_back(au_sound);
  {
    std::int64_t ns = value_or(au, "min_num_state_Automaton1");
    std::int64_t depth = value_or(au, "e_r1");
    bool equiv = false;
    std::string witness = "no decoded output";
    if (au.exit == 0) {
      try {
        oosk::SketchAst ast = reparse(au.java);
        RefInterp ref(ast);
        Dfa synth = extracted_monitor(ref);
        witness.clear();
        equiv = equivalent(synth, reference_monitor(), {1, 2}, &witness);
      } catch (const RefError& e) {
        witness = e.reason;
      }
    }
    bool pass = au.exit == 0 && au.seconds < kMonitorSeconds && ns == kExpectedNumState &&
                depth == kExpectedMonitorDepth && equiv;
    report(2, pass,
           "DBConnection monitor: exit=" + std::to_string(au.exit) + ", " + fmt_seconds(au.seconds) +
               ", num_state=" + std::to_string(ns) + " (want " + std::to_string(kExpectedNumState) +
               "), depth=" + std::to_string(depth) + " (want " + std::to_string(kExpectedMonitorDepth) +
               "), DFA equivalence " + (equiv ? "holds" : "fails on " + witness));
  }
  {
    std::int64_t ns = value_or(au, "min_num_state_Automaton2");
    OracleResult o;
    if (au.exit == 0) o = cadsr_oracle(au.java);
    bool pass = au.exit == 0 && au.seconds < kCadsrSeconds && ns == kExpectedNumState && o.checked == 5460 &&
                o.mismatches == 0;
    report(3, pass,
           "CADsR: exit=" + std::to_string(au.exit) + ", num_state=" + std::to_string(ns) + " (want " +
               std::to_string(kExpectedNumState) + "), oracle mismatches " + std::to_string(o.mismatches) + "/" +
               std::to_string(o.checked) + (o.example.empty() ? "" : ", e.g. " + o.example));
  }

  // 4. Underconstrained CADsR: passes its harness, fails the oracle.
  CliRun cs = run_cli(cadsr_short, root / "cadsr_short");
  {
    Soundness s = check_decoded(cs.java, sketch_harnesses(cadsr_short));
    decoded.push_back(s);
    OracleResult o;
    if (cs.exit == 0) o = cadsr_oracle(cs.java);
    bool pass = cs.exit == 0 && s.ok() && o.checked == 5460 && o.mismatches > 0;
    report(4, pass,
           "short CADsR harness: exit=" + std::to_string(cs.exit) + ", harnesses " + std::to_string(s.passed) + "/" +
               std::to_string(s.total) + ", oracle mismatches " + std::to_string(o.mismatches) + "/" +
               std::to_string(o.checked) + (o.example.empty() ? "" : ", e.g. " + o.example));
  }

  // 5. Two fixed states must be unsatisfiable.
  {
    CliRun ts = run_cli(two_states, root / "two_states");
    bool pass = ts.exit == 1 && ts.seconds < kUnsatSeconds;
    report(5, pass,
           "num_state fixed to 2: exit=" + std::to_string(ts.exit) + " (want 1), " + fmt_seconds(ts.seconds) +
               (ts.exit == 0 ? ", solved with e_r1=" + std::to_string(value_or(ts, "e_r1")) +
                                   " and e_r2=" + std::to_string(value_or(ts, "e_r2"))
                             : std::string()));
  }

  // 6. Tiny sketches against exhaustive enumeration.
  {
    std::mt19937 rng(kTinySeed);
    int mismatches = 0, sat = 0, with_objective = 0;
    std::string first;
    for (int i = 0; i < kTinySketches; ++i) {
      oosk::testing::TinySketchGen gen(rng);
      auto t = gen.generate();
      oosk::DesugarConfig cfg;
      cfg.hole_bits = t.hole_bits;
      auto c = oosk::compile_sources({{"T.java", t.source}}, cfg);
      auto bf = oosk::testing::brute_force(*c);
      oosk::SolveResult r = oosk::solve(c->program, oosk::EngineConfig{});
      bool ok = (r.verdict == oosk::Verdict::Sat) == bf.sat;
      if (ok && bf.sat) {
        ++sat;
        std::vector<std::int64_t> objs;
        for (const auto& o : c->program.objectives) objs.push_back(r.solution.objective_values.at(o.name));
        if (t.has_objective) {
          ++with_objective;
          ok = objs == *bf.best_objectives;
        }
        // Feed criterion 7 as well.
        oosk::SketchAst concrete = oosk::apply_solution(*c->source, c->program.registry, r.solution.assignment);
        RefInterp src(*c->source);
        decoded.push_back(check_decoded(oosk::decode_sources(concrete), src.harnesses()));
      }
      if (!ok) {
        ++mismatches;
        if (first.empty()) first = t.source;
      }
    }
    report(6, mismatches <= kAllowedMismatches,
           "tiny sketches: " + std::to_string(kTinySketches) + " checked, " + std::to_string(sat) + " sat, " +
               std::to_string(with_objective) + " with objective, " + std::to_string(mismatches) + " mismatches");
    if (!first.empty()) std::cout << "  first mismatch:\n" << first;
  }

  // 7. Decode soundness over every solved program above.
  {
    int ok = 0;
    std::string bad;
    for (const auto& s : decoded) {
      if (s.ok())
        ++ok;
      else if (bad.empty())
        bad = s.clean ? "harness " + s.first_failure : "sketch tokens left";
    }
    bool pass = !decoded.empty() && ok == static_cast<int>(decoded.size());
    report(7, pass,
           "decode soundness: " + std::to_string(ok) + "/" + std::to_string(decoded.size()) +
               " solved programs reparse, run clean and carry no sketch tokens" + (bad.empty() ? "" : "; " + bad));
  }

  // 8. Determinism with four workers.  Only the wall-clock ms= value is masked.
  {
    CliRun m2j = run_cli(mult2, root / "mult2_j4", "--jobs 4 --seed 0");
    CliRun auj = run_cli(automata, root / "automata_j4", "--jobs 4 --seed 0");
    bool same_m2 = m2.exit == 0 && m2j.exit == 0 && without_ms(m2.solution) == without_ms(m2j.solution);
    bool same_au = au.exit == 0 && auj.exit == 0 && without_ms(au.solution) == without_ms(auj.solution);
    report(8, same_m2 && same_au,
           std::string("determinism: mult2 ") + (same_m2 ? "identical" : "differs") + ", automata (criteria 2 and 3) " +
               (same_au ? "identical" : "differs"));
  }

  fs::remove_all(root);
  return failures == 0 ? 0 : 1;
}
