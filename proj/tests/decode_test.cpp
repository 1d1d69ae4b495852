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

#include <random>

#include "doctest.h"
#include "oosk/decode.hpp"
#include "oosk/pipeline.hpp"
#include "oosk/unparse.hpp"
#include "ref_interp.hpp"
#include "test_util.hpp"

using namespace oosk;
using oosk::testing::RefInterp;

namespace {

SketchAst reparse(const std::map<std::string, std::string>& java) {
  std::vector<SourceFile> files;
  for (const auto& [name, text] : java) files.push_back({name, text});
  return parse_sources(files);
}

std::string joined(const std::map<std::string, std::string>& java) {
  std::string all;
  for (const auto& [name, text] : java) all += text;
  return all;
}

// Random total assignment biased towards small values so that automaton
// transitions actually fire.
Assignment random_assignment(const ir::Program& p, std::mt19937& rng, int max_repeat) {
  std::map<int, int> reps;
  for (const auto& r : p.registry.repeats) reps[r.id.ordinal] = std::uniform_int_distribution<int>(0, max_repeat)(rng);
  Assignment a = default_assignment(p, reps);
  for (auto& [key, v] : a.holes) {
    const HoleInfo& h = p.registry.hole(key.first);
    std::int64_t hi = h.max_value();
    v = std::uniform_int_distribution<int>(0, 9)(rng) < 7 ? std::uniform_int_distribution<std::int64_t>(0, std::min<std::int64_t>(hi, 3))(rng)
                                                          : std::uniform_int_distribution<std::int64_t>(0, hi)(rng);
  }
  for (auto& [key, v] : a.choices) v = std::uniform_int_distribution<int>(0, p.registry.choice(key.first).arity - 1)(rng);
  return a;
}

const char* ref_name(RefInterp::Outcome o) {
  switch (o) {
    case RefInterp::Outcome::Pass: return "Pass";
    case RefInterp::Outcome::AssertFail: return "AssertFail";
    case RefInterp::Outcome::Error: return "Error";
  }
  return "?";
}

const char* ir_name(EvalStatus s) {
  switch (s) {
    case EvalStatus::Pass: return "Pass";
    case EvalStatus::AssertFail: return "AssertFail";
    default: return "Error";
  }
}

}  // namespace

TEST_CASE("decoded mult2 is concrete and multiplies by two") {
  RunOptions o;
  o.inputs = oosk::testing::mult2_files();
  o.out = "decode_test_mult2";
  RunResult r = run(o);
  REQUIRE(r.exit_code == kExitSolved);
  std::string all = joined(r.java);
  CHECK(all.find("return 2 * x;") != std::string::npos);
  for (const char* s : {"??", "{|", "|}", "minrepeat", "generator", "harness"}) CHECK(all.find(s) == std::string::npos);
}

TEST_CASE("decoding is idempotent under reparse") {
  for (auto files : {oosk::testing::mult2_files(), oosk::testing::automata_files()}) {
    RunOptions o;
    o.inputs = files;
    o.out = "decode_test_idem";
    RunResult r = run(o);
    REQUIRE(r.exit_code == kExitSolved);
    SketchAst again = reparse(r.java);
    std::map<std::string, std::string> twice = decode_sources(again);
    CHECK(twice == r.java);
  }
}

TEST_CASE("decoded programs pass every harness under the reference interpreter") {
  for (auto files : {oosk::testing::mult2_files(), oosk::testing::automata_files()}) {
    auto c = compile_files(files);
    SolveResult s = solve(c->program, EngineConfig{});
    REQUIRE(s.verdict == Verdict::Sat);
    SketchAst concrete = apply_solution(*c->source, c->program.registry, s.solution.assignment);
    // Keep the harness markers so the oracle can find the entry points.
    std::map<std::string, std::string> with_markers = unparse(concrete, UnparseOptions{true});
    SketchAst parsed = reparse(with_markers);
    RefInterp ref(parsed);
    auto hs = ref.harnesses();
    CHECK(hs.size() == c->program.harnesses.size());
    for (const auto& [cls, m] : hs) {
      INFO(cls << "." << m << " " << ref.last_error());
      CHECK(ref.run_harness(cls, m) == RefInterp::Outcome::Pass);
    }
  }
}

TEST_CASE("missing values are reported as an incomplete solution") {
  auto c = compile_files(oosk::testing::mult2_files());
  Assignment empty;
  try {
    apply_solution(*c->source, c->program.registry, empty);
    FAIL("expected IncompleteSolution");
  } catch (const SketchError& e) {
    CHECK(e.kind() == ErrorKind::IncompleteSolution);
  }
}

TEST_CASE("replacement log names owner, unknown and value") {
  auto c = compile_files(oosk::testing::mult2_files());
  SolveResult s = solve(c->program, EngineConfig{});
  REQUIRE(s.verdict == Verdict::Sat);
  std::vector<std::string> replaced;
  apply_solution(*c->source, c->program.registry, s.solution.assignment, &replaced);
  REQUIRE(replaced.size() == 2);
  CHECK(replaced[0] == "SimpleMath.e_h1 = 2");
  CHECK(replaced[1] == "SimpleMath.e_c1 = 0");
}

TEST_CASE("boolean holes decode to boolean literals") {
  auto c = compile_sources({{"B.java",
                             "class B { static boolean f() { return ??; }\n"
                             "  harness static void h() { assert f(); } }"}});
  SolveResult s = solve(c->program, EngineConfig{});
  REQUIRE(s.verdict == Verdict::Sat);
  SketchAst concrete = apply_solution(*c->source, c->program.registry, s.solution.assignment);
  std::string text = joined(decode_sources(concrete));
  CHECK(text.find("return true;") != std::string::npos);
}

TEST_CASE("repeat copies that declare locals are scoped separately") {
  auto c = compile_sources({{"R.java",
                             "class R { static int n = 0;\n"
                             "  harness static void h() { minrepeat { int t = ??; n = n + t; } assert n == 5; } }"}});
  SolveResult s = solve(c->program, EngineConfig{});
  REQUIRE(s.verdict == Verdict::Sat);
  SketchAst concrete = apply_solution(*c->source, c->program.registry, s.solution.assignment);
  std::string text = joined(decode_sources(concrete));
  int n = s.solution.assignment.repeats.at(1);
  CHECK(n == 1);  // a single 5-bit hole reaches 5
  CHECK(text.find("int t = 5;") != std::string::npos);

  auto c2 = compile_sources({{"R.java",
                              "class R { static int n = 0;\n"
                              "  harness static void h() { minrepeat { int t = ??; assert t < 3; n = n + t; }\n"
                              "    assert n == 5; } }"}});
  SolveResult s2 = solve(c2->program, EngineConfig{});
  REQUIRE(s2.verdict == Verdict::Sat);
  CHECK(s2.solution.assignment.repeats.at(1) == 3);
  SketchAst concrete2 = apply_solution(*c2->source, c2->program.registry, s2.solution.assignment);
  SketchAst again = reparse(unparse(concrete2, UnparseOptions{true}));
  RefInterp ref(again);
  CHECK(ref.run_harness("R", "h") == RefInterp::Outcome::Pass);
}

TEST_CASE("property: decoding commutes with evaluation on random assignments") {
  std::mt19937 rng(20261016);
  auto c = compile_files(oosk::testing::automata_files());
  const ir::Program& p = c->program;
  int agree_pass = 0;
  for (int round = 0; round < 150; ++round) {
    Assignment a = random_assignment(p, rng, 3);
    SketchAst concrete = apply_solution(*c->source, p.registry, a);
    SketchAst parsed = reparse(unparse(concrete, UnparseOptions{true}));
    RefInterp ref(parsed);
    auto hs = ref.harnesses();
    REQUIRE(hs.size() == p.harnesses.size());
    for (size_t i = 0; i < hs.size(); ++i) {
      const ir::Function& fn = p.functions[static_cast<size_t>(p.harnesses[i])];
      REQUIRE(fn.name.rfind(hs[i].second + "_", 0) == 0);
      EvalOutcome ir_out = eval_harness(p, p.harnesses[i], a, Limits{});
      RefInterp::Outcome ref_out = ref.run_harness(hs[i].first, hs[i].second);
      INFO("round " << round << " harness " << fn.name << " ref error: " << ref.last_error()
                    << " ir reason: " << ir_out.reason);
      CHECK(std::string(ir_name(ir_out.status)) == ref_name(ref_out));
      if (ref_out == RefInterp::Outcome::Pass) ++agree_pass;
    }
  }
  CHECK(agree_pass > 0);
}
