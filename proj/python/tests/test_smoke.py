# Copyright 2026 The oosketch Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

from pathlib import Path

import pytest

import oosketch

SAMPLES = Path(__file__).resolve().parents[2] / "samples"


def read_sources(*rel):
    return {Path(r).name: (SAMPLES / r).read_text() for r in rel}


def test_mult2():
    r = oosketch.synthesize(read_sources("mult2/SimpleMath.java", "mult2/Test.java"))
    assert r.verdict == "sat"
    assert r.values == {"e_h1": 2, "e_c1": 0}
    assert "return 2 * x;" in r.java["SimpleMath.java"]
    assert r.solution_text.startswith("hole e_h1 = 2\nchoice e_c1 = 0\n")


def test_automata_objectives_and_repeats():
    r = oosketch.synthesize(
        read_sources("automata/Automaton.java", "automata/DBConnection.java", "automata/Tests.java"), jobs=2
    )
    assert r.verdict == "sat"
    assert r.values["e_r1"] == 4
    assert r.values["e_r2"] == 2
    assert r.objectives == {"min_num_state_Automaton1": 2, "min_num_state_Automaton2": 2}
    for text in r.java.values():
        assert "??" not in text and "minrepeat" not in text


def test_unsat_and_bounds():
    src = {"U.java": "class U { harness static void h() { int x = ??; assert x != x; } }"}
    assert oosketch.synthesize(src).verdict == "unsat"
    acc = {"T.java": "class T { static int f() { int y = 0; minrepeat { y = y + ??; } return y; }\n"
                     "  harness static void h() { assert f() == 5 * 6; } }"}
    assert oosketch.synthesize(acc, hole_bits=3).values["e_r1"] == 5
    assert oosketch.synthesize(acc, hole_bits=3, unroll_max=4).verdict == "unsat"


def test_errors_raise():
    with pytest.raises(oosketch.SketchError, match="ParseError"):
        oosketch.synthesize({"Bad.java": "class A { int f() { return 1 +; } }"})
    with pytest.raises(ValueError, match="InheritanceCycle"):
        oosketch.synthesize({"C.java": "class A extends B { } class B extends A { }"})


def test_ir_listing():
    text = oosketch.ir_listing(read_sources("mult2/SimpleMath.java", "mult2/Test.java"))
    assert "return e_h1 * choice(e_c1: [x, 0])" in text


def test_run_writes_outputs(tmp_path):
    files = [str(SAMPLES / "mult2" / n) for n in ("SimpleMath.java", "Test.java")]
    res = oosketch.run(files, str(tmp_path / "out"))
    assert res["exit_code"] == 0
    assert (tmp_path / "out" / "solution.txt").read_text() == res["solution_text"]
    assert (tmp_path / "out" / "java" / "SimpleMath.java").exists()
    assert oosketch.run([str(tmp_path / "missing.java")], str(tmp_path / "o2"))["exit_code"] == 2
