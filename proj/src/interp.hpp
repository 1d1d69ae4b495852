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

// IR interpreter shared by concrete replay and symbolic search.  Unknowns
// and every decision that depends on them are delegated to an Oracle; a
// symbolic oracle answers what its constraint store entails and raises
// BranchRequest for the rest.

#ifndef OOSK_SRC_INTERP_HPP_
#define OOSK_SRC_INTERP_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "oosk/constraints.hpp"
#include "oosk/engine.hpp"
#include "oosk/runtime.hpp"

namespace oosk::detail {

struct BranchRequest {
  Constraint c;
};

struct AssertSignal {
  SourceSpan site;
};

struct ResourceSignal {
  std::string reason;
};

class Oracle {
 public:
  virtual ~Oracle() = default;
  virtual Value hole(int ordinal, int iteration) = 0;
  virtual int choice(int ordinal, int iteration) = 0;
  virtual int repeat(int ordinal) = 0;
  // At least one side is Sym.
  virtual bool decide(Rel rel, const Value& a, const Value& b) = 0;
  virtual std::int64_t concrete(const Value& sym) = 0;
};

// Oracle over a total assignment; missing entries read as lower bounds.
class ConcreteOracle : public Oracle {
 public:
  explicit ConcreteOracle(const Assignment& a) : a_(a) {}
  Value hole(int ordinal, int iteration) override;
  int choice(int ordinal, int iteration) override;
  int repeat(int ordinal) override;
  bool decide(Rel, const Value&, const Value&) override;
  std::int64_t concrete(const Value&) override;

 private:
  const Assignment& a_;
};

class Interpreter {
 public:
  Interpreter(const ir::Program& p, const Limits& limits, Oracle& oracle);

  // Fresh heap and statics, then static initialization.
  void begin();
  Value eval_objective(const ir::Expr& e);
  // Runs a parameterless function to completion.
  void run(int fn);

  std::int64_t steps() const { return steps_; }
  Heap& heap() { return heap_; }

 private:
  struct Frame {
    std::vector<Value> locals;
    int iteration = 0;
    Value ret;
  };
  enum class Flow { Normal, Return };

  Value call(int fn, std::vector<Value> args);
  Flow exec(const std::vector<ir::Instr>& body, Frame& f);
  Value eval(const ir::Expr& e, Frame& f);
  bool truth(const Value& v);
  std::int64_t number(const Value& v);
  bool compare(ir::Op op, const Value& a, const Value& b);
  Value default_of(const TypeDesc& t) const;
  HeapObject& object(const Value& v, const char* what);
  void tick();

  const ir::Program& p_;
  Limits limits_;
  Oracle& oracle_;
  Heap heap_;
  std::int64_t steps_ = 0;
  int depth_ = 0;
};

// Runs one harness and classifies the ending.  BranchRequest escapes.
// With `objectives` the harness's objectives are evaluated (and made
// concrete) right after static initialization.
EvalOutcome run_harness(const ir::Program& p, int harness_fn, const Limits& limits, Oracle& oracle,
                        bool objectives = true);

}  // namespace oosk::detail

#endif  // OOSK_SRC_INTERP_HPP_
