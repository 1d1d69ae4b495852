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

// Search outline.  Harnesses are grouped into components that share no
// unknowns.  Per component, repeat-count vectors are tried by ascending
// total; each vector gets a depth-first search in which the interpreter runs
// over a constraint store and asks for a split whenever a decision is not
// yet entailed.  Leaves are confirmed by labeling, which also minimizes the
// objectives; branch-and-bound prunes subtrees that cannot beat the best
// objective vector found so far.

#include "oosk/engine.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "interp.hpp"
#include "oosk/constraints.hpp"

namespace oosk {

const char* eval_status_name(EvalStatus s) {
  switch (s) {
    case EvalStatus::Pass: return "Pass";
    case EvalStatus::AssertFail: return "AssertFail";
    case EvalStatus::Trap: return "Trap";
    case EvalStatus::ResourceExceeded: return "ResourceExceeded";
  }
  return "?";
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Sat: return "sat";
    case Verdict::Unsat: return "unsat";
    case Verdict::Timeout: return "timeout";
  }
  return "?";
}

std::string instance_label(UnknownKind kind, int ordinal, int iteration) {
  std::string base = unknown_name(kind, ordinal);
  return iteration > 0 ? instance_name(base, iteration) : base;
}

EvalOutcome eval_harness(const ir::Program& p, int harness_fn, const Assignment& a, const Limits& limits) {
  detail::ConcreteOracle oracle(a);
  return detail::run_harness(p, harness_fn, limits, oracle);
}

std::optional<std::map<std::string, std::int64_t>> eval_objectives(const ir::Program& p, const Assignment& a,
                                                                   const Limits& limits) {
  detail::ConcreteOracle oracle(a);
  detail::Interpreter in(p, limits, oracle);
  std::map<std::string, std::int64_t> out;
  try {
    in.begin();
    for (const auto& o : p.objectives) out[o.name] = in.eval_objective(o.expr).v;
  } catch (const TrapSignal&) {
    return std::nullopt;
  } catch (const detail::AssertSignal&) {
    return std::nullopt;
  } catch (const detail::ResourceSignal&) {
    return std::nullopt;
  }
  return out;
}

Assignment default_assignment(const ir::Program& p, const std::map<int, int>& repeats) {
  Assignment a;
  const auto& reg = p.registry;
  auto count = [&](int r) {
    auto it = repeats.find(r);
    return it == repeats.end() ? 0 : it->second;
  };
  for (const auto& r : reg.repeats) a.repeats[r.id.ordinal] = count(r.id.ordinal);
  for (const auto& h : reg.holes) {
    if (h.repeat == 0) {
      a.holes[{h.id.ordinal, 0}] = 0;
    } else {
      for (int i = 1; i <= count(h.repeat); ++i) a.holes[{h.id.ordinal, i}] = 0;
    }
  }
  for (const auto& c : reg.choices) {
    if (c.repeat == 0) {
      a.choices[{c.id.ordinal, 0}] = 0;
    } else {
      for (int i = 1; i <= count(c.repeat); ++i) a.choices[{c.id.ordinal, i}] = 0;
    }
  }
  return a;
}

std::string format_solution(const ir::Program& p, const Solution& s) {
  std::ostringstream os;
  const auto& a = s.assignment;
  const auto& reg = p.registry;
  auto count = [&](int r) {
    auto it = a.repeats.find(r);
    return it == a.repeats.end() ? 0 : it->second;
  };
  for (const auto& h : reg.holes) {
    int n = h.repeat == 0 ? 0 : count(h.repeat);
    for (int i = h.repeat == 0 ? 0 : 1; i <= n; ++i) {
      auto it = a.holes.find({h.id.ordinal, i});
      os << "hole " << instance_label(UnknownKind::Hole, h.id.ordinal, i) << " = "
         << (it == a.holes.end() ? 0 : it->second) << "\n";
    }
  }
  for (const auto& c : reg.choices) {
    int n = c.repeat == 0 ? 0 : count(c.repeat);
    for (int i = c.repeat == 0 ? 0 : 1; i <= n; ++i) {
      auto it = a.choices.find({c.id.ordinal, i});
      os << "choice " << instance_label(UnknownKind::Choice, c.id.ordinal, i) << " = "
         << (it == a.choices.end() ? 0 : it->second) << "\n";
    }
  }
  for (const auto& r : reg.repeats) {
    os << "repeat " << unknown_name(UnknownKind::Repeat, r.id.ordinal) << " = " << count(r.id.ordinal) << "\n";
  }
  for (const auto& o : p.objectives) {
    auto it = s.objective_values.find(o.name);
    if (it != s.objective_values.end()) os << "objective " << o.name << " = " << it->second << "\n";
  }
  os << "stats candidates=" << s.stats.candidates << " depth=" << s.stats.depth << " ms=" << s.stats.ms << "\n";
  return os.str();
}

bool verify_solution(const ir::Program& p, const Solution& s, const Limits& limits) {
  for (int h : p.harnesses) {
    if (eval_harness(p, h, s.assignment, limits).status != EvalStatus::Pass) return false;
  }
  auto objs = eval_objectives(p, s.assignment, limits);
  if (!objs) return false;
  return *objs == s.objective_values;
}

namespace {

using detail::BranchRequest;
using Clock = std::chrono::steady_clock;

// Runs fn(0..n-1) on up to `jobs` threads.  Results are written by index,
// so the outcome never depends on scheduling.
template <typename F>
void parallel_for(size_t n, int jobs, F&& fn) {
  size_t workers = std::min(n, static_cast<size_t>(std::max(1, jobs)));
  if (workers <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  for (size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (size_t i = next++; i < n; i = next++) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

struct Deadline {
  Clock::time_point end;
  std::atomic<bool>* expired;

  bool check() const {
    if (expired->load(std::memory_order_relaxed)) return true;
    if (Clock::now() >= end) {
      expired->store(true);
      return true;
    }
    return false;
  }
};

// --- components -----------------------------------------------------------------

struct Component {
  std::vector<int> harnesses;   // function indices, declaration order
  std::vector<int> objectives;  // indices into Program::objectives
  std::set<int> holes, choices, repeats;
};

// What one root (harness or objective) can reach.  Dispatch arms count only
// for classes it can allocate; a static initializer counts only when its
// field is read.
class Reach {
 public:
  explicit Reach(const ir::Program& p) : p_(p) {
    std::set<int> inits;
    if (p.static_init >= 0) {
      for (const auto& i : p.functions[static_cast<size_t>(p.static_init)].body) {
        if (i.kind == ir::InstrKind::Eval && i.exprs[0].kind == ir::ExprKind::Call) {
          inits.insert(static_cast<int>(i.exprs[0].value));
        } else {
          global_.push_back(&i);
        }
      }
    }
    for (int f : inits) {
      for (const auto& i : p.functions[static_cast<size_t>(f)].body) {
        if (i.kind == ir::InstrKind::AssignStatic) {
          by_slot_[i.index].push_back(&i);
        } else {
          global_.push_back(&i);
        }
      }
    }
  }

  void add_function(int f) { fns_.insert(f); }
  void add_expr(const ir::Expr& e) { scan(e); }

  void close() {
    for (const auto* i : global_) scan(*i);
    size_t before;
    do {
      before = size();
      std::vector<int> fns(fns_.begin(), fns_.end());
      for (int f : fns) scan_function(f);
      std::vector<int> reads(reads_.begin(), reads_.end());
      for (int s : reads) {
        auto it = by_slot_.find(s);
        if (it == by_slot_.end()) continue;
        for (const auto* i : it->second) scan(*i);
      }
    } while (size() != before);
  }

  std::set<int> holes, choices, repeats;

 private:
  size_t size() const {
    return fns_.size() + classes_.size() + reads_.size() + holes.size() + choices.size() + repeats.size();
  }

  void scan_function(int f) {
    const ir::Function& fn = p_.functions[static_cast<size_t>(f)];
    if (!fn.is_dispatch) {
      for (const auto& i : fn.body) scan(i);
      return;
    }
    for (const auto& i : fn.body) {
      if (i.kind != ir::InstrKind::If) continue;
      const ir::Expr& cond = i.exprs[0];
      int cls = static_cast<int>(cond.kids[1].value);
      if (!classes_.count(cls)) continue;
      for (const auto& b : i.body) scan(b);
    }
  }

  void scan(const ir::Instr& i) {
    if (i.kind == ir::InstrKind::Repeat) repeats.insert(i.index);
    for (const auto& e : i.exprs) scan(e);
    for (const auto& b : i.body) scan(b);
    for (const auto& b : i.orelse) scan(b);
  }

  void scan(const ir::Expr& e) {
    switch (e.kind) {
      case ir::ExprKind::Call: fns_.insert(static_cast<int>(e.value)); break;
      case ir::ExprKind::Alloc: classes_.insert(static_cast<int>(e.value)); break;
      case ir::ExprKind::Static: reads_.insert(static_cast<int>(e.value)); break;
      case ir::ExprKind::Hole: {
        int ord = static_cast<int>(e.value);
        holes.insert(ord);
        if (int r = p_.registry.hole(ord).repeat) repeats.insert(r);
        break;
      }
      case ir::ExprKind::Choice: {
        int ord = static_cast<int>(e.value);
        choices.insert(ord);
        if (int r = p_.registry.choice(ord).repeat) repeats.insert(r);
        break;
      }
      case ir::ExprKind::Builtin:
        if (static_cast<Builtin>(e.value) == Builtin::CharTokens) classes_.insert(p_.lib_class(LibClass::CharToken));
        break;
      default: break;
    }
    for (const auto& k : e.kids) scan(k);
  }

  const ir::Program& p_;
  std::vector<const ir::Instr*> global_;
  std::map<int, std::vector<const ir::Instr*>> by_slot_;
  std::set<int> fns_, classes_, reads_;
};

std::vector<Component> find_components(const ir::Program& p, bool decompose) {
  if (!decompose) {
    Component c;
    c.harnesses = p.harnesses;
    for (size_t j = 0; j < p.objectives.size(); ++j) c.objectives.push_back(static_cast<int>(j));
    for (const auto& h : p.registry.holes) c.holes.insert(h.id.ordinal);
    for (const auto& x : p.registry.choices) c.choices.insert(x.id.ordinal);
    for (const auto& r : p.registry.repeats) c.repeats.insert(r.id.ordinal);
    return {c};
  }
  // Roots: harnesses, then objectives.
  size_t nh = p.harnesses.size();
  size_t n = nh + p.objectives.size();
  std::vector<Reach> reach;
  for (size_t r = 0; r < n; ++r) {
    Reach x(p);
    if (r < nh) {
      x.add_function(p.harnesses[r]);
    } else {
      x.add_expr(p.objectives[r - nh].expr);
    }
    x.close();
    reach.push_back(std::move(x));
  }
  std::vector<size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](size_t a, size_t b) {
    a = find(a), b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };
  std::map<std::pair<int, int>, size_t> owner;  // (kind, ordinal) -> first root
  for (size_t r = 0; r < n; ++r) {
    auto claim = [&](int kind, int ord) {
      auto [it, fresh] = owner.emplace(std::make_pair(kind, ord), r);
      if (!fresh) unite(it->second, r);
    };
    for (int h : reach[r].holes) claim(0, h);
    for (int c : reach[r].choices) claim(1, c);
    for (int x : reach[r].repeats) claim(2, x);
  }
  std::map<size_t, size_t> index;
  std::vector<Component> out;
  for (size_t r = 0; r < n; ++r) {
    size_t root = find(r);
    auto it = index.find(root);
    if (it == index.end()) {
      it = index.emplace(root, out.size()).first;
      out.emplace_back();
    }
    Component& c = out[it->second];
    if (r < nh) {
      c.harnesses.push_back(p.harnesses[r]);
    } else {
      c.objectives.push_back(static_cast<int>(r - nh));
    }
    c.holes.insert(reach[r].holes.begin(), reach[r].holes.end());
    c.choices.insert(reach[r].choices.begin(), reach[r].choices.end());
    c.repeats.insert(reach[r].repeats.begin(), reach[r].repeats.end());
  }
  return out;
}

// --- search over one repeat vector ---------------------------------------------------

struct VarTable {
  std::map<std::tuple<int, int, int>, int> index;  // (kind 0 hole / 1 choice, ordinal, iteration)
  std::vector<std::tuple<int, int, int>> keys;
};

class SymOracle : public detail::Oracle {
 public:
  SymOracle(const ConstraintStore& s, const VarTable& vars, const std::map<int, int>& counts)
      : s_(s), vars_(vars), counts_(counts) {}

  Value hole(int ordinal, int iteration) override {
    int v = var(0, ordinal, iteration);
    if (v < 0) return Value::integer(0);
    if (s_.fixed(v)) return Value::integer(s_.lo(v));
    return Value::sym(v);
  }
  int choice(int ordinal, int iteration) override {
    int v = var(1, ordinal, iteration);
    if (v < 0) return 0;
    return static_cast<int>(concrete(Value::sym(v)));
  }
  int repeat(int ordinal) override {
    auto it = counts_.find(ordinal);
    return it == counts_.end() ? 0 : it->second;
  }
  bool decide(Rel rel, const Value& a, const Value& b) override {
    Constraint c{rel, term(a), term(b)};
    Truth t = s_.entails(c);
    if (t == Truth::Unknown) throw BranchRequest{c};
    return t == Truth::True;
  }
  std::int64_t concrete(const Value& sym) override {
    int v = static_cast<int>(sym.v);
    if (s_.fixed(v)) return s_.lo(v);
    throw BranchRequest{{Rel::Eq, Term::var(v), Term::constant(s_.lo(v))}};
  }

 private:
  int var(int kind, int ord, int iter) const {
    auto it = vars_.index.find({kind, ord, iter});
    return it == vars_.index.end() ? -1 : it->second;
  }
  Term term(const Value& v) const {
    if (v.kind == Value::Sym) return Term::var(static_cast<int>(v.v));
    if (v.kind != Value::Int) throw TrapSignal{"comparison of a reference with a number"};
    return Term::constant(v.v);
  }

  const ConstraintStore& s_;
  const VarTable& vars_;
  const std::map<int, int>& counts_;
};

struct TaskOutcome {
  bool sat = false;
  bool timed_out = false;
  std::vector<std::int64_t> objectives;  // values in component objective order
  Assignment assignment;                 // this component's unknowns only
  std::int64_t candidates = 0;
};

bool lex_less(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

TaskOutcome search_vector(const ir::Program& p, const Component& comp, const std::map<int, int>& counts,
                          const Limits& limits, const Deadline& deadline) {
  const auto& reg = p.registry;
  VarTable vars;
  ConstraintStore root;
  auto add = [&](int kind, int ord, int iter, std::int64_t hi) {
    int v = root.add_var(0, hi);
    vars.index[{kind, ord, iter}] = v;
    vars.keys.emplace_back(kind, ord, iter);
  };
  auto iterations = [&](int repeat) {
    if (repeat == 0) return std::pair<int, int>{0, 0};
    auto it = counts.find(repeat);
    return std::pair<int, int>{1, it == counts.end() ? 0 : it->second};
  };
  for (int h : comp.holes) {
    auto [first, last] = iterations(reg.hole(h).repeat);
    for (int i = first; i <= last; ++i) add(0, h, i, reg.hole(h).max_value());
  }
  for (int c : comp.choices) {
    auto [first, last] = iterations(reg.choice(c).repeat);
    for (int i = first; i <= last; ++i) add(1, c, i, std::max(0, reg.choice(c).arity - 1));
  }

  struct Node {
    ConstraintStore store;
    int pos = 0;  // -1: objectives not yet evaluated
    std::vector<Term> objectives;
  };
  TaskOutcome out;
  std::optional<std::vector<std::int64_t>> best;
  std::vector<Node> stack;
  stack.push_back(Node{root, comp.objectives.empty() ? 0 : -1, {}});
  std::int64_t visits = 0;

  auto can_improve = [&](const Node& n) {
    if (!best || n.pos < 0) return true;
    std::vector<std::int64_t> lows;
    for (const auto& t : n.objectives) lows.push_back(t.is_var ? n.store.lo(static_cast<int>(t.x)) : t.x);
    return lex_less(lows, *best);
  };

  while (!stack.empty()) {
    if ((++visits & 63) == 0 && deadline.check()) {
      out.timed_out = true;
      return out;
    }
    Node node = std::move(stack.back());
    stack.pop_back();
    if (!can_improve(node)) continue;
    SymOracle oracle(node.store, vars, counts);
    try {
      if (node.pos < 0) {
        detail::Interpreter in(p, limits, oracle);
        std::vector<Term> terms;
        try {
          in.begin();
          for (int j : comp.objectives) {
            Value v = in.eval_objective(p.objectives[static_cast<size_t>(j)].expr);
            if (v.kind == Value::Sym) {
              terms.push_back(Term::var(static_cast<int>(v.v)));
            } else {
              terms.push_back(Term::constant(v.v));
            }
          }
        } catch (const TrapSignal&) {
          continue;
        } catch (const detail::AssertSignal&) {
          continue;
        } catch (const detail::ResourceSignal&) {
          continue;
        }
        node.objectives = std::move(terms);
        node.pos = 0;
        stack.push_back(std::move(node));
        continue;
      }
      if (node.pos < static_cast<int>(comp.harnesses.size())) {
        ++out.candidates;
        EvalOutcome r = detail::run_harness(p, comp.harnesses[static_cast<size_t>(node.pos)], limits, oracle, false);
        if (r.status != EvalStatus::Pass) continue;
        ++node.pos;
        stack.push_back(std::move(node));
        continue;
      }
      auto values = node.store.label(node.objectives, best);
      if (!values) continue;
      std::vector<std::int64_t> objs;
      for (const auto& t : node.objectives) {
        objs.push_back(t.is_var ? (*values)[static_cast<size_t>(t.x)] : t.x);
      }
      best = objs;
      out.sat = true;
      out.objectives = objs;
      out.assignment = Assignment{};
      for (size_t v = 0; v < vars.keys.size(); ++v) {
        auto [kind, ord, iter] = vars.keys[v];
        if (kind == 0) {
          out.assignment.holes[{ord, iter}] = (*values)[v];
        } else {
          out.assignment.choices[{ord, iter}] = static_cast<int>((*values)[v]);
        }
      }
      for (int r : comp.repeats) out.assignment.repeats[r] = iterations(r).second;
      if (node.objectives.empty()) break;
    } catch (const BranchRequest& br) {
      Node yes{node.store, node.pos, node.objectives};
      Node no{std::move(node.store), node.pos, std::move(node.objectives)};
      bool yes_ok = yes.store.add(br.c);
      bool no_ok = no.store.add(negate(br.c));
      if (no_ok) stack.push_back(std::move(no));
      if (yes_ok) stack.push_back(std::move(yes));
    }
  }
  return out;
}

// Vectors over `maxes` with the given total, in ascending lexicographic order.
void vectors_with_sum(const std::vector<int>& maxes, int total, size_t i, std::vector<int>& cur,
                      std::vector<std::vector<int>>& out) {
  if (i == maxes.size()) {
    if (total == 0) out.push_back(cur);
    return;
  }
  int rest = 0;
  for (size_t k = i + 1; k < maxes.size(); ++k) rest += maxes[k];
  for (int v = std::max(0, total - rest); v <= std::min(total, maxes[i]); ++v) {
    cur.push_back(v);
    vectors_with_sum(maxes, total - v, i + 1, cur, out);
    cur.pop_back();
  }
}

struct ComponentResult {
  Verdict verdict = Verdict::Unsat;
  TaskOutcome best;
  int depth = 0;
  std::int64_t candidates = 0;
};

ComponentResult solve_component(const ir::Program& p, const Component& comp, const EngineConfig& cfg,
                                const Deadline& deadline) {
  std::vector<int> ords(comp.repeats.begin(), comp.repeats.end());
  std::vector<int> maxes;
  for (int r : ords) maxes.push_back(p.registry.repeat(r).max);
  int cap = std::accumulate(maxes.begin(), maxes.end(), 0);
  ComponentResult res;
  for (int depth = 0; depth <= cap; ++depth) {
    std::vector<std::vector<int>> vecs;
    std::vector<int> cur;
    vectors_with_sum(maxes, depth, 0, cur, vecs);
    std::vector<TaskOutcome> outcomes(vecs.size());
    parallel_for(vecs.size(), cfg.jobs, [&](size_t i) {
      std::map<int, int> counts;
      for (size_t k = 0; k < ords.size(); ++k) counts[ords[k]] = vecs[i][k];
      outcomes[i] = search_vector(p, comp, counts, cfg.limits, deadline);
    });
    const TaskOutcome* winner = nullptr;
    for (const auto& o : outcomes) {
      res.candidates += o.candidates;
      if (o.timed_out) res.verdict = Verdict::Timeout;
      if (o.sat && (!winner || lex_less(o.objectives, winner->objectives))) winner = &o;
    }
    if (res.verdict == Verdict::Timeout) return res;
    if (winner) {
      res.verdict = Verdict::Sat;
      res.best = *winner;
      res.depth = depth;
      return res;
    }
  }
  return res;
}

SolveResult solve_once(const ir::Program& p, const EngineConfig& cfg, const Deadline& deadline) {
  SolveResult out;
  std::vector<Component> comps = find_components(p, cfg.decompose);
  std::vector<ComponentResult> results(comps.size());
  parallel_for(comps.size(), cfg.jobs,
               [&](size_t i) { results[i] = solve_component(p, comps[i], cfg, deadline); });
  bool timeout = false, unsat = false;
  for (const auto& r : results) {
    out.stats.candidates += r.candidates;
    timeout |= r.verdict == Verdict::Timeout;
    unsat |= r.verdict == Verdict::Unsat;
  }
  out.verdict = timeout ? Verdict::Timeout : unsat ? Verdict::Unsat : Verdict::Sat;
  if (out.verdict != Verdict::Sat) return out;

  std::map<int, int> repeats;
  for (const auto& r : results)
    for (const auto& [ord, n] : r.best.assignment.repeats) repeats[ord] = n;
  Solution s;
  s.assignment = default_assignment(p, repeats);
  for (size_t i = 0; i < comps.size(); ++i) {
    const auto& a = results[i].best.assignment;
    for (const auto& [k, v] : a.holes) s.assignment.holes[k] = v;
    for (const auto& [k, v] : a.choices) s.assignment.choices[k] = v;
    for (size_t j = 0; j < comps[i].objectives.size(); ++j) {
      s.objective_values[p.objectives[static_cast<size_t>(comps[i].objectives[j])].name] =
          results[i].best.objectives[j];
    }
    out.stats.depth += results[i].depth;
  }
  s.stats = out.stats;
  out.solution = std::move(s);
  return out;
}

}  // namespace

SolveResult solve(const ir::Program& p, const EngineConfig& cfg) {
  auto start = Clock::now();
  std::atomic<bool> expired{false};
  auto budget = std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(cfg.timeout_seconds));
  Deadline deadline{start + budget, &expired};

  SolveResult out = solve_once(p, cfg, deadline);
  if (out.verdict == Verdict::Sat && !verify_solution(p, out.solution, cfg.limits)) {
    std::int64_t spent = out.stats.candidates;
    if (!cfg.decompose) {
      fail(ErrorKind::Internal, {}, "synthesized assignment failed replay verification");
    }
    EngineConfig whole = cfg;
    whole.decompose = false;
    out = solve_once(p, whole, deadline);
    out.notes.push_back("independent search groups disagreed on replay; searched the program as one group");
    out.stats.candidates += spent;
    if (out.verdict == Verdict::Sat && !verify_solution(p, out.solution, cfg.limits)) {
      fail(ErrorKind::Internal, {}, "synthesized assignment failed replay verification");
    }
  }
  out.stats.ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
  out.solution.stats = out.stats;
  return out;
}

}  // namespace oosk
