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

#include "oosk/constraints.hpp"

#include <algorithm>

namespace oosk {

Constraint negate(const Constraint& c) {
  switch (c.rel) {
    case Rel::Eq: return {Rel::Ne, c.a, c.b};
    case Rel::Ne: return {Rel::Eq, c.a, c.b};
    case Rel::Lt: return {Rel::Le, c.b, c.a};
    case Rel::Le: return {Rel::Lt, c.b, c.a};
  }
  return c;
}

namespace {

bool holds(Rel r, std::int64_t a, std::int64_t b) {
  switch (r) {
    case Rel::Eq: return a == b;
    case Rel::Ne: return a != b;
    case Rel::Lt: return a < b;
    case Rel::Le: return a <= b;
  }
  return false;
}

Truth flip(Truth t) {
  if (t == Truth::True) return Truth::False;
  if (t == Truth::False) return Truth::True;
  return t;
}

}  // namespace

int ConstraintStore::add_var(std::int64_t lo, std::int64_t hi) {
  parent_.push_back(num_vars());
  Domain d;
  d.lo = lo;
  d.hi = hi;
  dom_.push_back(std::move(d));
  return num_vars() - 1;
}

int ConstraintStore::find(int v) const {
  while (parent_[static_cast<size_t>(v)] != v) v = parent_[static_cast<size_t>(v)];
  return v;
}

bool ConstraintStore::excluded(int v, std::int64_t c) const {
  const Domain& d = dom_[static_cast<size_t>(find(v))];
  return c < d.lo || c > d.hi || std::binary_search(d.holes.begin(), d.holes.end(), c);
}

bool ConstraintStore::has_relation(Rel rel, int ra, int rb) const {
  for (const auto& r : rels_)
    if (r.rel == rel && find(r.a) == ra && find(r.b) == rb) return true;
  return false;
}

Truth ConstraintStore::entails(const Constraint& c) const {
  if (!c.a.is_var && !c.b.is_var) return holds(c.rel, c.a.x, c.b.x) ? Truth::True : Truth::False;
  switch (c.rel) {
    case Rel::Ne:
      return flip(entails({Rel::Eq, c.a, c.b}));
    case Rel::Eq: {
      if (!c.a.is_var) return entails({Rel::Eq, c.b, c.a});
      int ra = find(static_cast<int>(c.a.x));
      if (!c.b.is_var) {
        if (excluded(ra, c.b.x)) return Truth::False;
        return fixed(ra) ? Truth::True : Truth::Unknown;
      }
      int rb = find(static_cast<int>(c.b.x));
      if (ra == rb) return Truth::True;
      if (hi(ra) < lo(rb) || hi(rb) < lo(ra)) return Truth::False;
      if (has_relation(Rel::Ne, ra, rb) || has_relation(Rel::Ne, rb, ra)) return Truth::False;
      if (has_relation(Rel::Lt, ra, rb) || has_relation(Rel::Lt, rb, ra)) return Truth::False;
      if (fixed(ra) && fixed(rb)) return lo(ra) == lo(rb) ? Truth::True : Truth::False;
      if (fixed(ra) && excluded(rb, lo(ra))) return Truth::False;
      if (fixed(rb) && excluded(ra, lo(rb))) return Truth::False;
      return Truth::Unknown;
    }
    case Rel::Lt:
    case Rel::Le: {
      bool strict = c.rel == Rel::Lt;
      std::int64_t alo = c.a.is_var ? lo(static_cast<int>(c.a.x)) : c.a.x;
      std::int64_t ahi = c.a.is_var ? hi(static_cast<int>(c.a.x)) : c.a.x;
      std::int64_t blo = c.b.is_var ? lo(static_cast<int>(c.b.x)) : c.b.x;
      std::int64_t bhi = c.b.is_var ? hi(static_cast<int>(c.b.x)) : c.b.x;
      if (strict ? ahi < blo : ahi <= blo) return Truth::True;
      if (strict ? alo >= bhi : alo > bhi) return Truth::False;
      if (c.a.is_var && c.b.is_var) {
        int ra = find(static_cast<int>(c.a.x));
        int rb = find(static_cast<int>(c.b.x));
        if (ra == rb) return strict ? Truth::False : Truth::True;
        if (has_relation(Rel::Lt, ra, rb)) return Truth::True;
        if (has_relation(Rel::Lt, rb, ra)) return Truth::False;
        if (strict) {
          if (has_relation(Rel::Le, rb, ra)) return Truth::False;
          if (has_relation(Rel::Le, ra, rb) && has_relation(Rel::Ne, ra, rb)) return Truth::True;
        } else if (has_relation(Rel::Le, ra, rb)) {
          return Truth::True;
        }
      }
      return Truth::Unknown;
    }
  }
  return Truth::Unknown;
}

bool ConstraintStore::normalize(int root) {
  Domain& d = dom_[static_cast<size_t>(root)];
  while (d.lo <= d.hi && std::binary_search(d.holes.begin(), d.holes.end(), d.lo)) ++d.lo;
  while (d.lo <= d.hi && std::binary_search(d.holes.begin(), d.holes.end(), d.hi)) --d.hi;
  if (d.lo > d.hi) return false;
  // Drop exclusions that fell outside the interval.
  auto first = std::lower_bound(d.holes.begin(), d.holes.end(), d.lo);
  d.holes.erase(d.holes.begin(), first);
  auto last = std::upper_bound(d.holes.begin(), d.holes.end(), d.hi);
  d.holes.erase(last, d.holes.end());
  return true;
}

bool ConstraintStore::set_lo(int root, std::int64_t v, bool& changed) {
  Domain& d = dom_[static_cast<size_t>(root)];
  if (v <= d.lo) return true;
  d.lo = v;
  changed = true;
  return normalize(root);
}

bool ConstraintStore::set_hi(int root, std::int64_t v, bool& changed) {
  Domain& d = dom_[static_cast<size_t>(root)];
  if (v >= d.hi) return true;
  d.hi = v;
  changed = true;
  return normalize(root);
}

bool ConstraintStore::exclude(int root, std::int64_t v, bool& changed) {
  Domain& d = dom_[static_cast<size_t>(root)];
  if (v < d.lo || v > d.hi) return true;
  auto it = std::lower_bound(d.holes.begin(), d.holes.end(), v);
  if (it != d.holes.end() && *it == v) return true;
  d.holes.insert(it, v);
  changed = true;
  return normalize(root);
}

bool ConstraintStore::unite(int a, int b) {
  int ra = find(a), rb = find(b);
  if (ra == rb) return true;
  if (rb < ra) std::swap(ra, rb);
  // The lower index stays the representative.
  parent_[static_cast<size_t>(rb)] = ra;
  Domain& da = dom_[static_cast<size_t>(ra)];
  const Domain& db = dom_[static_cast<size_t>(rb)];
  da.lo = std::max(da.lo, db.lo);
  da.hi = std::min(da.hi, db.hi);
  std::vector<std::int64_t> merged;
  std::set_union(da.holes.begin(), da.holes.end(), db.holes.begin(), db.holes.end(), std::back_inserter(merged));
  da.holes = std::move(merged);
  return normalize(ra);
}

bool ConstraintStore::propagate() {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& r : rels_) {
      int ra = find(r.a), rb = find(r.b);
      switch (r.rel) {
        case Rel::Eq:
          break;
        case Rel::Ne:
          if (ra == rb) return false;
          if (fixed(ra) && !exclude(rb, lo(ra), changed)) return false;
          if (fixed(rb) && !exclude(ra, lo(rb), changed)) return false;
          break;
        case Rel::Lt:
        case Rel::Le: {
          std::int64_t s = r.rel == Rel::Lt ? 1 : 0;
          if (ra == rb) {
            if (s) return false;
            break;
          }
          if (!set_hi(ra, hi(rb) - s, changed)) return false;
          if (!set_lo(rb, lo(ra) + s, changed)) return false;
          break;
        }
      }
    }
  }
  return true;
}

bool ConstraintStore::add(const Constraint& c) {
  Truth t = entails(c);
  if (t == Truth::True) return true;
  if (t == Truth::False) return false;
  bool changed = false;
  if (!c.a.is_var || !c.b.is_var) {
    // Unary: fold into the domain.
    bool var_left = c.a.is_var;
    int root = find(static_cast<int>(var_left ? c.a.x : c.b.x));
    std::int64_t k = var_left ? c.b.x : c.a.x;
    bool ok = true;
    switch (c.rel) {
      case Rel::Eq: ok = set_lo(root, k, changed) && set_hi(root, k, changed); break;
      case Rel::Ne: ok = exclude(root, k, changed); break;
      case Rel::Lt: ok = var_left ? set_hi(root, k - 1, changed) : set_lo(root, k + 1, changed); break;
      case Rel::Le: ok = var_left ? set_hi(root, k, changed) : set_lo(root, k, changed); break;
    }
    return ok && propagate();
  }
  int a = static_cast<int>(c.a.x), b = static_cast<int>(c.b.x);
  if (c.rel == Rel::Eq) return unite(a, b) && propagate();
  rels_.push_back({c.rel, a, b});
  return propagate();
}

namespace {

struct Labeler {
  const std::vector<Term>& objectives;
  const std::optional<std::vector<std::int64_t>>& bound;
  std::vector<int> order;  // variables after the objectives

  bool run(const ConstraintStore& s, size_t k, bool tight, std::vector<std::int64_t>& out) const {
    if (k < objectives.size()) {
      const Term& t = objectives[k];
      bool last = k + 1 == objectives.size();
      std::int64_t cap = bound ? (*bound)[k] - (last ? 1 : 0) : 0;
      if (!t.is_var) {
        if (bound && tight && t.x > cap) return false;
        return run(s, k + 1, tight && bound && t.x == (*bound)[k], out);
      }
      int v = static_cast<int>(t.x);
      std::int64_t hi = s.hi(v);
      if (bound && tight) hi = std::min(hi, cap);
      for (std::int64_t x = s.lo(v); x <= hi; ++x) {
        if (s.excluded(v, x)) continue;
        ConstraintStore next = s;
        if (!next.add({Rel::Eq, Term::var(v), Term::constant(x)})) continue;
        if (run(next, k + 1, tight && bound && x == (*bound)[k], out)) return true;
      }
      return false;
    }
    // With a bound, reaching here still tight means equal to it: rejected.
    if (bound && tight && !objectives.empty()) return false;
    return fill(s, 0, out);
  }

  bool fill(const ConstraintStore& s, size_t i, std::vector<std::int64_t>& out) const {
    while (i < order.size() && s.fixed(order[i])) ++i;
    if (i == order.size()) {
      out.assign(static_cast<size_t>(s.num_vars()), 0);
      for (int v = 0; v < s.num_vars(); ++v) out[static_cast<size_t>(v)] = s.lo(v);
      return true;
    }
    int v = order[i];
    for (std::int64_t x = s.lo(v); x <= s.hi(v); ++x) {
      if (s.excluded(v, x)) continue;
      ConstraintStore next = s;
      if (!next.add({Rel::Eq, Term::var(v), Term::constant(x)})) continue;
      if (fill(next, i + 1, out)) return true;
    }
    return false;
  }
};

}  // namespace

std::optional<std::vector<std::int64_t>> ConstraintStore::label(
    const std::vector<Term>& objectives, const std::optional<std::vector<std::int64_t>>& bound) const {
  Labeler l{objectives, bound, {}};
  for (int v = 0; v < num_vars(); ++v) l.order.push_back(v);
  std::vector<std::int64_t> out;
  if (!l.run(*this, 0, true, out)) return std::nullopt;
  return out;
}

}  // namespace oosk
