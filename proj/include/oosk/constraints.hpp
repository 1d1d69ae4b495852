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

// Finite-domain constraint store over integer variables: equalities by
// union-find, interval domains with excluded points, and binary
// disequality / order relations.  Propagation is bounds consistency; it is
// sound but not complete, so leaves are confirmed by labeling.

#ifndef OOSK_CONSTRAINTS_HPP_
#define OOSK_CONSTRAINTS_HPP_

#include <cstdint>
#include <optional>
#include <vector>

namespace oosk {

enum class Rel { Eq, Ne, Lt, Le };

struct Term {
  bool is_var = false;
  std::int64_t x = 0;  // variable index or constant

  static Term var(int v) { return Term{true, v}; }
  static Term constant(std::int64_t c) { return Term{false, c}; }
};

struct Constraint {
  Rel rel = Rel::Eq;
  Term a, b;
};

// The complement: Eq<->Ne, a<b <-> b<=a, a<=b <-> b<a.
Constraint negate(const Constraint& c);

enum class Truth { True, False, Unknown };

class ConstraintStore {
 public:
  int add_var(std::int64_t lo, std::int64_t hi);
  int num_vars() const { return static_cast<int>(parent_.size()); }

  int find(int v) const;
  std::int64_t lo(int v) const { return dom_[static_cast<size_t>(find(v))].lo; }
  std::int64_t hi(int v) const { return dom_[static_cast<size_t>(find(v))].hi; }
  bool fixed(int v) const { return lo(v) == hi(v); }
  bool excluded(int v, std::int64_t c) const;

  Truth entails(const Constraint& c) const;
  // Adds and propagates.  False when the store became inconsistent; the
  // store must then be discarded.
  bool add(const Constraint& c);

  // Smallest solution in lexicographic order: variables among `objectives`
  // first, in that order, then the rest by index.  With `bound`, the
  // objective values must be lexicographically smaller than it.  The
  // result holds one value per variable.
  std::optional<std::vector<std::int64_t>> label(const std::vector<Term>& objectives,
                                                 const std::optional<std::vector<std::int64_t>>& bound) const;

 private:
  struct Domain {
    std::int64_t lo = 0, hi = 0;
    std::vector<std::int64_t> holes;  // excluded points inside [lo, hi], sorted
  };
  struct Relation {
    Rel rel;
    int a, b;
  };

  bool set_lo(int root, std::int64_t v, bool& changed);
  bool set_hi(int root, std::int64_t v, bool& changed);
  bool exclude(int root, std::int64_t v, bool& changed);
  bool normalize(int root);
  bool unite(int a, int b);
  bool propagate();
  bool has_relation(Rel rel, int ra, int rb) const;

  std::vector<int> parent_;
  std::vector<Domain> dom_;
  std::vector<Relation> rels_;
};

}  // namespace oosk

#endif  // OOSK_CONSTRAINTS_HPP_
