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

// Runtime values and the per-evaluation heap shared by the interpreter and
// the library models.

#ifndef OOSK_RUNTIME_HPP_
#define OOSK_RUNTIME_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace oosk {

struct Value {
  // Int covers int, char and boolean.  Sym is an unresolved unknown: v is
  // its variable index in the current search.
  enum Kind : std::uint8_t { Int, Null, Ref, Str, Sym };
  Kind kind = Null;
  std::int64_t v = 0;

  static Value integer(std::int64_t x) { return Value{Int, x}; }
  static Value boolean(bool b) { return Value{Int, b ? 1 : 0}; }
  static Value null() { return Value{Null, 0}; }
  static Value ref(std::int64_t r) { return Value{Ref, r}; }
  static Value str(std::int64_t s) { return Value{Str, s}; }
  static Value sym(std::int64_t var) { return Value{Sym, var}; }

  bool operator==(const Value& o) const { return kind == o.kind && v == o.v; }
};

// Abnormal end of an evaluation.  Raised by the interpreter and by the
// library models; never escapes eval_harness.
struct TrapSignal {
  std::string reason;
};

struct HeapObject {
  int cls = -1;
  std::vector<Value> slots;  // instance fields (user classes)
  std::vector<Value> items;  // list elements
  std::int64_t ref = -1;     // iterator: the list it walks
  std::int64_t pos = 0;      // iterator cursor; code point for a char token
  std::string text;          // string builder contents
};

class Heap {
 public:
  explicit Heap(const std::vector<std::string>* constants = nullptr) : constants_(constants) {}

  std::vector<HeapObject> objects;
  std::vector<Value> statics;

  std::int64_t alloc(HeapObject obj) {
    objects.push_back(std::move(obj));
    return static_cast<std::int64_t>(objects.size()) - 1;
  }
  HeapObject& at(const Value& r) { return objects.at(static_cast<size_t>(r.v)); }

  // Constant strings use indices >= 0; strings built at run time use
  // negative indices into a per-heap pool.
  const std::string& str(const Value& s) const {
    if (s.v >= 0) return constants_->at(static_cast<size_t>(s.v));
    return runtime_.at(static_cast<size_t>(-s.v - 1));
  }
  Value make_str(std::string text) {
    runtime_.push_back(std::move(text));
    return Value::str(-static_cast<std::int64_t>(runtime_.size()));
  }

 private:
  const std::vector<std::string>* constants_;
  std::vector<std::string> runtime_;
};

// Wrapping arithmetic at 32 bits.
inline std::int64_t wrap32(std::int64_t x) {
  return static_cast<std::int32_t>(static_cast<std::uint32_t>(static_cast<std::uint64_t>(x)));
}

// UTF-8 to code points; malformed bytes decode as themselves.
std::vector<std::int64_t> code_points(const std::string& s);
std::string encode_utf8(std::int64_t cp);

}  // namespace oosk

#endif  // OOSK_RUNTIME_HPP_
