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

// Native models of the small library surface: lists, iterators, strings,
// string builders and the string-to-token bridge.

#ifndef OOSK_STDLIB_HPP_
#define OOSK_STDLIB_HPP_

#include <string>
#include <vector>

#include "oosk/classtable.hpp"
#include "oosk/runtime.hpp"

namespace oosk {

// Library object kinds.  Their run-time class ids follow the user classes.
enum class LibClass { List, Iterator, StringBuilder, CharToken, kCount };
const char* lib_class_name(LibClass c);

enum class Builtin {
  CharTokens,    // convertToIterator(String) -> Iterator
  ListNew,
  ListAdd,
  ListGet,
  ListSize,
  ListIterator,
  IterHasNext,
  IterNext,
  StrLength,
  StrCharAt,
  StrEquals,
  StrConcat,     // String + value
  SbNew,
  SbAppend,
  SbToString,
  TokenGetId,    // CharToken.getId()
};

struct BuiltinEntry {
  Builtin id;
  std::string owner;  // receiver type name; empty for free functions and constructors
  std::string name;
  std::vector<TypeDesc> params;  // Obj(-1) accepts any reference
  TypeDesc ret;
  bool has_receiver = true;
};

const std::vector<BuiltinEntry>& builtin_catalog();
const BuiltinEntry& builtin_entry(Builtin b);
// Lookup by receiver type name ("List", "Iterator", "String", ...) and
// method name.  Free functions use owner "".  nullptr when absent.
const BuiltinEntry* find_builtin(const std::string& owner, const std::string& name, size_t arity);

// Run-time class id of a library object for a program with `num_user_classes`.
inline int lib_class_id(int num_user_classes, LibClass c) {
  return num_user_classes + static_cast<int>(c);
}

// An iterator over one char token per code point of `s`.
Value char_tokens(const std::string& s, Heap& heap, int num_user_classes);

// Evaluates a catalog entry on concrete arguments (args[0] is the receiver
// when the entry has one).  Raises TrapSignal on misuse such as an index out
// of bounds or a null receiver.
Value builtin_eval(Builtin b, const std::vector<Value>& args, Heap& heap, int num_user_classes);

}  // namespace oosk

#endif  // OOSK_STDLIB_HPP_
