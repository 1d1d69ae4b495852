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

#include "oosk/stdlib.hpp"

namespace oosk {

std::vector<std::int64_t> code_points(const std::string& s) {
  std::vector<std::int64_t> out;
  for (size_t i = 0; i < s.size();) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    int len = c < 0x80 ? 1 : (c >> 5) == 6 ? 2 : (c >> 4) == 14 ? 3 : (c >> 3) == 30 ? 4 : 1;
    if (i + static_cast<size_t>(len) > s.size()) len = 1;
    std::int64_t cp = len == 1 ? c : len == 2 ? (c & 0x1f) : len == 3 ? (c & 0x0f) : (c & 0x07);
    for (int k = 1; k < len; ++k) cp = (cp << 6) | (static_cast<unsigned char>(s[i + k]) & 0x3f);
    out.push_back(cp);
    i += static_cast<size_t>(len);
  }
  return out;
}

std::string encode_utf8(std::int64_t cp) {
  std::string out;
  auto c = static_cast<std::uint32_t>(cp);
  if (c < 0x80) {
    out += static_cast<char>(c);
  } else if (c < 0x800) {
    out += static_cast<char>(0xc0 | (c >> 6));
    out += static_cast<char>(0x80 | (c & 0x3f));
  } else if (c < 0x10000) {
    out += static_cast<char>(0xe0 | (c >> 12));
    out += static_cast<char>(0x80 | ((c >> 6) & 0x3f));
    out += static_cast<char>(0x80 | (c & 0x3f));
  } else {
    out += static_cast<char>(0xf0 | (c >> 18));
    out += static_cast<char>(0x80 | ((c >> 12) & 0x3f));
    out += static_cast<char>(0x80 | ((c >> 6) & 0x3f));
    out += static_cast<char>(0x80 | (c & 0x3f));
  }
  return out;
}

const char* lib_class_name(LibClass c) {
  switch (c) {
    case LibClass::List: return "LinkedList";
    case LibClass::Iterator: return "Iterator";
    case LibClass::StringBuilder: return "StringBuilder";
    case LibClass::CharToken: return "CharToken";
    case LibClass::kCount: break;
  }
  return "?";
}

const std::vector<BuiltinEntry>& builtin_catalog() {
  static const std::vector<BuiltinEntry> entries = [] {
    TypeDesc i = TypeDesc::of(TypeTag::Int);
    TypeDesc b = TypeDesc::of(TypeTag::Bool);
    TypeDesc c = TypeDesc::of(TypeTag::Char);
    TypeDesc s = TypeDesc::of(TypeTag::Str);
    TypeDesc v = TypeDesc::of(TypeTag::Void);
    TypeDesc any = TypeDesc::object(-1);
    TypeDesc it = TypeDesc::library("Iterator");
    TypeDesc list = TypeDesc::library("LinkedList");
    TypeDesc sb = TypeDesc::library("StringBuilder");
    (void)v;
    return std::vector<BuiltinEntry>{
        {Builtin::CharTokens, "", "convertToIterator", {s}, it, false},
        {Builtin::ListNew, "", "LinkedList", {}, list, false},
        {Builtin::ListAdd, "List", "add", {any}, b, true},
        {Builtin::ListGet, "List", "get", {i}, any, true},
        {Builtin::ListSize, "List", "size", {}, i, true},
        {Builtin::ListIterator, "List", "iterator", {}, it, true},
        {Builtin::IterHasNext, "Iterator", "hasNext", {}, b, true},
        {Builtin::IterNext, "Iterator", "next", {}, any, true},
        {Builtin::StrLength, "String", "length", {}, i, true},
        {Builtin::StrCharAt, "String", "charAt", {i}, c, true},
        {Builtin::StrEquals, "String", "equals", {any}, b, true},
        {Builtin::StrConcat, "", "+", {s, any}, s, false},
        {Builtin::SbNew, "", "StringBuilder", {}, sb, false},
        {Builtin::SbAppend, "StringBuilder", "append", {any}, sb, true},
        {Builtin::SbToString, "StringBuilder", "toString", {}, s, true},
        {Builtin::TokenGetId, "CharToken", "getId", {}, i, true},
    };
  }();
  return entries;
}

const BuiltinEntry& builtin_entry(Builtin b) {
  for (const auto& e : builtin_catalog())
    if (e.id == b) return e;
  return builtin_catalog().front();
}

const BuiltinEntry* find_builtin(const std::string& owner, const std::string& name, size_t arity) {
  std::string key = owner == "LinkedList" ? "List" : owner;
  for (const auto& e : builtin_catalog()) {
    if (e.owner == key && e.name == name && e.params.size() == arity && e.id != Builtin::StrConcat) return &e;
  }
  return nullptr;
}

Value char_tokens(const std::string& s, Heap& heap, int num_user_classes) {
  HeapObject list;
  list.cls = lib_class_id(num_user_classes, LibClass::List);
  for (std::int64_t cp : code_points(s)) {
    HeapObject tok;
    tok.cls = lib_class_id(num_user_classes, LibClass::CharToken);
    tok.pos = cp;
    list.items.push_back(Value::ref(heap.alloc(std::move(tok))));
  }
  std::int64_t list_ref = heap.alloc(std::move(list));
  HeapObject iter;
  iter.cls = lib_class_id(num_user_classes, LibClass::Iterator);
  iter.ref = list_ref;
  return Value::ref(heap.alloc(std::move(iter)));
}

namespace {

HeapObject& object(Heap& heap, const Value& v, int cls, const char* what) {
  if (v.kind != Value::Ref) throw TrapSignal{std::string("null receiver for ") + what};
  HeapObject& o = heap.at(v);
  if (o.cls != cls) throw TrapSignal{std::string("wrong receiver kind for ") + what};
  return o;
}

const std::string& string_of(Heap& heap, const Value& v, const char* what) {
  if (v.kind != Value::Str) throw TrapSignal{std::string("null string in ") + what};
  return heap.str(v);
}

// Text of a value for string concatenation; `tag` is the static TypeTag.
std::string render(Heap& heap, const Value& v, TypeTag tag) {
  switch (v.kind) {
    case Value::Null: return "null";
    case Value::Str: return heap.str(v);
    case Value::Ref: return "object";
    case Value::Sym: throw TrapSignal{"symbolic value in string"};
    case Value::Int: break;
  }
  if (tag == TypeTag::Bool) return v.v ? "true" : "false";
  if (tag == TypeTag::Char) return encode_utf8(v.v);
  return std::to_string(v.v);
}

}  // namespace

Value builtin_eval(Builtin b, const std::vector<Value>& args, Heap& heap, int num_user_classes) {
  const int list_cls = lib_class_id(num_user_classes, LibClass::List);
  const int iter_cls = lib_class_id(num_user_classes, LibClass::Iterator);
  const int sb_cls = lib_class_id(num_user_classes, LibClass::StringBuilder);
  const int tok_cls = lib_class_id(num_user_classes, LibClass::CharToken);
  switch (b) {
    case Builtin::CharTokens:
      return char_tokens(string_of(heap, args.at(0), "convertToIterator"), heap, num_user_classes);
    case Builtin::ListNew: {
      HeapObject o;
      o.cls = list_cls;
      return Value::ref(heap.alloc(std::move(o)));
    }
    case Builtin::ListAdd:
      object(heap, args.at(0), list_cls, "List.add").items.push_back(args.at(1));
      return Value::boolean(true);
    case Builtin::ListGet: {
      HeapObject& o = object(heap, args.at(0), list_cls, "List.get");
      std::int64_t i = args.at(1).v;
      if (i < 0 || i >= static_cast<std::int64_t>(o.items.size())) throw TrapSignal{"List.get index out of bounds"};
      return o.items[static_cast<size_t>(i)];
    }
    case Builtin::ListSize:
      return Value::integer(static_cast<std::int64_t>(object(heap, args.at(0), list_cls, "List.size").items.size()));
    case Builtin::ListIterator: {
      object(heap, args.at(0), list_cls, "List.iterator");
      HeapObject it;
      it.cls = iter_cls;
      it.ref = args.at(0).v;
      return Value::ref(heap.alloc(std::move(it)));
    }
    case Builtin::IterHasNext: {
      HeapObject& it = object(heap, args.at(0), iter_cls, "Iterator.hasNext");
      return Value::boolean(it.pos < static_cast<std::int64_t>(heap.objects.at(static_cast<size_t>(it.ref)).items.size()));
    }
    case Builtin::IterNext: {
      HeapObject& it = object(heap, args.at(0), iter_cls, "Iterator.next");
      const auto& items = heap.objects.at(static_cast<size_t>(it.ref)).items;
      if (it.pos >= static_cast<std::int64_t>(items.size())) throw TrapSignal{"Iterator.next past the end"};
      return items[static_cast<size_t>(it.pos++)];
    }
    case Builtin::StrLength:
      return Value::integer(static_cast<std::int64_t>(code_points(string_of(heap, args.at(0), "length")).size()));
    case Builtin::StrCharAt: {
      auto cps = code_points(string_of(heap, args.at(0), "charAt"));
      std::int64_t i = args.at(1).v;
      if (i < 0 || i >= static_cast<std::int64_t>(cps.size())) throw TrapSignal{"charAt index out of bounds"};
      return Value::integer(cps[static_cast<size_t>(i)]);
    }
    case Builtin::StrEquals: {
      const std::string& a = string_of(heap, args.at(0), "equals");
      if (args.at(1).kind != Value::Str) return Value::boolean(false);
      return Value::boolean(a == heap.str(args.at(1)));
    }
    case Builtin::StrConcat: {
      // args: lhs, rhs, lhs tag, rhs tag
      auto lt = static_cast<TypeTag>(args.at(2).v);
      auto rt = static_cast<TypeTag>(args.at(3).v);
      return heap.make_str(render(heap, args.at(0), lt) + render(heap, args.at(1), rt));
    }
    case Builtin::SbNew: {
      HeapObject o;
      o.cls = sb_cls;
      return Value::ref(heap.alloc(std::move(o)));
    }
    case Builtin::SbAppend: {
      // args: builder, value, value tag
      HeapObject& o = object(heap, args.at(0), sb_cls, "StringBuilder.append");
      o.text += render(heap, args.at(1), static_cast<TypeTag>(args.at(2).v));
      return args.at(0);
    }
    case Builtin::SbToString:
      return heap.make_str(object(heap, args.at(0), sb_cls, "StringBuilder.toString").text);
    case Builtin::TokenGetId:
      return Value::integer(object(heap, args.at(0), tok_cls, "getId").pos);
  }
  throw TrapSignal{"unknown builtin"};
}

}  // namespace oosk
