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

#ifndef OOSK_SOURCE_HPP_
#define OOSK_SOURCE_HPP_

#include <stdexcept>
#include <string>

namespace oosk {

struct SourceSpan {
  std::string file;
  int line = 1;
  int col = 1;
  int length = 0;

  std::string str() const;
};

// Every user-facing failure derives from SketchError.  The kind names the
// error class (LexError, ParseError, ...) and is what the CLI reports.
enum class ErrorKind {
  Lex,
  Parse,
  DuplicateType,
  DirectGeneratorUse,
  UnresolvedType,
  InheritanceCycle,
  SignatureClash,
  TypeLowering,
  UnknownBuiltin,
  IncompleteSolution,
  Internal,
};

const char* error_kind_name(ErrorKind kind);

class SketchError : public std::runtime_error {
 public:
  SketchError(ErrorKind kind, SourceSpan span, const std::string& message);

  ErrorKind kind() const { return kind_; }
  const SourceSpan& span() const { return span_; }
  const std::string& message() const { return message_; }

  // True for errors caused by the input program (CLI exit code 2).
  bool is_input_error() const;

 private:
  ErrorKind kind_;
  SourceSpan span_;
  std::string message_;
};

[[noreturn]] void fail(ErrorKind kind, const SourceSpan& span,
                       const std::string& message);

}  // namespace oosk

#endif  // OOSK_SOURCE_HPP_
