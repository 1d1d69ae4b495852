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

#include "oosk/source.hpp"

namespace oosk {

std::string SourceSpan::str() const {
  return (file.empty() ? std::string("<input>") : file) + ":" +
         std::to_string(line) + ":" + std::to_string(col);
}

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Lex: return "LexError";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::DuplicateType: return "DuplicateTypeError";
    case ErrorKind::DirectGeneratorUse: return "DirectGeneratorUseError";
    case ErrorKind::UnresolvedType: return "UnresolvedTypeError";
    case ErrorKind::InheritanceCycle: return "InheritanceCycleError";
    case ErrorKind::SignatureClash: return "SignatureClashError";
    case ErrorKind::TypeLowering: return "TypeLoweringError";
    case ErrorKind::UnknownBuiltin: return "UnknownBuiltinError";
    case ErrorKind::IncompleteSolution: return "IncompleteSolutionError";
    case ErrorKind::Internal: return "InternalError";
  }
  return "Error";
}

SketchError::SketchError(ErrorKind kind, SourceSpan span,
                         const std::string& message)
    : std::runtime_error(span.str() + ": " + error_kind_name(kind) + ": " +
                         message),
      kind_(kind),
      span_(std::move(span)),
      message_(message) {}

bool SketchError::is_input_error() const {
  return kind_ != ErrorKind::Internal &&
         kind_ != ErrorKind::IncompleteSolution;
}

void fail(ErrorKind kind, const SourceSpan& span, const std::string& message) {
  throw SketchError(kind, span, message);
}

}  // namespace oosk
