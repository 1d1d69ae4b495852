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

#ifndef OOSK_PARSER_HPP_
#define OOSK_PARSER_HPP_

#include <string>
#include <utility>
#include <vector>

#include "oosk/ast.hpp"
#include "oosk/lexer.hpp"

namespace oosk {

struct SourceFile {
  std::string path;
  std::string text;
};

CompilationUnit parse_unit(const std::vector<Token>& tokens, const std::string& file);

// Parses in-memory sources and merges them; duplicate top-level type names
// raise DuplicateTypeError.
SketchAst parse_sources(const std::vector<SourceFile>& files);

// Reads and parses files from disk.
SketchAst parse_program(const std::vector<std::string>& paths);

std::string read_file(const std::string& path);

}  // namespace oosk

#endif  // OOSK_PARSER_HPP_
