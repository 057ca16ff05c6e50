// Copyright 2026 The WasmWalker Authors
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

#ifndef WASMWALKER_WAT_PARSER_H_
#define WASMWALKER_WAT_PARSER_H_

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wasmwalker/ast.h"

namespace wasmwalker {

struct ParseOptions {
  // Cooperative deadline; parse_module throws ParseError(kTimeout) once it is
  // passed.
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

// Parses module text as produced by wasm2wat (folded or flat). Every
// module-level `(func ...)` field becomes a FunctionNode. A text with no
// functions yields an empty module.
//
// Throws ParseError on unbalanced parentheses or malformed tokens.
ModuleAst parse_module(std::string_view text, std::string source_id = {},
                       const ParseOptions& options = {});

// Instruction mnemonics of `func` in execution order: folded operands come
// before the instruction that consumes them, constructs contribute their
// contents in source order. Construct and literal labels never appear.
std::vector<std::string> linearize(const FunctionNode& func);

// Same order as linearize(); each entry is the mnemonic followed by its
// literal immediates, space separated.
std::vector<std::string> linearize_with_immediates(const FunctionNode& func);

// Renders a node as an s-expression, mostly for debugging and test output.
std::string dump(const AstNode& node);

}  // namespace wasmwalker

#endif  // WASMWALKER_WAT_PARSER_H_
