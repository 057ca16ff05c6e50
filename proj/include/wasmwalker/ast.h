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

#ifndef WASMWALKER_AST_H_
#define WASMWALKER_AST_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace wasmwalker {

enum class NodeKind { kConstruct, kInstruction, kLiteral };

// One node of a parsed WAT function. Literals are always leaves.
struct AstNode {
  std::string label;
  NodeKind kind = NodeKind::kLiteral;
  std::vector<AstNode> children;

  static AstNode Construct(std::string label) {
    return {std::move(label), NodeKind::kConstruct, {}};
  }
  static AstNode Instruction(std::string label) {
    return {std::move(label), NodeKind::kInstruction, {}};
  }
  static AstNode Literal(std::string label) {
    return {std::move(label), NodeKind::kLiteral, {}};
  }

  bool is_construct() const { return kind == NodeKind::kConstruct; }
  bool is_instruction() const { return kind == NodeKind::kInstruction; }
  bool is_literal() const { return kind == NodeKind::kLiteral; }

  friend bool operator==(const AstNode&, const AstNode&) = default;
};

struct FunctionNode {
  std::size_t ordinal = 0;
  // $-identifier (with the leading '$') or, failing that, the first inline
  // export name.
  std::optional<std::string> name;
  AstNode body;  // label "func"

  // Name used when a function must be keyed in text output: the name without
  // a leading '$', else the ordinal.
  std::string display_name() const;

  friend bool operator==(const FunctionNode&, const FunctionNode&) = default;
};

struct ModuleAst {
  std::string source_id;
  std::vector<FunctionNode> functions;

  friend bool operator==(const ModuleAst&, const ModuleAst&) = default;
};

const char* to_string(NodeKind kind);

}  // namespace wasmwalker

#endif  // WASMWALKER_AST_H_
