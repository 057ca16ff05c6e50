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

#include "wasmwalker/wat_parser.h"

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>

#include "wasmwalker/error.h"

namespace wasmwalker {

namespace {

std::string kind_message(ParseError::Kind kind) {
  switch (kind) {
    case ParseError::Kind::kUnbalancedParens: return "unbalanced parentheses";
    case ParseError::Kind::kMalformedToken: return "malformed token";
    case ParseError::Kind::kTimeout: return "parse deadline exceeded";
  }
  return "parse error";
}

}  // namespace

ParseError::ParseError(Kind kind, std::size_t position, const std::string& detail)
    : Error(kind_message(kind) + " at offset " + std::to_string(position) +
            (detail.empty() ? "" : ": " + detail)),
      kind_(kind),
      position_(position) {}

const char* to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::kConstruct: return "construct";
    case NodeKind::kInstruction: return "instruction";
    case NodeKind::kLiteral: return "literal";
  }
  return "?";
}

std::string FunctionNode::display_name() const {
  if (name && !name->empty()) {
    return (*name)[0] == '$' ? name->substr(1) : *name;
  }
  return std::to_string(ordinal);
}

namespace {

// Raw s-expression, the output of the first parsing phase.
struct SExpr {
  bool is_list = false;
  bool is_string = false;
  std::string atom;
  std::size_t pos = 0;
  std::vector<SExpr> items;

  bool is_atom(std::string_view text) const {
    return !is_list && !is_string && atom == text;
  }
  // Head keyword of a list, or empty.
  std::string_view head() const {
    if (!is_list || items.empty() || items[0].is_list || items[0].is_string)
      return {};
    return items[0].atom;
  }
};

class DeadlineGuard {
 public:
  explicit DeadlineGuard(const ParseOptions& options) : options_(options) {}

  void tick(std::size_t pos) {
    if (!options_.deadline || (++counter_ & 0xfff) != 0) return;
    if (std::chrono::steady_clock::now() > *options_.deadline)
      throw ParseError(ParseError::Kind::kTimeout, pos, "");
  }

 private:
  const ParseOptions& options_;
  std::uint64_t counter_ = 0;
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

bool is_idchar(char c) {
  auto u = static_cast<unsigned char>(c);
  if (u < 0x21 || u > 0x7e) return false;
  switch (c) {
    case '"': case ',': case ';': case '[': case ']': case '{': case '}':
    case '(': case ')':
      return false;
    default:
      return true;
  }
}

[[noreturn]] void malformed(std::size_t pos, const std::string& detail) {
  throw ParseError(ParseError::Kind::kMalformedToken, pos, detail);
}

[[noreturn]] void unbalanced(std::size_t pos, const std::string& detail) {
  throw ParseError(ParseError::Kind::kUnbalancedParens, pos, detail);
}

// Phase 1: text -> list of top-level s-expressions. Iterative, so nesting
// depth is bounded by memory rather than the call stack.
std::vector<SExpr> read_sexprs(std::string_view text, DeadlineGuard& guard) {
  std::vector<SExpr> stack(1);
  stack[0].is_list = true;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    guard.tick(i);
    char c = text[i];
    if (is_space(c)) {
      ++i;
      continue;
    }
    if (c == ';') {
      if (i + 1 < n && text[i + 1] == ';') {
        while (i < n && text[i] != '\n') ++i;
        continue;
      }
      malformed(i, "stray ';'");
    }
    if (c == '(' && i + 1 < n && text[i + 1] == ';') {
      std::size_t start = i;
      int depth = 0;
      while (i < n) {
        if (text[i] == '(' && i + 1 < n && text[i + 1] == ';') {
          ++depth;
          i += 2;
        } else if (text[i] == ';' && i + 1 < n && text[i + 1] == ')') {
          --depth;
          i += 2;
          if (depth == 0) break;
        } else {
          ++i;
        }
      }
      if (depth != 0) malformed(start, "unterminated block comment");
      continue;
    }
    if (c == '(') {
      SExpr list;
      list.is_list = true;
      list.pos = i;
      stack.push_back(std::move(list));
      ++i;
      continue;
    }
    if (c == ')') {
      if (stack.size() == 1) unbalanced(i, "unexpected ')'");
      SExpr done = std::move(stack.back());
      stack.pop_back();
      stack.back().items.push_back(std::move(done));
      ++i;
      continue;
    }
    if (c == '"') {
      std::size_t start = i++;
      while (i < n && text[i] != '"') {
        if (text[i] == '\\') ++i;
        ++i;
      }
      if (i >= n) malformed(start, "unterminated string");
      ++i;
      SExpr atom;
      atom.is_string = true;
      atom.atom = std::string(text.substr(start, i - start));
      atom.pos = start;
      stack.back().items.push_back(std::move(atom));
      continue;
    }
    if (!is_idchar(c)) malformed(i, "unexpected character");
    std::size_t start = i;
    while (i < n && is_idchar(text[i])) ++i;
    if (i < n && !is_space(text[i]) && text[i] != '(' && text[i] != ')' &&
        text[i] != '"' && !(text[i] == ';' && i + 1 < n && text[i + 1] == ';')) {
      malformed(i, "unexpected character in token");
    }
    SExpr atom;
    atom.atom = std::string(text.substr(start, i - start));
    atom.pos = start;
    stack.back().items.push_back(std::move(atom));
  }
  if (stack.size() > 1) unbalanced(stack.back().pos, "unclosed '('");
  return std::move(stack[0].items);
}

bool is_construct_head(std::string_view head) {
  static constexpr std::array<std::string_view, 6> kHeads = {
      "param", "result", "local", "type", "export", "import"};
  return std::find(kHeads.begin(), kHeads.end(), head) != kHeads.end();
}

bool is_block_type_head(std::string_view head) {
  return head == "param" || head == "result" || head == "type";
}

// Atoms that follow a flat instruction as its immediates.
bool is_immediate(const SExpr& e) {
  if (e.is_list) return false;
  if (e.is_string) return true;
  const std::string& a = e.atom;
  char c = a[0];
  if ((c >= '0' && c <= '9') || c == '-' || c == '+' || c == '$') return true;
  if (a.find('=') != std::string::npos) return true;
  if (a.rfind("nan", 0) == 0 || a == "inf") return true;
  static constexpr std::array<std::string_view, 10> kKeywords = {
      "func", "extern", "funcref", "externref", "i8x16",
      "i16x8", "i32x4", "i64x2", "f32x4", "f64x2"};
  return std::find(kKeywords.begin(), kKeywords.end(), a) != kKeywords.end();
}

AstNode literal_of(const SExpr& e) { return AstNode::Literal(e.atom); }

// Phase 2: s-expressions -> AstNode.
class Converter {
 public:
  explicit Converter(DeadlineGuard& guard) : guard_(guard) {}

  enum class Stop { kEof, kEnd, kElse };

  FunctionNode convert_func(const SExpr& form, std::size_t ordinal) {
    FunctionNode fn;
    fn.ordinal = ordinal;
    fn.body = AstNode::Construct("func");
    std::span<const SExpr> items(form.items);
    std::size_t i = 1;
    if (i < items.size() && !items[i].is_list && !items[i].is_string &&
        items[i].atom[0] == '$') {
      fn.name = items[i].atom;
      fn.body.children.push_back(literal_of(items[i]));
      ++i;
    }
    if (!fn.name) {
      for (const SExpr& e : items.subspan(1)) {
        if (e.head() == "export" && e.items.size() > 1 && e.items[1].is_string) {
          const std::string& q = e.items[1].atom;
          fn.name = q.substr(1, q.size() - 2);
          break;
        }
      }
    }
    Stop stop = parse_seq(items, i, fn.body.children, false);
    (void)stop;
    return fn;
  }

  // Parses a run of instructions (flat, folded, or mixed) starting at
  // items[i]. Inside a flat structured body, returns at `end` / `else`.
  Stop parse_seq(std::span<const SExpr> items, std::size_t& i,
                 std::vector<AstNode>& out, bool in_flat_block) {
    while (i < items.size()) {
      const SExpr& e = items[i];
      guard_.tick(e.pos);
      if (e.is_list) {
        out.push_back(convert_list(e));
        ++i;
        continue;
      }
      if (e.is_atom("end") || e.is_atom("else")) {
        if (!in_flat_block) malformed(e.pos, "unexpected '" + e.atom + "'");
        ++i;
        return e.atom == "end" ? Stop::kEnd : Stop::kElse;
      }
      if (e.is_atom("block") || e.is_atom("loop") || e.is_atom("if")) {
        ++i;
        out.push_back(parse_flat_structured(e, items, i));
        continue;
      }
      if (is_immediate(e)) {
        out.push_back(literal_of(e));
        ++i;
        continue;
      }
      AstNode instr = AstNode::Instruction(e.atom);
      ++i;
      while (i < items.size()) {
        const SExpr& next = items[i];
        if (is_immediate(next)) {
          instr.children.push_back(literal_of(next));
        } else if (next.is_list && is_block_type_head(next.head())) {
          instr.children.push_back(convert_list(next));
        } else {
          break;
        }
        ++i;
      }
      out.push_back(std::move(instr));
    }
    return Stop::kEof;
  }

 private:
  // Optional `$label` then block-type lists, shared by block/loop/if in both
  // syntaxes.
  void parse_block_header(std::span<const SExpr> items, std::size_t& i,
                          AstNode& node) {
    if (i < items.size() && !items[i].is_list && !items[i].is_string &&
        items[i].atom[0] == '$') {
      node.children.push_back(literal_of(items[i]));
      ++i;
    }
    while (i < items.size() && items[i].is_list &&
           is_block_type_head(items[i].head())) {
      node.children.push_back(convert_list(items[i]));
      ++i;
    }
  }

  void skip_end_label(std::span<const SExpr> items, std::size_t& i) {
    if (i < items.size() && !items[i].is_list && !items[i].is_string &&
        items[i].atom[0] == '$') {
      ++i;
    }
  }

  AstNode parse_flat_structured(const SExpr& keyword,
                                std::span<const SExpr> items, std::size_t& i) {
    AstNode node = AstNode::Construct(keyword.atom);
    parse_block_header(items, i, node);
    if (keyword.atom != "if") {
      Stop stop = parse_seq(items, i, node.children, true);
      if (stop == Stop::kEof) malformed(keyword.pos, "missing 'end'");
      if (stop == Stop::kElse) malformed(keyword.pos, "'else' outside 'if'");
      skip_end_label(items, i);
      return node;
    }
    AstNode then_node = AstNode::Construct("then");
    Stop stop = parse_seq(items, i, then_node.children, true);
    node.children.push_back(std::move(then_node));
    if (stop == Stop::kElse) {
      skip_end_label(items, i);
      AstNode else_node = AstNode::Construct("else");
      stop = parse_seq(items, i, else_node.children, true);
      node.children.push_back(std::move(else_node));
      if (stop == Stop::kElse) malformed(keyword.pos, "duplicate 'else'");
    }
    if (stop == Stop::kEof) malformed(keyword.pos, "missing 'end'");
    skip_end_label(items, i);
    return node;
  }

  AstNode convert_list(const SExpr& list) {
    guard_.tick(list.pos);
    if (list.items.empty()) malformed(list.pos, "empty list");
    const SExpr& head = list.items[0];
    if (head.is_list || head.is_string) {
      malformed(head.pos, "list must start with a keyword");
    }
    std::span<const SExpr> items(list.items);
    std::string_view kw = head.atom;
    std::size_t i = 1;

    if (is_construct_head(kw)) {
      AstNode node = AstNode::Construct(head.atom);
      for (; i < items.size(); ++i) {
        node.children.push_back(items[i].is_list ? convert_list(items[i])
                                                 : literal_of(items[i]));
      }
      return node;
    }
    if (kw == "block" || kw == "loop" || kw == "then" || kw == "else") {
      AstNode node = AstNode::Construct(head.atom);
      if (kw == "block" || kw == "loop") parse_block_header(items, i, node);
      parse_seq(items, i, node.children, false);
      return node;
    }
    if (kw == "if") {
      AstNode node = AstNode::Construct("if");
      parse_block_header(items, i, node);
      while (i < items.size()) {
        std::string_view h = items[i].head();
        if (h == "then" || h == "else") {
          node.children.push_back(convert_list(items[i]));
          ++i;
          continue;
        }
        // Condition operands up to the next then/else arm.
        std::size_t j = i;
        while (j < items.size() && items[j].head() != "then" &&
               items[j].head() != "else") {
          ++j;
        }
        std::size_t k = 0;
        parse_seq(items.subspan(i, j - i), k, node.children, false);
        i = j;
      }
      return node;
    }

    AstNode instr = AstNode::Instruction(head.atom);
    for (; i < items.size(); ++i) {
      const SExpr& e = items[i];
      instr.children.push_back(e.is_list ? convert_list(e) : literal_of(e));
    }
    return instr;
  }

  DeadlineGuard& guard_;
};

void walk_linear(const AstNode& node, bool with_immediates,
                 std::vector<std::string>& out) {
  for (const AstNode& child : node.children) {
    if (!child.is_literal()) walk_linear(child, with_immediates, out);
  }
  if (!node.is_instruction()) return;
  if (!with_immediates) {
    out.push_back(node.label);
    return;
  }
  std::string token = node.label;
  for (const AstNode& child : node.children) {
    if (child.is_literal()) {
      token += ' ';
      token += child.label;
    }
  }
  out.push_back(std::move(token));
}

void dump_into(const AstNode& node, std::string& out) {
  if (node.is_literal()) {
    out += node.label;
    return;
  }
  out += '(';
  out += node.label;
  for (const AstNode& child : node.children) {
    out += ' ';
    dump_into(child, out);
  }
  out += ')';
}

}  // namespace

ModuleAst parse_module(std::string_view text, std::string source_id,
                       const ParseOptions& options) {
  DeadlineGuard guard(options);
  std::vector<SExpr> top = read_sexprs(text, guard);

  // Either one or more `(module ...)` forms, or bare module fields.
  std::vector<const SExpr*> fields;
  for (const SExpr& form : top) {
    if (!form.is_list) malformed(form.pos, "expected '(' at top level");
    if (form.head() == "module") {
      for (std::size_t i = 1; i < form.items.size(); ++i) {
        fields.push_back(&form.items[i]);
      }
    } else {
      fields.push_back(&form);
    }
  }

  ModuleAst module;
  module.source_id = std::move(source_id);
  Converter converter(guard);
  for (const SExpr* field : fields) {
    if (field->head() == "func") {
      module.functions.push_back(
          converter.convert_func(*field, module.functions.size()));
    }
  }
  return module;
}

std::vector<std::string> linearize(const FunctionNode& func) {
  std::vector<std::string> out;
  walk_linear(func.body, false, out);
  return out;
}

std::vector<std::string> linearize_with_immediates(const FunctionNode& func) {
  std::vector<std::string> out;
  walk_linear(func.body, true, out);
  return out;
}

std::string dump(const AstNode& node) {
  std::string out;
  dump_into(node, out);
  return out;
}

}  // namespace wasmwalker
