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

#include "wasmwalker/path.h"

#include <algorithm>
#include <cctype>

namespace wasmwalker {

std::string_view to_string(Nest label) {
  switch (label) {
    case Nest::kBlock: return "block";
    case Nest::kIf: return "if";
    case Nest::kLoop: return "loop";
  }
  return "?";
}

std::optional<Nest> parse_nest(std::string_view text) {
  if (text == "block") return Nest::kBlock;
  if (text == "if") return Nest::kIf;
  if (text == "loop") return Nest::kLoop;
  return std::nullopt;
}

std::string_view to_string(PathMode mode) {
  switch (mode) {
    case PathMode::kRaw: return "RAW";
    case PathMode::kCollapsed: return "COLLAPSED";
    case PathMode::kNested: return "NESTED";
    case PathMode::kSimple: return "SIMPLE";
  }
  return "?";
}

std::optional<PathMode> parse_path_mode(std::string_view text) {
  std::string upper(text);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  for (PathMode m : {PathMode::kRaw, PathMode::kCollapsed, PathMode::kNested,
                     PathMode::kSimple}) {
    if (upper == to_string(m)) return m;
  }
  return std::nullopt;
}

std::string Path::canonical() const {
  std::string out;
  for (Nest n : nesting) {
    out += to_string(n);
    out += ',';
  }
  out += terminal;
  return out;
}

Path Path::parse(std::string_view canonical) {
  Path path;
  std::size_t start = 0;
  for (;;) {
    std::size_t comma = canonical.find(',', start);
    if (comma == std::string_view::npos) break;
    std::string_view label = canonical.substr(start, comma - start);
    // Mnemonics never contain commas, so anything before the last comma is a
    // nesting label; unknown labels are kept out of the nesting.
    if (auto n = parse_nest(label)) path.nesting.push_back(*n);
    start = comma + 1;
  }
  path.terminal = std::string(canonical.substr(start));
  return path;
}

std::uint64_t PathMultiset::total() const {
  std::uint64_t sum = 0;
  for (const auto& [path, count] : counts) sum += count;
  return sum;
}

void PathMultiset::add(const Path& path, std::uint64_t count) {
  counts[path] += count;
}

void PathMultiset::merge(const PathMultiset& other) {
  for (const auto& [path, count] : other.counts) counts[path] += count;
}

Path collapse_repeats(Path path) {
  auto last = std::unique(path.nesting.begin(), path.nesting.end());
  path.nesting.erase(last, path.nesting.end());
  return path;
}

Path drop_label(Path path, Nest label) {
  std::erase(path.nesting, label);
  return path;
}

Path refine(Path raw, PathMode mode) {
  switch (mode) {
    case PathMode::kRaw:
      return raw;
    case PathMode::kCollapsed:
      return collapse_repeats(std::move(raw));
    case PathMode::kNested:
      return collapse_repeats(
          drop_label(collapse_repeats(std::move(raw)), Nest::kBlock));
    case PathMode::kSimple:
      return Path{{}, std::move(raw.terminal)};
  }
  return raw;
}

namespace {

void walk(const AstNode& node, std::vector<Nest>& nesting, PathMultiset& out) {
  std::optional<Nest> pushed;
  if (node.is_construct()) {
    pushed = parse_nest(node.label);
    if (pushed) nesting.push_back(*pushed);
  } else if (node.is_instruction()) {
    out.add(Path{nesting, node.label});
  }
  for (const AstNode& child : node.children) {
    if (!child.is_literal()) walk(child, nesting, out);
  }
  if (pushed) nesting.pop_back();
}

}  // namespace

PathMultiset extract_raw_paths(const FunctionNode& func) {
  PathMultiset out;
  out.owner = func.display_name();
  std::vector<Nest> nesting;
  for (const AstNode& child : func.body.children) {
    if (!child.is_literal()) walk(child, nesting, out);
  }
  return out;
}

PathMultiset extract_paths(const FunctionNode& func, PathMode mode) {
  PathMultiset raw = extract_raw_paths(func);
  if (mode == PathMode::kRaw) return raw;
  PathMultiset out;
  out.owner = raw.owner;
  for (const auto& [path, count] : raw.counts) out.add(refine(path, mode), count);
  return out;
}

}  // namespace wasmwalker
