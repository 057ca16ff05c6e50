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

#ifndef WASMWALKER_PATH_H_
#define WASMWALKER_PATH_H_

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wasmwalker/ast.h"

namespace wasmwalker {

// The three constructs that add depth to a path.
enum class Nest : std::uint8_t { kBlock, kIf, kLoop };

std::string_view to_string(Nest label);
std::optional<Nest> parse_nest(std::string_view text);

// Reduction levels, ordered from least to most reduced.
enum class PathMode : std::uint8_t { kRaw, kCollapsed, kNested, kSimple };

std::string_view to_string(PathMode mode);
// Accepts the upper-case names used in manifests and on the command line
// (case-insensitive).
std::optional<PathMode> parse_path_mode(std::string_view text);

// Nesting constructs from the function root down to an instruction, then
// the instruction mnemonic.
struct Path {
  std::vector<Nest> nesting;
  std::string terminal;

  // Labels and terminal joined by commas, e.g. "if,loop,local.get".
  std::string canonical() const;
  static Path parse(std::string_view canonical);

  friend auto operator<=>(const Path&, const Path&) = default;
  friend bool operator==(const Path&, const Path&) = default;
};

// Path -> occurrence count for a single function (or a merged corpus).
struct PathMultiset {
  std::map<Path, std::uint64_t> counts;
  std::string owner;

  std::uint64_t total() const;
  void add(const Path& path, std::uint64_t count = 1);
  void merge(const PathMultiset& other);

  friend bool operator==(const PathMultiset& a, const PathMultiset& b) {
    return a.counts == b.counts;
  }
};

// Replaces every run of equal adjacent nesting labels by one label.
Path collapse_repeats(Path path);

// Removes every occurrence of `label` from the nesting.
Path drop_label(Path path, Nest label);

// Maps a raw path to `mode`. NESTED drops blocks from the collapsed path
// and collapses again, so no adjacent repeats survive.
Path refine(Path raw, PathMode mode);

// One path per instruction node. `then`/`else` are transparent and
// instructions never contribute to another instruction's nesting.
PathMultiset extract_raw_paths(const FunctionNode& func);

PathMultiset extract_paths(const FunctionNode& func, PathMode mode);

}  // namespace wasmwalker

#endif  // WASMWALKER_PATH_H_
