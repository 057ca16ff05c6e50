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

#ifndef WASMWALKER_REPRESENTATIONS_H_
#define WASMWALKER_REPRESENTATIONS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wasmwalker/ast.h"
#include "wasmwalker/path.h"
#include "wasmwalker/path_set.h"

namespace wasmwalker {

inline constexpr std::uint32_t kDefaultCap = 30;
inline constexpr std::size_t kDefaultWindow = 20;

// Sparse per-function count vector over a frozen PathSet. Zero entries are
// never stored.
struct PathVector {
  std::uint32_t dim = 0;
  std::map<std::uint32_t, std::uint64_t> counts;  // 1-based index -> count
  PathMode mode = PathMode::kNested;
  std::string provenance;

  std::uint64_t total() const;
  std::vector<std::uint64_t> dense() const;

  friend bool operator==(const PathVector&, const PathVector&) = default;
};

struct SkippedPath {
  std::string path;
  std::uint64_t occurrences = 0;

  friend bool operator==(const SkippedPath&, const SkippedPath&) = default;
};

struct Vectorized {
  PathVector vector;
  std::vector<SkippedPath> skipped;  // paths absent from the set, sorted
};

// Refines the function's paths with the set's mode and counts them by index.
// Unseen paths are left out of the vector and reported.
Vectorized vectorize(const FunctionNode& func, const PathSet& set);

struct PathTuple {
  std::uint32_t index = 0;
  std::uint32_t magnitude = 0;

  friend bool operator==(const PathTuple&, const PathTuple&) = default;
};

// Compact encoding of a PathVector: one <index, magnitude> tuple per
// non-zero entry, magnitude = ceil(count * cap / total) in [1, cap].
struct PathSequence {
  std::vector<PathTuple> tuples;
  std::uint32_t cap = kDefaultCap;
  PathMode mode = PathMode::kNested;

  friend bool operator==(const PathSequence&, const PathSequence&) = default;
};

PathSequence to_path_sequence(const PathVector& vector,
                              std::uint32_t cap = kDefaultCap);

// Trailing instructions of linearize(func).
struct InstructionWindow {
  std::vector<std::string> tokens;
  std::size_t k = kDefaultWindow;
};

// With `include_immediates`, every entry is "mnemonic imm...".
InstructionWindow last_k_instructions(const FunctionNode& func,
                                      std::size_t k = kDefaultWindow,
                                      bool include_immediates = false);

enum class Variant { kINP, kISP, kI, kNP, kSP };

std::string_view to_string(Variant variant);
std::optional<Variant> parse_variant(std::string_view text);
inline constexpr Variant kAllVariants[] = {Variant::kINP, Variant::kISP,
                                           Variant::kI, Variant::kNP,
                                           Variant::kSP};

inline constexpr std::string_view kSeparatorToken = "<SEP>";

struct VariantInput {
  Variant variant = Variant::kI;
  std::vector<std::string> tokens;

  // Tokens joined by single spaces.
  std::string line() const;
};

// Tokens of a sequence: "P<n>" "C<m>" per tuple.
std::vector<std::string> sequence_tokens(const PathSequence& sequence);

// Lays out the model input for `variant`. Sequences a variant uses must come
// from a set of the matching mode, otherwise ModeMismatchError.
VariantInput assemble_variant(Variant variant, const InstructionWindow& window,
                              const PathSequence& nested,
                              const PathSequence& simple);

}  // namespace wasmwalker

#endif  // WASMWALKER_REPRESENTATIONS_H_
