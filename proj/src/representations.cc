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

#include "wasmwalker/representations.h"

#include <algorithm>
#include <stdexcept>

#include "wasmwalker/error.h"
#include "wasmwalker/wat_parser.h"

namespace wasmwalker {

std::uint64_t PathVector::total() const {
  std::uint64_t sum = 0;
  for (const auto& [index, count] : counts) sum += count;
  return sum;
}

std::vector<std::uint64_t> PathVector::dense() const {
  std::vector<std::uint64_t> out(dim, 0);
  for (const auto& [index, count] : counts) out[index - 1] = count;
  return out;
}

Vectorized vectorize(const FunctionNode& func, const PathSet& set) {
  if (!set.frozen()) throw UnfrozenSetError();
  Vectorized result;
  result.vector.dim = static_cast<std::uint32_t>(set.size());
  result.vector.mode = set.mode();
  result.vector.provenance = set.provenance();
  for (const auto& [path, count] : extract_paths(func, set.mode()).counts) {
    std::string canonical = path.canonical();
    if (auto index = set.lookup(canonical)) {
      result.vector.counts[*index] += count;
    } else {
      result.skipped.push_back({std::move(canonical), count});
    }
  }
  std::sort(result.skipped.begin(), result.skipped.end(),
            [](const SkippedPath& a, const SkippedPath& b) { return a.path < b.path; });
  return result;
}

PathSequence to_path_sequence(const PathVector& vector, std::uint32_t cap) {
  if (cap == 0) throw std::invalid_argument("path sequence cap must be >= 1");
  PathSequence seq;
  seq.cap = cap;
  seq.mode = vector.mode;
  const std::uint64_t total = vector.total();
  for (const auto& [index, count] : vector.counts) {
    if (count == 0) continue;
    std::uint64_t scaled = count * cap;
    seq.tuples.push_back(
        {index, static_cast<std::uint32_t>((scaled + total - 1) / total)});
  }
  return seq;
}

InstructionWindow last_k_instructions(const FunctionNode& func, std::size_t k,
                                      bool include_immediates) {
  if (k == 0) throw std::invalid_argument("window size must be >= 1");
  std::vector<std::string> all =
      include_immediates ? linearize_with_immediates(func) : linearize(func);
  InstructionWindow window;
  window.k = k;
  std::size_t start = all.size() > k ? all.size() - k : 0;
  window.tokens.assign(std::make_move_iterator(all.begin() + start),
                       std::make_move_iterator(all.end()));
  return window;
}

std::string_view to_string(Variant variant) {
  switch (variant) {
    case Variant::kINP: return "INP";
    case Variant::kISP: return "ISP";
    case Variant::kI: return "I";
    case Variant::kNP: return "NP";
    case Variant::kSP: return "SP";
  }
  return "?";
}

std::optional<Variant> parse_variant(std::string_view text) {
  for (Variant v : kAllVariants) {
    if (text == to_string(v)) return v;
  }
  return std::nullopt;
}

std::string VariantInput::line() const {
  std::string out;
  for (const std::string& token : tokens) {
    if (!out.empty()) out += ' ';
    out += token;
  }
  return out;
}

std::vector<std::string> sequence_tokens(const PathSequence& sequence) {
  std::vector<std::string> out;
  out.reserve(sequence.tuples.size() * 2);
  for (const PathTuple& t : sequence.tuples) {
    out.push_back("P" + std::to_string(t.index));
    out.push_back("C" + std::to_string(t.magnitude));
  }
  return out;
}

namespace {

void check_mode(const PathSequence& seq, PathMode expected, std::string_view role) {
  if (seq.mode != expected) {
    throw ModeMismatchError(std::string(role) + " sequence has mode " +
                            std::string(to_string(seq.mode)) + ", expected " +
                            std::string(to_string(expected)));
  }
}

void append(std::vector<std::string>& out, const std::vector<std::string>& in) {
  out.insert(out.end(), in.begin(), in.end());
}

}  // namespace

VariantInput assemble_variant(Variant variant, const InstructionWindow& window,
                              const PathSequence& nested,
                              const PathSequence& simple) {
  VariantInput input;
  input.variant = variant;
  bool instructions = variant == Variant::kI || variant == Variant::kINP ||
                      variant == Variant::kISP;
  const PathSequence* paths = nullptr;
  if (variant == Variant::kINP || variant == Variant::kNP) {
    check_mode(nested, PathMode::kNested, "nested");
    paths = &nested;
  } else if (variant == Variant::kISP || variant == Variant::kSP) {
    check_mode(simple, PathMode::kSimple, "simple");
    paths = &simple;
  }
  if (instructions) append(input.tokens, window.tokens);
  if (instructions && paths) input.tokens.emplace_back(kSeparatorToken);
  if (paths) append(input.tokens, sequence_tokens(*paths));
  return input;
}

}  // namespace wasmwalker
