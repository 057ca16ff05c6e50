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

#ifndef WASMWALKER_PATH_SET_H_
#define WASMWALKER_PATH_SET_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wasmwalker/ast.h"
#include "wasmwalker/path.h"

namespace wasmwalker {

// Ordered set of refined paths with 1-based indices.
//
// While unfrozen, paths can be inserted and indices follow insertion order.
// freeze() sorts entries lexicographically by canonical string and reassigns
// indices; after that the set is immutable and lookup() becomes available.
class PathSet {
 public:
  PathSet() = default;
  explicit PathSet(PathMode mode, std::string provenance = {});

  PathMode mode() const { return mode_; }
  const std::string& provenance() const { return provenance_; }
  bool frozen() const { return frozen_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::vector<std::string>& entries() const { return entries_; }

  // Returns true if the path was new. Throws Error once frozen.
  bool insert(std::string canonical);
  bool contains(std::string_view canonical) const;

  void freeze();

  // Throws UnfrozenSetError on an unfrozen set.
  std::optional<std::uint32_t> lookup(std::string_view canonical) const;
  std::optional<std::uint32_t> lookup(const Path& path) const;

  // 1-based.
  const std::string& at(std::uint32_t index) const;

  friend bool operator==(const PathSet& a, const PathSet& b) {
    return a.mode_ == b.mode_ && a.provenance_ == b.provenance_ &&
           a.frozen_ == b.frozen_ && a.entries_ == b.entries_;
  }

 private:
  PathMode mode_ = PathMode::kNested;
  std::string provenance_;
  bool frozen_ = false;
  std::vector<std::string> entries_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

struct CurvePoint {
  std::string source_id;
  std::uint64_t cumulative = 0;

  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

// Distinct-path count after each source, in ingestion order.
struct AccumulativeCurve {
  std::vector<CurvePoint> points;
};

struct PathSetBuild {
  PathSet set;
  AccumulativeCurve curve;
};

// Collects every distinct refined path of `corpus`. The curve follows the
// given order; the returned set is frozen, so its indices do not.
// Only NESTED and SIMPLE are accepted.
PathSetBuild build_path_set(std::span<const ModuleAst> corpus, PathMode mode,
                            std::string provenance = {});

// Manifest text:
//   # wasmwalker-pathset v1 mode=<NESTED|SIMPLE> count=<N>
//   # provenance=<text>
//   <index>\t<path>
void save_manifest(const PathSet& set, std::ostream& out);
void save_manifest(const PathSet& set, const std::string& file);
std::string manifest_text(const PathSet& set);

PathSet load_manifest(std::istream& in);
PathSet load_manifest_file(const std::string& file);

// Throws ModeMismatchError unless `set` was built for `mode`.
void require_mode(const PathSet& set, PathMode mode);

struct Attribution {
  std::string source_id;
  std::string function;

  friend auto operator<=>(const Attribution&, const Attribution&) = default;
};

struct UnseenPath {
  std::uint64_t occurrences = 0;
  std::vector<Attribution> attributions;  // sorted, unique

  std::size_t file_count() const;
  std::size_t method_count() const { return attributions.size(); }
};

struct CoverageReport {
  std::uint64_t seen = 0;  // distinct paths present in the frozen set
  std::map<std::string, UnseenPath> unseen;
};

// Classifies every distinct path of `corpus`, refined with the set's mode.
CoverageReport coverage_verify(std::span<const ModuleAst> corpus,
                               const PathSet& frozen);

// CSV: source_id,cumulative_count
void write_curve_csv(const AccumulativeCurve& curve, std::ostream& out);
// CSV: path,count,files,methods
void write_coverage_csv(const CoverageReport& report, std::ostream& out);

// Quotes a CSV field when needed.
std::string csv_field(std::string_view text);

}  // namespace wasmwalker

#endif  // WASMWALKER_PATH_SET_H_
