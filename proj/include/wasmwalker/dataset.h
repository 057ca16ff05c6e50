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

#ifndef WASMWALKER_DATASET_H_
#define WASMWALKER_DATASET_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wasmwalker/ast.h"
#include "wasmwalker/path_set.h"
#include "wasmwalker/representations.h"

namespace wasmwalker {

struct FunctionRecord {
  std::string source_id;
  std::string package;
  std::size_t func_ordinal = 0;
  std::string func_name;
  // Method name or return-type token sequence.
  std::string label;
  InstructionWindow window;
  PathVector vector_nested;
  PathVector vector_simple;
};

struct SidecarEntry {
  std::string method_name;
  std::string return_type;
  std::string package;
};

// Labels keyed by (source, function). The function key is either the decimal
// ordinal or the function name (with or without '$').
class LabelSidecar {
 public:
  // JSON lines: {"source","func","method_name","return_type","package"}.
  // Throws Error on malformed lines or duplicate keys.
  static LabelSidecar parse(std::istream& in);
  static LabelSidecar load(const std::string& file);

  void add(const std::string& source, const std::string& func, SidecarEntry entry);
  const SidecarEntry* find(const std::string& source, const FunctionNode& fn) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::pair<std::string, std::string>, SidecarEntry> entries_;
};

enum class LabelKind { kMethodName, kReturnType };

struct RecordOptions {
  LabelKind label_kind = LabelKind::kMethodName;
  std::size_t window = kDefaultWindow;
  bool include_immediates = false;
};

// Builds one record per function of `module`. Labels come from the sidecar
// when it has an entry, else from the function's own name; method names are
// preprocessed. Records whose label ends up empty are kept with an empty
// label (export counts them as missing). Package falls back to the source id.
std::vector<FunctionRecord> make_records(const ModuleAst& module,
                                         const LabelSidecar* sidecar,
                                         const PathSet& nested,
                                         const PathSet& simple,
                                         const RecordOptions& options = {});

// Strips balanced <...> spans, then leading underscores, then lowercases.
// An empty result means the record should be dropped.
std::string preprocess_method_name(std::string_view raw);

// Keeps records whose label occurs at least `min_count` times. Stable.
std::vector<FunctionRecord> filter_min_count(std::vector<FunctionRecord> records,
                                             std::size_t min_count);

enum class Partition { kTrain, kValidation, kTest };
inline constexpr std::array<Partition, 3> kPartitions = {
    Partition::kTrain, Partition::kValidation, Partition::kTest};
std::string_view to_string(Partition partition);

struct SplitRatios {
  double train = 0.96;
  double validation = 0.02;
  double test = 0.02;
};

struct DatasetSplit {
  std::vector<FunctionRecord> train;
  std::vector<FunctionRecord> validation;
  std::vector<FunctionRecord> test;
  SplitRatios ratios;
  std::uint64_t seed = 0;

  std::vector<FunctionRecord>& operator[](Partition p);
  const std::vector<FunctionRecord>& operator[](Partition p) const;
};

// Package -> partition. Packages are ranked by a seeded hash of their name,
// then the first round(train*N) go to train and the next round(validation*N)
// to validation. Independent of record order.
std::map<std::string, Partition> assign_packages(
    std::span<const std::string> packages, const SplitRatios& ratios,
    std::uint64_t seed);

DatasetSplit split_by_package(std::vector<FunctionRecord> records,
                              const SplitRatios& ratios, std::uint64_t seed);

struct ExportOptions {
  std::uint32_t cap = kDefaultCap;
  bool dedupe = false;
};

struct ExportReport {
  std::map<Partition, std::size_t> lines;
  std::size_t missing_label = 0;
  std::size_t duplicates = 0;
};

// Writes <partition>.<variant>.src.txt / .tgt.txt into `destination`, one
// line per record ordered by (package, source_id, ordinal).
ExportReport export_parallel(const DatasetSplit& split, Variant variant,
                             const PathSet& nested, const PathSet& simple,
                             const std::filesystem::path& destination,
                             const ExportOptions& options = {});

// Source line for one record.
VariantInput record_input(const FunctionRecord& record, Variant variant,
                          std::uint32_t cap = kDefaultCap);

}  // namespace wasmwalker

#endif  // WASMWALKER_DATASET_H_
