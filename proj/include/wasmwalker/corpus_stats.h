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

#ifndef WASMWALKER_CORPUS_STATS_H_
#define WASMWALKER_CORPUS_STATS_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "wasmwalker/ast.h"
#include "wasmwalker/path.h"

namespace wasmwalker {

struct PathFrequencyRow {
  std::size_t rank = 0;
  std::string path;
  std::uint64_t count = 0;
  double percent = 0.0;
};

struct PathFrequencyTable {
  std::vector<PathFrequencyRow> rows;
  std::uint64_t total = 0;  // all path occurrences in the corpus
};

// The k most frequent refined paths; ties go to the lexicographically
// smaller path.
PathFrequencyTable top_paths(std::span<const ModuleAst> corpus, PathMode mode,
                             std::size_t k);

struct RareInstructionRow {
  std::string mnemonic;
  std::vector<std::string> projects;  // sorted, unique
  std::size_t files = 0;
  std::size_t methods = 0;
};

struct RareInstructionTable {
  std::vector<RareInstructionRow> rows;  // ascending by method count
};

// source_id -> package name; sources without an entry are their own project.
using PackageMap = std::map<std::string, std::string>;

// Mnemonics used by at most `threshold` methods. threshold must be >= 1.
RareInstructionTable least_common_instructions(std::span<const ModuleAst> corpus,
                                               std::size_t threshold,
                                               const PackageMap& packages = {});

struct CorpusSummary {
  std::uint64_t functions = 0;
  std::uint64_t distinct_paths = 0;
  std::uint64_t total_occurrences = 0;
  double mean_nonzero_per_function = 0.0;
  bool mean_defined = false;  // false for a corpus without functions
};

CorpusSummary summary(std::span<const ModuleAst> corpus, PathMode mode);

// CSV: rank,path,count,percent (percent to 2 decimals)
void write_top_paths_csv(const PathFrequencyTable& table, std::ostream& out);
// CSV: mnemonic,projects,files,methods (projects joined by ';')
void write_rare_csv(const RareInstructionTable& table, std::ostream& out);

}  // namespace wasmwalker

#endif  // WASMWALKER_CORPUS_STATS_H_
