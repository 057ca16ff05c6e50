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

#include "wasmwalker/corpus_stats.h"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <set>
#include <stdexcept>
#include <tuple>

#include "wasmwalker/path_set.h"
#include "wasmwalker/wat_parser.h"

namespace wasmwalker {

PathFrequencyTable top_paths(std::span<const ModuleAst> corpus, PathMode mode,
                             std::size_t k) {
  if (k == 0) throw std::invalid_argument("k must be >= 1");
  std::map<std::string, std::uint64_t> counts;
  PathFrequencyTable table;
  for (const ModuleAst& module : corpus) {
    for (const FunctionNode& fn : module.functions) {
      for (const auto& [path, count] : extract_paths(fn, mode).counts) {
        counts[path.canonical()] += count;
        table.total += count;
      }
    }
  }
  std::vector<std::pair<std::string, std::uint64_t>> ranked(counts.begin(),
                                                            counts.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  ranked.resize(std::min(k, ranked.size()));
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    double percent = 100.0 * static_cast<double>(ranked[i].second) /
                     static_cast<double>(table.total);
    table.rows.push_back({i + 1, ranked[i].first, ranked[i].second, percent});
  }
  return table;
}

RareInstructionTable least_common_instructions(std::span<const ModuleAst> corpus,
                                               std::size_t threshold,
                                               const PackageMap& packages) {
  if (threshold == 0) throw std::invalid_argument("threshold must be >= 1");
  struct Usage {
    std::set<std::string> projects;
    std::set<std::string> files;
    std::size_t methods = 0;
  };
  std::map<std::string, Usage> usage;
  for (const ModuleAst& module : corpus) {
    auto pkg = packages.find(module.source_id);
    const std::string& project = pkg != packages.end() ? pkg->second : module.source_id;
    for (const FunctionNode& fn : module.functions) {
      std::vector<std::string> mnemonics = linearize(fn);
      std::sort(mnemonics.begin(), mnemonics.end());
      mnemonics.erase(std::unique(mnemonics.begin(), mnemonics.end()), mnemonics.end());
      for (const std::string& m : mnemonics) {
        Usage& u = usage[m];
        u.projects.insert(project);
        u.files.insert(module.source_id);
        ++u.methods;
      }
    }
  }
  RareInstructionTable table;
  for (auto& [mnemonic, u] : usage) {
    if (u.methods > threshold) continue;
    table.rows.push_back({mnemonic, {u.projects.begin(), u.projects.end()},
                          u.files.size(), u.methods});
  }
  std::stable_sort(table.rows.begin(), table.rows.end(),
                   [](const RareInstructionRow& a, const RareInstructionRow& b) {
                     return std::tie(a.methods, a.files) < std::tie(b.methods, b.files);
                   });
  return table;
}

CorpusSummary summary(std::span<const ModuleAst> corpus, PathMode mode) {
  CorpusSummary s;
  std::set<std::string> distinct;
  std::uint64_t nonzero = 0;
  for (const ModuleAst& module : corpus) {
    for (const FunctionNode& fn : module.functions) {
      PathMultiset paths = extract_paths(fn, mode);
      ++s.functions;
      nonzero += paths.counts.size();
      s.total_occurrences += paths.total();
      for (const auto& [path, count] : paths.counts) distinct.insert(path.canonical());
    }
  }
  s.distinct_paths = distinct.size();
  if (s.functions > 0) {
    s.mean_defined = true;
    s.mean_nonzero_per_function =
        static_cast<double>(nonzero) / static_cast<double>(s.functions);
  }
  return s;
}

void write_top_paths_csv(const PathFrequencyTable& table, std::ostream& out) {
  out << "rank,path,count,percent\n";
  char percent[32];
  for (const PathFrequencyRow& row : table.rows) {
    std::snprintf(percent, sizeof percent, "%.2f", row.percent);
    out << row.rank << ',' << csv_field(row.path) << ',' << row.count << ','
        << percent << '\n';
  }
}

void write_rare_csv(const RareInstructionTable& table, std::ostream& out) {
  out << "mnemonic,projects,files,methods\n";
  for (const RareInstructionRow& row : table.rows) {
    std::string projects;
    for (const std::string& p : row.projects) {
      if (!projects.empty()) projects += ';';
      projects += p;
    }
    out << csv_field(row.mnemonic) << ',' << csv_field(projects) << ',' << row.files
        << ',' << row.methods << '\n';
  }
}

}  // namespace wasmwalker
