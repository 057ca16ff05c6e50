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

#include "wasmwalker/dataset.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "wasmwalker/error.h"

namespace wasmwalker {

namespace {

std::string strip_dollar(std::string s) {
  if (!s.empty() && s[0] == '$') s.erase(0, 1);
  return s;
}

// Collapses whitespace runs so a label always renders as one line.
std::string normalize_tokens(std::string_view text) {
  std::string out;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    if (!out.empty()) out += ' ';
    out += token;
  }
  return out;
}

}  // namespace

void LabelSidecar::add(const std::string& source, const std::string& func,
                       SidecarEntry entry) {
  auto key = std::make_pair(source, strip_dollar(func));
  if (!entries_.emplace(key, std::move(entry)).second) {
    throw Error("duplicate sidecar key (" + key.first + ", " + key.second + ")");
  }
}

const SidecarEntry* LabelSidecar::find(const std::string& source,
                                       const FunctionNode& fn) const {
  auto it = entries_.find({source, std::to_string(fn.ordinal)});
  if (it != entries_.end()) return &it->second;
  if (fn.name) {
    it = entries_.find({source, strip_dollar(*fn.name)});
    if (it != entries_.end()) return &it->second;
  }
  return nullptr;
}

LabelSidecar LabelSidecar::parse(std::istream& in) {
  LabelSidecar sidecar;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error("sidecar line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("source") || !j.contains("func")) {
      throw Error("sidecar line " + std::to_string(line_no) +
                  ": expected object with source and func");
    }
    std::string func = j["func"].is_number_integer()
                           ? std::to_string(j["func"].get<std::int64_t>())
                           : j["func"].get<std::string>();
    SidecarEntry entry;
    entry.method_name = j.value("method_name", "");
    entry.return_type = j.value("return_type", "");
    entry.package = j.value("package", "");
    sidecar.add(j["source"].get<std::string>(), func, std::move(entry));
  }
  return sidecar;
}

LabelSidecar LabelSidecar::load(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open sidecar " + file);
  return parse(in);
}

std::string preprocess_method_name(std::string_view raw) {
  // Mark every char covered by a matched <...> pair; unmatched brackets stay.
  std::vector<bool> removed(raw.size(), false);
  std::vector<std::size_t> open;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] == '<') {
      open.push_back(i);
    } else if (raw[i] == '>' && !open.empty()) {
      std::size_t start = open.back();
      open.pop_back();
      std::fill(removed.begin() + start, removed.begin() + i + 1, true);
    }
  }
  std::string out;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!removed[i]) out += raw[i];
  }
  out.erase(0, out.find_first_not_of('_') == std::string::npos
                   ? out.size()
                   : out.find_first_not_of('_'));
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::vector<FunctionRecord> filter_min_count(std::vector<FunctionRecord> records,
                                             std::size_t min_count) {
  if (min_count == 0) throw std::invalid_argument("m must be >= 1");
  std::unordered_map<std::string, std::size_t> freq;
  for (const FunctionRecord& r : records) ++freq[r.label];
  std::erase_if(records, [&](const FunctionRecord& r) {
    return freq[r.label] < min_count;
  });
  return records;
}

std::vector<FunctionRecord> make_records(const ModuleAst& module,
                                         const LabelSidecar* sidecar,
                                         const PathSet& nested,
                                         const PathSet& simple,
                                         const RecordOptions& options) {
  require_mode(nested, PathMode::kNested);
  require_mode(simple, PathMode::kSimple);
  std::vector<FunctionRecord> records;
  for (const FunctionNode& fn : module.functions) {
    FunctionRecord r;
    r.source_id = module.source_id;
    r.func_ordinal = fn.ordinal;
    r.func_name = fn.display_name();
    const SidecarEntry* entry = sidecar ? sidecar->find(module.source_id, fn) : nullptr;
    if (entry) {
      r.package = entry->package;
      r.label = options.label_kind == LabelKind::kMethodName
                    ? preprocess_method_name(entry->method_name)
                    : normalize_tokens(entry->return_type);
    } else if (options.label_kind == LabelKind::kMethodName && fn.name) {
      r.label = preprocess_method_name(strip_dollar(*fn.name));
    }
    if (r.package.empty()) r.package = module.source_id;
    r.window = last_k_instructions(fn, options.window, options.include_immediates);
    r.vector_nested = vectorize(fn, nested).vector;
    r.vector_simple = vectorize(fn, simple).vector;
    records.push_back(std::move(r));
  }
  return records;
}

std::string_view to_string(Partition partition) {
  switch (partition) {
    case Partition::kTrain: return "train";
    case Partition::kValidation: return "valid";
    case Partition::kTest: return "test";
  }
  return "?";
}

std::vector<FunctionRecord>& DatasetSplit::operator[](Partition p) {
  switch (p) {
    case Partition::kTrain: return train;
    case Partition::kValidation: return validation;
    case Partition::kTest: return test;
  }
  return train;
}

const std::vector<FunctionRecord>& DatasetSplit::operator[](Partition p) const {
  return const_cast<DatasetSplit&>(*this)[p];
}

namespace {

std::uint64_t package_rank(std::string_view name, std::uint64_t seed) {
  // FNV-1a over the seed bytes then the name, finished with splitmix64.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](unsigned char byte) {
    h ^= byte;
    h *= 0x100000001b3ULL;
  };
  for (int i = 0; i < 8; ++i) mix(static_cast<unsigned char>(seed >> (8 * i)));
  for (char c : name) mix(static_cast<unsigned char>(c));
  h += 0x9e3779b97f4a7c15ULL;
  h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ULL;
  h = (h ^ (h >> 27)) * 0x94d049bb133111ebULL;
  return h ^ (h >> 31);
}

}  // namespace

std::map<std::string, Partition> assign_packages(
    std::span<const std::string> packages, const SplitRatios& ratios,
    std::uint64_t seed) {
  std::set<std::string> unique(packages.begin(), packages.end());
  std::vector<std::pair<std::uint64_t, std::string>> ranked;
  for (const std::string& p : unique) ranked.emplace_back(package_rank(p, seed), p);
  std::sort(ranked.begin(), ranked.end());

  const double total = ratios.train + ratios.validation + ratios.test;
  const auto n = static_cast<double>(ranked.size());
  auto n_train = static_cast<std::size_t>(std::llround(n * ratios.train / total));
  auto n_valid = static_cast<std::size_t>(std::llround(n * ratios.validation / total));
  n_train = std::min(n_train, ranked.size());
  n_valid = std::min(n_valid, ranked.size() - n_train);

  std::map<std::string, Partition> out;
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    Partition p = i < n_train             ? Partition::kTrain
                  : i < n_train + n_valid ? Partition::kValidation
                                          : Partition::kTest;
    out.emplace(ranked[i].second, p);
  }
  return out;
}

DatasetSplit split_by_package(std::vector<FunctionRecord> records,
                              const SplitRatios& ratios, std::uint64_t seed) {
  std::vector<std::string> packages;
  for (const FunctionRecord& r : records) {
    if (r.package.empty()) {
      throw Error("record " + r.source_id + ":" + r.func_name + " has no package");
    }
    packages.push_back(r.package);
  }
  auto assignment = assign_packages(packages, ratios, seed);
  DatasetSplit split;
  split.ratios = ratios;
  split.seed = seed;
  for (FunctionRecord& r : records) {
    split[assignment.at(r.package)].push_back(std::move(r));
  }
  return split;
}

VariantInput record_input(const FunctionRecord& record, Variant variant,
                          std::uint32_t cap) {
  return assemble_variant(variant, record.window,
                          to_path_sequence(record.vector_nested, cap),
                          to_path_sequence(record.vector_simple, cap));
}

namespace {

void check_vector(const PathVector& v, const PathSet& set) {
  if (v.mode != set.mode()) {
    throw ModeMismatchError("record vector mode " + std::string(to_string(v.mode)) +
                            " does not match set mode " +
                            std::string(to_string(set.mode())));
  }
  if (v.dim != set.size()) {
    throw ModeMismatchError("record vector dim " + std::to_string(v.dim) +
                            " does not match set size " + std::to_string(set.size()));
  }
}

}  // namespace

ExportReport export_parallel(const DatasetSplit& split, Variant variant,
                             const PathSet& nested, const PathSet& simple,
                             const std::filesystem::path& destination,
                             const ExportOptions& options) {
  require_mode(nested, PathMode::kNested);
  require_mode(simple, PathMode::kSimple);
  std::error_code ec;
  std::filesystem::create_directories(destination, ec);
  if (ec) throw IoError("cannot create " + destination.string() + ": " + ec.message());

  ExportReport report;
  for (Partition p : kPartitions) {
    std::vector<const FunctionRecord*> ordered;
    for (const FunctionRecord& r : split[p]) ordered.push_back(&r);
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const FunctionRecord* a, const FunctionRecord* b) {
                       return std::tie(a->package, a->source_id, a->func_ordinal) <
                              std::tie(b->package, b->source_id, b->func_ordinal);
                     });

    std::string stem = std::string(to_string(p)) + "." + std::string(to_string(variant));
    auto src_path = destination / (stem + ".src.txt");
    auto tgt_path = destination / (stem + ".tgt.txt");
    std::ofstream src(src_path, std::ios::binary);
    std::ofstream tgt(tgt_path, std::ios::binary);
    if (!src || !tgt) throw IoError("cannot write " + src_path.string());

    std::set<std::pair<std::string, std::string>> emitted;
    std::size_t lines = 0;
    for (const FunctionRecord* r : ordered) {
      std::string label = normalize_tokens(r->label);
      if (label.empty()) {
        ++report.missing_label;
        continue;
      }
      check_vector(r->vector_nested, nested);
      check_vector(r->vector_simple, simple);
      std::string line = record_input(*r, variant, options.cap).line();
      if (options.dedupe && !emitted.emplace(line, label).second) {
        ++report.duplicates;
        continue;
      }
      src << line << '\n';
      tgt << label << '\n';
      ++lines;
    }
    if (!src || !tgt) throw IoError("failed writing " + src_path.string());
    report.lines[p] = lines;
  }
  return report;
}

}  // namespace wasmwalker
