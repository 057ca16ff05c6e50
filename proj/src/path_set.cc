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

#include "wasmwalker/path_set.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "wasmwalker/error.h"

namespace wasmwalker {

namespace {

constexpr std::string_view kHeaderPrefix = "# wasmwalker-pathset v1 ";
constexpr std::string_view kProvenancePrefix = "# provenance=";

std::string single_line(std::string text) {
  std::replace(text.begin(), text.end(), '\n', ' ');
  std::replace(text.begin(), text.end(), '\r', ' ');
  return text;
}

}  // namespace

PathSet::PathSet(PathMode mode, std::string provenance)
    : mode_(mode), provenance_(single_line(std::move(provenance))) {}

bool PathSet::insert(std::string canonical) {
  if (frozen_) throw Error("cannot insert into a frozen path set");
  auto [it, added] = index_.try_emplace(
      canonical, static_cast<std::uint32_t>(entries_.size() + 1));
  if (added) entries_.push_back(std::move(canonical));
  return added;
}

bool PathSet::contains(std::string_view canonical) const {
  return index_.contains(std::string(canonical));
}

void PathSet::freeze() {
  std::sort(entries_.begin(), entries_.end());
  index_.clear();
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    index_.emplace(entries_[i], static_cast<std::uint32_t>(i + 1));
  }
  frozen_ = true;
}

std::optional<std::uint32_t> PathSet::lookup(std::string_view canonical) const {
  if (!frozen_) throw UnfrozenSetError();
  auto it = index_.find(std::string(canonical));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::uint32_t> PathSet::lookup(const Path& path) const {
  return lookup(path.canonical());
}

const std::string& PathSet::at(std::uint32_t index) const {
  if (index == 0 || index > entries_.size()) {
    throw Error("path index " + std::to_string(index) + " out of range");
  }
  return entries_[index - 1];
}

PathSetBuild build_path_set(std::span<const ModuleAst> corpus, PathMode mode,
                            std::string provenance) {
  if (mode != PathMode::kNested && mode != PathMode::kSimple) {
    throw ModeMismatchError("path sets are built in NESTED or SIMPLE mode, not " +
                            std::string(to_string(mode)));
  }
  PathSetBuild result{PathSet(mode, std::move(provenance)), {}};
  for (const ModuleAst& module : corpus) {
    for (const FunctionNode& fn : module.functions) {
      for (const auto& [path, count] : extract_paths(fn, mode).counts) {
        result.set.insert(path.canonical());
      }
    }
    result.curve.points.push_back({module.source_id, result.set.size()});
  }
  result.set.freeze();
  return result;
}

void save_manifest(const PathSet& set, std::ostream& out) {
  if (!set.frozen()) throw UnfrozenSetError();
  out << kHeaderPrefix << "mode=" << to_string(set.mode())
      << " count=" << set.size() << '\n';
  out << kProvenancePrefix << set.provenance() << '\n';
  for (std::size_t i = 0; i < set.size(); ++i) {
    out << (i + 1) << '\t' << set.entries()[i] << '\n';
  }
}

std::string manifest_text(const PathSet& set) {
  std::ostringstream out;
  save_manifest(set, out);
  return out.str();
}

void save_manifest(const PathSet& set, const std::string& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw IoError("cannot open " + file + " for writing");
  save_manifest(set, out);
  if (!out) throw IoError("failed writing " + file);
}

namespace {

std::optional<std::uint64_t> parse_uint(std::string_view text) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    return std::nullopt;
  }
  return value;
}

void validate_entry(std::string_view path, PathMode mode, std::size_t line) {
  if (path.empty() || path.back() == ',') {
    throw ManifestFormatError(line, "empty path or terminal");
  }
  std::size_t start = 0;
  for (;;) {
    std::size_t comma = path.find(',', start);
    if (comma == std::string_view::npos) break;
    std::string_view label = path.substr(start, comma - start);
    auto nest = parse_nest(label);
    if (!nest) throw ManifestFormatError(line, "unknown nesting label '" +
                                                   std::string(label) + "'");
    if (mode == PathMode::kSimple) {
      throw ManifestFormatError(line, "SIMPLE path with nesting");
    }
    if (mode == PathMode::kNested && *nest == Nest::kBlock) {
      throw ManifestFormatError(line, "NESTED path contains block");
    }
    start = comma + 1;
  }
}

}  // namespace

PathSet load_manifest(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw ManifestFormatError(1, "missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (!line.starts_with(kHeaderPrefix)) {
    throw ManifestFormatError(1, "bad header");
  }
  std::istringstream header(line.substr(kHeaderPrefix.size()));
  std::string mode_field, count_field, extra;
  header >> mode_field >> count_field;
  if (!mode_field.starts_with("mode=") || !count_field.starts_with("count=") ||
      (header >> extra)) {
    throw ManifestFormatError(1, "bad header fields");
  }
  auto mode = parse_path_mode(mode_field.substr(5));
  if (!mode || (*mode != PathMode::kNested && *mode != PathMode::kSimple) ||
      mode_field.substr(5) != to_string(*mode)) {
    throw ManifestFormatError(1, "bad mode '" + mode_field.substr(5) + "'");
  }
  auto count = parse_uint(std::string_view(count_field).substr(6));
  if (!count) throw ManifestFormatError(1, "bad count");

  std::string provenance;
  std::vector<std::string> entries;
  std::set<std::string> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 2 && line.starts_with(kProvenancePrefix)) {
      provenance = line.substr(kProvenancePrefix.size());
      continue;
    }
    auto tab = line.find('\t');
    if (tab == std::string::npos) throw ManifestFormatError(line_no, "expected index<TAB>path");
    auto index = parse_uint(std::string_view(line).substr(0, tab));
    if (!index || *index != entries.size() + 1) {
      throw ManifestFormatError(line_no, "index out of sequence");
    }
    std::string path = line.substr(tab + 1);
    validate_entry(path, *mode, line_no);
    if (!seen.insert(path).second) throw ManifestFormatError(line_no, "duplicate path '" + path + "'");
    if (!entries.empty() && !(entries.back() < path)) {
      throw ManifestFormatError(line_no, "paths not in lexicographic order");
    }
    entries.push_back(std::move(path));
  }
  if (entries.size() != *count) {
    throw ManifestFormatError(line_no + 1, "header count " + std::to_string(*count) +
                                               " but " + std::to_string(entries.size()) +
                                               " entries");
  }
  PathSet set(*mode, std::move(provenance));
  for (std::string& e : entries) set.insert(std::move(e));
  set.freeze();
  return set;
}

PathSet load_manifest_file(const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoError("cannot open manifest " + file);
  return load_manifest(in);
}

void require_mode(const PathSet& set, PathMode mode) {
  if (set.mode() != mode) {
    throw ModeMismatchError("path set mode is " + std::string(to_string(set.mode())) +
                            ", expected " + std::string(to_string(mode)));
  }
}

std::size_t UnseenPath::file_count() const {
  std::set<std::string_view> files;
  for (const Attribution& a : attributions) files.insert(a.source_id);
  return files.size();
}

CoverageReport coverage_verify(std::span<const ModuleAst> corpus,
                               const PathSet& frozen) {
  if (!frozen.frozen()) throw UnfrozenSetError();
  CoverageReport report;
  std::set<std::string> seen;
  for (const ModuleAst& module : corpus) {
    for (const FunctionNode& fn : module.functions) {
      for (const auto& [path, count] : extract_paths(fn, frozen.mode()).counts) {
        std::string canonical = path.canonical();
        if (frozen.lookup(canonical)) {
          seen.insert(std::move(canonical));
          continue;
        }
        UnseenPath& u = report.unseen[canonical];
        u.occurrences += count;
        Attribution who{module.source_id, fn.display_name()};
        auto pos = std::lower_bound(u.attributions.begin(), u.attributions.end(), who);
        if (pos == u.attributions.end() || *pos != who) u.attributions.insert(pos, who);
      }
    }
  }
  report.seen = seen.size();
  return report;
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_curve_csv(const AccumulativeCurve& curve, std::ostream& out) {
  out << "source_id,cumulative_count\n";
  for (const CurvePoint& p : curve.points) {
    out << csv_field(p.source_id) << ',' << p.cumulative << '\n';
  }
}

void write_coverage_csv(const CoverageReport& report, std::ostream& out) {
  out << "path,count,files,methods\n";
  for (const auto& [path, u] : report.unseen) {
    out << csv_field(path) << ',' << u.occurrences << ',' << u.file_count() << ','
        << u.method_count() << '\n';
  }
}

}  // namespace wasmwalker
