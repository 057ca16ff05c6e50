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

#include "wasmwalker/cli.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "wasmwalker/corpus_stats.h"
#include "wasmwalker/dataset.h"
#include "wasmwalker/error.h"
#include "wasmwalker/path_set.h"
#include "wasmwalker/representations.h"
#include "wasmwalker/wat_parser.h"

namespace wasmwalker::cli {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

struct RunConfig {
  std::vector<std::string> inputs;
  std::string mode = "NESTED";
  std::uint32_t cap = kDefaultCap;
  std::size_t window = kDefaultWindow;
  std::size_t min_count = 1;
  std::uint64_t seed = 0;
  double timeout = 0;  // seconds, 0 = none
  std::string out = ".";
  std::string variants = "INP,ISP,I,NP,SP";
  bool include_immediates = false;
  bool dedupe = false;
  std::size_t jobs = 0;
  std::string manifest;
  std::string nested_manifest;
  std::string simple_manifest;
  std::string sidecar;
  std::string label = "method";
  std::string provenance;
  std::size_t top = 10;
  std::size_t threshold = 10;
};

class Logger {
 public:
  explicit Logger(std::ostream& err) : err_(err) {}
  void info(const std::string& msg) { write("info", msg); }
  void warn(const std::string& msg) { write("warn", msg); }
  void error(const std::string& msg) { write("error", msg); }

 private:
  void write(const char* level, const std::string& msg) {
    std::lock_guard lock(mu_);
    err_ << "wasmwalker: " << level << ": " << msg << '\n';
  }
  std::ostream& err_;
  std::mutex mu_;
};

struct SourceFile {
  fs::path path;
  std::string source_id;
};

// Directories are scanned recursively for *.wat in sorted order; explicit
// files keep the caller's order. Throws IoError for missing inputs.
std::vector<SourceFile> expand_inputs(const std::vector<std::string>& inputs) {
  std::vector<SourceFile> files;
  for (const std::string& input : inputs) {
    fs::path p(input);
    std::error_code ec;
    auto status = fs::status(p, ec);
    if (ec || !fs::exists(status)) throw IoError("cannot read input " + input);
    if (fs::is_directory(status)) {
      std::vector<SourceFile> found;
      fs::recursive_directory_iterator it(p, ec), end;
      if (ec) throw IoError("cannot list " + input + ": " + ec.message());
      for (; it != end; it.increment(ec)) {
        if (ec) throw IoError("cannot list " + input + ": " + ec.message());
        if (it->is_regular_file() && it->path().extension() == ".wat") {
          found.push_back(
              {it->path(), it->path().lexically_relative(p).generic_string()});
        }
      }
      std::sort(found.begin(), found.end(),
                [](const SourceFile& a, const SourceFile& b) {
                  return a.source_id < b.source_id;
                });
      files.insert(files.end(), found.begin(), found.end());
    } else {
      std::ifstream probe(p);
      if (!probe) throw IoError("cannot read input " + input);
      files.push_back({p, p.lexically_normal().generic_string()});
    }
  }
  return files;
}

struct Corpus {
  std::vector<ModuleAst> modules;
  std::size_t files = 0;
  std::size_t failed = 0;
  std::size_t functions = 0;
};

// Parses every file on a small worker pool. Output order follows the input
// order regardless of scheduling; failing files are logged and dropped.
Corpus load_corpus(const RunConfig& config, Logger& log) {
  std::vector<SourceFile> files = expand_inputs(config.inputs);
  std::vector<std::optional<ModuleAst>> parsed(files.size());
  std::vector<std::string> errors(files.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      std::ifstream in(files[i].path, std::ios::binary);
      if (!in) {
        errors[i] = "cannot read";
        continue;
      }
      std::ostringstream text;
      text << in.rdbuf();
      ParseOptions options;
      if (config.timeout > 0) {
        options.deadline = std::chrono::steady_clock::now() +
                           std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                               std::chrono::duration<double>(config.timeout));
      }
      try {
        parsed[i] = parse_module(text.str(), files[i].source_id, options);
      } catch (const ParseError& e) {
        errors[i] = e.what();
      }
    }
  };
  std::size_t jobs = config.jobs ? config.jobs
                                 : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, std::max<std::size_t>(files.size(), 1));
  {
    std::vector<std::jthread> pool;
    for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
  }

  Corpus corpus;
  corpus.files = files.size();
  for (std::size_t i = 0; i < files.size(); ++i) {
    if (!parsed[i]) {
      ++corpus.failed;
      log.warn("skipping " + files[i].source_id + ": " + errors[i]);
      continue;
    }
    corpus.functions += parsed[i]->functions.size();
    corpus.modules.push_back(std::move(*parsed[i]));
  }
  return corpus;
}

PathMode parse_set_mode(const std::string& text) {
  auto mode = parse_path_mode(text);
  if (!mode || (*mode != PathMode::kNested && *mode != PathMode::kSimple)) {
    throw Error("--mode must be NESTED or SIMPLE, got '" + text + "'");
  }
  return *mode;
}

std::string lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

fs::path output_dir(const RunConfig& config) {
  fs::path dir(config.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + config.out);
  return dir;
}

std::ofstream open_output(const fs::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw IoError("cannot write " + file.string());
  return out;
}

Json corpus_json(const Corpus& corpus) {
  return Json{{"files", corpus.files},
              {"failed_files", corpus.failed},
              {"functions", corpus.functions}};
}

int cmd_build_pathset(const RunConfig& config, std::ostream& out, Logger& log) {
  PathMode mode = parse_set_mode(config.mode);
  Corpus corpus = load_corpus(config, log);
  std::string provenance = config.provenance;
  if (provenance.empty()) {
    provenance = std::to_string(corpus.modules.size()) + " files, " +
                 std::to_string(corpus.functions) + " functions";
  }
  PathSetBuild built = build_path_set(corpus.modules, mode, provenance);
  fs::path dir = output_dir(config);
  fs::path manifest = dir / ("pathset-" + lower(to_string(mode)) + ".manifest");
  fs::path curve = dir / ("curve-" + lower(to_string(mode)) + ".csv");
  save_manifest(built.set, manifest.string());
  auto curve_out = open_output(curve);
  write_curve_csv(built.curve, curve_out);

  Json summary{{"command", "build-pathset"}, {"mode", to_string(mode)}};
  summary.update(corpus_json(corpus));
  summary["paths"] = built.set.size();
  summary["manifest"] = manifest.generic_string();
  summary["curve"] = curve.generic_string();
  out << summary.dump() << '\n';
  return kExitOk;
}

int cmd_vectorize(const RunConfig& config, std::ostream& out, Logger& log) {
  PathSet set = load_manifest_file(config.manifest);
  Corpus corpus = load_corpus(config, log);
  fs::path dir = output_dir(config);
  std::string tag = lower(to_string(set.mode()));
  fs::path vectors = dir / ("vectors-" + tag + ".jsonl");
  fs::path skipped = dir / ("skipped-" + tag + ".csv");
  auto vec_out = open_output(vectors);
  auto skip_out = open_output(skipped);
  skip_out << "source,func,path,count\n";

  std::size_t records = 0, skipped_paths = 0;
  for (const ModuleAst& module : corpus.modules) {
    for (const FunctionNode& fn : module.functions) {
      Vectorized v = vectorize(fn, set);
      Json counts = Json::object();
      for (const auto& [index, count] : v.vector.counts) {
        counts[std::to_string(index)] = count;
      }
      Json line{{"source", module.source_id},
                {"func", fn.display_name()},
                {"mode", to_string(set.mode())},
                {"dim", v.vector.dim},
                {"counts", counts}};
      vec_out << line.dump() << '\n';
      ++records;
      for (const SkippedPath& s : v.skipped) {
        skip_out << csv_field(module.source_id) << ',' << csv_field(fn.display_name())
                 << ',' << csv_field(s.path) << ',' << s.occurrences << '\n';
        ++skipped_paths;
      }
    }
  }
  Json summary{{"command", "vectorize"}, {"mode", to_string(set.mode())}};
  summary.update(corpus_json(corpus));
  summary["records"] = records;
  summary["skipped_paths"] = skipped_paths;
  summary["vectors"] = vectors.generic_string();
  summary["skipped"] = skipped.generic_string();
  out << summary.dump() << '\n';
  return kExitOk;
}

int cmd_sequence(const RunConfig& config, std::ostream& out, Logger& log) {
  PathSet set = load_manifest_file(config.manifest);
  Corpus corpus = load_corpus(config, log);
  fs::path dir = output_dir(config);
  std::string tag = lower(to_string(set.mode()));
  fs::path seq_path = dir / ("sequences-" + tag + ".txt");
  fs::path key_path = dir / ("sequences-" + tag + ".keys.tsv");
  auto seq_out = open_output(seq_path);
  auto key_out = open_output(key_path);
  std::size_t lines = 0;
  for (const ModuleAst& module : corpus.modules) {
    for (const FunctionNode& fn : module.functions) {
      PathSequence seq = to_path_sequence(vectorize(fn, set).vector, config.cap);
      VariantInput line{set.mode() == PathMode::kNested ? Variant::kNP : Variant::kSP,
                        sequence_tokens(seq)};
      seq_out << line.line() << '\n';
      key_out << module.source_id << '\t' << fn.display_name() << '\n';
      ++lines;
    }
  }
  Json summary{{"command", "sequence"}, {"mode", to_string(set.mode())}};
  summary.update(corpus_json(corpus));
  summary["lines"] = lines;
  summary["sequences"] = seq_path.generic_string();
  out << summary.dump() << '\n';
  return kExitOk;
}

std::vector<Variant> parse_variants(const std::string& text) {
  std::vector<Variant> variants;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    auto v = parse_variant(item);
    if (!v) throw Error("unknown variant '" + item + "'");
    if (std::find(variants.begin(), variants.end(), *v) == variants.end()) {
      variants.push_back(*v);
    }
  }
  if (variants.empty()) throw Error("no variants selected");
  return variants;
}

int cmd_dataset(const RunConfig& config, std::ostream& out, Logger& log) {
  std::vector<Variant> variants = parse_variants(config.variants);
  bool need_nested = false, need_simple = false;
  for (Variant v : variants) {
    need_nested |= v == Variant::kINP || v == Variant::kNP;
    need_simple |= v == Variant::kISP || v == Variant::kSP;
  }
  if (need_nested && config.nested_manifest.empty()) {
    throw Error("variants INP/NP need --nested-manifest");
  }
  if (need_simple && config.simple_manifest.empty()) {
    throw Error("variants ISP/SP need --simple-manifest");
  }
  PathSet nested(PathMode::kNested), simple(PathMode::kSimple);
  nested.freeze();
  simple.freeze();
  if (!config.nested_manifest.empty()) nested = load_manifest_file(config.nested_manifest);
  if (!config.simple_manifest.empty()) simple = load_manifest_file(config.simple_manifest);
  require_mode(nested, PathMode::kNested);
  require_mode(simple, PathMode::kSimple);

  std::optional<LabelSidecar> sidecar;
  if (!config.sidecar.empty()) sidecar = LabelSidecar::load(config.sidecar);
  LabelKind kind;
  if (config.label == "method") {
    kind = LabelKind::kMethodName;
  } else if (config.label == "return-type") {
    kind = LabelKind::kReturnType;
  } else {
    throw Error("--label must be 'method' or 'return-type'");
  }

  Corpus corpus = load_corpus(config, log);
  RecordOptions options{kind, config.window, config.include_immediates};
  std::vector<FunctionRecord> records;
  std::size_t missing = 0;
  for (const ModuleAst& module : corpus.modules) {
    for (FunctionRecord& r :
         make_records(module, sidecar ? &*sidecar : nullptr, nested, simple, options)) {
      if (r.label.empty()) {
        ++missing;
        continue;
      }
      records.push_back(std::move(r));
    }
  }
  std::size_t labelled = records.size();
  records = filter_min_count(std::move(records), config.min_count);
  DatasetSplit split = split_by_package(std::move(records), SplitRatios{}, config.seed);

  fs::path dir = output_dir(config);
  Json exports = Json::object();
  std::size_t duplicates = 0;
  for (Variant v : variants) {
    ExportReport report = export_parallel(split, v, nested, simple, dir,
                                          ExportOptions{config.cap, config.dedupe});
    missing += report.missing_label;
    duplicates += report.duplicates;
    Json lines = Json::object();
    for (Partition p : kPartitions) lines[std::string(to_string(p))] = report.lines[p];
    exports[std::string(to_string(v))] = lines;
  }
  log.info("missing labels: " + std::to_string(missing) + " record(s) skipped");

  Json summary{{"command", "dataset"}};
  summary.update(corpus_json(corpus));
  summary["labelled"] = labelled;
  summary["missing_label"] = missing;
  summary["after_min_count"] = split.train.size() + split.validation.size() + split.test.size();
  summary["duplicates"] = duplicates;
  summary["exports"] = exports;
  out << summary.dump() << '\n';
  return kExitOk;
}

int cmd_stats(const RunConfig& config, std::ostream& out, Logger& log) {
  PathMode mode = parse_set_mode(config.mode);
  PackageMap packages;
  if (!config.sidecar.empty()) {
    std::ifstream in(config.sidecar);
    if (!in) throw IoError("cannot open sidecar " + config.sidecar);
    std::string line;
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      auto j = nlohmann::json::parse(line);
      std::string pkg = j.value("package", "");
      if (!pkg.empty()) packages.emplace(j.value("source", ""), pkg);
    }
  }
  Corpus corpus = load_corpus(config, log);
  fs::path dir = output_dir(config);
  std::string tag = lower(to_string(mode));

  PathFrequencyTable top = top_paths(corpus.modules, mode, config.top);
  RareInstructionTable rare =
      least_common_instructions(corpus.modules, config.threshold, packages);
  PathSetBuild built = build_path_set(corpus.modules, mode);
  CorpusSummary s = summary(corpus.modules, mode);

  auto top_out = open_output(dir / ("top-paths-" + tag + ".csv"));
  write_top_paths_csv(top, top_out);
  auto rare_out = open_output(dir / "rare-instructions.csv");
  write_rare_csv(rare, rare_out);
  auto curve_out = open_output(dir / ("curve-" + tag + ".csv"));
  write_curve_csv(built.curve, curve_out);

  Json result{{"command", "stats"}, {"mode", to_string(mode)}};
  result.update(corpus_json(corpus));
  result["distinct_paths"] = s.distinct_paths;
  result["total_occurrences"] = s.total_occurrences;
  result["mean_nonzero_per_function"] = s.mean_nonzero_per_function;
  result["mean_defined"] = s.mean_defined;
  out << result.dump() << '\n';
  return kExitOk;
}

int cmd_verify_coverage(const RunConfig& config, std::ostream& out, Logger& log) {
  PathSet set = load_manifest_file(config.manifest);
  Corpus corpus = load_corpus(config, log);
  CoverageReport report = coverage_verify(corpus.modules, set);
  fs::path dir = output_dir(config);
  fs::path csv = dir / ("coverage-" + lower(to_string(set.mode())) + ".csv");
  auto csv_out = open_output(csv);
  write_coverage_csv(report, csv_out);
  for (const auto& [path, u] : report.unseen) {
    log.info("unseen path " + path + " (" + std::to_string(u.occurrences) +
             " occurrences, " + std::to_string(u.method_count()) + " methods)");
  }
  Json summary{{"command", "verify-coverage"}, {"mode", to_string(set.mode())}};
  summary.update(corpus_json(corpus));
  summary["seen"] = report.seen;
  summary["unseen"] = report.unseen.size();
  summary["report"] = csv.generic_string();
  out << summary.dump() << '\n';
  return kExitOk;
}

void add_common(CLI::App* cmd, RunConfig& config) {
  cmd->add_option("inputs", config.inputs, "WAT files or directories")->required();
  cmd->add_option("--out", config.out, "Output directory");
  cmd->add_option("--timeout", config.timeout, "Per-file parse timeout in seconds (0 = none)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--jobs", config.jobs, "Worker threads (0 = hardware concurrency)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"Path-based code representations for WebAssembly text", "wasmwalker"};
  app.require_subcommand(1);

  auto* build = app.add_subcommand("build-pathset", "Build a frozen path-set manifest");
  add_common(build, config);
  build->add_option("--mode", config.mode, "NESTED or SIMPLE");
  build->add_option("--provenance", config.provenance, "Corpus description for the manifest");

  auto* vec = app.add_subcommand("vectorize", "Path vectors as JSON lines");
  add_common(vec, config);
  vec->add_option("--manifest", config.manifest, "Path-set manifest")->required();

  auto* seq = app.add_subcommand("sequence", "Path sequences as token lines");
  add_common(seq, config);
  seq->add_option("--manifest", config.manifest, "Path-set manifest")->required();
  seq->add_option("--D", config.cap, "Magnitude cap")->check(CLI::PositiveNumber);

  auto* data = app.add_subcommand("dataset", "Parallel src/tgt files per partition");
  add_common(data, config);
  data->add_option("--nested-manifest", config.nested_manifest, "NESTED manifest");
  data->add_option("--simple-manifest", config.simple_manifest, "SIMPLE manifest");
  data->add_option("--sidecar", config.sidecar, "Label sidecar (JSON lines)");
  data->add_option("--label", config.label, "method or return-type");
  data->add_option("--variants", config.variants, "Comma list of INP,ISP,I,NP,SP");
  data->add_option("--D", config.cap, "Magnitude cap")->check(CLI::PositiveNumber);
  data->add_option("--k", config.window, "Instruction window")->check(CLI::PositiveNumber);
  data->add_option("--m", config.min_count, "Minimum records per label")
      ->check(CLI::PositiveNumber);
  data->add_option("--seed", config.seed, "Split seed");
  data->add_flag("--include-immediates", config.include_immediates,
                 "Append immediates to instruction tokens");
  data->add_flag("--dedupe", config.dedupe, "Drop duplicate (input, label) lines");

  auto* stats = app.add_subcommand("stats", "Corpus statistics CSVs");
  add_common(stats, config);
  stats->add_option("--mode", config.mode, "NESTED or SIMPLE");
  stats->add_option("--top", config.top, "Rows in the top-paths table")
      ->check(CLI::PositiveNumber);
  stats->add_option("--threshold", config.threshold, "Max method count for rare instructions")
      ->check(CLI::PositiveNumber);
  stats->add_option("--sidecar", config.sidecar, "Sidecar supplying package names");

  auto* cov = app.add_subcommand("verify-coverage", "Probe a corpus against a manifest");
  add_common(cov, config);
  cov->add_option("--manifest", config.manifest, "Path-set manifest")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitFatal;
  }

  Logger log(err);
  try {
    if (build->parsed()) return cmd_build_pathset(config, out, log);
    if (vec->parsed()) return cmd_vectorize(config, out, log);
    if (seq->parsed()) return cmd_sequence(config, out, log);
    if (data->parsed()) return cmd_dataset(config, out, log);
    if (stats->parsed()) return cmd_stats(config, out, log);
    if (cov->parsed()) return cmd_verify_coverage(config, out, log);
  } catch (const std::exception& e) {
    log.error(e.what());
    return kExitFatal;
  }
  return kExitFatal;
}

}  // namespace wasmwalker::cli
