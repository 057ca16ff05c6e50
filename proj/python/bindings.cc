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

#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wasmwalker/cli.h"
#include "wasmwalker/corpus_stats.h"
#include "wasmwalker/dataset.h"
#include "wasmwalker/error.h"
#include "wasmwalker/path.h"
#include "wasmwalker/path_set.h"
#include "wasmwalker/representations.h"
#include "wasmwalker/wat_parser.h"

namespace py = pybind11;
using namespace wasmwalker;

namespace {

std::map<std::string, std::uint64_t> as_dict(const PathMultiset& ms) {
  std::map<std::string, std::uint64_t> out;
  for (const auto& [path, count] : ms.counts) out[path.canonical()] = count;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Path-based code representations for WebAssembly text";

  auto base = py::register_exception<Error>(m, "WasmwalkerError");
  py::register_exception<ParseError>(m, "ParseError", base);
  py::register_exception<UnfrozenSetError>(m, "UnfrozenSetError", base);
  py::register_exception<ManifestFormatError>(m, "ManifestFormatError", base);
  py::register_exception<ModeMismatchError>(m, "ModeMismatchError", base);
  py::register_exception<IoError>(m, "IoError", base);

  py::enum_<PathMode>(m, "PathMode")
      .value("RAW", PathMode::kRaw)
      .value("COLLAPSED", PathMode::kCollapsed)
      .value("NESTED", PathMode::kNested)
      .value("SIMPLE", PathMode::kSimple);

  py::enum_<Variant>(m, "Variant")
      .value("INP", Variant::kINP)
      .value("ISP", Variant::kISP)
      .value("I", Variant::kI)
      .value("NP", Variant::kNP)
      .value("SP", Variant::kSP);

  py::class_<FunctionNode>(m, "Function")
      .def_readonly("ordinal", &FunctionNode::ordinal)
      .def_readonly("name", &FunctionNode::name)
      .def_property_readonly("display_name", &FunctionNode::display_name)
      .def("linearize", [](const FunctionNode& f) { return linearize(f); })
      .def("dump", [](const FunctionNode& f) { return dump(f.body); })
      .def("paths", [](const FunctionNode& f, PathMode mode) {
        return as_dict(extract_paths(f, mode));
      }, py::arg("mode") = PathMode::kNested)
      .def("last_k_instructions", [](const FunctionNode& f, std::size_t k, bool imm) {
        return last_k_instructions(f, k, imm).tokens;
      }, py::arg("k") = kDefaultWindow, py::arg("include_immediates") = false);

  py::class_<ModuleAst>(m, "Module")
      .def_readonly("source_id", &ModuleAst::source_id)
      .def_readonly("functions", &ModuleAst::functions)
      .def("__len__", [](const ModuleAst& mod) { return mod.functions.size(); });

  m.def("parse_module", [](const std::string& text, const std::string& source_id) {
    return parse_module(text, source_id);
  }, py::arg("text"), py::arg("source_id") = "");

  m.def("refine", [](const std::string& path, PathMode mode) {
    return refine(Path::parse(path), mode).canonical();
  }, py::arg("path"), py::arg("mode"));
  m.def("collapse_repeats", [](const std::string& path) {
    return collapse_repeats(Path::parse(path)).canonical();
  });

  py::class_<PathSet>(m, "PathSet")
      .def_property_readonly("mode", &PathSet::mode)
      .def_property_readonly("provenance", &PathSet::provenance)
      .def_property_readonly("frozen", &PathSet::frozen)
      .def_property_readonly("entries", &PathSet::entries)
      .def("__len__", &PathSet::size)
      .def("__contains__", [](const PathSet& s, const std::string& p) { return s.contains(p); })
      .def("lookup", [](const PathSet& s, const std::string& p) { return s.lookup(p); })
      .def("at", &PathSet::at)
      .def("manifest", &manifest_text)
      .def("save", [](const PathSet& s, const std::string& file) { save_manifest(s, file); });

  m.def("build_path_set", [](const std::vector<ModuleAst>& corpus, PathMode mode,
                             const std::string& provenance) {
    PathSetBuild built = build_path_set(corpus, mode, provenance);
    std::vector<std::pair<std::string, std::uint64_t>> curve;
    for (const CurvePoint& p : built.curve.points) curve.emplace_back(p.source_id, p.cumulative);
    return py::make_tuple(std::move(built.set), curve);
  }, py::arg("corpus"), py::arg("mode") = PathMode::kNested, py::arg("provenance") = "");
  m.def("load_manifest", &load_manifest_file);
  m.def("load_manifest_text", [](const std::string& text) {
    std::istringstream in(text);
    return load_manifest(in);
  });

  m.def("vectorize", [](const FunctionNode& f, const PathSet& set) {
    Vectorized v = vectorize(f, set);
    std::vector<std::pair<std::string, std::uint64_t>> skipped;
    for (const SkippedPath& s : v.skipped) skipped.emplace_back(s.path, s.occurrences);
    return py::make_tuple(v.vector.counts, skipped);
  });
  m.def("path_sequence", [](const std::map<std::uint32_t, std::uint64_t>& counts,
                            std::uint32_t dim, std::uint32_t cap) {
    PathVector v;
    v.dim = dim;
    v.counts = counts;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    for (const PathTuple& t : to_path_sequence(v, cap).tuples) out.emplace_back(t.index, t.magnitude);
    return out;
  }, py::arg("counts"), py::arg("dim"), py::arg("cap") = kDefaultCap);

  m.def("coverage_verify", [](const std::vector<ModuleAst>& corpus, const PathSet& set) {
    CoverageReport r = coverage_verify(corpus, set);
    py::dict unseen;
    for (const auto& [path, u] : r.unseen) {
      unseen[py::str(path)] = py::make_tuple(u.occurrences, u.file_count(), u.method_count());
    }
    return py::make_tuple(r.seen, unseen);
  });

  m.def("top_paths", [](const std::vector<ModuleAst>& corpus, PathMode mode, std::size_t k) {
    std::vector<std::tuple<std::string, std::uint64_t, double>> rows;
    for (const auto& r : top_paths(corpus, mode, k).rows) rows.emplace_back(r.path, r.count, r.percent);
    return rows;
  }, py::arg("corpus"), py::arg("mode") = PathMode::kNested, py::arg("k") = 10);

  m.def("preprocess_method_name", [](const std::string& raw) {
    return preprocess_method_name(raw);
  });

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code;
    {
      py::gil_scoped_release release;
      code = cli::run(args, out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
  }, "Runs a wasmwalker command line; returns (exit_code, stdout, stderr).");
}
