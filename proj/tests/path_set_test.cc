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
#include <sstream>

#include "doctest.h"
#include "support/fixtures.h"
#include "support/generator.h"
#include "wasmwalker/error.h"
#include "wasmwalker/wat_parser.h"

using namespace wasmwalker;
using wasmwalker::testing::load_fixture;

namespace {

using Strings = std::vector<std::string>;

PathSet g2_set() {
  std::vector<ModuleAst> corpus{load_fixture("g2.wat")};
  return build_path_set(corpus, PathMode::kNested, "g2").set;
}

PathSet load_text(const std::string& text) {
  std::istringstream in(text);
  return load_manifest(in);
}

}  // namespace

TEST_CASE("build_path_set on the golden function") {
  std::vector<ModuleAst> corpus{load_fixture("g2.wat")};
  PathSetBuild built = build_path_set(corpus, PathMode::kNested);
  CHECK(built.set.frozen());
  CHECK(built.set.entries() ==
        Strings{"i32.const", "if,local.get", "if,loop,br", "if,loop,local.get"});
  CHECK(built.set.lookup("i32.const") == 1u);
  CHECK(built.set.lookup("if,loop,local.get") == 4u);
  REQUIRE(built.curve.points.size() == 1);
  CHECK(built.curve.points[0].cumulative == 4);
}

TEST_CASE("build_path_set on an empty corpus") {
  PathSetBuild built = build_path_set({}, PathMode::kNested);
  CHECK(built.set.empty());
  CHECK(built.set.frozen());
  CHECK(built.curve.points.empty());
}

TEST_CASE("build_path_set rejects RAW and COLLAPSED") {
  CHECK_THROWS_AS(build_path_set({}, PathMode::kRaw), ModeMismatchError);
}

TEST_CASE("input order changes only the curve") {
  std::vector<ModuleAst> forward{load_fixture("g1.wat"), load_fixture("g2.wat")};
  std::vector<ModuleAst> backward(forward.rbegin(), forward.rend());
  PathSetBuild a = build_path_set(forward, PathMode::kNested);
  PathSetBuild b = build_path_set(backward, PathMode::kNested);
  CHECK(a.set == b.set);
  CHECK(manifest_text(a.set) == manifest_text(b.set));
  CHECK(a.set.size() == 6);
  CHECK(a.curve.points[0].cumulative == 2);
  CHECK(b.curve.points[0].cumulative == 4);
  CHECK(a.curve.points.back().cumulative == 6);
  CHECK(b.curve.points.back().cumulative == 6);
}

TEST_CASE("lookup") {
  PathSet set = g2_set();
  CHECK(set.lookup("if,loop,br") == 3u);
  CHECK_FALSE(set.lookup("loop,local.get").has_value());
  CHECK(set.lookup(Path{{Nest::kIf}, "local.get"}) == 2u);
  CHECK(set.at(1) == "i32.const");

  PathSet open(PathMode::kNested);
  open.insert("nop");
  CHECK_THROWS_AS(open.lookup("nop"), UnfrozenSetError);
  CHECK_THROWS_AS(set.insert("nop"), Error);
}

TEST_CASE("manifest format") {
  std::string text = manifest_text(g2_set());
  CHECK(text ==
        "# wasmwalker-pathset v1 mode=NESTED count=4\n"
        "# provenance=g2\n"
        "1\ti32.const\n"
        "2\tif,local.get\n"
        "3\tif,loop,br\n"
        "4\tif,loop,local.get\n");
  PathSet back = load_text(text);
  CHECK(back == g2_set());
  CHECK(manifest_text(back) == text);
}

TEST_CASE("manifest round trip of an empty set") {
  PathSet empty(PathMode::kSimple, "nothing");
  empty.freeze();
  PathSet back = load_text(manifest_text(empty));
  CHECK(back == empty);
  CHECK(back.empty());
}

TEST_CASE("manifest errors carry line numbers") {
  auto error_line = [](const std::string& text) -> std::size_t {
    try {
      load_text(text);
    } catch (const ManifestFormatError& e) {
      return e.line();
    }
    return 0;
  };
  const std::string header = "# wasmwalker-pathset v1 mode=NESTED count=2\n";
  CHECK(error_line(header + "1\tnop\n2\tnop\n") == 3);            // duplicate
  CHECK(error_line(header + "1\tnop\n3\tunreachable\n") == 3);    // index gap
  CHECK(error_line(header + "1\tunreachable\n2\tnop\n") == 3);    // order
  CHECK(error_line(header + "1\tblock,nop\n2\tnop\n") == 2);      // block in NESTED
  CHECK(error_line(header + "1\tnop\n") == 3);                    // count
  CHECK(error_line("# wasmwalker-pathset v2 mode=NESTED count=0\n") == 1);
  CHECK(error_line("# wasmwalker-pathset v1 mode=RAW count=0\n") == 1);
  CHECK(error_line("# wasmwalker-pathset v1 mode=SIMPLE count=1\n1\tloop,nop\n") == 2);
  CHECK(error_line("") == 1);
}

TEST_CASE("require_mode") {
  CHECK_NOTHROW(require_mode(g2_set(), PathMode::kNested));
  CHECK_THROWS_AS(require_mode(g2_set(), PathMode::kSimple), ModeMismatchError);
}

TEST_CASE("coverage of a foreign mnemonic") {
  ModuleAst foreign = parse_module(
      "(module (func $simd local.get 0 v128.load i32.const 7))", "foreign.wat");
  std::vector<ModuleAst> corpus{foreign};
  CoverageReport report = coverage_verify(corpus, g2_set());
  CHECK(report.seen == 1);  // i32.const
  REQUIRE(report.unseen.size() == 2);
  const UnseenPath& v128 = report.unseen.at("v128.load");
  CHECK(v128.occurrences == 1);
  REQUIRE(v128.attributions.size() == 1);
  CHECK(v128.attributions[0].source_id == "foreign.wat");
  CHECK(v128.attributions[0].function == "simd");
  // local.get at top level is not in the g2 set either ("if,local.get" is).
  CHECK(report.unseen.contains("local.get"));

  std::ostringstream csv;
  write_coverage_csv(report, csv);
  CHECK(csv.str() == "path,count,files,methods\nlocal.get,1,1,1\nv128.load,1,1,1\n");
}

TEST_CASE("self coverage and empty corpus") {
  std::vector<ModuleAst> corpus{load_fixture("g1.wat"), load_fixture("g2.wat"),
                                load_fixture("flat_wasm2wat.wat")};
  for (PathMode mode : {PathMode::kNested, PathMode::kSimple}) {
    PathSet set = build_path_set(corpus, mode).set;
    CoverageReport self = coverage_verify(corpus, set);
    CHECK(self.unseen.empty());
    CHECK(self.seen == set.size());
  }
  CoverageReport none = coverage_verify({}, g2_set());
  CHECK(none.seen == 0);
  CHECK(none.unseen.empty());
}

TEST_CASE("property: curve is non-decreasing and frozen sets ignore order") {
  testing::ProgramGenerator gen(99);
  for (int round = 0; round < 20; ++round) {
    std::vector<ModuleAst> corpus;
    for (int f = 0; f < 8; ++f) {
      testing::GenFunction fn = gen.function(4, 4);
      gen.style(fn, testing::RenderStyle::kMixed);
      corpus.push_back(parse_module(testing::render_module({fn}), "f" + std::to_string(f)));
    }
    PathSetBuild a = build_path_set(corpus, PathMode::kNested);
    std::shuffle(corpus.begin(), corpus.end(), gen.rng());
    PathSetBuild b = build_path_set(corpus, PathMode::kNested);
    CHECK(manifest_text(a.set) == manifest_text(b.set));
    for (std::size_t i = 1; i < b.curve.points.size(); ++i) {
      CHECK(b.curve.points[i - 1].cumulative <= b.curve.points[i].cumulative);
    }
    CHECK(b.curve.points.back().cumulative == b.set.size());
    CHECK(std::is_sorted(a.set.entries().begin(), a.set.entries().end()));
  }
}

TEST_CASE("curve csv") {
  std::vector<ModuleAst> corpus{load_fixture("g1.wat"), load_fixture("g2.wat")};
  std::ostringstream csv;
  write_curve_csv(build_path_set(corpus, PathMode::kSimple).curve, csv);
  CHECK(csv.str() == "source_id,cumulative_count\ng1.wat,2\ng2.wat,4\n");
}
