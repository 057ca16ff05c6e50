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
#include <sstream>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "support/fixtures.h"

using namespace wasmwalker;
using wasmwalker::testing::fixture_path;
using wasmwalker::testing::read_file;
using wasmwalker::testing::TempDir;
using wasmwalker::testing::write_file;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
  nlohmann::json summary() const { return nlohmann::json::parse(out); }
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t lines(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

// g1 + g2 copied into a fresh corpus directory.
void golden_corpus(const std::filesystem::path& dir) {
  write_file(dir / "g1.wat", read_file(fixture_path("g1.wat")));
  write_file(dir / "g2.wat", read_file(fixture_path("g2.wat")));
}

}  // namespace

TEST_CASE("build-pathset over the golden corpus") {
  TempDir tmp;
  golden_corpus(tmp / "corpus");
  Result r = run({"build-pathset", (tmp / "corpus").string(), "--mode", "NESTED", "--out",
                  (tmp / "out").string()});
  REQUIRE(r.code == 0);
  CHECK(r.summary()["paths"] == 6);
  std::string manifest = read_file(tmp / "out" / "pathset-nested.manifest");
  CHECK(manifest ==
        "# wasmwalker-pathset v1 mode=NESTED count=6\n"
        "# provenance=2 files, 2 functions\n"
        "1\ti32.add\n2\ti32.const\n3\tif,local.get\n4\tif,loop,br\n"
        "5\tif,loop,local.get\n6\tlocal.get\n");
  CHECK(read_file(tmp / "out" / "curve-nested.csv") ==
        "source_id,cumulative_count\ng1.wat,2\ng2.wat,6\n");
}

TEST_CASE("build-pathset on an empty directory and a missing path") {
  TempDir tmp;
  std::filesystem::create_directories(tmp / "empty");
  Result r = run({"build-pathset", (tmp / "empty").string(), "--out", (tmp / "out").string()});
  CHECK(r.code == 0);
  CHECK(read_file(tmp / "out" / "pathset-nested.manifest") ==
        "# wasmwalker-pathset v1 mode=NESTED count=0\n# provenance=0 files, 0 functions\n");

  Result missing = run({"build-pathset", (tmp / "nope").string(), "--out", tmp.path().string()});
  CHECK(missing.code == 2);
  CHECK(missing.err.find("cannot read input") != std::string::npos);

  Result bad_mode = run({"build-pathset", (tmp / "empty").string(), "--mode", "RAW"});
  CHECK(bad_mode.code == 2);
}

TEST_CASE("malformed files are skipped and logged") {
  TempDir tmp;
  golden_corpus(tmp / "corpus");
  write_file(tmp / "corpus" / "broken.wat", "(module (func local.get 0");
  Result r = run({"build-pathset", (tmp / "corpus").string(), "--out", tmp.path().string()});
  CHECK(r.code == 0);
  CHECK(r.summary()["failed_files"] == 1);
  CHECK(r.summary()["paths"] == 6);
  CHECK(r.err.find("broken.wat") != std::string::npos);
}

TEST_CASE("vectorize against a manifest") {
  TempDir tmp;
  write_file(tmp / "g2" / "g2.wat", read_file(fixture_path("g2.wat")));
  REQUIRE(run({"build-pathset", (tmp / "g2").string(), "--out", tmp.path().string()}).code == 0);
  std::string manifest = (tmp / "pathset-nested.manifest").string();

  Result r = run({"vectorize", (tmp / "g2").string(), "--manifest", manifest, "--out",
                  (tmp / "v").string()});
  REQUIRE(r.code == 0);
  CHECK(read_file(tmp / "v" / "vectors-nested.jsonl") ==
        R"({"source":"g2.wat","func":"g2","mode":"NESTED","dim":4,"counts":{"1":1,"2":1,"3":1,"4":1}})"
        "\n");
  CHECK(read_file(tmp / "v" / "skipped-nested.csv") == "source,func,path,count\n");

  write_file(tmp / "foreign" / "f.wat", "(module (func $f (v128.load (i32.const 7))))");
  Result f = run({"vectorize", (tmp / "foreign").string(), "--manifest", manifest, "--out",
                  (tmp / "f").string()});
  REQUIRE(f.code == 0);
  CHECK(read_file(tmp / "f" / "vectors-nested.jsonl") ==
        R"({"source":"f.wat","func":"f","mode":"NESTED","dim":4,"counts":{"1":1}})"
        "\n");
  CHECK(read_file(tmp / "f" / "skipped-nested.csv") ==
        "source,func,path,count\nf.wat,f,v128.load,1\n");

  std::filesystem::create_directories(tmp / "none");
  Result e = run({"vectorize", (tmp / "none").string(), "--manifest", manifest, "--out",
                  (tmp / "e").string()});
  CHECK(e.code == 0);
  CHECK(read_file(tmp / "e" / "vectors-nested.jsonl").empty());

  write_file(tmp / "bad.manifest", "# nothing\n");
  CHECK(run({"vectorize", (tmp / "g2").string(), "--manifest",
             (tmp / "bad.manifest").string()})
            .code == 2);
}

TEST_CASE("sequence writes one token line per function") {
  TempDir tmp;
  golden_corpus(tmp / "corpus");
  REQUIRE(run({"build-pathset", (tmp / "corpus").string(), "--out", tmp.path().string()}).code == 0);
  Result r = run({"sequence", (tmp / "corpus").string(), "--manifest",
                  (tmp / "pathset-nested.manifest").string(), "--D", "30", "--out",
                  tmp.path().string()});
  REQUIRE(r.code == 0);
  CHECK(read_file(tmp / "sequences-nested.txt") ==
        "P1 C10 P6 C20\nP2 C8 P3 C8 P4 C8 P5 C8\n");
  CHECK(read_file(tmp / "sequences-nested.keys.tsv") == "g1.wat\tadd\ng2.wat\tg2\n");
}

TEST_CASE("dataset exports, m filtering and missing sidecar") {
  TempDir tmp;
  // Six functions labelled a,a,a,b,b,c across three packages.
  const char* names[] = {"a", "a", "a", "b", "b", "c"};
  std::string sidecar;
  for (int i = 0; i < 6; ++i) {
    std::string file = "f" + std::to_string(i) + ".wat";
    write_file(tmp / "corpus" / file, "(module (func local.get 0 i32.const " +
                                          std::to_string(i) + " i32.add))");
    sidecar += R"({"source":")" + file + R"(","func":0,"method_name":")" + names[i] +
               R"(","package":"p)" + std::to_string(i % 3) + "\"}\n";
  }
  write_file(tmp / "labels.jsonl", sidecar);
  std::string corpus = (tmp / "corpus").string();
  REQUIRE(run({"build-pathset", corpus, "--mode", "NESTED", "--out", tmp.path().string()}).code == 0);
  REQUIRE(run({"build-pathset", corpus, "--mode", "SIMPLE", "--out", tmp.path().string()}).code == 0);

  std::vector<std::string> base = {
      "dataset", corpus, "--nested-manifest", (tmp / "pathset-nested.manifest").string(),
      "--simple-manifest", (tmp / "pathset-simple.manifest").string(), "--sidecar",
      (tmp / "labels.jsonl").string(), "--variants", "I,INP"};

  auto out1 = base;
  out1.insert(out1.end(), {"--out", (tmp / "d1").string()});
  Result r = run(out1);
  REQUIRE(r.code == 0);
  std::size_t files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(tmp / "d1")) {
    (void)entry;
    ++files;
  }
  CHECK(files == 12);  // 2 variants x 3 partitions x (src, tgt)
  std::size_t total = 0;
  for (const char* part : {"train", "valid", "test"}) {
    std::string src = read_file(tmp / "d1" / (std::string(part) + ".INP.src.txt"));
    std::string tgt = read_file(tmp / "d1" / (std::string(part) + ".INP.tgt.txt"));
    CHECK(lines(src) == lines(tgt));
    total += lines(tgt);
  }
  CHECK(total == 6);

  auto out2 = base;
  out2.insert(out2.end(), {"--m", "2", "--out", (tmp / "d2").string()});
  Result m2 = run(out2);
  REQUIRE(m2.code == 0);
  CHECK(m2.summary()["after_min_count"] == 5);
  std::string all_tgt;
  for (const char* part : {"train", "valid", "test"}) {
    all_tgt += read_file(tmp / "d2" / (std::string(part) + ".I.tgt.txt"));
  }
  CHECK(lines(all_tgt) == 5);
  CHECK(all_tgt.find('c') == std::string::npos);

  auto rerun = base;
  rerun.insert(rerun.end(), {"--m", "2", "--out", (tmp / "d3").string()});
  REQUIRE(run(rerun).code == 0);
  for (const auto& entry : std::filesystem::directory_iterator(tmp / "d2")) {
    CHECK(read_file(entry.path()) == read_file(tmp / "d3" / entry.path().filename()));
  }

  auto missing = base;
  missing[7] = (tmp / "missing.jsonl").string();
  CHECK(run(missing).code == 2);

  Result no_manifest = run({"dataset", corpus, "--variants", "NP"});
  CHECK(no_manifest.code == 2);
}

TEST_CASE("stats and verify-coverage") {
  TempDir tmp;
  golden_corpus(tmp / "corpus");
  Result s = run({"stats", (tmp / "corpus").string(), "--top", "3", "--out",
                  (tmp / "stats").string()});
  REQUIRE(s.code == 0);
  CHECK(s.summary()["distinct_paths"] == 6);
  CHECK(s.summary()["total_occurrences"] == 7);
  CHECK(read_file(tmp / "stats" / "top-paths-nested.csv") ==
        "rank,path,count,percent\n1,local.get,2,28.57\n2,i32.add,1,14.29\n"
        "3,i32.const,1,14.29\n");
  CHECK(std::filesystem::exists(tmp / "stats" / "rare-instructions.csv"));
  CHECK(std::filesystem::exists(tmp / "stats" / "curve-nested.csv"));

  REQUIRE(run({"build-pathset", (tmp / "corpus").string(), "--out", tmp.path().string()}).code == 0);
  std::string manifest = (tmp / "pathset-nested.manifest").string();
  Result self = run({"verify-coverage", (tmp / "corpus").string(), "--manifest", manifest,
                     "--out", (tmp / "cov").string()});
  REQUIRE(self.code == 0);
  CHECK(self.summary()["unseen"] == 0);
  CHECK(read_file(tmp / "cov" / "coverage-nested.csv") == "path,count,files,methods\n");

  Result simd = run({"verify-coverage", fixture_path("simd"), "--manifest", manifest,
                     "--out", (tmp / "cov").string()});
  REQUIRE(simd.code == 0);
  CHECK(read_file(tmp / "cov" / "coverage-nested.csv") ==
        "path,count,files,methods\ni32x4.add,1,1,1\nv128.load,2,1,1\nv128.store,1,1,1\n");
}

TEST_CASE("per-file timeout skips the file") {
  TempDir tmp;
  std::string big = "(module (func";
  for (int i = 0; i < 400000; ++i) big += " nop";
  big += "))";
  write_file(tmp / "corpus" / "big.wat", big);
  Result r = run({"build-pathset", (tmp / "corpus").string(), "--timeout", "0.000001",
                  "--out", tmp.path().string()});
  CHECK(r.code == 0);
  CHECK(r.summary()["failed_files"] == 1);
  CHECK(r.err.find("deadline") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"vectorize", "."}).code == 2);  // --manifest is required
}
