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

#ifndef WASMWALKER_CLI_H_
#define WASMWALKER_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace wasmwalker::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFatal = 2;

// Entry point of the `wasmwalker` tool. `args` excludes the program name.
// Data goes to files, a JSON run summary to `out`, logs to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wasmwalker::cli

#endif  // WASMWALKER_CLI_H_
