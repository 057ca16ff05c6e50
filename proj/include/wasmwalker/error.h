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

#ifndef WASMWALKER_ERROR_H_
#define WASMWALKER_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wasmwalker {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by parse_module. `position` is a byte offset into the source text.
class ParseError : public Error {
 public:
  enum class Kind { kUnbalancedParens, kMalformedToken, kTimeout };

  ParseError(Kind kind, std::size_t position, const std::string& detail);

  Kind kind() const { return kind_; }
  std::size_t position() const { return position_; }

 private:
  Kind kind_;
  std::size_t position_;
};

// A frozen PathSet was required.
class UnfrozenSetError : public Error {
 public:
  UnfrozenSetError() : Error("path set is not frozen") {}
};

// Manifest text violated the format. `line` is 1-based.
class ManifestFormatError : public Error {
 public:
  ManifestFormatError(std::size_t line, const std::string& detail)
      : Error("manifest line " + std::to_string(line) + ": " + detail),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A vector, sequence or set was built for a different PathMode than required.
class ModeMismatchError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace wasmwalker

#endif  // WASMWALKER_ERROR_H_
