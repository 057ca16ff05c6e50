# Copyright 2026 The WasmWalker Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Path-based code representations for WebAssembly text."""

from ._core import (
    IoError,
    ManifestFormatError,
    ModeMismatchError,
    ParseError,
    PathMode,
    PathSet,
    UnfrozenSetError,
    Variant,
    WasmwalkerError,
    build_path_set,
    collapse_repeats,
    coverage_verify,
    load_manifest,
    load_manifest_text,
    parse_module,
    path_sequence,
    preprocess_method_name,
    refine,
    run_cli,
    top_paths,
    vectorize,
)

__all__ = [name for name in dir() if not name.startswith("_")]
