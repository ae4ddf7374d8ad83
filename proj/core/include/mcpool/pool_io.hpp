// Copyright 2026 The mcpool Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mcpool/group.hpp"
#include "mcpool/pauli.hpp"
#include "mcpool/symmetry.hpp"

namespace mcpool {

/// An operator pool plus the provenance of how it was produced.
struct Pool {
  int n_qubits = 0;
  std::vector<PauliString> operators;

  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> attempts;
  std::optional<CheckLevel> level;
  /// Present for symmetry-adapted pools.
  std::optional<SymmetrySpec> spec;
  /// Per-operator starter flag; empty when no spec is attached.
  std::vector<bool> starter_flags;
  std::size_t starter_count = 0;

  std::size_t size() const noexcept { return operators.size(); }
};

/// Parses the pool text format: one letter string per line, `#` comments,
/// blank lines ignored. Header comments of the form `# key: value` (seed,
/// attempts, level) are read back as metadata, and a trailing `# starter`
/// marks a starter line. Throws ParseError with a 1-based line number.
Pool parse_pool(std::string_view text);
Pool load_pool(const std::string& path);

/// Inverse of parse_pool; metadata are written as header comments.
std::string format_pool(const Pool& pool);
void save_pool(const Pool& pool, const std::string& path);

/// Recomputes starter flags and count from `spec`.
void annotate_starters(Pool& pool, const SymmetrySpec& spec);

}  // namespace mcpool
