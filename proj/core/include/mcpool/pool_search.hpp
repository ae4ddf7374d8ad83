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
#include <vector>

#include "mcpool/group.hpp"
#include "mcpool/pool_io.hpp"
#include "mcpool/rng.hpp"
#include "mcpool/symmetry.hpp"

namespace mcpool {

struct SearchOptions {
  std::uint64_t attempt_budget = 100000;
  CheckOptions check;
};

/// Uniformly random odd string on n qubits.
PauliString random_odd_string(int n_qubits, Rng& rng);

/// All flip masks of weight four that qualify as starters under `spec`, in
/// increasing numeric order.
std::vector<Mask> starter_flips(const SymmetrySpec& spec);

/// Rejection search for a minimal complete pool of 2n-2 distinct random odd
/// strings that passes check_pool at `level`. Attempt k draws from the stream
/// Rng::derive(seed, k), so the result depends only on (n, seed, level).
/// Throws SearchExhausted when the budget runs out.
Pool random_mcp(int n_qubits, std::uint64_t seed, CheckLevel level,
                const SearchOptions& options = {});
Pool random_mcp(int n_qubits, std::uint64_t seed);

/// Rejection search for a symmetry-adapted pool of expected_pool_size(spec)
/// operators: `n_starters` distinct starters drawn uniformly from the starter
/// set, filled with distinct constraint-satisfying odd non-starters. Throws
/// std::invalid_argument for an infeasible starter count and SearchExhausted
/// when the budget runs out.
Pool symmetry_adapted_mcp(const SymmetrySpec& spec, int n_starters,
                          std::uint64_t seed, CheckLevel level,
                          const SearchOptions& options = {});
Pool symmetry_adapted_mcp(const SymmetrySpec& spec, int n_starters,
                          std::uint64_t seed);

}  // namespace mcpool
