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

#include "mcpool/pool_search.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "mcpool/error.hpp"

namespace mcpool {

namespace {

using StringSet = std::unordered_set<PauliString, PauliStringHash>;

// Uniform z with odd overlap on a nonzero flip mask: toggling the lowest flip
// bit pairs even and odd choices one to one.
Mask odd_z_for(Mask flip, int n, Rng& rng) {
  Mask z = rng.uniform_bits(n);
  if (!parity(z & flip)) z ^= flip & (~flip + 1);
  return z;
}

// Stops early on the cheap rank test before running the full recipe.
bool accept(const std::vector<PauliString>& ops, CheckLevel level,
            const std::optional<SymmetrySpec>& spec, int expected_rank,
            const CheckOptions& check) {
  if (GeneratedGroup::build(ops).rank() != expected_rank) return false;
  return check_pool(ops, level, spec, check).complete;
}

}  // namespace

PauliString random_odd_string(int n_qubits, Rng& rng) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("qubit count must be in [1, 64]");
  }
  for (;;) {
    const Mask x = rng.uniform_bits(n_qubits);
    const Mask z = rng.uniform_bits(n_qubits);
    if (parity(x & z)) return PauliString(n_qubits, x, z);
  }
}

std::vector<Mask> starter_flips(const SymmetrySpec& spec) {
  std::vector<Mask> out;
  const int n = spec.n_qubits;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      for (int c = b + 1; c < n; ++c) {
        for (int d = c + 1; d < n; ++d) {
          const Mask f = (Mask{1} << a) | (Mask{1} << b) | (Mask{1} << c) |
                         (Mask{1} << d);
          if (is_starter_flip(f, spec)) out.push_back(f);
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Pool random_mcp(int n_qubits, std::uint64_t seed, CheckLevel level,
                const SearchOptions& options) {
  if (n_qubits < 2 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("random_mcp requires 2 <= n <= 64");
  }
  const std::size_t size = static_cast<std::size_t>(2 * n_qubits - 2);
  for (std::uint64_t attempt = 0; attempt < options.attempt_budget; ++attempt) {
    Rng rng(Rng::derive(seed, attempt));
    std::vector<PauliString> ops;
    StringSet seen;
    while (ops.size() < size) {
      const PauliString p = random_odd_string(n_qubits, rng);
      if (seen.insert(p).second) ops.push_back(p);
    }
    if (!accept(ops, level, std::nullopt, static_cast<int>(size), options.check)) {
      continue;
    }
    Pool pool;
    pool.n_qubits = n_qubits;
    pool.operators = std::move(ops);
    pool.seed = seed;
    pool.attempts = attempt + 1;
    pool.level = level;
    return pool;
  }
  throw SearchExhausted("random_mcp: no complete pool on " +
                        std::to_string(n_qubits) + " qubits within " +
                        std::to_string(options.attempt_budget) +
                        " attempts (level " + to_string(level) + ")");
}

Pool random_mcp(int n_qubits, std::uint64_t seed) {
  return random_mcp(n_qubits, seed, default_check_level(n_qubits));
}

Pool symmetry_adapted_mcp(const SymmetrySpec& spec, int n_starters,
                          std::uint64_t seed, CheckLevel level,
                          const SearchOptions& options) {
  spec.validate();
  const int n = spec.n_qubits;
  const ConstraintSet cs = build_constraints(spec);
  const int size = 2 * n - 2 - cs.rank();
  if (size < 1) {
    throw std::invalid_argument("symmetry spec leaves no room for a pool");
  }
  if (n_starters < 0 || n_starters > size - 1) {
    throw std::invalid_argument(
        "infeasible starter count " + std::to_string(n_starters) +
        ": a pool of " + std::to_string(size) +
        " operators holds at most " + std::to_string(size - 1) + " starters");
  }
  const std::vector<Mask> flips = starter_flips(spec);
  // Every starter flip carries 2^(n-1) odd strings.
  const double starter_strings =
      static_cast<double>(flips.size()) * static_cast<double>(Mask{1} << (n - 1));
  if (static_cast<double>(n_starters) > starter_strings) {
    throw std::invalid_argument("infeasible starter count " +
                                std::to_string(n_starters) + ": only " +
                                std::to_string(flips.size()) +
                                " starter flip patterns exist");
  }

  for (std::uint64_t attempt = 0; attempt < options.attempt_budget; ++attempt) {
    Rng rng(Rng::derive(seed, attempt));
    std::vector<PauliString> ops;
    StringSet seen;
    while (static_cast<int>(ops.size()) < n_starters) {
      const Mask f = flips[rng.uniform_below(flips.size())];
      const PauliString p(n, f, odd_z_for(f, n, rng));
      if (seen.insert(p).second) ops.push_back(p);
    }
    std::uint64_t draws = 0;
    while (static_cast<int>(ops.size()) < size) {
      if (++draws > 100000000) {
        throw SearchExhausted("symmetry_adapted_mcp: cannot draw fill operators");
      }
      const Mask x = rng.uniform_bits(n);
      if (x == 0 || !cs.allows_flip(x) || is_starter_flip(x, spec)) continue;
      const PauliString p(n, x, odd_z_for(x, n, rng));
      if (seen.insert(p).second) ops.push_back(p);
    }
    if (!accept(ops, level, spec, size, options.check)) continue;

    Pool pool;
    pool.n_qubits = n;
    pool.operators = std::move(ops);
    pool.seed = seed;
    pool.attempts = attempt + 1;
    pool.level = level;
    pool.spec = spec;
    annotate_starters(pool, spec);
    return pool;
  }
  throw SearchExhausted("symmetry_adapted_mcp: no complete pool with " +
                        std::to_string(n_starters) + " starters within " +
                        std::to_string(options.attempt_budget) +
                        " attempts (level " + to_string(level) + ")");
}

Pool symmetry_adapted_mcp(const SymmetrySpec& spec, int n_starters,
                          std::uint64_t seed) {
  return symmetry_adapted_mcp(spec, n_starters, seed,
                              default_check_level(spec.n_qubits));
}

}  // namespace mcpool
