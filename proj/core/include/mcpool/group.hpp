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

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mcpool/error.hpp"
#include "mcpool/gf2.hpp"
#include "mcpool/pauli.hpp"
#include "mcpool/symmetry.hpp"

namespace mcpool {

inline constexpr int kDefaultEnumerationCap = 26;

/// Product group (modulo sign) generated by a set of Pauli strings. The group
/// is an elementary abelian 2-group, so it is fully described by a GF(2) basis
/// of the symplectic vectors (x | z) of its generators.
class GeneratedGroup {
 public:
  /// Throws std::invalid_argument on an empty list or mixed qubit counts.
  static GeneratedGroup build(std::span<const PauliString> generators);

  int num_qubits() const noexcept { return n_; }
  int rank() const noexcept { return basis_.rank(); }
  const std::vector<PauliString>& generators() const noexcept {
    return generators_;
  }
  /// Reduced echelon basis, one independent Pauli string per rank.
  std::vector<PauliString> basis() const;

  bool contains(const PauliString& p) const;

  /// Calls visit(element) for all 2^rank elements, identity first, each
  /// consecutive pair differing by one basis vector (Gray code order).
  /// Throws EnumerationInfeasible when rank exceeds `cap`.
  template <class Visitor>
  void for_each_element(Visitor&& visit,
                        int cap = kDefaultEnumerationCap) const {
    const int r = rank();
    if (r > cap) {
      throw EnumerationInfeasible(
          "enumeration infeasible: group rank " + std::to_string(r) +
          " exceeds cap " + std::to_string(cap));
    }
    const auto& rows = basis_.rows();
    Mask x = 0, z = 0;
    const std::uint64_t count = std::uint64_t{1} << r;
    visit(PauliString(n_, 0, 0));
    for (std::uint64_t i = 1; i < count; ++i) {
      const auto& row = rows[static_cast<std::size_t>(std::countr_zero(i))];
      x ^= row.lo;
      z ^= row.hi;
      visit(PauliString(n_, x, z));
    }
  }

 private:
  int n_ = 0;
  std::vector<PauliString> generators_;
  Gf2Basis basis_;
};

/// Symplectic vector of p: x bits in the low word, z bits in the high word.
inline Gf2Vec symplectic(const PauliString& p) noexcept {
  return Gf2Vec{p.x_mask(), p.z_mask()};
}

/// True iff, for every nonzero flip mask f (restricted to the flips allowed by
/// `allowed_flips` when given), the group has an odd element with x = f.
bool flip_coverage(const GeneratedGroup& group,
                   const std::optional<ConstraintSet>& allowed_flips = {},
                   int cap = kDefaultEnumerationCap);

/// Number of odd elements of the group, optionally restricted to elements
/// whose flip mask the constraint set allows.
std::uint64_t count_odd_elements(
    const GeneratedGroup& group,
    const std::optional<ConstraintSet>& constraints = {},
    int cap = kDefaultEnumerationCap);

/// Connected-component label per pool member in the anticommutation graph;
/// labels are the smallest member index of each component.
std::vector<std::size_t> anticommutation_components(
    std::span<const PauliString> pool);

/// True iff the pool cannot be split into two mutually commuting sets, i.e.
/// its anticommutation graph is connected.
bool inseparability(std::span<const PauliString> pool);

struct LieClosure {
  /// Generators first (deduplicated, in input order), then discovered
  /// elements in discovery order.
  std::vector<PauliString> elements;
  bool capped = false;

  std::size_t size() const noexcept { return elements.size(); }
};

/// Closure of an odd pool under commutators, computed as products of
/// anticommuting pairs. Stops once the element count exceeds `cap` and sets
/// `capped`. Throws std::invalid_argument on an even member.
LieClosure lie_closure(std::span<const PauliString> pool, std::size_t cap);
/// Uses the default cap odd_count_target(n) + 1.
LieClosure lie_closure(std::span<const PauliString> pool);

/// 2^(n-1) (2^(n-1) + 1) / 2, the number of odd strings in the product group
/// of a minimal complete pool. Throws std::invalid_argument for n < 2 and
/// std::overflow_error for n > 33.
std::uint64_t odd_count_target(int n);

enum class CheckLevel { group, inseparable, algebra };

std::string to_string(CheckLevel level);
/// Accepts "group", "inseparable", "algebra"; throws std::invalid_argument.
CheckLevel parse_check_level(std::string_view text);
/// algebra for n <= 10, inseparable above.
CheckLevel default_check_level(int n_qubits) noexcept;

struct CheckOptions {
  int enumeration_cap = kDefaultEnumerationCap;
  /// Closure cap; defaults to target + 1.
  std::optional<std::size_t> closure_cap;
};

/// Outcome of the three-step completeness recipe. Every field reflects a check
/// that was actually run; optional fields are empty when the requested level
/// did not include that check.
struct CompletenessReport {
  CheckLevel level = CheckLevel::group;
  int n_qubits = 0;
  std::size_t pool_size = 0;
  std::size_t expected_size = 0;
  bool size_ok = false;

  std::vector<std::size_t> even_members;
  std::vector<std::size_t> duplicate_members;

  bool symmetry_restricted = false;
  int constraint_rank = 0;
  std::vector<std::size_t> constraint_violations;
  std::vector<bool> starter_flags;
  std::size_t starter_count = 0;

  int rank = 0;
  int expected_rank = 0;
  bool flip_coverage = false;

  std::optional<bool> inseparable;

  std::optional<std::size_t> closure_size;
  std::optional<std::uint64_t> closure_target;
  bool closure_capped = false;

  bool complete = false;

  bool all_odd() const noexcept { return even_members.empty(); }
  bool rank_ok() const noexcept { return rank == expected_rank; }

  /// Human-readable multi-line summary.
  std::string to_text() const;
  /// One `key=value` per line, stable key order.
  std::string to_key_values() const;
};

/// Runs the completeness recipe at `level`. When `symmetry` is given the
/// targets are those of a symmetry-adapted pool. Malformed input (empty pool,
/// mixed widths) throws; a well-formed pool that fails a check yields a
/// report with complete == false.
CompletenessReport check_pool(std::span<const PauliString> pool,
                              CheckLevel level,
                              const std::optional<SymmetrySpec>& symmetry = {},
                              const CheckOptions& options = {});

}  // namespace mcpool
