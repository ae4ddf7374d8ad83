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

#include <string>
#include <string_view>
#include <vector>

#include "mcpool/pauli.hpp"

namespace mcpool {

/// Spin-sector and point-group labels of the simulated spin orbitals.
///
/// Only one-dimensional (+1/-1) characters are representable: a character
/// column is the mask of orbitals whose character under one retained symmetry
/// operation is -1.
struct SymmetrySpec {
  std::string name;
  int n_qubits = 0;
  Mask alpha_mask = 0;
  Mask hf_occupation = 0;
  std::vector<Mask> character_columns;

  Mask beta_mask() const noexcept { return ~alpha_mask & low_bits(n_qubits); }
  int electron_count() const noexcept { return std::popcount(hf_occupation); }

  /// Throws std::invalid_argument when masks exceed n_qubits.
  void validate() const;
};

/// Parses the text format documented in docs/FORMATS.md. Throws ParseError.
SymmetrySpec parse_symmetry_spec(std::string_view text);
SymmetrySpec load_symmetry_spec(const std::string& path);
std::string format_symmetry_spec(const SymmetrySpec& spec);

/// Parity functionals on the flip mask. A string p satisfies the set when
/// popcount(p.x & m) is even for every functional m.
struct ConstraintSet {
  int n_qubits = 0;
  std::vector<Mask> functionals;
  /// Row-reduced, linearly independent spanning set of `functionals`.
  std::vector<Mask> basis;

  int rank() const noexcept { return static_cast<int>(basis.size()); }
  bool allows_flip(Mask flip) const noexcept;
};

/// Builds a set from arbitrary functional masks (zero masks are kept in
/// `functionals` but contribute nothing to the rank).
ConstraintSet make_constraint_set(int n_qubits, std::vector<Mask> functionals);

/// {alpha, beta} plus every character column.
ConstraintSet build_constraints(const SymmetrySpec& spec);

bool satisfies_constraints(const PauliString& p, const ConstraintSet& cs);

/// Exactly four flips, per-spin-sector particle balance relative to the
/// reference occupation, and an even number of flips in every character
/// column.
bool is_starter(const PauliString& p, const SymmetrySpec& spec);

/// Flip-mask part of is_starter; the z mask of a string never matters.
bool is_starter_flip(Mask flip, const SymmetrySpec& spec);

/// 2n - 2 - rank(build_constraints(spec)).
int expected_pool_size(const SymmetrySpec& spec);

/// True when basis states a and b lie in the same sector of the set (equal
/// parity under every functional).
bool same_sector(Mask a, Mask b, const ConstraintSet& cs) noexcept;

}  // namespace mcpool
