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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mcpool/pauli.hpp"
#include "mcpool/symmetry.hpp"

namespace mcpool {

struct PauliTerm {
  double coefficient = 0.0;
  PauliString string;
};

/// Real Hamiltonian as a sum of even Pauli strings with real coefficients.
/// Strings are pairwise distinct; order is preserved from construction.
class PauliSumHamiltonian {
 public:
  PauliSumHamiltonian() = default;
  /// Validates and merges duplicate strings (first occurrence keeps its
  /// position). Throws std::invalid_argument on an odd string ("non-real
  /// Hamiltonian"), a non-finite coefficient or mixed widths.
  PauliSumHamiltonian(int n_qubits, std::vector<PauliTerm> terms);

  int num_qubits() const noexcept { return n_; }
  const std::vector<PauliTerm>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

 private:
  int n_ = 0;
  std::vector<PauliTerm> terms_;
};

/// Lines are `<coefficient> <string>` or `# comment`. Throws ParseError with a
/// 1-based line number.
PauliSumHamiltonian parse_hamiltonian(std::string_view text);
PauliSumHamiltonian load_hamiltonian(const std::string& path);
/// Coefficients are written with 17 significant digits.
std::string format_hamiltonian(const PauliSumHamiltonian& h);
void save_hamiltonian(const PauliSumHamiltonian& h, const std::string& path);

struct RandomHamiltonianOptions {
  /// Restricts support to strings whose flip mask the constraints allow.
  std::optional<ConstraintSet> constraints;
  /// Restricts support to strings flipping at most this many qubits.
  std::optional<int> max_flip_weight;
};

/// Number of even strings admitted by `options`; enumerates flip masks, so
/// it requires n <= 24.
std::uint64_t count_even_strings(int n_qubits,
                                 const RandomHamiltonianOptions& options = {});

/// n_terms distinct even strings drawn uniformly from the admitted set, with
/// i.i.d. standard normal coefficients. Throws std::invalid_argument when
/// fewer than n_terms strings are admitted.
PauliSumHamiltonian random_real_hamiltonian(
    int n_qubits, std::size_t n_terms, std::uint64_t seed,
    const RandomHamiltonianOptions& options = {});

/// Matrix-free application of H, grouping terms by flip mask. Compiling
/// precomputes one diagonal per flip mask when it fits the memory budget.
class HamiltonianOperator {
 public:
  explicit HamiltonianOperator(const PauliSumHamiltonian& h,
                               std::size_t memory_budget_bytes = std::size_t{1} << 29);

  int num_qubits() const noexcept { return n_; }
  std::size_t dimension() const noexcept { return std::size_t{1} << n_; }

  /// out = H in. Spans must have length 2^n and must not alias.
  void apply(std::span<const double> in, std::span<double> out) const;
  /// <v|H|v> in a single pass.
  double expectation(std::span<const double> v) const;

 private:
  struct Group {
    Mask x = 0;
    std::vector<PauliTerm> terms;
    // diag[k] = sum_t c_t * sign_t(k), sign of the term acting on |k>.
    std::vector<double> diag;
  };

  double coefficient_at(const Group& g, Mask k) const noexcept;

  int n_ = 0;
  std::vector<Group> groups_;
};

struct LanczosOptions {
  int max_qubits = 16;
  int max_iterations = 600;
  double residual_tolerance = 1e-10;
  std::uint64_t seed = 0x6d63706f6f6cULL;
  /// When set, the start vector is confined to the symmetry sector of
  /// `sector_reference` under these constraints. Every Hamiltonian term must
  /// satisfy the constraints so the sector is invariant.
  std::optional<ConstraintSet> sector_constraints;
  Mask sector_reference = 0;
};

struct GroundState {
  double energy = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

/// Lowest eigenvalue by Lanczos with full reorthogonalization. Throws
/// std::invalid_argument beyond max_qubits and ConvergenceError (with the
/// final residual) when the iteration limit is hit.
GroundState lanczos_ground_state(const PauliSumHamiltonian& h,
                                 const LanczosOptions& options = {});
double ground_energy(const PauliSumHamiltonian& h,
                     const LanczosOptions& options = {});

}  // namespace mcpool
