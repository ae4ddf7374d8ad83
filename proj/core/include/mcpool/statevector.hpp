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

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "mcpool/hamiltonian.hpp"
#include "mcpool/pauli.hpp"

namespace mcpool {

inline constexpr int kMaxStateQubits = 30;

/// Real state vector of 2^n amplitudes; index bit q is the occupation of
/// qubit q.
class RealState {
 public:
  RealState() = default;
  /// All-zero amplitudes; throws std::invalid_argument outside [1, 30].
  explicit RealState(int n_qubits);
  RealState(int n_qubits, std::vector<double> amplitudes);

  int num_qubits() const noexcept { return n_; }
  std::size_t dimension() const noexcept { return amp_.size(); }
  std::span<double> amplitudes() noexcept { return amp_; }
  std::span<const double> amplitudes() const noexcept { return amp_; }
  double operator[](std::size_t k) const noexcept { return amp_[k]; }
  double& operator[](std::size_t k) noexcept { return amp_[k]; }

  double norm() const noexcept;
  double dot(const RealState& other) const;

 private:
  int n_ = 0;
  std::vector<double> amp_;
};

/// Unit vector |occupation>.
RealState basis_state(int n_qubits, Mask occupation);

/// P s for the real matrix of p (Y read as iY).
RealState apply_pauli(const PauliString& p, const RealState& s);

/// exp(theta A) s = cos(theta) s + sin(theta) A s. Throws
/// std::invalid_argument for an even p, where the closed form does not hold.
RealState apply_rotation(const PauliString& p, double theta, const RealState& s);
/// In-place variant of apply_rotation.
void rotate_in_place(const PauliString& p, double theta, RealState& s);

RealState apply_h(const HamiltonianOperator& h, const RealState& s);
RealState apply_h(const PauliSumHamiltonian& h, const RealState& s);

double expectation(const HamiltonianOperator& h, const RealState& s);
double expectation(const PauliSumHamiltonian& h, const RealState& s);

/// <a| P |b>.
double pauli_inner(const RealState& a, const PauliString& p, const RealState& b);

/// g_i = <s|[H, A_i]|s> = 2 <H s, A_i s>, with H s computed once. Throws
/// std::invalid_argument on an even pool member.
std::vector<double> pool_gradients(const HamiltonianOperator& h,
                                   const RealState& s,
                                   std::span<const PauliString> pool);
std::vector<double> pool_gradients(const PauliSumHamiltonian& h,
                                   const RealState& s,
                                   std::span<const PauliString> pool);

/// Product of rotations applied to a reference basis state; operators[0] acts
/// first.
struct Ansatz {
  int n_qubits = 0;
  Mask reference = 0;
  std::vector<PauliString> operators;
  std::vector<double> parameters;

  std::size_t size() const noexcept { return operators.size(); }
  /// Throws std::invalid_argument on mismatched lengths or even generators.
  void validate() const;
  RealState prepare() const;
  RealState prepare(std::span<const double> theta) const;
};

struct EnergyGradient {
  double energy = 0.0;
  std::vector<double> gradient;
};

/// Energy and full parameter gradient by one forward pass and one adjoint
/// pass. Layer states are cached when L * 2^n * 8 bytes fits the budget;
/// otherwise the backward pass undoes each rotation on the state.
class AnsatzEvaluator {
 public:
  explicit AnsatzEvaluator(const PauliSumHamiltonian& h,
                           std::size_t state_budget_bytes = std::size_t{2} << 30);

  const HamiltonianOperator& hamiltonian() const noexcept { return op_; }

  EnergyGradient evaluate(const Ansatz& ansatz) const;
  EnergyGradient evaluate(const Ansatz& ansatz,
                          std::span<const double> theta) const;
  double energy(const Ansatz& ansatz, std::span<const double> theta) const;

 private:
  HamiltonianOperator op_;
  std::size_t budget_;
};

EnergyGradient ansatz_energy_gradient(const Ansatz& ansatz,
                                      const PauliSumHamiltonian& h);

}  // namespace mcpool
