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

#include "mcpool/statevector.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mcpool {

namespace {

void require_width(int n, const PauliString& p) {
  if (p.num_qubits() != n) {
    throw std::invalid_argument("operator '" + p.str() + "' has " +
                                std::to_string(p.num_qubits()) +
                                " qubits, state has " + std::to_string(n));
  }
}

void require_odd(const PauliString& p) {
  if (!p.is_odd()) {
    throw std::invalid_argument("operator '" + p.str() +
                                "' is even; rotations need an odd string");
  }
}

inline double sign_of(Mask k, Mask z) noexcept {
  return parity(k & z) ? -1.0 : 1.0;
}

// 2 <a, P b> for odd P.
double twice_inner(std::span<const double> a, const PauliString& p,
                   std::span<const double> b) {
  const Mask x = p.x_mask();
  const Mask z = p.z_mask();
  double s = 0.0;
  for (Mask k = 0; k < a.size(); ++k) {
    if (a[k] != 0.0) s += a[k] * sign_of(k, z) * b[k ^ x];
  }
  return 2.0 * s;
}

// exp(theta A) in place, pairing k with k ^ x. x is nonzero for odd strings.
void rotate(std::span<double> v, Mask x, Mask z, double c, double s) {
  const Mask low = x & (~x + 1);
  for (Mask k = 0; k < v.size(); ++k) {
    if (k & low) continue;
    const Mask kk = k ^ x;
    const double a = v[k];
    const double b = v[kk];
    v[k] = c * a + s * sign_of(k, z) * b;
    v[kk] = c * b + s * sign_of(kk, z) * a;
  }
}

void check_state(const HamiltonianOperator& h, const RealState& s) {
  if (h.num_qubits() != s.num_qubits()) {
    throw std::invalid_argument("state and Hamiltonian widths differ");
  }
}

}  // namespace

RealState::RealState(int n_qubits) : n_(n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxStateQubits) {
    throw std::invalid_argument("state width must be in [1, 30] qubits");
  }
  amp_.assign(std::size_t{1} << n_qubits, 0.0);
}

RealState::RealState(int n_qubits, std::vector<double> amplitudes)
    : RealState(n_qubits) {
  if (amplitudes.size() != amp_.size()) {
    throw std::invalid_argument("amplitude count must be 2^n");
  }
  amp_ = std::move(amplitudes);
}

double RealState::norm() const noexcept {
  double s = 0.0;
  for (double a : amp_) s += a * a;
  return std::sqrt(s);
}

double RealState::dot(const RealState& other) const {
  if (other.n_ != n_) throw std::invalid_argument("state widths differ");
  double s = 0.0;
  for (std::size_t k = 0; k < amp_.size(); ++k) s += amp_[k] * other.amp_[k];
  return s;
}

RealState basis_state(int n_qubits, Mask occupation) {
  RealState s(n_qubits);
  if (occupation & ~low_bits(n_qubits)) {
    throw std::invalid_argument("occupation mask exceeds qubit count");
  }
  s[occupation] = 1.0;
  return s;
}

RealState apply_pauli(const PauliString& p, const RealState& s) {
  require_width(s.num_qubits(), p);
  RealState out(s.num_qubits());
  const Mask x = p.x_mask();
  const Mask z = p.z_mask();
  for (Mask k = 0; k < s.dimension(); ++k) {
    const Mask target = k ^ x;
    out[target] += sign_of(target, z) * s[k];
  }
  return out;
}

RealState apply_rotation(const PauliString& p, double theta, const RealState& s) {
  RealState out = s;
  rotate_in_place(p, theta, out);
  return out;
}

void rotate_in_place(const PauliString& p, double theta, RealState& s) {
  require_width(s.num_qubits(), p);
  require_odd(p);
  rotate(s.amplitudes(), p.x_mask(), p.z_mask(), std::cos(theta), std::sin(theta));
}

RealState apply_h(const HamiltonianOperator& h, const RealState& s) {
  check_state(h, s);
  RealState out(s.num_qubits());
  h.apply(s.amplitudes(), out.amplitudes());
  return out;
}

RealState apply_h(const PauliSumHamiltonian& h, const RealState& s) {
  return apply_h(HamiltonianOperator(h), s);
}

double expectation(const HamiltonianOperator& h, const RealState& s) {
  check_state(h, s);
  return h.expectation(s.amplitudes());
}

double expectation(const PauliSumHamiltonian& h, const RealState& s) {
  return expectation(HamiltonianOperator(h), s);
}

double pauli_inner(const RealState& a, const PauliString& p, const RealState& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw std::invalid_argument("state widths differ");
  }
  require_width(a.num_qubits(), p);
  const Mask x = p.x_mask();
  const Mask z = p.z_mask();
  double s = 0.0;
  for (Mask k = 0; k < a.dimension(); ++k) s += a[k] * sign_of(k, z) * b[k ^ x];
  return s;
}

std::vector<double> pool_gradients(const HamiltonianOperator& h,
                                   const RealState& s,
                                   std::span<const PauliString> pool) {
  check_state(h, s);
  for (const auto& p : pool) {
    require_width(s.num_qubits(), p);
    require_odd(p);
  }
  const RealState hs = apply_h(h, s);
  std::vector<double> g;
  g.reserve(pool.size());
  for (const auto& p : pool) {
    g.push_back(twice_inner(hs.amplitudes(), p, s.amplitudes()));
  }
  return g;
}

std::vector<double> pool_gradients(const PauliSumHamiltonian& h,
                                   const RealState& s,
                                   std::span<const PauliString> pool) {
  return pool_gradients(HamiltonianOperator(h), s, pool);
}

void Ansatz::validate() const {
  if (operators.size() != parameters.size()) {
    throw std::invalid_argument("ansatz has " + std::to_string(operators.size()) +
                                " operators but " +
                                std::to_string(parameters.size()) + " parameters");
  }
  if (reference & ~low_bits(n_qubits)) {
    throw std::invalid_argument("reference occupation exceeds qubit count");
  }
  for (const auto& p : operators) {
    require_width(n_qubits, p);
    require_odd(p);
  }
}

RealState Ansatz::prepare() const { return prepare(parameters); }

RealState Ansatz::prepare(std::span<const double> theta) const {
  if (theta.size() != operators.size()) {
    throw std::invalid_argument("parameter count does not match ansatz length");
  }
  RealState s = basis_state(n_qubits, reference);
  for (std::size_t i = 0; i < operators.size(); ++i) {
    rotate_in_place(operators[i], theta[i], s);
  }
  return s;
}

AnsatzEvaluator::AnsatzEvaluator(const PauliSumHamiltonian& h,
                                 std::size_t state_budget_bytes)
    : op_(h), budget_(state_budget_bytes) {}

EnergyGradient AnsatzEvaluator::evaluate(const Ansatz& ansatz) const {
  return evaluate(ansatz, ansatz.parameters);
}

double AnsatzEvaluator::energy(const Ansatz& ansatz,
                               std::span<const double> theta) const {
  const RealState psi = ansatz.prepare(theta);
  check_state(op_, psi);
  return op_.expectation(psi.amplitudes());
}

EnergyGradient AnsatzEvaluator::evaluate(const Ansatz& ansatz,
                                         std::span<const double> theta) const {
  if (theta.size() != ansatz.operators.size()) {
    throw std::invalid_argument("parameter count does not match ansatz length");
  }
  if (ansatz.n_qubits != op_.num_qubits()) {
    throw std::invalid_argument("ansatz and Hamiltonian widths differ");
  }
  const std::size_t layers = ansatz.operators.size();
  const std::size_t dim = op_.dimension();
  const bool store = layers * dim * sizeof(double) <= budget_;

  std::vector<RealState> cache;
  RealState psi = basis_state(ansatz.n_qubits, ansatz.reference);
  if (store) cache.reserve(layers);
  for (std::size_t i = 0; i < layers; ++i) {
    rotate_in_place(ansatz.operators[i], theta[i], psi);
    if (store) cache.push_back(psi);
  }

  EnergyGradient out;
  RealState lambda = apply_h(op_, psi);
  out.energy = lambda.dot(psi);
  out.gradient.assign(layers, 0.0);
  for (std::size_t i = layers; i-- > 0;) {
    const PauliString& a = ansatz.operators[i];
    const RealState& psi_i = store ? cache[i] : psi;
    out.gradient[i] = twice_inner(lambda.amplitudes(), a, psi_i.amplitudes());
    rotate_in_place(a, -theta[i], lambda);
    if (!store) rotate_in_place(a, -theta[i], psi);
  }
  return out;
}

EnergyGradient ansatz_energy_gradient(const Ansatz& ansatz,
                                      const PauliSumHamiltonian& h) {
  ansatz.validate();
  return AnsatzEvaluator(h).evaluate(ansatz);
}

}  // namespace mcpool
