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

#include "mcpool/pauli.hpp"

#include <stdexcept>

#include "mcpool/error.hpp"

namespace mcpool {

namespace {

void require_same_width(const PauliString& a, const PauliString& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw std::invalid_argument(
        "Pauli strings act on different qubit counts: " +
        std::to_string(a.num_qubits()) + " vs " +
        std::to_string(b.num_qubits()));
  }
}

}  // namespace

PauliString::PauliString(int n_qubits, Mask x_mask, Mask z_mask)
    : n_(n_qubits), x_(x_mask), z_(z_mask) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("qubit count must be in [1, 64], got " +
                                std::to_string(n_qubits));
  }
  const Mask outside = ~low_bits(n_qubits);
  if ((x_mask & outside) || (z_mask & outside)) {
    throw std::invalid_argument("Pauli mask has bits above qubit count " +
                                std::to_string(n_qubits));
  }
}

PauliString PauliString::identity(int n_qubits) {
  return PauliString(n_qubits, 0, 0);
}

PauliString PauliString::parse(std::string_view text) {
  if (text.empty()) throw ParseError("empty Pauli string", 0, 0);
  if (text.size() > static_cast<std::size_t>(kMaxQubits)) {
    throw ParseError("Pauli string longer than 64 qubits", 0, kMaxQubits);
  }
  Mask x = 0, z = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const Mask bit = Mask{1} << i;
    switch (text[i]) {
      case 'I': break;
      case 'X': x |= bit; break;
      case 'Z': z |= bit; break;
      case 'Y': x |= bit; z |= bit; break;
      default:
        throw ParseError("invalid Pauli letter '" + std::string(1, text[i]) +
                             "' at position " + std::to_string(i),
                         0, i);
    }
  }
  return PauliString(static_cast<int>(text.size()), x, z);
}

char PauliString::letter(int qubit) const noexcept {
  const bool xb = (x_ >> qubit) & 1;
  const bool zb = (z_ >> qubit) & 1;
  return xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
}

std::string PauliString::str() const {
  std::string out(static_cast<std::size_t>(n_), 'I');
  for (int q = 0; q < n_; ++q) out[static_cast<std::size_t>(q)] = letter(q);
  return out;
}

bool commutes(const PauliString& a, const PauliString& b) {
  require_same_width(a, b);
  return parity(a.x_mask() & b.z_mask()) == parity(a.z_mask() & b.x_mask());
}

PauliString product_mod_phase(const PauliString& a, const PauliString& b) {
  require_same_width(a, b);
  return PauliString(a.num_qubits(), a.x_mask() ^ b.x_mask(),
                     a.z_mask() ^ b.z_mask());
}

BasisAction basis_action(const PauliString& p, Mask index) {
  if (index & ~low_bits(p.num_qubits())) {
    throw std::out_of_range("basis index " + std::to_string(index) +
                            " out of range for " +
                            std::to_string(p.num_qubits()) + " qubits");
  }
  const Mask target = index ^ p.x_mask();
  return {target, sign_into(p.z_mask(), target)};
}

}  // namespace mcpool
