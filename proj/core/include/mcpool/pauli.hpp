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
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace mcpool {

/// Bit j refers to qubit j. In text form qubit 0 is the leftmost character.
using Mask = std::uint64_t;

inline constexpr int kMaxQubits = 64;

/// All-ones mask over the low n bits.
constexpr Mask low_bits(int n) noexcept {
  return n >= 64 ? ~Mask{0} : ((Mask{1} << n) - 1);
}

constexpr bool parity(Mask m) noexcept { return (std::popcount(m) & 1) != 0; }

enum class YParity { even, odd };

/// Pauli string modulo phase, stored as a symplectic (x, z) mask pair.
///
/// Per qubit: (0,0)=I, (1,0)=X, (0,1)=Z, (1,1)=Y. The letter Y stands for the
/// real matrix iY = Z*X, so the matrix of every string is real: it equals
/// Z^z X^x qubit by qubit, which is antisymmetric exactly when the string
/// carries an odd number of Y letters.
class PauliString {
 public:
  PauliString() = default;
  /// Throws std::invalid_argument if n is outside [1, 64] or a mask has bits
  /// above n.
  PauliString(int n_qubits, Mask x_mask, Mask z_mask);

  static PauliString identity(int n_qubits);
  /// Parses a letter string over {I,X,Y,Z}; throws ParseError.
  static PauliString parse(std::string_view text);

  int num_qubits() const noexcept { return n_; }
  Mask x_mask() const noexcept { return x_; }
  Mask z_mask() const noexcept { return z_; }

  bool is_identity() const noexcept { return (x_ | z_) == 0; }
  /// Number of qubits flipped (X or Y letters).
  int flip_weight() const noexcept { return std::popcount(x_); }
  int y_count() const noexcept { return std::popcount(x_ & z_); }
  YParity y_parity() const noexcept {
    return (y_count() & 1) ? YParity::odd : YParity::even;
  }
  bool is_odd() const noexcept { return (y_count() & 1) != 0; }
  bool is_even() const noexcept { return !is_odd(); }

  char letter(int qubit) const noexcept;
  std::string str() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;
  friend auto operator<=>(const PauliString&, const PauliString&) = default;

 private:
  int n_ = 0;
  Mask x_ = 0;
  Mask z_ = 0;
};

/// Symplectic test; throws std::invalid_argument on qubit-count mismatch.
bool commutes(const PauliString& a, const PauliString& b);

/// Group product with the sign dropped: (a.x ^ b.x, a.z ^ b.z).
PauliString product_mod_phase(const PauliString& a, const PauliString& b);

struct BasisAction {
  Mask target = 0;
  int sign = 1;
};

/// Action of the real matrix of p on computational basis state |index>:
/// M(p)|index> = sign * |target>. Throws std::out_of_range when index does
/// not fit in n bits.
BasisAction basis_action(const PauliString& p, Mask index);

/// Sign of M(p) acting on a basis state whose image is `target`. This is the
/// branch-free kernel used by the simulator: sign = (-1)^popcount(target & z).
inline int sign_into(Mask z_mask, Mask target) noexcept {
  return parity(target & z_mask) ? -1 : 1;
}

struct PauliStringHash {
  std::size_t operator()(const PauliString& p) const noexcept {
    std::uint64_t h = p.x_mask() * 0x9E3779B97F4A7C15ULL;
    h ^= (p.z_mask() + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2));
    h ^= static_cast<std::uint64_t>(p.num_qubits()) << 57;
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

}  // namespace mcpool

template <>
struct std::hash<mcpool::PauliString> : mcpool::PauliStringHash {};
