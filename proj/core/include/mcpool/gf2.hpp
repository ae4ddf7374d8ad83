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
#include <cstdint>
#include <vector>

namespace mcpool {

/// 128-bit vector over GF(2); wide enough for a symplectic (x | z) pair of
/// 64-qubit masks.
struct Gf2Vec {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;

  bool is_zero() const noexcept { return (lo | hi) == 0; }
  /// Index of the lowest set bit; -1 for the zero vector.
  int pivot() const noexcept {
    if (lo) return std::countr_zero(lo);
    if (hi) return 64 + std::countr_zero(hi);
    return -1;
  }
  bool test(int bit) const noexcept {
    return bit < 64 ? ((lo >> bit) & 1) : ((hi >> (bit - 64)) & 1);
  }
  Gf2Vec& operator^=(const Gf2Vec& o) noexcept {
    lo ^= o.lo;
    hi ^= o.hi;
    return *this;
  }
  friend bool operator==(const Gf2Vec&, const Gf2Vec&) = default;
};

/// Reduced row echelon basis: every row has a distinct pivot and no other row
/// has that pivot bit set, so reduction is a single pass in any order.
class Gf2Basis {
 public:
  /// Reduces v against the basis; the result is zero iff v is in the span.
  Gf2Vec reduce(Gf2Vec v) const noexcept {
    for (const auto& row : rows_) {
      if (v.test(row.pivot())) v ^= row;
    }
    return v;
  }

  bool contains(const Gf2Vec& v) const noexcept { return reduce(v).is_zero(); }

  /// Adds v to the span. Returns false (and leaves the basis unchanged) if v
  /// was already in it.
  bool insert(const Gf2Vec& v) {
    Gf2Vec r = reduce(v);
    if (r.is_zero()) return false;
    const int p = r.pivot();
    for (auto& row : rows_) {
      if (row.test(p)) row ^= r;
    }
    rows_.push_back(r);
    return true;
  }

  int rank() const noexcept { return static_cast<int>(rows_.size()); }
  const std::vector<Gf2Vec>& rows() const noexcept { return rows_; }

 private:
  std::vector<Gf2Vec> rows_;
};

}  // namespace mcpool
