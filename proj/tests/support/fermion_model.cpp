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


#include "fermion_model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "mcpool/rng.hpp"

namespace mcpool::testing {

namespace {

// Jordan-Wigner ladder operators on a basis index; return 0 when the result
// vanishes, otherwise the sign and update k.
int annihilate(Mask& k, int j) {
  if (!((k >> j) & 1)) return 0;
  const int s = (std::popcount(k & ((Mask{1} << j) - 1)) & 1) ? -1 : 1;
  k ^= Mask{1} << j;
  return s;
}

int create(Mask& k, int j) {
  if ((k >> j) & 1) return 0;
  const int s = (std::popcount(k & ((Mask{1} << j) - 1)) & 1) ? -1 : 1;
  k ^= Mask{1} << j;
  return s;
}

}  // namespace

PauliSumHamiltonian molecular_hamiltonian(const SymmetrySpec& spec,
                                          std::uint64_t seed,
                                          const MolecularModelOptions& options) {
  const int n = spec.n_qubits;
  if (n % 2 != 0 || n > 10) throw std::invalid_argument("unsupported qubit count");
  for (int q = 0; q < n; ++q) {
    if (((spec.alpha_mask >> q) & 1) != static_cast<Mask>(q % 2 == 0)) {
      throw std::invalid_argument("spin orbitals must alternate alpha, beta");
    }
  }
  const int m = n / 2;
  const std::size_t dim = std::size_t{1} << n;
  Rng rng(seed);

  // Irrep label: bit c set when the orbital has character -1 in column c.
  std::vector<unsigned> irrep(static_cast<std::size_t>(m), 0);
  for (int i = 0; i < m; ++i) {
    for (std::size_t c = 0; c < spec.character_columns.size(); ++c) {
      if ((spec.character_columns[c] >> (2 * i)) & 1) irrep[static_cast<std::size_t>(i)] |= 1u << c;
    }
  }
  auto ir = [&](int i) { return irrep[static_cast<std::size_t>(i)]; };
  auto idx2 = [m](int p, int q) { return static_cast<std::size_t>(p * m + q); };
  auto idx4 = [m](int p, int q, int r, int s) {
    return static_cast<std::size_t>(((p * m + q) * m + r) * m + s);
  };

  std::vector<double> h1(static_cast<std::size_t>(m * m), 0.0);
  for (int p = 0; p < m; ++p) {
    for (int q = p; q < m; ++q) {
      if (ir(p) != ir(q)) continue;
      const double v = p == q ? -2.0 + options.orbital_gap * p + 0.1 * rng.normal()
                              : options.off_diagonal * rng.normal();
      h1[idx2(p, q)] = h1[idx2(q, p)] = v;
    }
  }

  // Chemist-notation (pq|rs) with the eight-fold permutational symmetry.
  std::vector<double> g(static_cast<std::size_t>(m * m * m * m), 0.0);
  for (int p = 0; p < m; ++p) {
    for (int q = 0; q < m; ++q) {
      for (int r = 0; r < m; ++r) {
        for (int s = 0; s < m; ++s) {
          if (ir(p) ^ ir(q) ^ ir(r) ^ ir(s)) continue;
          const int a = std::max(p, q), b = std::min(p, q);
          const int c = std::max(r, s), d = std::min(r, s);
          if (a * (a + 1) / 2 + b < c * (c + 1) / 2 + d) continue;
          double v;
          if (p == q && r == s) {
            v = 0.6 + 0.1 * rng.normal();
          } else if (p == r && q == s) {
            v = 0.15 + 0.03 * rng.normal();
          } else {
            v = 0.5 * options.off_diagonal * rng.normal();
          }
          const int perms[8][4] = {{p, q, r, s}, {q, p, r, s}, {p, q, s, r},
                                   {q, p, s, r}, {r, s, p, q}, {s, r, p, q},
                                   {r, s, q, p}, {s, r, q, p}};
          for (const auto& t : perms) g[idx4(t[0], t[1], t[2], t[3])] = v;
        }
      }
    }
  }

  std::vector<double> mat(dim * dim, 0.0);
  auto at = [&](Mask row, Mask col) -> double& { return mat[row * dim + col]; };
  for (Mask k = 0; k < dim; ++k) {
    for (int p = 0; p < m; ++p) {
      for (int q = 0; q < m; ++q) {
        const double v = h1[idx2(p, q)];
        if (v == 0.0) continue;
        for (int sigma = 0; sigma < 2; ++sigma) {
          Mask t = k;
          int sign = annihilate(t, 2 * q + sigma);
          if (sign) sign *= create(t, 2 * p + sigma);
          if (sign) at(t, k) += sign * v;
        }
      }
    }
    for (int p = 0; p < m; ++p) {
      for (int q = 0; q < m; ++q) {
        for (int r = 0; r < m; ++r) {
          for (int s = 0; s < m; ++s) {
            const double v = g[idx4(p, q, r, s)];
            if (v == 0.0) continue;
            for (int a = 0; a < 2; ++a) {
              for (int b = 0; b < 2; ++b) {
                Mask t = k;
                int sign = annihilate(t, 2 * q + a);
                if (sign) sign *= annihilate(t, 2 * s + b);
                if (sign) sign *= create(t, 2 * r + b);
                if (sign) sign *= create(t, 2 * p + a);
                if (sign) at(t, k) += 0.5 * sign * v;
              }
            }
          }
        }
      }
    }
  }

  if (options.brillouin) {
    const Mask hf = spec.hf_occupation;
    for (Mask j = 0; j < dim; ++j) {
      if (std::popcount(j ^ hf) == 2) at(hf, j) = at(j, hf) = 0.0;
    }
  }

  std::set<Mask> flips;
  for (Mask i = 0; i < dim; ++i) {
    for (Mask j = 0; j < dim; ++j) {
      if (std::abs(at(i, j)) > 1e-15) flips.insert(i ^ j);
    }
  }
  // c_P = 2^-n tr(P^T M); only symmetric (even) strings can contribute.
  std::vector<PauliTerm> terms;
  for (Mask x : flips) {
    for (Mask z = 0; z < dim; ++z) {
      if (parity(x & z)) continue;
      double c = 0.0;
      for (Mask k = 0; k < dim; ++k) {
        const Mask target = k ^ x;
        c += (parity(target & z) ? -1.0 : 1.0) * at(target, k);
      }
      c /= static_cast<double>(dim);
      if (std::abs(c) > 1e-14) terms.push_back({c, PauliString(n, x, z)});
    }
  }
  return PauliSumHamiltonian(n, std::move(terms));
}

}  // namespace mcpool::testing
