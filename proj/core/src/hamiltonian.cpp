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

#include "mcpool/hamiltonian.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "mcpool/error.hpp"
#include "mcpool/rng.hpp"
#include "text_util.hpp"

namespace mcpool {

PauliSumHamiltonian::PauliSumHamiltonian(int n_qubits,
                                         std::vector<PauliTerm> terms)
    : n_(n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("Hamiltonian qubit count must be in [1, 64]");
  }
  std::unordered_map<PauliString, std::size_t, PauliStringHash> index;
  for (auto& t : terms) {
    if (t.string.num_qubits() != n_qubits) {
      throw std::invalid_argument("term '" + t.string.str() + "' has " +
                                  std::to_string(t.string.num_qubits()) +
                                  " qubits, expected " + std::to_string(n_qubits));
    }
    if (t.string.is_odd()) {
      throw std::invalid_argument("non-real Hamiltonian: term '" +
                                  t.string.str() +
                                  "' has an odd number of Y letters");
    }
    if (!std::isfinite(t.coefficient)) {
      throw std::invalid_argument("non-finite coefficient for term '" +
                                  t.string.str() + "'");
    }
    const auto [it, inserted] = index.emplace(t.string, terms_.size());
    if (inserted) {
      terms_.push_back(t);
    } else {
      terms_[it->second].coefficient += t.coefficient;
    }
  }
}

PauliSumHamiltonian parse_hamiltonian(std::string_view text) {
  std::vector<PauliTerm> terms;
  int n = 0;
  std::size_t line_no = 0;
  for (std::string_view raw : detail::lines(text)) {
    ++line_no;
    const auto body = detail::trim(detail::strip_comment(raw));
    if (body.empty()) continue;
    const auto tokens = detail::split_ws(body);
    if (tokens.size() != 2) {
      throw ParseError("expected '<coefficient> <Pauli string>'", line_no, 0);
    }
    std::string_view num = tokens[0];
    if (!num.empty() && num.front() == '+') num.remove_prefix(1);
    double c = 0.0;
    const auto res = std::from_chars(num.data(), num.data() + num.size(), c);
    if (res.ec != std::errc{} || res.ptr != num.data() + num.size() ||
        !std::isfinite(c)) {
      throw ParseError("invalid coefficient '" + std::string(tokens[0]) + "'",
                       line_no, static_cast<std::size_t>(tokens[0].data() - raw.data()));
    }
    const std::size_t col = static_cast<std::size_t>(tokens[1].data() - raw.data());
    PauliString p;
    try {
      p = PauliString::parse(tokens[1]);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_no, col + e.column());
    }
    if (n == 0) {
      n = p.num_qubits();
    } else if (p.num_qubits() != n) {
      throw ParseError("string has " + std::to_string(p.num_qubits()) +
                           " qubits, earlier terms have " + std::to_string(n),
                       line_no, col);
    }
    if (p.is_odd()) {
      throw ParseError("non-real Hamiltonian: term '" + p.str() +
                           "' has an odd number of Y letters",
                       line_no, col);
    }
    terms.push_back({c, p});
  }
  if (terms.empty()) throw ParseError("Hamiltonian has no terms", 0, 0);
  return PauliSumHamiltonian(n, std::move(terms));
}

PauliSumHamiltonian load_hamiltonian(const std::string& path) {
  return parse_hamiltonian(detail::read_file(path));
}

std::string format_hamiltonian(const PauliSumHamiltonian& h) {
  std::string out;
  char buf[64];
  for (const auto& t : h.terms()) {
    std::snprintf(buf, sizeof buf, "%.17g", t.coefficient);
    out += buf;
    out += ' ';
    out += t.string.str();
    out += '\n';
  }
  return out;
}

void save_hamiltonian(const PauliSumHamiltonian& h, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write Hamiltonian file '" + path + "'");
  out << format_hamiltonian(h);
  if (!out) throw Error("failed writing Hamiltonian file '" + path + "'");
}

namespace {

bool admits_flip(Mask x, const RandomHamiltonianOptions& o) {
  if (o.max_flip_weight && std::popcount(x) > *o.max_flip_weight) return false;
  return !o.constraints || o.constraints->allows_flip(x);
}

std::vector<Mask> admitted_flips(int n, const RandomHamiltonianOptions& o) {
  if (n > 24) {
    throw std::invalid_argument("flip enumeration requires n <= 24");
  }
  std::vector<Mask> out;
  const Mask end = Mask{1} << n;
  for (Mask x = 0; x < end; ++x) {
    if (admits_flip(x, o)) out.push_back(x);
  }
  return out;
}

void check_options(int n, const RandomHamiltonianOptions& o) {
  if (n < 1 || n > kMaxQubits) {
    throw std::invalid_argument("Hamiltonian qubit count must be in [1, 64]");
  }
  if (o.constraints && o.constraints->n_qubits != n) {
    throw std::invalid_argument("constraint set width differs from qubit count");
  }
}

// Even z choices for flip mask x: all of them for x = 0, half otherwise.
std::uint64_t even_z_count(int n, Mask x) {
  return x == 0 ? (std::uint64_t{1} << n) : (std::uint64_t{1} << (n - 1));
}

}  // namespace

std::uint64_t count_even_strings(int n_qubits,
                                 const RandomHamiltonianOptions& options) {
  check_options(n_qubits, options);
  std::uint64_t total = 0;
  for (Mask x : admitted_flips(n_qubits, options)) {
    total += even_z_count(n_qubits, x);
  }
  return total;
}

PauliSumHamiltonian random_real_hamiltonian(
    int n_qubits, std::size_t n_terms, std::uint64_t seed,
    const RandomHamiltonianOptions& options) {
  check_options(n_qubits, options);
  if (n_terms < 1) throw std::invalid_argument("n_terms must be at least 1");
  const std::vector<Mask> flips = admitted_flips(n_qubits, options);
  std::uint64_t available = 0;
  for (Mask x : flips) available += even_z_count(n_qubits, x);
  if (n_terms > available) {
    throw std::invalid_argument(
        "requested " + std::to_string(n_terms) + " terms but only " +
        std::to_string(available) + " distinct admissible even strings exist");
  }

  Rng rng(seed);
  std::vector<PauliTerm> terms;
  terms.reserve(n_terms);
  std::unordered_set<PauliString, PauliStringHash> seen;
  if (2 * n_terms > available) {
    // Dense request: shuffle the full list and take a prefix.
    std::vector<PauliString> all;
    all.reserve(available);
    for (Mask x : flips) {
      for (Mask z = 0; z < (Mask{1} << n_qubits); ++z) {
        if (!parity(x & z)) all.emplace_back(n_qubits, x, z);
      }
    }
    for (std::size_t i = 0; i < n_terms; ++i) {
      const std::size_t j = i + rng.uniform_below(all.size() - i);
      std::swap(all[i], all[j]);
      terms.push_back({rng.normal(), all[i]});
    }
  } else {
    // Uniform flip, uniform z, keep even: each string is equally likely.
    while (terms.size() < n_terms) {
      const Mask x = flips[rng.uniform_below(flips.size())];
      const Mask z = rng.uniform_bits(n_qubits);
      if (parity(x & z)) continue;
      PauliString p(n_qubits, x, z);
      if (!seen.insert(p).second) continue;
      terms.push_back({rng.normal(), p});
    }
  }
  return PauliSumHamiltonian(n_qubits, std::move(terms));
}

HamiltonianOperator::HamiltonianOperator(const PauliSumHamiltonian& h,
                                         std::size_t memory_budget_bytes)
    : n_(h.num_qubits()) {
  if (n_ > 30) {
    throw std::invalid_argument("state vectors beyond 30 qubits are not supported");
  }
  std::map<Mask, std::size_t> by_flip;
  for (const auto& t : h.terms()) {
    const auto [it, inserted] = by_flip.emplace(t.string.x_mask(), groups_.size());
    if (inserted) groups_.push_back(Group{t.string.x_mask(), {}, {}});
    groups_[it->second].terms.push_back(t);
  }
  const std::size_t dim = dimension();
  const bool dense = groups_.size() * dim * sizeof(double) <= memory_budget_bytes;
  if (!dense) return;
  for (auto& g : groups_) {
    g.diag.assign(dim, 0.0);
    for (const auto& t : g.terms) {
      const Mask z = t.string.z_mask();
      const double c = t.coefficient;
      for (Mask k = 0; k < dim; ++k) {
        g.diag[k] += parity((k ^ g.x) & z) ? -c : c;
      }
    }
  }
}

double HamiltonianOperator::coefficient_at(const Group& g, Mask k) const noexcept {
  if (!g.diag.empty()) return g.diag[k];
  double s = 0.0;
  const Mask target = k ^ g.x;
  for (const auto& t : g.terms) {
    s += parity(target & t.string.z_mask()) ? -t.coefficient : t.coefficient;
  }
  return s;
}

void HamiltonianOperator::apply(std::span<const double> in,
                                std::span<double> out) const {
  const std::size_t dim = dimension();
  if (in.size() != dim || out.size() != dim) {
    throw std::invalid_argument("state length does not match Hamiltonian width");
  }
  std::fill(out.begin(), out.end(), 0.0);
  for (const auto& g : groups_) {
    if (!g.diag.empty()) {
      const double* d = g.diag.data();
      for (Mask k = 0; k < dim; ++k) out[k ^ g.x] += d[k] * in[k];
    } else {
      for (Mask k = 0; k < dim; ++k) out[k ^ g.x] += coefficient_at(g, k) * in[k];
    }
  }
}

double HamiltonianOperator::expectation(std::span<const double> v) const {
  const std::size_t dim = dimension();
  if (v.size() != dim) {
    throw std::invalid_argument("state length does not match Hamiltonian width");
  }
  double total = 0.0;
  for (const auto& g : groups_) {
    double s = 0.0;
    for (Mask k = 0; k < dim; ++k) s += v[k ^ g.x] * coefficient_at(g, k) * v[k];
    total += s;
  }
  return total;
}

}  // namespace mcpool
