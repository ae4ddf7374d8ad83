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

#include "mcpool/symmetry.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "mcpool/error.hpp"
#include "mcpool/gf2.hpp"
#include "text_util.hpp"

namespace mcpool {

void SymmetrySpec::validate() const {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("symmetry spec: qubit count must be in [1, 64]");
  }
  const Mask outside = ~low_bits(n_qubits);
  if ((alpha_mask & outside) || (hf_occupation & outside)) {
    throw std::invalid_argument("symmetry spec: mask exceeds qubit count");
  }
  for (Mask c : character_columns) {
    if (c & outside) {
      throw std::invalid_argument(
          "symmetry spec: character column exceeds qubit count");
    }
  }
}

namespace {

using detail::split_ws;
using detail::trim;

Mask parse_bits(std::string_view s, int n, std::size_t line,
                const char* what) {
  if (static_cast<int>(s.size()) != n) {
    throw ParseError(std::string(what) + ": expected " + std::to_string(n) +
                         " binary digits, got " + std::to_string(s.size()),
                     line, 0);
  }
  Mask m = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1') {
      m |= Mask{1} << i;
    } else if (s[i] != '0') {
      throw ParseError(std::string(what) + ": invalid binary digit '" +
                           std::string(1, s[i]) + "'",
                       line, i);
    }
  }
  return m;
}

int parse_character(std::string_view tok, std::size_t line) {
  if (tok == "1" || tok == "+1" || tok == "+") return 1;
  if (tok == "-1" || tok == "-") return -1;
  throw ParseError("character '" + std::string(tok) +
                       "' is not +1 or -1 (only one-dimensional irreps are "
                       "supported)",
                   line, 0);
}

// Columns given per spatial orbital are expanded to consecutive spin pairs:
// spatial orbital i covers qubits 2i and 2i+1.
Mask character_mask(const std::vector<int>& chars, int n, std::size_t line) {
  const int len = static_cast<int>(chars.size());
  Mask m = 0;
  if (len == n) {
    for (int q = 0; q < n; ++q) {
      if (chars[static_cast<std::size_t>(q)] < 0) m |= Mask{1} << q;
    }
  } else if (2 * len == n) {
    for (int i = 0; i < len; ++i) {
      if (chars[static_cast<std::size_t>(i)] < 0) m |= Mask{3} << (2 * i);
    }
  } else {
    throw ParseError("character column length " + std::to_string(len) +
                         " matches neither " + std::to_string(n) +
                         " qubits nor " + std::to_string(n / 2) +
                         " spatial orbitals",
                     line, 0);
  }
  return m;
}

}  // namespace

SymmetrySpec parse_symmetry_spec(std::string_view text) {
  SymmetrySpec spec;
  std::optional<int> n;
  std::optional<std::string> alpha_text, hf_text;
  std::size_t alpha_line = 0, hf_line = 0;
  std::vector<std::pair<std::vector<int>, std::size_t>> raw_columns;
  std::vector<std::string> operations;
  std::map<std::string, std::vector<int>> irreps;
  std::vector<std::string> orbital_labels;
  std::size_t orbitals_line = 0;

  std::size_t line_no = 0;
  for (std::string_view line : detail::lines(text)) {
    ++line_no;
    line = trim(detail::strip_comment(line));
    if (line.empty()) continue;
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError("expected 'key: value'", line_no, 0);
    }
    const std::string_view key = trim(line.substr(0, colon));
    const std::string_view value = trim(line.substr(colon + 1));
    const auto tokens = split_ws(value);

    if (key == "name") {
      spec.name = std::string(value);
    } else if (key == "qubits") {
      int v = 0;
      const auto res = std::from_chars(value.data(), value.data() + value.size(), v);
      if (res.ec != std::errc{} || res.ptr != value.data() + value.size() ||
          v < 1 || v > kMaxQubits) {
        throw ParseError("qubits: expected an integer in [1, 64]", line_no,
                         colon + 1);
      }
      n = v;
    } else if (key == "alpha") {
      alpha_text = std::string(value);
      alpha_line = line_no;
    } else if (key == "spins") {
      // Per-qubit spin labels, e.g. "abababab".
      std::string bits;
      for (char c : value) {
        if (c == 'a' || c == 'A') bits.push_back('1');
        else if (c == 'b' || c == 'B') bits.push_back('0');
        else if (c != ' ') throw ParseError("spins: expected 'a' or 'b'", line_no, 0);
      }
      alpha_text = bits;
      alpha_line = line_no;
    } else if (key == "hf") {
      hf_text = std::string(value);
      hf_line = line_no;
    } else if (key == "character") {
      std::vector<int> chars;
      for (auto tok : tokens) chars.push_back(parse_character(tok, line_no));
      raw_columns.emplace_back(std::move(chars), line_no);
    } else if (key == "operations") {
      operations.clear();
      for (auto tok : tokens) operations.emplace_back(tok);
    } else if (key == "irrep") {
      if (tokens.empty()) throw ParseError("irrep: missing label", line_no, 0);
      std::vector<int> chars;
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        chars.push_back(parse_character(tokens[i], line_no));
      }
      irreps[std::string(tokens[0])] = std::move(chars);
    } else if (key == "orbitals") {
      orbital_labels.clear();
      for (auto tok : tokens) orbital_labels.emplace_back(tok);
      orbitals_line = line_no;
    } else {
      throw ParseError("unknown key '" + std::string(key) + "'", line_no, 0);
    }
  }

  if (!n) throw ParseError("missing 'qubits:'", 0, 0);
  spec.n_qubits = *n;
  if (!alpha_text) throw ParseError("missing 'alpha:' or 'spins:'", 0, 0);
  spec.alpha_mask = parse_bits(*alpha_text, *n, alpha_line, "alpha");
  spec.hf_occupation =
      hf_text ? parse_bits(*hf_text, *n, hf_line, "hf") : Mask{0};

  for (const auto& [chars, ln] : raw_columns) {
    spec.character_columns.push_back(character_mask(chars, *n, ln));
  }

  if (!orbital_labels.empty()) {
    if (irreps.empty()) {
      throw ParseError("orbitals: given without any 'irrep:' rows",
                       orbitals_line, 0);
    }
    const std::size_t n_ops = irreps.begin()->second.size();
    for (const auto& [label, chars] : irreps) {
      if (chars.size() != n_ops) {
        throw ParseError("irrep '" + label + "' has " +
                             std::to_string(chars.size()) +
                             " characters, expected " + std::to_string(n_ops),
                         0, 0);
      }
    }
    if (!operations.empty() && operations.size() != n_ops) {
      throw ParseError("operations: count does not match irrep rows", 0, 0);
    }
    for (std::size_t op = 0; op < n_ops; ++op) {
      std::vector<int> column;
      for (const auto& label : orbital_labels) {
        const auto it = irreps.find(label);
        if (it == irreps.end()) {
          throw ParseError("orbitals: unknown irrep '" + label + "'",
                           orbitals_line, 0);
        }
        column.push_back(it->second[op]);
      }
      const Mask m = character_mask(column, *n, orbitals_line);
      if (m != 0) spec.character_columns.push_back(m);
    }
  } else if (!irreps.empty()) {
    throw ParseError("irrep rows given without 'orbitals:'", 0, 0);
  }

  spec.validate();
  return spec;
}

SymmetrySpec load_symmetry_spec(const std::string& path) {
  return parse_symmetry_spec(detail::read_file(path));
}

std::string format_symmetry_spec(const SymmetrySpec& spec) {
  auto bits = [&](Mask m) {
    std::string s(static_cast<std::size_t>(spec.n_qubits), '0');
    for (int q = 0; q < spec.n_qubits; ++q) {
      if ((m >> q) & 1) s[static_cast<std::size_t>(q)] = '1';
    }
    return s;
  };
  std::ostringstream out;
  if (!spec.name.empty()) out << "name: " << spec.name << '\n';
  out << "qubits: " << spec.n_qubits << '\n';
  out << "alpha: " << bits(spec.alpha_mask) << '\n';
  out << "hf: " << bits(spec.hf_occupation) << '\n';
  for (Mask c : spec.character_columns) {
    out << "character:";
    for (int q = 0; q < spec.n_qubits; ++q) out << (((c >> q) & 1) ? " -1" : " 1");
    out << '\n';
  }
  return out.str();
}

bool ConstraintSet::allows_flip(Mask flip) const noexcept {
  for (Mask m : basis) {
    if (parity(flip & m)) return false;
  }
  return true;
}

ConstraintSet make_constraint_set(int n_qubits, std::vector<Mask> functionals) {
  ConstraintSet cs;
  cs.n_qubits = n_qubits;
  Gf2Basis basis;
  for (Mask m : functionals) basis.insert(Gf2Vec{m, 0});
  for (const auto& row : basis.rows()) cs.basis.push_back(row.lo);
  cs.functionals = std::move(functionals);
  return cs;
}

ConstraintSet build_constraints(const SymmetrySpec& spec) {
  std::vector<Mask> f{spec.alpha_mask, spec.beta_mask()};
  f.insert(f.end(), spec.character_columns.begin(),
           spec.character_columns.end());
  return make_constraint_set(spec.n_qubits, std::move(f));
}

bool satisfies_constraints(const PauliString& p, const ConstraintSet& cs) {
  if (p.num_qubits() != cs.n_qubits) {
    throw std::invalid_argument("constraint set and Pauli string widths differ");
  }
  return cs.allows_flip(p.x_mask());
}

bool is_starter_flip(Mask flip, const SymmetrySpec& spec) {
  if (std::popcount(flip) != 4) return false;
  const Mask occ = spec.hf_occupation;
  for (Mask sector : {spec.alpha_mask, spec.beta_mask()}) {
    const int removed = std::popcount(flip & occ & sector);
    const int added = std::popcount(flip & ~occ & sector);
    if (removed != added) return false;
  }
  for (Mask c : spec.character_columns) {
    if (parity(flip & c)) return false;
  }
  return true;
}

bool is_starter(const PauliString& p, const SymmetrySpec& spec) {
  if (p.num_qubits() != spec.n_qubits) {
    throw std::invalid_argument("symmetry spec and Pauli string widths differ");
  }
  return is_starter_flip(p.x_mask(), spec);
}

int expected_pool_size(const SymmetrySpec& spec) {
  return 2 * spec.n_qubits - 2 - build_constraints(spec).rank();
}

bool same_sector(Mask a, Mask b, const ConstraintSet& cs) noexcept {
  return cs.allows_flip(a ^ b);
}

}  // namespace mcpool
