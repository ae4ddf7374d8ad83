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

#include "mcpool/group.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace mcpool {

namespace {

void require_uniform(std::span<const PauliString> pool) {
  if (pool.empty()) throw std::invalid_argument("pool is empty");
  const int n = pool.front().num_qubits();
  for (const auto& p : pool) {
    if (p.num_qubits() != n) {
      throw std::invalid_argument("pool mixes qubit counts " +
                                  std::to_string(n) + " and " +
                                  std::to_string(p.num_qubits()));
    }
  }
}

// Set of flip masks, dense bitmap for small n.
class FlipSet {
 public:
  explicit FlipSet(int n) : n_(n) {
    if (n_ <= 28) bitmap_.assign(std::size_t{1} << n_, false);
  }

  void insert(Mask f) {
    if (!bitmap_.empty()) {
      if (!bitmap_[f]) {
        bitmap_[f] = true;
        ++count_;
      }
    } else if (sparse_.insert(f).second) {
      ++count_;
    }
  }

  std::uint64_t size() const noexcept { return count_; }

 private:
  int n_;
  std::vector<bool> bitmap_;
  std::unordered_set<Mask> sparse_;
  std::uint64_t count_ = 0;
};

struct Census {
  std::uint64_t odd_elements = 0;
  std::uint64_t covered_flips = 0;  // distinct nonzero allowed flips with an odd element
};

Census take_census(const GeneratedGroup& group,
                   const std::optional<ConstraintSet>& allowed, int cap) {
  Census c;
  FlipSet flips(group.num_qubits());
  group.for_each_element(
      [&](const PauliString& e) {
        if (!e.is_odd()) return;
        if (allowed && !allowed->allows_flip(e.x_mask())) return;
        ++c.odd_elements;
        if (e.x_mask() != 0) flips.insert(e.x_mask());
      },
      cap);
  c.covered_flips = flips.size();
  return c;
}

std::uint64_t required_flips(int n, const std::optional<ConstraintSet>& allowed) {
  const int dim = n - (allowed ? allowed->rank() : 0);
  return (std::uint64_t{1} << dim) - 1;
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t a) {
    while (parent_[a] != a) {
      parent_[a] = parent_[parent_[a]];
      a = parent_[a];
    }
    return a;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<int> rank_;
};

std::string join_indices(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

const char* yes_no(bool b) { return b ? "true" : "false"; }

}  // namespace

GeneratedGroup GeneratedGroup::build(std::span<const PauliString> generators) {
  require_uniform(generators);
  GeneratedGroup g;
  g.n_ = generators.front().num_qubits();
  g.generators_.assign(generators.begin(), generators.end());
  for (const auto& p : generators) g.basis_.insert(symplectic(p));
  return g;
}

std::vector<PauliString> GeneratedGroup::basis() const {
  std::vector<PauliString> out;
  out.reserve(basis_.rows().size());
  for (const auto& row : basis_.rows()) out.emplace_back(n_, row.lo, row.hi);
  return out;
}

bool GeneratedGroup::contains(const PauliString& p) const {
  if (p.num_qubits() != n_) {
    throw std::invalid_argument("Pauli string width differs from group width");
  }
  return basis_.contains(symplectic(p));
}

bool flip_coverage(const GeneratedGroup& group,
                   const std::optional<ConstraintSet>& allowed_flips,
                   int cap) {
  const std::uint64_t needed = required_flips(group.num_qubits(), allowed_flips);
  // Each covered flip needs its own group element.
  if (group.rank() < 64 && (std::uint64_t{1} << group.rank()) <= needed) {
    return false;
  }
  return take_census(group, allowed_flips, cap).covered_flips == needed;
}

std::uint64_t count_odd_elements(const GeneratedGroup& group,
                                 const std::optional<ConstraintSet>& constraints,
                                 int cap) {
  return take_census(group, constraints, cap).odd_elements;
}

std::vector<std::size_t> anticommutation_components(
    std::span<const PauliString> pool) {
  require_uniform(pool);
  DisjointSets sets(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) {
    for (std::size_t j = i + 1; j < pool.size(); ++j) {
      if (!commutes(pool[i], pool[j])) sets.unite(i, j);
    }
  }
  std::vector<std::size_t> root_label(pool.size(), pool.size());
  std::vector<std::size_t> label(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const std::size_t r = sets.find(i);
    if (root_label[r] == pool.size()) root_label[r] = i;
    label[i] = root_label[r];
  }
  return label;
}

bool inseparability(std::span<const PauliString> pool) {
  const auto labels = anticommutation_components(pool);
  return std::all_of(labels.begin(), labels.end(),
                     [](std::size_t l) { return l == 0; });
}

LieClosure lie_closure(std::span<const PauliString> pool, std::size_t cap) {
  require_uniform(pool);
  for (const auto& p : pool) {
    if (!p.is_odd()) {
      throw std::invalid_argument("Lie closure requires odd generators; '" +
                                  p.str() + "' is even");
    }
  }
  LieClosure out;
  std::unordered_set<PauliString, PauliStringHash> seen;
  for (const auto& p : pool) {
    if (seen.insert(p).second) out.elements.push_back(p);
  }
  // Each pair is examined once, when its later member is processed.
  for (std::size_t i = 0; i < out.elements.size(); ++i) {
    if (out.elements.size() > cap) {
      out.capped = true;
      break;
    }
    for (std::size_t j = 0; j < i; ++j) {
      const PauliString& a = out.elements[i];
      const PauliString& b = out.elements[j];
      if (parity(a.x_mask() & b.z_mask()) == parity(a.z_mask() & b.x_mask())) {
        continue;
      }
      PauliString c(a.num_qubits(), a.x_mask() ^ b.x_mask(),
                    a.z_mask() ^ b.z_mask());
      if (seen.insert(c).second) out.elements.push_back(c);
    }
  }
  if (out.elements.size() > cap) out.capped = true;
  return out;
}

LieClosure lie_closure(std::span<const PauliString> pool) {
  require_uniform(pool);
  const int n = pool.front().num_qubits();
  // For n = 1 the only odd string is Y.
  const std::size_t cap =
      n >= 2 && n <= 33 ? static_cast<std::size_t>(odd_count_target(n)) + 1 : 2;
  return lie_closure(pool, cap);
}

std::uint64_t odd_count_target(int n) {
  if (n < 2) throw std::invalid_argument("odd_count_target requires n >= 2");
  if (n > 33) throw std::overflow_error("odd_count_target overflows for n > 33");
  const std::uint64_t half = std::uint64_t{1} << (n - 1);
  // half is even for n >= 2, so divide it first.
  return (half / 2) * (half + 1);
}

std::string to_string(CheckLevel level) {
  switch (level) {
    case CheckLevel::group: return "group";
    case CheckLevel::inseparable: return "inseparable";
    case CheckLevel::algebra: return "algebra";
  }
  return "unknown";
}

CheckLevel parse_check_level(std::string_view text) {
  if (text == "group") return CheckLevel::group;
  if (text == "inseparable") return CheckLevel::inseparable;
  if (text == "algebra") return CheckLevel::algebra;
  throw std::invalid_argument("unknown check level '" + std::string(text) +
                              "' (expected group, inseparable or algebra)");
}

CheckLevel default_check_level(int n_qubits) noexcept {
  return n_qubits <= 10 ? CheckLevel::algebra : CheckLevel::inseparable;
}

CompletenessReport check_pool(std::span<const PauliString> pool,
                              CheckLevel level,
                              const std::optional<SymmetrySpec>& symmetry,
                              const CheckOptions& options) {
  require_uniform(pool);
  CompletenessReport r;
  r.level = level;
  r.n_qubits = pool.front().num_qubits();
  r.pool_size = pool.size();

  std::optional<ConstraintSet> constraints;
  if (symmetry) {
    if (symmetry->n_qubits != r.n_qubits) {
      throw std::invalid_argument("symmetry spec has " +
                                  std::to_string(symmetry->n_qubits) +
                                  " qubits, pool has " +
                                  std::to_string(r.n_qubits));
    }
    constraints = build_constraints(*symmetry);
    r.symmetry_restricted = true;
    r.constraint_rank = constraints->rank();
  }
  const int expected = 2 * r.n_qubits - 2 - r.constraint_rank;
  r.expected_size = static_cast<std::size_t>(std::max(expected, 0));
  r.expected_rank = expected;
  r.size_ok = r.pool_size == r.expected_size;

  std::unordered_set<PauliString, PauliStringHash> seen;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (!pool[i].is_odd()) r.even_members.push_back(i);
    if (!seen.insert(pool[i]).second) r.duplicate_members.push_back(i);
    if (constraints) {
      if (!satisfies_constraints(pool[i], *constraints)) {
        r.constraint_violations.push_back(i);
      }
      const bool starter = is_starter(pool[i], *symmetry);
      r.starter_flags.push_back(starter);
      r.starter_count += starter ? 1 : 0;
    }
  }

  const auto group = GeneratedGroup::build(pool);
  r.rank = group.rank();
  bool ok = r.size_ok && r.all_odd() && r.duplicate_members.empty() &&
            r.constraint_violations.empty() && r.rank_ok();

  // A group that is too small cannot cover every flip; skip enumeration.
  const std::uint64_t needed = required_flips(r.n_qubits, constraints);
  if (r.rank < 64 && (std::uint64_t{1} << r.rank) > needed) {
    const Census census = take_census(group, constraints, options.enumeration_cap);
    r.flip_coverage = census.covered_flips == needed;
    if (level == CheckLevel::algebra) {
      r.closure_target = constraints ? census.odd_elements
                                     : odd_count_target(r.n_qubits);
    }
  } else {
    r.flip_coverage = false;
    if (level == CheckLevel::algebra && !constraints && r.n_qubits >= 2) {
      r.closure_target = odd_count_target(r.n_qubits);
    }
  }
  ok = ok && r.flip_coverage;

  if (level == CheckLevel::inseparable || level == CheckLevel::algebra) {
    r.inseparable = inseparability(pool);
    ok = ok && *r.inseparable;
  }

  if (level == CheckLevel::algebra) {
    if (r.all_odd() && r.closure_target) {
      const std::size_t cap = options.closure_cap.value_or(
          static_cast<std::size_t>(*r.closure_target) + 1);
      const LieClosure closure = lie_closure(pool, cap);
      r.closure_size = closure.size();
      r.closure_capped = closure.capped;
      ok = ok && !closure.capped && closure.size() == *r.closure_target;
    } else {
      ok = false;
    }
  }

  r.complete = ok;
  return r;
}

std::string CompletenessReport::to_text() const {
  std::ostringstream out;
  out << "verdict:        " << (complete ? "complete" : "incomplete") << '\n';
  out << "level:          " << to_string(level) << '\n';
  out << "qubits:         " << n_qubits << '\n';
  out << "pool size:      " << pool_size << " (expected " << expected_size
      << ")" << (size_ok ? "" : "  FAIL") << '\n';
  out << "odd members:    "
      << (all_odd() ? "all" : "even at " + join_indices(even_members)) << '\n';
  if (!duplicate_members.empty()) {
    out << "duplicates:     " << join_indices(duplicate_members) << '\n';
  }
  if (symmetry_restricted) {
    out << "constraints:    rank " << constraint_rank << ", "
        << (constraint_violations.empty()
                ? std::string("all members satisfy")
                : "violated by " + join_indices(constraint_violations))
        << '\n';
    out << "starters:       " << starter_count << " of " << pool_size << '\n';
  }
  out << "group rank:     " << rank << " (expected " << expected_rank << ")"
      << (rank_ok() ? "" : "  FAIL") << '\n';
  out << "flip coverage:  " << (flip_coverage ? "pass" : "FAIL") << '\n';
  if (inseparable) {
    out << "inseparable:    " << (*inseparable ? "pass" : "FAIL") << '\n';
  }
  if (level == CheckLevel::algebra) {
    out << "lie closure:    "
        << (closure_size ? std::to_string(*closure_size) : std::string("n/a"))
        << " (target "
        << (closure_target ? std::to_string(*closure_target) : std::string("n/a"))
        << ")" << (closure_capped ? " capped" : "") << '\n';
  }
  return out.str();
}

std::string CompletenessReport::to_key_values() const {
  std::ostringstream out;
  out << "verdict=" << (complete ? "complete" : "incomplete") << '\n';
  out << "level=" << to_string(level) << '\n';
  out << "n_qubits=" << n_qubits << '\n';
  out << "pool_size=" << pool_size << '\n';
  out << "expected_size=" << expected_size << '\n';
  out << "all_odd=" << yes_no(all_odd()) << '\n';
  out << "even_members=" << join_indices(even_members) << '\n';
  out << "duplicate_members=" << join_indices(duplicate_members) << '\n';
  out << "symmetry_restricted=" << yes_no(symmetry_restricted) << '\n';
  if (symmetry_restricted) {
    out << "constraint_rank=" << constraint_rank << '\n';
    out << "constraint_violations=" << join_indices(constraint_violations) << '\n';
    out << "starter_count=" << starter_count << '\n';
    std::vector<std::size_t> starters;
    for (std::size_t i = 0; i < starter_flags.size(); ++i) {
      if (starter_flags[i]) starters.push_back(i);
    }
    out << "starters=" << join_indices(starters) << '\n';
  }
  out << "rank=" << rank << '\n';
  out << "expected_rank=" << expected_rank << '\n';
  out << "flip_coverage=" << yes_no(flip_coverage) << '\n';
  if (inseparable) out << "inseparable=" << yes_no(*inseparable) << '\n';
  if (closure_size) out << "closure_size=" << *closure_size << '\n';
  if (closure_target) out << "closure_target=" << *closure_target << '\n';
  if (level == CheckLevel::algebra) {
    out << "closure_capped=" << yes_no(closure_capped) << '\n';
  }
  return out.str();
}

}  // namespace mcpool
