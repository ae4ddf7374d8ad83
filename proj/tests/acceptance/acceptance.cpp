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


// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero when any criterion fails.

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <limits>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "data_path.hpp"
#include "fermion_model.hpp"
#include "mcpool/adapt.hpp"
#include "mcpool/group.hpp"
#include "mcpool/hamiltonian.hpp"
#include "mcpool/pool_io.hpp"
#include "mcpool/pool_search.hpp"
#include "mcpool/statevector.hpp"
#include "oracle.hpp"

namespace {

using namespace mcpool;
using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

SymmetrySpec spec_named(const std::string& name) {
  return load_symmetry_spec(testing::data_path("symmetry/" + name + ".sym"));
}

std::vector<PauliString> all_odd_strings(int n) {
  std::vector<PauliString> out;
  for (Mask x = 0; x < (Mask{1} << n); ++x) {
    for (Mask z = 0; z < (Mask{1} << n); ++z) {
      const PauliString p(n, x, z);
      if (p.is_odd()) out.push_back(p);
    }
  }
  return out;
}

double sector_ground_energy(const PauliSumHamiltonian& h, const SymmetrySpec& spec) {
  LanczosOptions lo;
  lo.sector_constraints = build_constraints(spec);
  lo.sector_reference = spec.hf_occupation;
  return ground_energy(h, lo);
}

// Traces kept for the determinism re-run.
struct Recorded {
  std::function<std::string()> rerun;
  std::string first;
  std::string label;
};
std::vector<Recorded> recorded;

Verdict printed_pools() {
  std::ostringstream d;
  bool ok = true;
  const struct {
    const char* file;
    std::size_t closure;
    double budget;
  } cases[] = {{"pools/random_n6.pool", 528, 5.0}, {"pools/random_n8.pool", 8256, 60.0}};
  for (const auto& c : cases) {
    const auto t0 = Clock::now();
    const Pool pool = load_pool(testing::data_path(c.file));
    const auto r = check_pool(pool.operators, CheckLevel::algebra);
    const double t = seconds_since(t0);
    const bool pass = r.complete && r.closure_size == c.closure && t < c.budget;
    ok = ok && pass;
    d << "n=" << pool.n_qubits << " closure=" << r.closure_size.value_or(0) << " in "
      << fmt("%.2f", t) << "s; ";
  }
  return {ok, d.str()};
}

Verdict odd_count_formula() {
  std::ostringstream d;
  bool ok = true;
  const std::uint64_t expected[] = {3, 10, 36, 136};
  for (int n = 2; n <= 5; ++n) {
    std::vector<PauliString> gens;
    for (const auto& s : testing::canonical_generators(n)) gens.push_back(PauliString::parse(s));
    std::uint64_t oracle = 0;
    for (const auto& s : testing::brute_force_group(testing::canonical_generators(n))) {
      oracle += testing::letter_y_count(s) % 2;
    }
    const std::uint64_t formula = odd_count_target(n);
    const std::uint64_t library = count_odd_elements(GeneratedGroup::build(gens));
    ok = ok && formula == oracle && library == oracle &&
         formula == expected[n - 2];
    d << "n=" << n << ":" << formula << "/" << oracle << "/" << library << " ";
  }
  return {ok, d.str() + "(formula/enumeration/library)"};
}

Verdict minimality_n3() {
  const auto t0 = Clock::now();
  const auto odd = all_odd_strings(3);
  const std::size_t m = odd.size();
  std::size_t triples = 0, passing_triples = 0;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      for (std::size_t c = b + 1; c < m; ++c) {
        ++triples;
        const std::vector<PauliString> pool{odd[a], odd[b], odd[c]};
        if (flip_coverage(GeneratedGroup::build(pool)) &&
            lie_closure(pool).size() == odd_count_target(3)) {
          ++passing_triples;
        }
      }
    }
  }
  std::size_t screened = 0, screened_not_algebra = 0;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      for (std::size_t c = b + 1; c < m; ++c) {
        for (std::size_t e = c + 1; e < m; ++e) {
          const std::vector<PauliString> pool{odd[a], odd[b], odd[c], odd[e]};
          const auto group = GeneratedGroup::build(pool);
          if (group.rank() != 4 || !flip_coverage(group) || !inseparability(pool)) continue;
          ++screened;
          if (lie_closure(pool).size() != odd_count_target(3)) ++screened_not_algebra;
        }
      }
    }
  }
  const double t = seconds_since(t0);
  std::ostringstream d;
  d << triples << " size-3 pools, " << passing_triples << " complete; " << screened
    << " screened size-4 pools, " << screened_not_algebra << " fail algebra; "
    << fmt("%.1f", t) << "s";
  return {triples == 3276 && passing_triples == 0 && screened > 0 &&
              screened_not_algebra == 0 && t < 120.0,
          d.str()};
}

Verdict conjugation_identity() {
  Rng rng(2024);
  double worst = 0.0;
  int pairs = 0;
  while (pairs < 200) {
    const int n = 2 + pairs % 2;
    const auto o1 = random_odd_string(n, rng);
    const auto o2 = random_odd_string(n, rng);
    if (commutes(o1, o2)) continue;
    const Eigen::MatrixXd m1 = testing::pauli_matrix(o1.str());
    const Eigen::MatrixXd m2 = testing::pauli_matrix(o2.str());
    const double q = std::numbers::pi / 4;
    const Eigen::MatrixXd lhs = testing::expm(q * m1) * m2 * testing::expm(-q * m1);
    const Eigen::MatrixXd rhs = testing::pauli_matrix(product_mod_phase(o1, o2).str());
    worst = std::max(worst, std::min((lhs - rhs).cwiseAbs().maxCoeff(),
                                     (lhs + rhs).cwiseAbs().maxCoeff()));
    ++pairs;
  }
  return {worst <= 1e-12, "200 pairs, max deviation " + fmt("%.2e", worst)};
}

Verdict starter_classification() {
  std::ostringstream d;
  bool ok = true;
  const struct {
    const char* pool;
    const char* spec;
    std::vector<std::size_t> non_starters;
  } cases[] = {
      {"pools/h4_starters10.pool", "h4", {7}},
      {"pools/lih_starters8.pool", "lih", {8, 9, 10, 11, 12, 13}},
      {"pools/beh2_starters10.pool", "beh2", {10, 11, 12, 13, 14, 15, 16}},
  };
  for (const auto& c : cases) {
    const Pool pool = load_pool(testing::data_path(c.pool));
    const auto spec = spec_named(c.spec);
    std::size_t starters = 0;
    bool match = true;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      const bool s = is_starter(pool.operators[i], spec);
      const bool expected = std::find(c.non_starters.begin(), c.non_starters.end(), i) ==
                            c.non_starters.end();
      match = match && s == expected;
      starters += s ? 1 : 0;
    }
    ok = ok && match;
    d << c.spec << ": " << starters << "/" << pool.size() << (match ? " match; " : " MISMATCH; ");
  }
  const Pool h4 = load_pool(testing::data_path("pools/h4_starters10.pool"));
  d << "non-starter " << h4.operators[7].str();
  ok = ok && h4.operators[7].str() == "XZIIYZII";
  return {ok, d.str()};
}

Verdict pool_sizes() {
  const int h4 = expected_pool_size(spec_named("h4"));
  const int lih = expected_pool_size(spec_named("lih"));
  const int beh2 = expected_pool_size(spec_named("beh2"));
  std::ostringstream d;
  d << "H4=" << h4 << " LiH=" << lih << " BeH2=" << beh2;
  return {h4 == 11 && lih == 14 && beh2 == 17, d.str()};
}

Verdict gradient_correctness() {
  Rng rng(77);
  const double step = 1e-5;
  double worst_rel = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto h = random_real_hamiltonian(6, 120, 7000 + trial);
    Ansatz a;
    a.n_qubits = 6;
    a.reference = rng.uniform_bits(6);
    for (int i = 0; i < 25; ++i) {
      a.operators.push_back(random_odd_string(6, rng));
      a.parameters.push_back(2.0 * rng.uniform_real() - 1.0);
    }
    const AnsatzEvaluator eval(h);
    const auto eg = eval.evaluate(a);
    double scale = 0.0;
    for (double g : eg.gradient) scale = std::max(scale, std::abs(g));
    for (std::size_t i = 0; i < a.size(); ++i) {
      auto plus = a.parameters, minus = a.parameters;
      plus[i] += step;
      minus[i] -= step;
      const double fd = (eval.energy(a, plus) - eval.energy(a, minus)) / (2 * step);
      worst_rel = std::max(worst_rel, std::abs(eg.gradient[i] - fd) / std::max(scale, 1e-300));
    }
  }

  const auto spec = spec_named("h4");
  const auto cs = build_constraints(spec);
  const auto hf = basis_state(8, spec.hf_occupation);
  const auto odd = all_odd_strings(8);

  RandomHamiltonianOptions constrained;
  constrained.constraints = cs;
  const auto hc = random_real_hamiltonian(8, 400, 71, constrained);
  std::vector<PauliString> violating, singles, high;
  for (const auto& p : odd) {
    if (!satisfies_constraints(p, cs)) violating.push_back(p);
    if (p.flip_weight() == 2) singles.push_back(p);
    if (p.flip_weight() > 4) high.push_back(p);
  }
  auto max_abs = [](const std::vector<double>& g) {
    double m = 0.0;
    for (double v : g) m = std::max(m, std::abs(v));
    return m;
  };
  const double a_max = max_abs(pool_gradients(hc, hf, violating));
  const double b_max = max_abs(pool_gradients(testing::molecular_hamiltonian(spec, 71), hf, singles));
  constrained.max_flip_weight = 4;
  const auto h4flip = random_real_hamiltonian(8, 400, 72, constrained);
  const double c_max = max_abs(pool_gradients(h4flip, hf, high));

  std::ostringstream d;
  d << "adjoint vs FD rel " << fmt("%.1e", worst_rel) << "; HF gradients (a) "
    << fmt("%.1e", a_max) << " (b) " << fmt("%.1e", b_max) << " (c) " << fmt("%.1e", c_max);
  return {worst_rel <= 1e-6 && a_max <= 1e-12 && b_max <= 1e-12 && c_max <= 1e-12, d.str()};
}

Verdict random_convergence() {
  const auto t0 = Clock::now();
  bool ok = true;
  std::ostringstream d;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto h = random_real_hamiltonian(6, 200, seed);
    const auto pool = random_mcp(6, seed).operators;
    const double e0 = ground_energy(h);
    AdaptConfig c;
    c.max_iters = 120;
    auto run = [h, pool, e0, c] { return run_adapt(h, pool, 0, c, e0).trace; };
    const AdaptTrace t = run();
    if (seed == 1) recorded.push_back({[run] { return format_trace(run()); }, format_trace(t),
                                       "random n=6 seed 1"});
    double hi = 0.0, lo = INFINITY;
    std::size_t reach = 0;
    for (const auto& r : t.records) {
      hi = std::max(hi, *r.error);
      lo = std::min(lo, *r.error);
      if (!reach && *r.error < 1e-6) reach = static_cast<std::size_t>(r.iteration);
    }
    const double span = std::log10(hi / std::max(lo, 1e-300));
    const bool pass = reach > 0 && reach <= 120 && span >= 6.0;
    ok = ok && pass;
    d << "s" << seed << ":" << reach << "it/" << fmt("%.1f", span) << "dec ";
  }
  const double t = seconds_since(t0);
  d << fmt("%.1f", t) << "s";
  return {ok && t < 600.0, d.str()};
}

std::vector<std::filesystem::path> molecular_fixtures() {
  std::vector<std::filesystem::path> out;
  const char* env = std::getenv("MCPOOL_FIXTURES_DIR");
  const std::filesystem::path dir =
      env ? std::filesystem::path(env) : std::filesystem::path(testing::data_path("molecules"));
  if (!std::filesystem::is_directory(dir)) return out;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.path().extension() == ".ham") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Optional suite for user-supplied molecular Hamiltonians named h4*.ham,
// lih*.ham or beh2*.ham. Returns an empty string when nothing ran.
std::string molecular_suite(bool& ok) {
  std::ostringstream d;
  for (const auto& file : molecular_fixtures()) {
    const std::string stem = file.stem().string();
    std::string mol;
    for (const char* m : {"beh2", "lih", "h4"}) {
      if (stem.rfind(m, 0) == 0) {
        mol = m;
        break;
      }
    }
    if (mol.empty()) continue;
    const auto spec = spec_named(mol);
    const auto h = load_hamiltonian(file.string());
    const double e0 = sector_ground_energy(h, spec);
    const int starters = expected_pool_size(spec) / 2 + 1;
    const auto adapted = symmetry_adapted_mcp(spec, starters, 1, CheckLevel::inseparable);
    const auto t = run_adapt(h, adapted.operators, spec.hf_occupation, {}, e0).trace;
    bool pass = *t.last().error < 1e-6;
    d << stem << " adapted err " << fmt("%.1e", *t.last().error);
    if (mol == "h4") {
      const auto generic = random_mcp(spec.n_qubits, 1, CheckLevel::inseparable);
      const auto g = run_adapt(h, generic.operators, spec.hf_occupation, {}, e0).trace;
      pass = pass && g.status == AdaptStatus::gradient_stall && *g.last().error > 1e-6;
      d << ", generic " << to_string(*g.status);
    }
    d << "; ";
    ok = ok && pass;
  }
  return d.str();
}

Verdict symmetry_roadblock() {
  const auto spec = spec_named("h4");
  bool ok = true;
  std::ostringstream d;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto h = testing::molecular_hamiltonian(spec, seed);
    const double e0 = sector_ground_energy(h, spec);
    const auto generic = random_mcp(8, 200 + seed, CheckLevel::inseparable).operators;
    const auto g = run_adapt(h, generic, spec.hf_occupation, {}, e0).trace;
    const auto adapted = symmetry_adapted_mcp(spec, 6, 300 + seed).operators;
    auto run = [h, adapted, hf = spec.hf_occupation, e0] {
      return run_adapt(h, adapted, hf, {}, e0).trace;
    };
    const AdaptTrace a = run();
    if (seed == 1) recorded.push_back({[run] { return format_trace(run()); }, format_trace(a),
                                       "H4-symmetric seed 1"});
    const bool pass = g.status == AdaptStatus::gradient_stall && *g.last().error > 1e-6 &&
                      *a.last().error < 1e-6;
    ok = ok && pass;
    d << "s" << seed << ": generic " << to_string(*g.status) << "@" << g.iterations() << " err "
      << fmt("%.1e", *g.last().error) << ", adapted err " << fmt("%.1e", *a.last().error)
      << "@" << a.iterations() << "; ";
  }
  const std::string extra = molecular_suite(ok);
  d << (extra.empty() ? "molecular fixtures: none supplied" : "molecular fixtures: " + extra);
  return {ok, d.str()};
}

Verdict starter_count_study() {
  const auto spec = spec_named("h4");
  int good = 0;
  std::ostringstream d;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto h = testing::molecular_hamiltonian(spec, seed);
    const double e0 = sector_ground_energy(h, spec);
    int reach[3] = {0, 0, 0};
    const int counts[3] = {3, 6, 9};
    for (int i = 0; i < 3; ++i) {
      const auto pool = symmetry_adapted_mcp(spec, counts[i], 300 + seed).operators;
      AdaptConfig c;
      c.max_iters = 300;
      const auto t = run_adapt(h, pool, spec.hf_occupation, c, e0).trace;
      reach[i] = std::numeric_limits<int>::max();
      for (const auto& r : t.records) {
        if (*r.error < 1e-4) {
          reach[i] = r.iteration;
          break;
        }
      }
    }
    const bool slower = reach[0] >= reach[1] && reach[0] >= reach[2];
    good += slower ? 1 : 0;
    auto show = [](int v) {
      return v == std::numeric_limits<int>::max() ? std::string("never") : std::to_string(v);
    };
    d << "s" << seed << ":" << show(reach[0]) << "/" << show(reach[1]) << "/" << show(reach[2])
      << " ";
  }
  d << "(3/6/9 starters) ordered in " << good << "/5";
  return {good >= 4, d.str()};
}

Verdict determinism() {
  bool ok = !recorded.empty();
  std::ostringstream d;
  for (const auto& r : recorded) {
    const bool same = r.rerun() == r.first;
    ok = ok && same;
    d << r.label << (same ? " identical; " : " DIFFERS; ");
  }
  const bool pools = format_pool(random_mcp(6, 3)) == format_pool(random_mcp(6, 3)) &&
                     format_pool(symmetry_adapted_mcp(spec_named("h4"), 6, 3)) ==
                         format_pool(symmetry_adapted_mcp(spec_named("h4"), 6, 3));
  d << (pools ? "pools identical" : "pools DIFFER");
  return {ok && pools, d.str()};
}

}  // namespace

int main() {
  const struct {
    int id;
    const char* name;
    Verdict (*check)();
  } criteria[] = {
      {1, "printed pools complete with exact closure sizes", printed_pools},
      {2, "odd-count formula matches enumeration", odd_count_formula},
      {3, "minimality at n=3", minimality_n3},
      {4, "pi/4 conjugation identity", conjugation_identity},
      {5, "starter classification of printed pools", starter_classification},
      {6, "symmetry-adapted pool sizes", pool_sizes},
      {7, "gradient correctness and vanishing gradients", gradient_correctness},
      {8, "random Hamiltonian convergence", random_convergence},
      {9, "symmetry roadblock", symmetry_roadblock},
      {10, "starter-count study", starter_count_study},
      {11, "determinism", determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Verdict v;
    const auto t0 = Clock::now();
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failures += v.pass ? 0 : 1;
    std::cout << "acceptance " << c.id << " " << (v.pass ? "PASS" : "FAIL") << ": " << c.name
              << " [" << v.detail << "] (" << fmt("%.1f", seconds_since(t0)) << "s)"
              << std::endl;
  }
  std::cout << (failures ? "acceptance: " + std::to_string(failures) + " criteria failed"
                         : std::string("acceptance: all criteria passed"))
            << std::endl;
  return failures ? 1 : 0;
}
