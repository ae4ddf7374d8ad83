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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "data_path.hpp"
#include "fermion_model.hpp"
#include "mcpool/pool_search.hpp"
#include "mcpool/rng.hpp"
#include "oracle.hpp"

namespace mcpool {
namespace {

RealState random_state(int n, Rng& rng) {
  std::vector<double> a(std::size_t{1} << n);
  double norm = 0.0;
  for (auto& v : a) {
    v = rng.normal();
    norm += v * v;
  }
  for (auto& v : a) v /= std::sqrt(norm);
  return RealState(n, std::move(a));
}

Eigen::VectorXd as_vector(const RealState& s) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(s.dimension()));
  for (std::size_t k = 0; k < s.dimension(); ++k) v[static_cast<Eigen::Index>(k)] = s[k];
  return v;
}

double max_diff(const RealState& a, const RealState& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.dimension(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

Ansatz random_ansatz(int n, std::size_t length, Rng& rng) {
  Ansatz a;
  a.n_qubits = n;
  a.reference = rng.uniform_bits(n);
  for (std::size_t i = 0; i < length; ++i) {
    a.operators.push_back(random_odd_string(n, rng));
    a.parameters.push_back(2.0 * rng.uniform_real() - 1.0);
  }
  return a;
}

TEST(RealState, BasisStates) {
  const auto zero = basis_state(3, 0);
  EXPECT_EQ(zero[0], 1.0);
  EXPECT_EQ(zero.norm(), 1.0);
  const auto hf = basis_state(8, 0b1111);
  EXPECT_EQ(hf[15], 1.0);
  EXPECT_DOUBLE_EQ(hf.dot(hf), 1.0);
  EXPECT_THROW(basis_state(2, 0b100), std::invalid_argument);
  EXPECT_THROW(RealState(31), std::invalid_argument);
  EXPECT_THROW(RealState(2, std::vector<double>(3)), std::invalid_argument);
}

TEST(ApplyPauli, Examples) {
  const auto y0 = apply_pauli(PauliString::parse("Y"), basis_state(1, 0));
  EXPECT_EQ(y0[0], 0.0);
  EXPECT_EQ(y0[1], -1.0);
  const auto z1 = apply_pauli(PauliString::parse("Z"), basis_state(1, 1));
  EXPECT_EQ(z1[1], -1.0);
  Rng rng(1);
  const auto s = random_state(3, rng);
  EXPECT_EQ(max_diff(apply_pauli(PauliString::identity(3), s), s), 0.0);
}

TEST(ApplyPauli, OddSquaresToMinusIdentity) {
  Rng rng(2);
  for (int i = 0; i < 50; ++i) {
    const auto p = random_odd_string(4, rng);
    const auto s = random_state(4, rng);
    const auto twice = apply_pauli(p, apply_pauli(p, s));
    for (std::size_t k = 0; k < s.dimension(); ++k) EXPECT_NEAR(twice[k], -s[k], 1e-15);
  }
}

TEST(Rotation, Examples) {
  const auto y = PauliString::parse("Y");
  const auto s = basis_state(1, 0);
  EXPECT_EQ(max_diff(apply_rotation(y, 0.0, s), s), 0.0);
  const auto r = apply_rotation(y, std::numbers::pi / 2, s);
  EXPECT_NEAR(r[0], 0.0, 1e-15);
  EXPECT_NEAR(r[1], -1.0, 1e-15);
  RealState t = s;
  EXPECT_THROW(rotate_in_place(PauliString::parse("Z"), 0.3, t), std::invalid_argument);
}

TEST(Rotation, MatchesDenseExponential) {
  Rng rng(4);
  for (int i = 0; i < 40; ++i) {
    const int n = 1 + i % 4;
    const auto p = random_odd_string(n, rng);
    const double theta = 4.0 * rng.uniform_real() - 2.0;
    const auto s = random_state(n, rng);
    const Eigen::VectorXd expected =
        testing::expm(theta * testing::pauli_matrix(p.str())) * as_vector(s);
    const auto got = as_vector(apply_rotation(p, theta, s));
    EXPECT_LT((got - expected).cwiseAbs().maxCoeff(), 1e-12) << p.str();
  }
}

TEST(Rotation, OrthogonalAndInvertible) {
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const int n = 1 + i % 6;
    const auto p = random_odd_string(n, rng);
    const double theta = 6.0 * rng.uniform_real() - 3.0;
    const auto s = random_state(n, rng);
    const auto r = apply_rotation(p, theta, s);
    EXPECT_NEAR(r.norm(), 1.0, 1e-12);
    EXPECT_LT(max_diff(apply_rotation(p, -theta, r), s), 1e-12);
  }
}

TEST(Expectation, Examples) {
  EXPECT_DOUBLE_EQ(expectation(parse_hamiltonian("1.0 Z\n"), basis_state(1, 0)), 1.0);
  EXPECT_DOUBLE_EQ(expectation(parse_hamiltonian("1.0 X\n"), basis_state(1, 0)), 0.0);
  Rng rng(6);
  const auto h = random_real_hamiltonian(4, 40, 6);
  const auto s = random_state(4, rng);
  const Eigen::VectorXd v = as_vector(s);
  EXPECT_NEAR(expectation(h, s), v.dot(testing::hamiltonian_matrix(h) * v), 1e-12);
  EXPECT_THROW(expectation(h, basis_state(3, 0)), std::invalid_argument);
}

TEST(PoolGradients, MatchFiniteDifferences) {
  Rng rng(7);
  const double step = 1e-5;
  for (int i = 0; i < 10; ++i) {
    const auto h = random_real_hamiltonian(5, 60, 70 + i);
    const auto s = random_state(5, rng);
    std::vector<PauliString> pool;
    for (int j = 0; j < 8; ++j) pool.push_back(random_odd_string(5, rng));
    const auto g = pool_gradients(h, s, pool);
    for (std::size_t j = 0; j < pool.size(); ++j) {
      const double fd = (expectation(h, apply_rotation(pool[j], step, s)) -
                         expectation(h, apply_rotation(pool[j], -step, s))) /
                        (2 * step);
      EXPECT_NEAR(g[j], fd, 1e-7);
    }
  }
  const auto h = random_real_hamiltonian(2, 3, 1);
  const std::vector<PauliString> even{PauliString::parse("ZZ")};
  EXPECT_THROW(pool_gradients(h, basis_state(2, 0), even), std::invalid_argument);
}

TEST(PoolGradients, VanishForSymmetryViolatingStrings) {
  const auto spec = load_symmetry_spec(testing::data_path("symmetry/h4.sym"));
  const auto cs = build_constraints(spec);
  RandomHamiltonianOptions opts;
  opts.constraints = cs;
  const auto h = random_real_hamiltonian(8, 300, 21, opts);
  Rng rng(21);
  // A state reachable from HF through constraint-satisfying rotations.
  RealState s = basis_state(8, spec.hf_occupation);
  for (int i = 0; i < 12;) {
    const auto p = random_odd_string(8, rng);
    if (!satisfies_constraints(p, cs)) continue;
    rotate_in_place(p, rng.normal(), s);
    ++i;
  }
  std::vector<PauliString> violating;
  while (violating.size() < 200) {
    const auto p = random_odd_string(8, rng);
    if (!satisfies_constraints(p, cs)) violating.push_back(p);
  }
  for (const auto& state : {basis_state(8, spec.hf_occupation), s}) {
    for (double g : pool_gradients(h, state, violating)) EXPECT_LE(std::abs(g), 1e-12);
  }
}

TEST(PoolGradients, SingleExcitationsVanishAtHartreeFock) {
  const auto spec = load_symmetry_spec(testing::data_path("symmetry/h4.sym"));
  const auto h = testing::molecular_hamiltonian(spec, 3);
  const auto hf = basis_state(8, spec.hf_occupation);
  std::vector<PauliString> singles;
  for (Mask x = 0; x < 256; ++x) {
    if (std::popcount(x) != 2) continue;
    for (Mask z = 0; z < 256; ++z) {
      const PauliString p(8, x, z);
      if (p.is_odd()) singles.push_back(p);
    }
  }
  for (double g : pool_gradients(h, hf, singles)) EXPECT_LE(std::abs(g), 1e-12);
}

TEST(PoolGradients, HighExcitationsVanishForLowFlipHamiltonians) {
  const auto spec = load_symmetry_spec(testing::data_path("symmetry/h4.sym"));
  RandomHamiltonianOptions opts;
  opts.constraints = build_constraints(spec);
  opts.max_flip_weight = 4;
  const auto h = random_real_hamiltonian(8, 200, 33, opts);
  const auto hf = basis_state(8, spec.hf_occupation);
  Rng rng(33);
  std::vector<PauliString> high;
  while (high.size() < 300) {
    const auto p = random_odd_string(8, rng);
    if (p.flip_weight() > 4) high.push_back(p);
  }
  for (double g : pool_gradients(h, hf, high)) EXPECT_LE(std::abs(g), 1e-12);
}

TEST(Ansatz, EmptyAnsatzGivesReferenceEnergy) {
  const auto h = random_real_hamiltonian(3, 12, 2);
  Ansatz a;
  a.n_qubits = 3;
  a.reference = 0b101;
  const auto eg = ansatz_energy_gradient(a, h);
  EXPECT_DOUBLE_EQ(eg.energy, expectation(h, basis_state(3, 0b101)));
  EXPECT_TRUE(eg.gradient.empty());
}

TEST(Ansatz, ValidateRejectsBadShapes) {
  Ansatz a;
  a.n_qubits = 2;
  a.operators = {PauliString::parse("YI")};
  EXPECT_THROW(a.validate(), std::invalid_argument);
  a.parameters = {0.1};
  EXPECT_NO_THROW(a.validate());
  a.operators = {PauliString::parse("ZI")};
  EXPECT_THROW(a.validate(), std::invalid_argument);
}

TEST(Ansatz, SingleLayerGradientMatchesPoolGradient) {
  const auto h = random_real_hamiltonian(4, 30, 5);
  Ansatz a;
  a.n_qubits = 4;
  a.reference = 0b0011;
  a.operators = {PauliString::parse("XYZI")};
  a.parameters = {0.37};
  const auto eg = ansatz_energy_gradient(a, h);
  const auto state = a.prepare();
  EXPECT_NEAR(eg.energy, expectation(h, state), 1e-13);
  // d/dt E(exp(tA) psi) at the current point is the pool gradient there.
  EXPECT_NEAR(eg.gradient[0], pool_gradients(h, state, a.operators)[0], 1e-12);
}

TEST(Ansatz, AdjointGradientMatchesFiniteDifferences) {
  Rng rng(9);
  const double step = 1e-5;
  for (int trial = 0; trial < 20; ++trial) {
    const auto h = random_real_hamiltonian(6, 100, 900 + trial);
    const Ansatz a = random_ansatz(6, 25, rng);
    // Alternate between the cached and the recompute sweep.
    const AnsatzEvaluator eval(h, trial % 2 ? 0 : std::size_t{2} << 30);
    const auto eg = eval.evaluate(a);
    double scale = 0.0;
    for (double g : eg.gradient) scale = std::max(scale, std::abs(g));
    for (std::size_t i = 0; i < a.size(); ++i) {
      auto plus = a.parameters, minus = a.parameters;
      plus[i] += step;
      minus[i] -= step;
      const double fd = (eval.energy(a, plus) - eval.energy(a, minus)) / (2 * step);
      EXPECT_LE(std::abs(eg.gradient[i] - fd), 1e-6 * std::max(1.0, scale))
          << "trial " << trial << " index " << i;
    }
  }
}

TEST(Ansatz, CachedAndRecomputedSweepsAgree) {
  Rng rng(10);
  const auto h = random_real_hamiltonian(5, 50, 10);
  const Ansatz a = random_ansatz(5, 30, rng);
  const auto cached = AnsatzEvaluator(h).evaluate(a);
  const auto recomputed = AnsatzEvaluator(h, 0).evaluate(a);
  EXPECT_NEAR(cached.energy, recomputed.energy, 1e-13);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_NEAR(cached.gradient[i], recomputed.gradient[i], 1e-12);
  }
}

}  // namespace
}  // namespace mcpool
