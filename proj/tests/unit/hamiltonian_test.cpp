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

#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <stdexcept>

#include "data_path.hpp"
#include "mcpool/error.hpp"
#include "mcpool/rng.hpp"
#include "oracle.hpp"

namespace mcpool {
namespace {

TEST(HamiltonianParse, Examples) {
  const auto h = parse_hamiltonian("1.0 ZZ\n0.5 XX\n");
  EXPECT_EQ(h.num_qubits(), 2);
  EXPECT_EQ(h.size(), 2u);

  const auto merged = parse_hamiltonian("0.5 XX\n0.25 XX\n");
  ASSERT_EQ(merged.size(), 1u);
  EXPECT_DOUBLE_EQ(merged.terms()[0].coefficient, 0.75);

  const auto sci = parse_hamiltonian("# comment\n\n-1.5e-1 IZ  # trailing\n+2 II\n");
  EXPECT_EQ(sci.size(), 2u);
}

TEST(HamiltonianParse, Errors) {
  EXPECT_THROW(parse_hamiltonian("1.0 ZY\n"), ParseError);
  try {
    parse_hamiltonian("1.0 ZZ\nabc XX\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  try {
    parse_hamiltonian("1.0 ZZ\n1.0 ZZZ\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse_hamiltonian("1.0\n"), ParseError);
  EXPECT_THROW(parse_hamiltonian("# empty\n"), ParseError);
  EXPECT_THROW(parse_hamiltonian("nan ZZ\n"), ParseError);
  EXPECT_THROW(PauliSumHamiltonian(2, {{1.0, PauliString::parse("YI")}}), std::invalid_argument);
}

TEST(HamiltonianParse, FormatRoundTripsExactly) {
  const auto h = random_real_hamiltonian(5, 60, 3);
  const auto again = parse_hamiltonian(format_hamiltonian(h));
  ASSERT_EQ(again.size(), h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    EXPECT_EQ(again.terms()[i].string, h.terms()[i].string);
    EXPECT_EQ(again.terms()[i].coefficient, h.terms()[i].coefficient);
  }
  EXPECT_EQ(format_hamiltonian(again), format_hamiltonian(h));
}

TEST(RandomHamiltonian, SupportAndRealness) {
  const auto dense = random_real_hamiltonian(2, count_even_strings(2), 1);
  EXPECT_EQ(dense.size(), 10u);
  for (int n = 3; n <= 6; ++n) {
    const auto h = random_real_hamiltonian(n, 30, 7 + n);
    const Eigen::MatrixXd m = testing::hamiltonian_matrix(h);
    EXPECT_LT((m - m.transpose()).cwiseAbs().maxCoeff(), 1e-14);
    for (const auto& t : h.terms()) EXPECT_TRUE(t.string.is_even());
  }
  EXPECT_THROW(random_real_hamiltonian(2, 11, 1), std::invalid_argument);
}

TEST(RandomHamiltonian, ConstrainedTermsSatisfyConstraints) {
  RandomHamiltonianOptions opts;
  const auto spec = load_symmetry_spec(testing::data_path("symmetry/h4.sym"));
  opts.constraints = build_constraints(spec);
  opts.max_flip_weight = 4;
  const auto h = random_real_hamiltonian(8, 150, 4, opts);
  EXPECT_EQ(h.size(), 150u);
  for (const auto& t : h.terms()) {
    EXPECT_TRUE(satisfies_constraints(t.string, *opts.constraints));
    EXPECT_LE(t.string.flip_weight(), 4);
  }
}

TEST(RandomHamiltonian, IsDeterministic) {
  EXPECT_EQ(format_hamiltonian(random_real_hamiltonian(6, 200, 9)),
            format_hamiltonian(random_real_hamiltonian(6, 200, 9)));
}

TEST(HamiltonianOperator, ApplyMatchesDenseMatrix) {
  for (std::size_t budget : {std::size_t{1} << 29, std::size_t{0}}) {
    const auto h = random_real_hamiltonian(5, 80, 2);
    const HamiltonianOperator op(h, budget);
    const Eigen::MatrixXd m = testing::hamiltonian_matrix(h);
    Rng rng(8);
    Eigen::VectorXd v(32);
    for (int i = 0; i < 32; ++i) v[i] = rng.normal();
    std::vector<double> in(v.data(), v.data() + 32), out(32);
    op.apply(in, out);
    const Eigen::VectorXd expected = m * v;
    for (int i = 0; i < 32; ++i) EXPECT_NEAR(out[static_cast<std::size_t>(i)], expected[i], 1e-12);
    EXPECT_NEAR(op.expectation(in), v.dot(m * v), 1e-11);
  }
}

TEST(Lanczos, SmallExamples) {
  EXPECT_NEAR(ground_energy(parse_hamiltonian("1.0 Z\n")), -1.0, 1e-12);
  const auto h = parse_hamiltonian("0.5 XX\n0.5 ZZ\n");
  EXPECT_NEAR(ground_energy(h), testing::dense_ground_energy(h), 1e-12);
  EXPECT_NEAR(ground_energy(h), -1.0, 1e-12);
}

TEST(Lanczos, AgreesWithDenseOracle) {
  int seed = 0;
  for (int n : {4, 6, 8}) {
    for (int i = 0; i < 7; ++i, ++seed) {
      const std::size_t terms = n == 4 ? 40 : 150;
      const auto h = random_real_hamiltonian(n, terms, 500 + seed);
      const GroundState gs = lanczos_ground_state(h);
      EXPECT_NEAR(gs.energy, testing::dense_ground_energy(h), 1e-9) << n << " " << seed;
      EXPECT_LE(gs.residual, 1e-10);
    }
  }
}

TEST(Lanczos, SectorRestriction) {
  const auto spec = load_symmetry_spec(testing::data_path("symmetry/h4.sym"));
  RandomHamiltonianOptions opts;
  opts.constraints = build_constraints(spec);
  const auto h = random_real_hamiltonian(8, 200, 12, opts);
  LanczosOptions lo;
  lo.sector_constraints = opts.constraints;
  lo.sector_reference = spec.hf_occupation;
  std::vector<std::uint64_t> sector;
  for (Mask k = 0; k < 256; ++k) {
    if (same_sector(k, spec.hf_occupation, *opts.constraints)) sector.push_back(k);
  }
  const double e = ground_energy(h, lo);
  EXPECT_NEAR(e, testing::dense_sector_energy(h, sector), 1e-9);
  EXPECT_GE(e, ground_energy(h) - 1e-9);

  const auto unconstrained = random_real_hamiltonian(8, 50, 1);
  EXPECT_THROW(ground_energy(unconstrained, lo), std::invalid_argument);
}

TEST(Lanczos, RejectsOversizedProblems) {
  LanczosOptions lo;
  lo.max_qubits = 4;
  EXPECT_THROW(ground_energy(random_real_hamiltonian(5, 10, 1), lo), std::invalid_argument);
}

}  // namespace
}  // namespace mcpool
