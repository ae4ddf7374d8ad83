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


#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "mcpool/adapt.hpp"
#include "mcpool/group.hpp"
#include "mcpool/hamiltonian.hpp"
#include "mcpool/pool_io.hpp"
#include "mcpool/pool_search.hpp"
#include "mcpool/statevector.hpp"

namespace {

using namespace mcpool;

Pool bench_pool(int n) { return random_mcp(n, 7, CheckLevel::inseparable); }

void BM_LieClosure(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto pool = bench_pool(n);
  for (auto _ : state) {
    const auto c = lie_closure(pool.operators, std::size_t{1} << (2 * n));
    benchmark::DoNotOptimize(c.size());
  }
}
BENCHMARK(BM_LieClosure)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

void BM_FlipCoverage(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto pool = bench_pool(n);
  const auto group = GeneratedGroup::build(pool.operators);
  for (auto _ : state) benchmark::DoNotOptimize(flip_coverage(group));
}
BENCHMARK(BM_FlipCoverage)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);

void BM_Rotation(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(11);
  const PauliString p = random_odd_string(n, rng);
  RealState s = basis_state(n, 0b0101);
  rotate_in_place(random_odd_string(n, rng), 0.3, s);
  for (auto _ : state) {
    rotate_in_place(p, 0.01, s);
    benchmark::DoNotOptimize(s.amplitudes().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.dimension()));
}
BENCHMARK(BM_Rotation)->DenseRange(8, 16, 4);

void BM_PoolGradients(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto h = random_real_hamiltonian(n, 4 * static_cast<std::size_t>(n), 5);
  const HamiltonianOperator op(h);
  const auto pool = bench_pool(n);
  RealState s = basis_state(n, 0b0011);
  for (const auto& p : pool.operators) rotate_in_place(p, 0.2, s);
  for (auto _ : state) benchmark::DoNotOptimize(pool_gradients(op, s, pool.operators));
}
BENCHMARK(BM_PoolGradients)->DenseRange(6, 12, 2)->Unit(benchmark::kMicrosecond);

void BM_AnsatzGradient(benchmark::State& state) {
  const int n = 8;
  const auto h = random_real_hamiltonian(n, 40, 5);
  const AnsatzEvaluator evaluator(h);
  const auto pool = bench_pool(n);
  Ansatz a;
  a.n_qubits = n;
  a.reference = 0b0011;
  for (int k = 0; k < state.range(0); ++k) {
    a.operators.push_back(pool.operators[static_cast<std::size_t>(k) % pool.operators.size()]);
    a.parameters.push_back(0.1 * (k + 1));
  }
  for (auto _ : state) benchmark::DoNotOptimize(evaluator.evaluate(a).energy);
}
BENCHMARK(BM_AnsatzGradient)->RangeMultiplier(4)->Range(4, 64)->Unit(benchmark::kMicrosecond);

void BM_AdaptRandomN6(benchmark::State& state) {
  const auto h = random_real_hamiltonian(6, 30, 1);
  const auto pool = load_pool(std::string(MCPOOL_DATA_DIR) + "/pools/random_n6.pool");
  AdaptConfig config;
  config.max_iters = 20;
  for (auto _ : state) {
    const auto r = run_adapt(h, pool.operators, 0b000111, config);
    benchmark::DoNotOptimize(r.trace.last().energy);
  }
}
BENCHMARK(BM_AdaptRandomN6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
