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

#include "mcpool/adapt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mcpool/group.hpp"

namespace mcpool {

void AdaptConfig::validate() const {
  if (!(eps_grad > 0.0) || !(eps_energy > 0.0)) {
    throw std::invalid_argument("ADAPT thresholds must be positive");
  }
  if (max_iters && *max_iters < 1) {
    throw std::invalid_argument("max_iters must be at least 1");
  }
  if (!std::isfinite(new_parameter_init)) {
    throw std::invalid_argument("new_parameter_init must be finite");
  }
}

int AdaptConfig::iteration_limit(int n_qubits) const {
  if (max_iters) return *max_iters;
  return n_qubits >= 29 ? (1 << 30) : 4 * (1 << n_qubits);
}

std::string to_string(AdaptStatus status) {
  switch (status) {
    case AdaptStatus::converged: return "converged";
    case AdaptStatus::gradient_stall: return "gradient_stall";
    case AdaptStatus::iteration_cap: return "iteration_cap";
  }
  return "unknown";
}

AdaptStatus parse_adapt_status(std::string_view text) {
  if (text == "converged") return AdaptStatus::converged;
  if (text == "gradient_stall") return AdaptStatus::gradient_stall;
  if (text == "iteration_cap") return AdaptStatus::iteration_cap;
  throw std::invalid_argument("unknown ADAPT status '" + std::string(text) + "'");
}

Selection selection_tiebreak(std::span<const double> g) {
  if (g.empty()) throw std::invalid_argument("selection over an empty gradient");
  Selection s;
  double best = std::abs(g[0]);
  for (std::size_t i = 1; i < g.size(); ++i) {
    if (std::abs(g[i]) > best) {
      best = std::abs(g[i]);
      s.index = i;
    }
  }
  s.stall = best == 0.0;
  return s;
}

AdaptResult run_adapt(const PauliSumHamiltonian& h,
                      std::span<const PauliString> pool, Mask reference,
                      const AdaptConfig& config, std::optional<double> e_ref,
                      const AdaptObserver& observer) {
  config.validate();
  const int n = h.num_qubits();
  if (pool.empty()) throw std::invalid_argument("ADAPT needs a non-empty pool");
  for (const auto& p : pool) {
    if (p.num_qubits() != n) {
      throw std::invalid_argument("pool operator '" + p.str() +
                                  "' does not match the Hamiltonian width");
    }
    if (!p.is_odd()) {
      throw std::invalid_argument("pool operator '" + p.str() + "' is even");
    }
  }
  if (reference & ~low_bits(n)) {
    throw std::invalid_argument("reference occupation exceeds qubit count");
  }

  AdaptResult result;
  AdaptTrace& trace = result.trace;
  if (config.check_pool && !inseparability(pool)) {
    trace.warnings.push_back(
        "pool is separable (its anticommutation graph is disconnected), so it "
        "cannot be complete");
  }

  Ansatz& ansatz = result.ansatz;
  ansatz.n_qubits = n;
  ansatz.reference = reference;
  const AnsatzEvaluator evaluator(h);
  const int limit = config.iteration_limit(n);

  auto record = [&](AdaptRecord r) {
    trace.records.push_back(std::move(r));
    if (observer) observer(trace.records.back());
  };
  auto error_of = [&](double e) -> std::optional<double> {
    if (!e_ref) return std::nullopt;
    return std::abs(e - *e_ref);
  };
  auto max_abs = [](const std::vector<double>& g) {
    double m = 0.0;
    for (double v : g) m = std::max(m, std::abs(v));
    return m;
  };

  RealState psi = ansatz.prepare();
  std::vector<double> grads = pool_gradients(evaluator.hamiltonian(), psi, pool);
  double energy = expectation(evaluator.hamiltonian(), psi);
  record({0, "REF", max_abs(grads), energy, error_of(energy), 0, 1});

  for (int iter = 1;; ++iter) {
    const auto err = trace.last().error;
    if (err && *err < config.eps_energy) {
      trace.status = AdaptStatus::converged;
      break;
    }
    if (trace.last().max_grad < config.eps_grad) {
      trace.status = AdaptStatus::gradient_stall;
      break;
    }
    if (iter > limit) {
      trace.status = AdaptStatus::iteration_cap;
      break;
    }

    const Selection pick = selection_tiebreak(grads);
    ansatz.operators.push_back(pool[pick.index]);
    ansatz.parameters.push_back(config.new_parameter_init);

    MinimizeResult opt;
    try {
      opt = vqe_minimize(ansatz, ansatz.parameters, evaluator, config.optimizer);
    } catch (const OptimizerError& e) {
      throw AdaptError(std::string("optimizer failed at iteration ") +
                           std::to_string(iter) + ": " + e.what(),
                       trace);
    }
    ansatz.parameters = opt.x;
    energy = opt.value;
    psi = ansatz.prepare();
    grads = pool_gradients(evaluator.hamiltonian(), psi, pool);
    record({iter, pool[pick.index].str(), max_abs(grads), energy,
            error_of(energy), ansatz.size(), opt.evaluations});
  }
  return result;
}

}  // namespace mcpool
