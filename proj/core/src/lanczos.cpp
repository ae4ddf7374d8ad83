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

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

#include "mcpool/error.hpp"
#include "mcpool/hamiltonian.hpp"
#include "mcpool/rng.hpp"

namespace mcpool {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void axpy(double alpha, const std::vector<double>& x, std::vector<double>& y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void scale(std::vector<double>& v, double f) {
  for (double& x : v) x *= f;
}

}  // namespace

GroundState lanczos_ground_state(const PauliSumHamiltonian& h,
                                 const LanczosOptions& options) {
  const int n = h.num_qubits();
  if (n > options.max_qubits) {
    throw std::invalid_argument("exact diagonalization is capped at " +
                                std::to_string(options.max_qubits) +
                                " qubits, Hamiltonian has " + std::to_string(n));
  }
  const auto& sector = options.sector_constraints;
  if (sector) {
    if (sector->n_qubits != n) {
      throw std::invalid_argument("sector constraints width differs from Hamiltonian");
    }
    for (const auto& t : h.terms()) {
      if (!satisfies_constraints(t.string, *sector)) {
        throw std::invalid_argument("term '" + t.string.str() +
                                    "' leaves the requested symmetry sector");
      }
    }
  }

  const HamiltonianOperator op(h);
  const std::size_t dim = op.dimension();

  Rng rng(options.seed);
  std::vector<double> v(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    const bool inside =
        !sector || same_sector(static_cast<Mask>(k), options.sector_reference, *sector);
    v[k] = inside ? rng.normal() : 0.0;
  }
  const double v_norm = std::sqrt(dot(v, v));
  scale(v, 1.0 / v_norm);

  std::vector<std::vector<double>> basis;
  std::vector<double> alpha, beta;  // beta[j] couples basis j and j+1
  std::vector<double> w(dim);
  const int limit = static_cast<int>(
      std::min<std::size_t>(dim, static_cast<std::size_t>(options.max_iterations)));

  GroundState result;
  for (int j = 0; j < limit; ++j) {
    basis.push_back(v);
    op.apply(basis.back(), w);
    const double a = dot(basis.back(), w);
    alpha.push_back(a);
    axpy(-a, basis.back(), w);
    if (j > 0) axpy(-beta.back(), basis[basis.size() - 2], w);
    // Two passes of classical Gram-Schmidt keep the basis orthogonal.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : basis) axpy(-dot(q, w), q, w);
    }
    const double b = std::sqrt(dot(w, w));

    const int m = j + 1;
    Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(alpha.data(), m);
    Eigen::VectorXd sub(std::max(m - 1, 0));
    for (int i = 0; i + 1 < m; ++i) sub[i] = beta[static_cast<std::size_t>(i)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
    tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    const double theta = tri.eigenvalues()[0];
    const double residual = std::abs(b * tri.eigenvectors()(m - 1, 0));

    result.energy = theta;
    result.residual = residual;
    result.iterations = m;
    // An exhausted Krylov space means the Ritz values are exact.
    const double breakdown = 1e-13 * std::max(1.0, std::abs(theta));
    if (residual <= options.residual_tolerance || b <= breakdown) {
      if (b <= breakdown) result.residual = std::min(residual, b);
      return result;
    }
    beta.push_back(b);
    v = w;
    scale(v, 1.0 / b);
  }
  if (static_cast<std::size_t>(limit) == dim) return result;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "Lanczos did not converge in %d iterations (residual %.3e, "
                "tolerance %.3e)",
                limit, result.residual, options.residual_tolerance);
  throw ConvergenceError(buf);
}

double ground_energy(const PauliSumHamiltonian& h, const LanczosOptions& options) {
  return lanczos_ground_state(h, options).energy;
}

}  // namespace mcpool
