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

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "mcpool/error.hpp"
#include "mcpool/statevector.hpp"

namespace mcpool {

struct OptimizerSettings {
  /// Stop once the gradient infinity norm is at most this.
  double gradient_tolerance = 1e-10;
  std::size_t max_evaluations = 10000;
  /// Number of curvature pairs kept by L-BFGS.
  std::size_t memory = 10;
};

/// Raised when the objective returns a non-finite value or gradient.
class OptimizerError : public Error {
 public:
  using Error::Error;
};

struct MinimizeResult {
  std::vector<double> x;
  double value = 0.0;
  double gradient_norm = 0.0;  // infinity norm at x
  std::size_t evaluations = 0;
  std::size_t iterations = 0;
  bool converged = false;  // gradient tolerance reached
};

/// Objective returning f(x) and writing the gradient into `grad`.
using Objective =
    std::function<double(std::span<const double> x, std::span<double> grad)>;

/// L-BFGS with a strong Wolfe line search that switches to the approximate
/// Wolfe test once value differences reach rounding level. Returns the best
/// point seen, or the last iterate when it ties the best up to rounding, so
/// the result value never exceeds f(x0) + 1e-12. Stops on the gradient
/// tolerance, the evaluation budget, or when no line search can make progress.
MinimizeResult lbfgs_minimize(const Objective& f, std::vector<double> x0,
                              const OptimizerSettings& settings = {});

/// Minimizes the ansatz energy over all parameters, starting from theta_init.
MinimizeResult vqe_minimize(const Ansatz& ansatz,
                            std::span<const double> theta_init,
                            const AnsatzEvaluator& evaluator,
                            const OptimizerSettings& settings = {});

}  // namespace mcpool
