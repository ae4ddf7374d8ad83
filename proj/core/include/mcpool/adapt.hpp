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
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mcpool/error.hpp"
#include "mcpool/hamiltonian.hpp"
#include "mcpool/optimizer.hpp"
#include "mcpool/statevector.hpp"

namespace mcpool {

struct AdaptConfig {
  /// Stall once every pool gradient magnitude is below this.
  double eps_grad = 1e-8;
  /// Converged once |E - e_ref| is below this (only with a reference).
  double eps_energy = 1e-8;
  /// Defaults to 4 * 2^n.
  std::optional<int> max_iters;
  OptimizerSettings optimizer;
  double new_parameter_init = 0.0;
  /// Warn (not fail) when the pool's anticommutation graph is disconnected.
  bool check_pool = true;

  /// Throws std::invalid_argument on non-positive thresholds or max_iters < 1.
  void validate() const;
  int iteration_limit(int n_qubits) const;
};

enum class AdaptStatus { converged, gradient_stall, iteration_cap };

std::string to_string(AdaptStatus status);
AdaptStatus parse_adapt_status(std::string_view text);

/// One trace row. Row 0 describes the reference state; row k the optimized
/// state after the k-th operator was added. max_grad is the largest pool
/// gradient magnitude measured at that state.
struct AdaptRecord {
  int iteration = 0;
  std::string op;  // "REF" on row 0
  double max_grad = 0.0;
  double energy = 0.0;
  std::optional<double> error;
  std::size_t params = 0;
  std::size_t evals = 0;  // optimizer evaluations spent in this iteration
};

struct AdaptTrace {
  std::vector<AdaptRecord> records;
  std::optional<AdaptStatus> status;  // empty while running
  std::vector<std::string> warnings;

  std::size_t iterations() const noexcept {
    return records.empty() ? 0 : records.size() - 1;
  }
  const AdaptRecord& last() const { return records.back(); }
};

/// Raised when the optimizer fails mid-run; carries the trace so far.
class AdaptError : public Error {
 public:
  AdaptError(const std::string& what, AdaptTrace partial)
      : Error(what), trace_(std::move(partial)) {}
  const AdaptTrace& trace() const noexcept { return trace_; }

 private:
  AdaptTrace trace_;
};

struct Selection {
  std::size_t index = 0;
  bool stall = false;  // every gradient is exactly zero
};

/// Index of the largest |g_i|, lowest index on exact ties. Throws
/// std::invalid_argument on an empty vector.
Selection selection_tiebreak(std::span<const double> g);

struct AdaptResult {
  Ansatz ansatz;
  AdaptTrace trace;
};

/// Called after each trace row is appended.
using AdaptObserver = std::function<void(const AdaptRecord&)>;

/// Gradient-driven operator selection with full re-optimization after every
/// addition. Deterministic for fixed inputs.
AdaptResult run_adapt(const PauliSumHamiltonian& h,
                      std::span<const PauliString> pool, Mask reference,
                      const AdaptConfig& config = {},
                      std::optional<double> e_ref = std::nullopt,
                      const AdaptObserver& observer = {});

/// Trace CSV: header `iter,op,max_grad,energy,error,params,evals`, numbers
/// with 17 significant digits, a trailing `# status=...` line.
inline constexpr std::string_view kTraceHeader =
    "iter,op,max_grad,energy,error,params,evals";

std::string format_trace_row(const AdaptRecord& r);
std::string format_trace(const AdaptTrace& trace);
/// Header, rows and status written with a flush after every line.
void write_trace_header(std::ostream& out);
void write_trace_row(std::ostream& out, const AdaptRecord& r);
void write_trace_status(std::ostream& out, AdaptStatus status);
/// Throws ParseError.
AdaptTrace parse_trace(std::string_view text);
AdaptTrace load_trace(const std::string& path);

}  // namespace mcpool
