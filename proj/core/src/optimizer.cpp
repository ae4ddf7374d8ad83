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

#include "mcpool/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <optional>
#include <utility>

namespace mcpool {

namespace {

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double inf_norm(const Vec& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

struct Point {
  Vec x;
  double f = 0.0;
  Vec g;
};

// Counts evaluations, rejects non-finite output and remembers the best point.
class Counter {
 public:
  Counter(const Objective& f, std::size_t budget) : f_(f), budget_(budget) {}

  Point eval(Vec x) {
    Point p{std::move(x), 0.0, Vec(0)};
    p.g.assign(p.x.size(), 0.0);
    p.f = f_(p.x, p.g);
    ++count_;
    if (!std::isfinite(p.f)) throw OptimizerError("objective returned a non-finite value");
    for (double v : p.g) {
      if (!std::isfinite(v)) throw OptimizerError("objective returned a non-finite gradient");
    }
    if (!has_best_ || p.f < best_.f) {
      best_ = p;
      has_best_ = true;
    }
    return p;
  }

  bool exhausted() const noexcept { return count_ >= budget_; }
  std::size_t count() const noexcept { return count_; }
  const Point& best() const noexcept { return best_; }

 private:
  const Objective& f_;
  std::size_t budget_;
  std::size_t count_ = 0;
  Point best_;
  bool has_best_ = false;
};

Vec step_to(const Vec& x, const Vec& d, double a) {
  Vec y(x);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * d[i];
  return y;
}

// Minimizer of the cubic matching values and slopes at a and b, kept inside
// the middle 80% of the bracket; bisection when the fit is unusable.
double interpolate(double a, double fa, double da, double b, double fb, double db) {
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  const double width = hi - lo;
  const double d1 = da + db - 3.0 * (fa - fb) / (a - b);
  const double disc = d1 * d1 - da * db;
  double t = 0.5 * (a + b);
  if (disc >= 0.0) {
    const double d2 = std::copysign(std::sqrt(disc), b - a);
    const double denom = db - da + 2.0 * d2;
    if (denom != 0.0) {
      const double c = b - (b - a) * (db + d2 - d1) / denom;
      if (std::isfinite(c)) t = c;
    }
  }
  return std::clamp(t, lo + 0.1 * width, hi - 0.1 * width);
}

// Root of the linear model of the slope between a and b, used when the
// function values are too close to compare.
double secant(double a, double da, double b, double db) {
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  const double width = hi - lo;
  double t = 0.5 * (a + b);
  if (db != da) {
    const double c = a - da * (b - a) / (db - da);
    if (std::isfinite(c)) t = c;
  }
  return std::clamp(t, lo + 0.1 * width, hi - 0.1 * width);
}

// Energy differences near rounding level carry no information. Within that
// band the search falls back to the approximate Wolfe test (Hager and Zhang),
// which relies on the slope alone.
double noise_level(double f) { return 1e-14 * std::max(1.0, std::abs(f)); }

struct LineSearch {
  static constexpr double c1 = 1e-4;
  static constexpr double c2 = 0.9;
  static constexpr double approx_delta = 0.1;

  Counter& counter;
  const Point& start;
  const Vec& d;
  double slope0;

  struct Sample {
    double a;
    Point p;
    double slope;
  };

  Sample sample(double a) {
    Point p = counter.eval(step_to(start.x, d, a));
    const double s = dot(p.g, d);
    return {a, std::move(p), s};
  }

  bool sufficient(const Sample& s) const {
    return s.p.f <= start.f + c1 * s.a * slope0;
  }
  bool curvature(const Sample& s) const {
    return std::abs(s.slope) <= -c2 * slope0;
  }
  bool noisy(const Sample& s) const {
    return std::abs(s.p.f - start.f) <= noise_level(start.f);
  }
  bool accept(const Sample& s) const {
    if (sufficient(s) && curvature(s)) return true;
    return noisy(s) && s.slope >= c2 * slope0 &&
           s.slope <= (2.0 * approx_delta - 1.0) * slope0;
  }

  std::optional<Sample> zoom(Sample lo, Sample hi) {
    for (int i = 0; i < 40 && !counter.exhausted(); ++i) {
      if (std::abs(hi.a - lo.a) <= 1e-16 * std::max(1.0, std::abs(lo.a))) break;
      const bool flat = noisy(lo) && noisy(hi);
      const double a = flat ? secant(lo.a, lo.slope, hi.a, hi.slope)
                            : interpolate(lo.a, lo.p.f, lo.slope, hi.a, hi.p.f, hi.slope);
      Sample s = sample(a);
      if (accept(s)) return s;
      if (noisy(s)) {
        if (s.slope * (hi.a - lo.a) >= 0.0) {
          hi = std::move(s);
        } else {
          lo = std::move(s);
        }
      } else if (!sufficient(s) || s.p.f >= lo.p.f) {
        hi = std::move(s);
      } else {
        if (s.slope * (hi.a - lo.a) >= 0.0) hi = lo;
        lo = std::move(s);
      }
    }
    // Accept any strict decrease found in the bracket, or a flatter point
    // inside the noise band.
    if (lo.a > 0.0 && (lo.p.f < start.f ||
                       (noisy(lo) && std::abs(lo.slope) < std::abs(slope0)))) {
      return lo;
    }
    return std::nullopt;
  }

  std::optional<Sample> run(double a0) {
    Sample prev{0.0, start, slope0};
    double a = a0;
    for (int i = 0; i < 40 && !counter.exhausted(); ++i) {
      Sample s = sample(a);
      if (accept(s)) return s;
      if (noisy(s)) {
        if (s.slope >= 0.0) return zoom(std::move(prev), std::move(s));
      } else if (!sufficient(s) || (i > 0 && s.p.f >= prev.p.f)) {
        return zoom(std::move(prev), std::move(s));
      } else if (s.slope >= 0.0) {
        return zoom(std::move(s), std::move(prev));
      }
      prev = std::move(s);
      a *= 2.0;
    }
    if (prev.a > 0.0 && prev.p.f < start.f) return prev;
    return std::nullopt;
  }
};

}  // namespace

MinimizeResult lbfgs_minimize(const Objective& f, std::vector<double> x0,
                              const OptimizerSettings& settings) {
  MinimizeResult result;
  if (x0.empty()) {
    Vec g;
    result.value = f(x0, g);
    result.evaluations = 1;
    if (!std::isfinite(result.value)) {
      throw OptimizerError("objective returned a non-finite value");
    }
    result.converged = true;
    return result;
  }
  for (double v : x0) {
    if (!std::isfinite(v)) throw OptimizerError("non-finite initial parameter");
  }

  Counter counter(f, std::max<std::size_t>(settings.max_evaluations, 1));
  Point cur = counter.eval(std::move(x0));
  const double f0 = cur.f;
  std::deque<std::pair<Vec, Vec>> memory;  // (s, y) pairs, newest last
  bool converged = inf_norm(cur.g) <= settings.gradient_tolerance;
  bool restarted = false;

  while (!converged && !counter.exhausted()) {
    // Two-loop recursion for d = -H g.
    Vec q = cur.g;
    std::vector<double> alphas(memory.size());
    for (std::size_t i = memory.size(); i-- > 0;) {
      const auto& [s, y] = memory[i];
      alphas[i] = dot(s, q) / dot(y, s);
      for (std::size_t k = 0; k < q.size(); ++k) q[k] -= alphas[i] * y[k];
    }
    if (!memory.empty()) {
      const auto& [s, y] = memory.back();
      const double gamma = dot(s, y) / dot(y, y);
      for (double& v : q) v *= gamma;
    }
    for (std::size_t i = 0; i < memory.size(); ++i) {
      const auto& [s, y] = memory[i];
      const double beta = dot(y, q) / dot(y, s);
      for (std::size_t k = 0; k < q.size(); ++k) q[k] += (alphas[i] - beta) * s[k];
    }
    Vec d(q.size());
    for (std::size_t k = 0; k < q.size(); ++k) d[k] = -q[k];
    double slope = dot(cur.g, d);
    if (!(slope < 0.0)) {
      memory.clear();
      for (std::size_t k = 0; k < d.size(); ++k) d[k] = -cur.g[k];
      slope = dot(cur.g, d);
    }
    const double a0 = memory.empty() ? std::min(1.0, 1.0 / inf_norm(cur.g)) : 1.0;

    LineSearch ls{counter, cur, d, slope};
    auto found = ls.run(a0);
    if (!found) {
      // Retry once along steepest descent before giving up.
      if (memory.empty() || restarted) break;
      memory.clear();
      restarted = true;
      continue;
    }
    restarted = false;
    ++result.iterations;

    Vec s(cur.x.size()), y(cur.x.size());
    for (std::size_t k = 0; k < s.size(); ++k) {
      s[k] = found->p.x[k] - cur.x[k];
      y[k] = found->p.g[k] - cur.g[k];
    }
    if (dot(s, y) > 1e-14 * std::sqrt(dot(s, s) * dot(y, y))) {
      memory.emplace_back(std::move(s), std::move(y));
      if (memory.size() > settings.memory) memory.pop_front();
    }
    cur = std::move(found->p);
    converged = inf_norm(cur.g) <= settings.gradient_tolerance;
  }

  // The last iterate wins over the lowest value when the two are equal up to
  // rounding, since it usually has the smaller gradient.
  const Point& best_seen = counter.best();
  const bool take_last = cur.f <= best_seen.f + noise_level(best_seen.f) &&
                         cur.f <= f0 + 1e-12;
  const Point& best = take_last ? cur : best_seen;
  result.x = best.x;
  result.value = best.f;
  result.gradient_norm = inf_norm(best.g);
  result.evaluations = counter.count();
  result.converged = result.gradient_norm <= settings.gradient_tolerance;
  return result;
}

MinimizeResult vqe_minimize(const Ansatz& ansatz,
                            std::span<const double> theta_init,
                            const AnsatzEvaluator& evaluator,
                            const OptimizerSettings& settings) {
  const Objective objective = [&](std::span<const double> theta,
                                  std::span<double> grad) {
    const EnergyGradient eg = evaluator.evaluate(ansatz, theta);
    std::copy(eg.gradient.begin(), eg.gradient.end(), grad.begin());
    return eg.energy;
  };
  return lbfgs_minimize(objective, Vec(theta_init.begin(), theta_init.end()),
                        settings);
}

}  // namespace mcpool
