// Copyright 2026 The gda Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Gaussian mixture likelihoods and their maximum-likelihood fit by
// expectation-maximization.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gda/error.hpp"
#include "gda/estimation.hpp"
#include "gda/gaussian.hpp"
#include "gda/linalg.hpp"

namespace gda {

/// log(sum(exp(values))) without overflow.
inline double log_sum_exp(std::span<const double> values) {
  double m = -std::numeric_limits<double>::infinity();
  for (double v : values) m = std::max(m, v);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double v : values) s += std::exp(v - m);
  return m + std::log(s);
}

struct MixtureComponent {
  double weight;
  GaussianParams params;
};

/// Weighted sum of Gaussians. Weights are divided by their total unless it
/// is already one within 1e-12 (weights read back from JSON stay bit-exact).
class MixtureModel {
 public:
  explicit MixtureModel(std::vector<MixtureComponent> components)
      : components_(std::move(components)) {
    if (components_.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "mixture needs at least one component");
    }
    double total = 0.0;
    for (const auto& c : components_) {
      if (!(c.weight > 0.0)) {
        throw Error(ErrorCode::kInvalidArgument, "mixture weights must be positive");
      }
      require_same_size(c.params.dim(), components_.front().params.dim(), "mixture component");
      total += c.weight;
    }
    if (std::abs(total - 1.0) > 1e-12) {
      for (auto& c : components_) c.weight /= total;
    }
  }

  std::size_t size() const noexcept { return components_.size(); }
  std::size_t dim() const noexcept { return components_.front().params.dim(); }
  const std::vector<MixtureComponent>& components() const noexcept { return components_; }

 private:
  std::vector<MixtureComponent> components_;
};

inline double log_pdf_mix(const MixtureModel& m, std::span<const double> x) {
  require_same_size(x.size(), m.dim(), "mixture argument");
  std::vector<double> terms;
  terms.reserve(m.size());
  for (const auto& c : m.components()) terms.push_back(std::log(c.weight) + log_pdf(c.params, x));
  return log_sum_exp(terms);
}

/// Posterior membership of x in each component (the EM E-step for one point).
inline Vector responsibilities(const MixtureModel& m, std::span<const double> x) {
  require_same_size(x.size(), m.dim(), "mixture argument");
  Vector terms;
  terms.reserve(m.size());
  for (const auto& c : m.components()) terms.push_back(std::log(c.weight) + log_pdf(c.params, x));
  const double lse = log_sum_exp(terms);
  for (double& t : terms) t = std::exp(t - lse);
  return terms;
}

struct EmOptions {
  int max_iterations = 500;
  double tolerance = 1e-8;  ///< on the per-point log-likelihood gain
  int restarts = 5;
  double covariance_floor_scale = 1e-6;  ///< eigenvalue floor = scale * trace(global cov) / d
};

struct EmResult {
  MixtureModel model;
  /// Per-point average log-likelihood before each M-step of the winning run,
  /// followed by the value at the returned parameters.
  std::vector<double> log_likelihood_trace;
  int iterations = 0;
  bool converged = false;
  int floor_engagements = 0;
  std::vector<std::vector<double>> all_traces;  ///< one per successful restart
};

namespace detail {

/// k-means++ seeding: the first center uniform, each next one drawn with
/// probability proportional to the squared distance to the nearest center.
inline std::vector<Vector> kmeanspp_seeds(std::span<const Vector> points, std::size_t k, Rng& rng) {
  std::vector<Vector> centers;
  centers.push_back(points[rng.uniform_index(points.size())]);
  std::vector<double> d2(points.size(), std::numeric_limits<double>::infinity());
  while (centers.size() < k) {
    double total = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const Vector diff = subtract(points[i], centers.back());
      d2[i] = std::min(d2[i], dot(diff, diff));
      total += d2[i];
    }
    std::size_t pick = points.size() - 1;
    if (total > 0.0) {
      double target = rng.uniform() * total;
      for (std::size_t i = 0; i < points.size(); ++i) {
        target -= d2[i];
        if (target < 0.0) {
          pick = i;
          break;
        }
      }
    } else {
      pick = rng.uniform_index(points.size());
    }
    centers.push_back(points[pick]);
  }
  return centers;
}

/// Eigenvalues below the floor are raised to it, the covariance maximizing
/// the M-step objective subject to lambda_min >= floor.
inline SymMatrix floored(const SymMatrix& cov, double floor, int& engagements) {
  EigenPair eig = sym_eig(cov);
  if (eig.values.back() >= floor) return cov;
  ++engagements;
  for (double& v : eig.values) v = std::max(v, floor);
  return SymMatrix(matmul(matmul(eig.vectors, Matrix::diagonal(eig.values)), transpose(eig.vectors)));
}

struct EmRun {
  std::vector<MixtureComponent> components;
  std::vector<double> trace;
  int iterations = 0;
  bool converged = false;
  int floor_engagements = 0;
};

inline EmRun em_single_run(std::span<const Vector> points, std::size_t k,
                           const SymMatrix& global_cov, double floor, Rng& rng,
                           const EmOptions& opts) {
  const std::size_t n = points.size();
  const std::size_t d = global_cov.dim();
  EmRun run;

  const SymMatrix init_cov = floored(global_cov, floor, run.floor_engagements);
  for (Vector& mean : kmeanspp_seeds(points, k, rng)) {
    run.components.push_back({1.0 / static_cast<double>(k), GaussianParams(std::move(mean), init_cov)});
  }

  std::vector<std::vector<double>> resp(n, std::vector<double>(k));
  std::vector<double> terms(k);
  double previous = -std::numeric_limits<double>::infinity();
  for (int iter = 0;; ++iter) {
    // E-step.
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t c = 0; c < k; ++c) {
        terms[c] = std::log(run.components[c].weight) + log_pdf(run.components[c].params, points[i]);
      }
      const double lse = log_sum_exp(terms);
      total += lse;
      for (std::size_t c = 0; c < k; ++c) resp[i][c] = std::exp(terms[c] - lse);
    }
    const double current = total / static_cast<double>(n);
    run.trace.push_back(current);
    if (iter > 0 && current - previous < opts.tolerance) {
      run.converged = true;
      break;
    }
    if (iter == opts.max_iterations) break;
    previous = current;
    run.iterations = iter + 1;

    // M-step.
    std::vector<MixtureComponent> next;
    next.reserve(k);
    for (std::size_t c = 0; c < k; ++c) {
      double nk = 0.0;
      for (std::size_t i = 0; i < n; ++i) nk += resp[i][c];
      if (!(nk > 1e-10 * static_cast<double>(n))) {
        throw Error(ErrorCode::kDegenerateComponent,
                    "component " + std::to_string(c) + " lost all responsibility");
      }
      Vector mean(d, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < d; ++j) mean[j] += resp[i][c] * points[i][j];
      }
      for (double& v : mean) v /= nk;
      Matrix s(d, d);
      Vector dev(d);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < d; ++j) dev[j] = points[i][j] - mean[j];
        for (std::size_t a = 0; a < d; ++a) {
          for (std::size_t b = a; b < d; ++b) s(a, b) += resp[i][c] * dev[a] * dev[b];
        }
      }
      for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = a; b < d; ++b) {
          s(a, b) /= nk;
          s(b, a) = s(a, b);
        }
      }
      SymMatrix cov = floored(SymMatrix(s), floor, run.floor_engagements);
      try {
        next.push_back({nk / static_cast<double>(n), GaussianParams(std::move(mean), std::move(cov))});
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kNotPositiveDefinite) throw;
        throw Error(ErrorCode::kDegenerateComponent,
                    "component " + std::to_string(c) + " covariance collapsed");
      }
    }
    run.components = std::move(next);
  }
  return run;
}

}  // namespace detail

/// Fits a `k`-component mixture by EM, keeping the best of `opts.restarts`
/// seeded runs. Components come back sorted by their first mean coordinate.
inline EmResult em_fit(std::span<const Vector> points, std::size_t k, Rng& rng,
                       const EmOptions& opts = {}) {
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "mixture needs k >= 1");
  if (points.empty()) throw Error(ErrorCode::kTooFewPoints, "no points to fit");
  const std::size_t d = points.front().size();
  if (points.size() < k * (d + 1)) {
    throw Error(ErrorCode::kTooFewPoints, std::to_string(points.size()) + " points for " +
                                              std::to_string(k) + " components in dim " +
                                              std::to_string(d));
  }
  if (opts.restarts < 1) throw Error(ErrorCode::kInvalidArgument, "restarts must be >= 1");

  const Vector global_mean = mean_of(points);
  const SymMatrix global_cov =
      scatter_of(points, global_mean, static_cast<double>(points.size()));
  double trace = 0.0;
  for (std::size_t i = 0; i < d; ++i) trace += global_cov(i, i);
  double floor = opts.covariance_floor_scale * trace / static_cast<double>(d);
  if (!(floor > 0.0)) floor = opts.covariance_floor_scale;

  std::optional<detail::EmRun> best;
  std::vector<std::vector<double>> traces;
  std::optional<Error> last_error;
  for (int r = 0; r < opts.restarts; ++r) {
    try {
      detail::EmRun run = detail::em_single_run(points, k, global_cov, floor, rng, opts);
      traces.push_back(run.trace);
      if (!best || run.trace.back() > best->trace.back()) best = std::move(run);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDegenerateComponent) throw;
      last_error = e;
    }
  }
  if (!best) throw *last_error;

  std::stable_sort(best->components.begin(), best->components.end(),
                   [](const MixtureComponent& a, const MixtureComponent& b) {
                     return a.params.mean()[0] < b.params.mean()[0];
                   });
  EmResult result{MixtureModel(std::move(best->components)), std::move(best->trace),
                  best->iterations, best->converged, best->floor_engagements, std::move(traces)};
  return result;
}

}  // namespace gda
