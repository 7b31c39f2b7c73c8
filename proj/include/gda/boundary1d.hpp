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

// The optimal threshold between two univariate Gaussian classes and the
// misclassification probability of a threshold rule (class 1 to the left).

#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "gda/error.hpp"
#include "gda/gaussian.hpp"

namespace gda {

struct UnivariateClass {
  double mean;
  double variance;
  double prior;
};

/// Two univariate Gaussian classes with mean1 < mean2, positive variances
/// and priors summing to one.
class UnivariateClassPair {
 public:
  UnivariateClassPair(UnivariateClass first, UnivariateClass second)
      : first_(first), second_(second) {
    if (!(first.mean < second.mean)) {
      throw Error(ErrorCode::kInvalidArgument, "class means must satisfy mean1 < mean2");
    }
    if (!(first.variance > 0.0) || !(second.variance > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "variances must be positive");
    }
    if (!(first.prior > 0.0) || !(second.prior > 0.0) ||
        std::abs(first.prior + second.prior - 1.0) > 1e-12) {
      throw Error(ErrorCode::kPriorSumInvalid, "priors must be positive and sum to 1");
    }
  }

  const UnivariateClass& first() const noexcept { return first_; }
  const UnivariateClass& second() const noexcept { return second_; }

  /// ln(pi_1 f_1(x)) - ln(pi_2 f_2(x)).
  double log_posterior_gap(double x) const {
    return log_scaled(first_, x) - log_scaled(second_, x);
  }

  static double log_scaled(const UnivariateClass& c, double x) {
    const double z = x - c.mean;
    return std::log(c.prior) - 0.5 * (kLogTwoPi + std::log(c.variance)) - 0.5 * z * z / c.variance;
  }

 private:
  UnivariateClass first_;
  UnivariateClass second_;
};

/// (1 - F_1(x*)) pi_1 + F_2(x*) pi_2.
inline double error_probability(const UnivariateClassPair& pair, double x_star) {
  const auto& a = pair.first();
  const auto& b = pair.second();
  const double upper_tail_1 = std_normal_cdf(-(x_star - a.mean) / std::sqrt(a.variance));
  const double lower_tail_2 = std_normal_cdf((x_star - b.mean) / std::sqrt(b.variance));
  return upper_tail_1 * a.prior + lower_tail_2 * b.prior;
}

struct BoundaryResult {
  double x_star;              ///< root minimizing error_probability
  std::vector<double> roots;  ///< every real crossing of pi_1 f_1 and pi_2 f_2, ascending
};

/// Solves ln(pi_1 f_1(x)) = ln(pi_2 f_2(x)), a quadratic a x^2 + b x + c = 0
/// (linear when the variances are equal). Among the real roots the one with
/// the smallest error probability wins; ties prefer a root in (mean1, mean2).
inline BoundaryResult optimal_boundary(const UnivariateClassPair& pair) {
  const auto& p = pair.first();
  const auto& q = pair.second();
  const double a = -0.5 / p.variance + 0.5 / q.variance;
  const double b = p.mean / p.variance - q.mean / q.variance;
  const double c = -0.5 * p.mean * p.mean / p.variance + 0.5 * q.mean * q.mean / q.variance -
                   0.5 * std::log(p.variance) + 0.5 * std::log(q.variance) + std::log(p.prior) -
                   std::log(q.prior);

  std::vector<double> roots;
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) {
    throw Error(ErrorCode::kNoCrossing,
                "the scaled densities never cross (discriminant " + std::to_string(disc) + ")");
  }
  // Cancellation-free form: q = -(b + sign(b) sqrt(disc)) / 2, roots q/a and c/q.
  const double sq = std::sqrt(disc);
  const double qq = -0.5 * (b + (b >= 0.0 ? sq : -sq));
  if (qq != 0.0) roots.push_back(c / qq);
  if (a != 0.0) roots.push_back(qq / a);
  if (roots.empty()) {
    throw Error(ErrorCode::kNoCrossing, "degenerate boundary equation");
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());

  auto inside = [&](double x) { return x > p.mean && x < q.mean; };
  double best = roots.front();
  double best_err = error_probability(pair, best);
  for (std::size_t i = 1; i < roots.size(); ++i) {
    const double err = error_probability(pair, roots[i]);
    if (err < best_err || (err == best_err && inside(roots[i]) && !inside(best))) {
      best = roots[i];
      best_err = err;
    }
  }
  return {best, roots};
}

}  // namespace gda
