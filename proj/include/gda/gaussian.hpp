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

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "gda/error.hpp"
#include "gda/linalg.hpp"

namespace gda {

inline constexpr double kLogTwoPi = 1.8378770664093454835606594728112;  // ln(2*pi)

/// Mean and covariance of a multivariate normal together with the
/// factorizations every density evaluation needs. Immutable.
class GaussianParams {
 public:
  GaussianParams(Vector mean, SymMatrix cov)
      : mean_(std::move(mean)), cov_(std::move(cov)), chol_(), inverse_(SymMatrix::identity(1)) {
    require_same_size(mean_.size(), cov_.dim(), "GaussianParams mean/cov");
    chol_ = cholesky(cov_);
    auto inv = inverse_from_cholesky(chol_);
    inverse_ = std::move(inv.inverse);
    logdet_ = inv.logdet;
  }

  std::size_t dim() const noexcept { return mean_.size(); }
  const Vector& mean() const noexcept { return mean_; }
  const SymMatrix& cov() const noexcept { return cov_; }
  const Matrix& cholesky_factor() const noexcept { return chol_; }
  const SymMatrix& inverse() const noexcept { return inverse_; }
  double logdet() const noexcept { return logdet_; }

  /// z = L^{-1} (x - mu); ||z||^2 is the squared Mahalanobis distance.
  Vector whitened_residual(std::span<const double> x) const {
    require_same_size(x.size(), dim(), "Gaussian argument");
    return forward_substitute(chol_, subtract(x, mean_));
  }

  double mahalanobis_sq(std::span<const double> x) const {
    const Vector z = whitened_residual(x);
    double s = 0.0;
    for (double v : z) s += v * v;
    return s;
  }

 private:
  Vector mean_;
  SymMatrix cov_;
  Matrix chol_;
  SymMatrix inverse_;
  double logdet_ = 0.0;
};

/// -(d/2) ln(2 pi) - (1/2) ln|Sigma| - (1/2) (x-mu)^T Sigma^{-1} (x-mu).
inline double log_pdf(const GaussianParams& p, std::span<const double> x) {
  const double d = static_cast<double>(p.dim());
  return -0.5 * d * kLogTwoPi - 0.5 * p.logdet() - 0.5 * p.mahalanobis_sq(x);
}

inline double pdf(const GaussianParams& p, std::span<const double> x) {
  return std::exp(log_pdf(p, x));
}

/// Standard normal CDF through the complementary error function.
inline double std_normal_cdf(double z) {
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

// ---------------------------------------------------------------------------
// Random numbers.
//
// The generator is std::mt19937_64, whose output sequence is fixed by the
// C++ standard. Uniform doubles take the top 53 bits of each draw; normal
// variates use the Box-Muller transform. Neither step goes through the
// implementation-defined std:: distributions, so streams are identical on
// every platform.

/// SplitMix64 finalizer; used to derive independent seeds from one seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n).
  std::size_t uniform_index(std::size_t n) {
    return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
  }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(angle);
    has_spare_ = true;
    return r * std::cos(angle);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Draws `count` rows mu + L z with z standard normal.
inline std::vector<Vector> sample(const GaussianParams& p, std::size_t count, Rng& rng) {
  if (count == 0) throw Error(ErrorCode::kInvalidArgument, "sample count must be >= 1");
  const std::size_t d = p.dim();
  const Matrix& l = p.cholesky_factor();
  std::vector<Vector> rows;
  rows.reserve(count);
  Vector z(d);
  for (std::size_t n = 0; n < count; ++n) {
    for (double& v : z) v = rng.normal();
    Vector x = p.mean();
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t k = 0; k <= i; ++k) x[i] += l(i, k) * z[k];
    }
    rows.push_back(std::move(x));
  }
  return rows;
}

}  // namespace gda
