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

// Metric view of Gaussian discriminants: per-class whitening, Mahalanobis
// distance, classical MDS double-centering, and the two-class Fisher
// direction together with its agreement with the LDA normal vector.

#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gda/error.hpp"
#include "gda/estimation.hpp"
#include "gda/gaussian.hpp"
#include "gda/linalg.hpp"

namespace gda {

/// phi(x) = Lambda^{-1/2} U^T x for Sigma = U Lambda U^T.
class WhiteningTransform {
 public:
  explicit WhiteningTransform(const SymMatrix& source) : source_(source) {
    const EigenPair eig = sym_eig(source);
    const double largest = eig.values.front();
    if (!(eig.values.back() > 1e-12 * largest) || !(largest > 0.0)) {
      throw Error(ErrorCode::kNotPositiveDefinite, "whitening needs a positive definite covariance");
    }
    for (double v : eig.values) scale_.push_back(1.0 / std::sqrt(v));
    rotation_ = transpose(eig.vectors);
  }

  const Vector& scale() const noexcept { return scale_; }
  const Matrix& rotation() const noexcept { return rotation_; }
  const SymMatrix& source() const noexcept { return source_; }

  Vector apply(std::span<const double> x) const {
    Vector y = matvec(rotation_, x);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] *= scale_[i];
    return y;
  }

 private:
  SymMatrix source_;
  Vector scale_;
  Matrix rotation_;
};

inline WhiteningTransform whitening(const GaussianParams& p) { return WhiteningTransform(p.cov()); }

/// (x - mu)^T Sigma^{-1} (x - mu).
inline double mahalanobis_sq(const GaussianParams& p, std::span<const double> x) {
  return p.mahalanobis_sq(x);
}

/// K = -1/2 H D H with H = I - (1/n) 1 1^T, for a matrix of squared distances.
inline Matrix double_center(const Matrix& d) {
  const std::size_t n = d.rows();
  if (n == 0 || d.cols() != n) {
    throw Error(ErrorCode::kNotDistanceMatrix, "distance matrix must be square and non-empty");
  }
  double max_abs = 0.0;
  for (double v : d.data()) max_abs = std::max(max_abs, std::abs(v));
  const double tol = 1e-12 * std::max(1.0, max_abs);
  for (std::size_t i = 0; i < n; ++i) {
    if (d(i, i) != 0.0) throw Error(ErrorCode::kNotDistanceMatrix, "nonzero diagonal entry");
    for (std::size_t j = 0; j < n; ++j) {
      if (d(i, j) < 0.0) throw Error(ErrorCode::kNotDistanceMatrix, "negative distance");
      if (std::abs(d(i, j) - d(j, i)) > tol) {
        throw Error(ErrorCode::kNotDistanceMatrix, "distance matrix is not symmetric");
      }
    }
  }

  const double inv_n = 1.0 / static_cast<double>(n);
  Vector row_mean(n, 0.0);
  double grand = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) row_mean[i] += d(i, j);
    grand += row_mean[i];
    row_mean[i] *= inv_n;
  }
  grand *= inv_n * inv_n;
  // D is symmetric, so column means equal row means.
  Matrix k(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      k(i, j) = -0.5 * (d(i, j) - row_mean[i] - row_mean[j] + grand);
    }
  }
  return SymMatrix(k).matrix();
}

struct FisherDirection {
  Vector u;                ///< unit norm, first non-negligible entry positive
  double criterion_value;  ///< Fisher ratio at u
};

/// (u^T (mu2 - mu1))^2 / u^T (Sigma1 + Sigma2) u.
inline double fisher_criterion(std::span<const double> u, std::span<const double> mu1,
                               std::span<const double> mu2, const SymMatrix& sigma1,
                               const SymMatrix& sigma2) {
  const Vector diff = subtract(mu2, mu1);
  const double between = dot(u, diff);
  return between * between / quadratic_form(add(sigma1, sigma2), u);
}

/// Maximizer of the Fisher criterion: the top generalized eigenvector of
/// ((mu2 - mu1)(mu2 - mu1)^T, Sigma1 + Sigma2).
inline FisherDirection fisher_direction(std::span<const double> mu1, std::span<const double> mu2,
                                        const SymMatrix& sigma1, const SymMatrix& sigma2) {
  const Vector diff = subtract(mu2, mu1);
  require_same_size(diff.size(), sigma1.dim(), "fisher_direction");
  if (norm2(diff) == 0.0) {
    throw Error(ErrorCode::kDegenerateMeans, "class means coincide; Fisher direction undefined");
  }
  const SymMatrix between(outer(diff, diff));
  const SymMatrix within = add(sigma1, sigma2);
  GeneralizedEig top = generalized_eig_max(between, within);
  const double value = fisher_criterion(top.vector, mu1, mu2, sigma1, sigma2);
  return {std::move(top.vector), value};
}

struct LdaFdaReport {
  double cosine;  ///< |cos| between the Fisher direction and the LDA normal
  double scale;   ///< LDA normal = scale * Fisher direction (signed)
  Vector fisher;
  Vector lda_normal;
};

/// Fisher direction with both class scatters set to the pooled covariance,
/// against the LDA normal vector pooled^{-1} (mu2 - mu1).
inline LdaFdaReport lda_fda_equivalence(const LabeledDataset& ds,
                                        CovarianceMode mode = CovarianceMode::kUnbiased) {
  if (ds.num_classes() != 2) {
    throw Error(ErrorCode::kNotBinary, "LDA/FDA comparison needs exactly two classes");
  }
  const Vector mu1 = estimate_mean(ds, 0);
  const Vector mu2 = estimate_mean(ds, 1);
  const std::vector<ClassCovariance> covs{{ds.class_count(0), estimate_cov(ds, 0, mode)},
                                          {ds.class_count(1), estimate_cov(ds, 1, mode)}};
  const SymMatrix pooled = pooled_cov(covs);

  FisherDirection fda = fisher_direction(mu1, mu2, pooled, pooled);
  Vector normal = cholesky_solve(cholesky(pooled), subtract(mu2, mu1));
  const double normal_len = norm2(normal);
  const double projection = dot(normal, fda.u);
  return {std::abs(projection) / normal_len, projection, std::move(fda.u), std::move(normal)};
}

}  // namespace gda
