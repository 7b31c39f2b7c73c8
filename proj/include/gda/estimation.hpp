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

// Class-conditional parameter estimators: priors from class frequencies,
// class means, per-class covariances (MLE or unbiased), the pooled
// covariance shared by LDA and per-feature mean/variance for naive Bayes.

#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gda/error.hpp"
#include "gda/linalg.hpp"

namespace gda {

/// n feature vectors of dimension d, each with a class index in [0, K).
/// K grows to cover every label added; `min_classes` reserves empty classes.
class LabeledDataset {
 public:
  explicit LabeledDataset(std::size_t dim, std::size_t min_classes = 0)
      : dim_(dim), counts_(min_classes, 0) {
    if (dim == 0) throw Error(ErrorCode::kInvalidArgument, "dataset dimension must be >= 1");
  }

  void add(Vector x, int label) {
    require_same_size(x.size(), dim_, "dataset row");
    if (label < 0) {
      throw Error(ErrorCode::kInvalidArgument, "negative class label " + std::to_string(label));
    }
    const auto k = static_cast<std::size_t>(label);
    if (k >= counts_.size()) counts_.resize(k + 1, 0);
    ++counts_[k];
    rows_.push_back(std::move(x));
    labels_.push_back(label);
  }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return rows_.size(); }
  bool empty() const noexcept { return rows_.empty(); }
  std::size_t num_classes() const noexcept { return counts_.size(); }
  const std::vector<Vector>& rows() const noexcept { return rows_; }
  const std::vector<int>& labels() const noexcept { return labels_; }
  const std::vector<std::size_t>& class_counts() const noexcept { return counts_; }

  std::size_t class_count(std::size_t k) const {
    return k < counts_.size() ? counts_[k] : 0;
  }

  std::vector<Vector> class_rows(std::size_t k) const {
    std::vector<Vector> out;
    out.reserve(class_count(k));
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (static_cast<std::size_t>(labels_[i]) == k) out.push_back(rows_[i]);
    }
    return out;
  }

 private:
  std::size_t dim_;
  std::vector<Vector> rows_;
  std::vector<int> labels_;
  std::vector<std::size_t> counts_;
};

enum class CovarianceMode { kMLE, kUnbiased };

/// pi_k = n_k / n.
inline Vector estimate_priors(const LabeledDataset& ds) {
  if (ds.empty()) throw Error(ErrorCode::kEmptyDataset, "cannot estimate priors of an empty dataset");
  const double n = static_cast<double>(ds.size());
  Vector priors;
  priors.reserve(ds.num_classes());
  for (std::size_t count : ds.class_counts()) priors.push_back(static_cast<double>(count) / n);
  return priors;
}

namespace detail {

inline void require_class(const LabeledDataset& ds, std::size_t k, std::size_t min_count,
                          ErrorCode code) {
  const std::size_t nk = ds.class_count(k);
  if (nk == 0) {
    throw Error(ErrorCode::kEmptyClass, "class " + std::to_string(k) + " has no samples");
  }
  if (nk < min_count) {
    throw Error(code, "class " + std::to_string(k) + " has " + std::to_string(nk) +
                          " samples, need at least " + std::to_string(min_count));
  }
}

}  // namespace detail

inline Vector mean_of(std::span<const Vector> rows) {
  if (rows.empty()) throw Error(ErrorCode::kEmptyClass, "mean of no rows");
  Vector mean(rows.front().size(), 0.0);
  for (const Vector& x : rows) {
    require_same_size(x.size(), mean.size(), "row");
    for (std::size_t j = 0; j < mean.size(); ++j) mean[j] += x[j];
  }
  const double n = static_cast<double>(rows.size());
  for (double& v : mean) v /= n;
  return mean;
}

/// Two-pass covariance: sum of (x - mean)(x - mean)^T divided by `divisor`.
inline SymMatrix scatter_of(std::span<const Vector> rows, std::span<const double> mean,
                            double divisor) {
  const std::size_t d = mean.size();
  Matrix s(d, d);
  Vector dev(d);
  for (const Vector& x : rows) {
    for (std::size_t j = 0; j < d; ++j) dev[j] = x[j] - mean[j];
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = i; j < d; ++j) s(i, j) += dev[i] * dev[j];
    }
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      s(i, j) /= divisor;
      s(j, i) = s(i, j);
    }
  }
  return SymMatrix(s);
}

inline Vector estimate_mean(const LabeledDataset& ds, std::size_t k) {
  detail::require_class(ds, k, 1, ErrorCode::kEmptyClass);
  return mean_of(ds.class_rows(k));
}

inline SymMatrix estimate_cov(const LabeledDataset& ds, std::size_t k, CovarianceMode mode) {
  const bool unbiased = mode == CovarianceMode::kUnbiased;
  detail::require_class(ds, k, unbiased ? 2 : 1, ErrorCode::kInsufficientSamples);
  const auto rows = ds.class_rows(k);
  const Vector mean = mean_of(rows);
  const double nk = static_cast<double>(rows.size());
  return scatter_of(rows, mean, unbiased ? nk - 1.0 : nk);
}

struct ClassCovariance {
  std::size_t count;
  SymMatrix cov;
};

/// sum_k n_k Sigma_k / sum_k n_k.
inline SymMatrix pooled_cov(std::span<const ClassCovariance> per_class) {
  if (per_class.empty()) throw Error(ErrorCode::kEmptyDataset, "no class covariances to pool");
  const std::size_t d = per_class.front().cov.dim();
  Matrix acc(d, d);
  double total = 0.0;
  for (const auto& [count, cov] : per_class) {
    require_same_size(cov.dim(), d, "pooled_cov");
    if (count == 0) throw Error(ErrorCode::kEmptyClass, "pooled_cov with an empty class");
    const double w = static_cast<double>(count);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) acc(i, j) += w * cov(i, j);
    }
    total += w;
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) acc(i, j) /= total;
  }
  return SymMatrix(acc);
}

struct FeatureParams {
  double mean;
  double variance;  ///< unbiased; zero marks a constant feature
};

/// Per-class mean and unbiased variance of feature j.
inline FeatureParams estimate_feature_params(const LabeledDataset& ds, std::size_t k,
                                             std::size_t j) {
  if (j >= ds.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "feature index " + std::to_string(j) +
                                                   " out of range for dim " +
                                                   std::to_string(ds.dim()));
  }
  detail::require_class(ds, k, 2, ErrorCode::kInsufficientSamples);
  const auto rows = ds.class_rows(k);
  double mean = 0.0;
  for (const Vector& x : rows) mean += x[j];
  const double nk = static_cast<double>(rows.size());
  mean /= nk;
  double ss = 0.0;
  for (const Vector& x : rows) ss += (x[j] - mean) * (x[j] - mean);
  return {mean, ss / (nk - 1.0)};
}

}  // namespace gda
