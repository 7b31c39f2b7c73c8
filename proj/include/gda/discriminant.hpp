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

// Discriminant classifiers: LDA, QDA, Gaussian naive Bayes and the plug-in
// Bayes classifier. Every family reduces to an argmax over per-class scores
// delta_k(x), each a log of prior times likelihood up to a term shared by
// all classes. Scores are evaluated in the log domain throughout.

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "gda/error.hpp"
#include "gda/estimation.hpp"
#include "gda/gaussian.hpp"
#include "gda/linalg.hpp"
#include "gda/mixture.hpp"

namespace gda {

enum class Family { kLDA, kQDA, kGNB, kBayes };

inline std::string_view family_name(Family f) {
  switch (f) {
    case Family::kLDA: return "lda";
    case Family::kQDA: return "qda";
    case Family::kGNB: return "gnb";
    case Family::kBayes: return "bayes";
  }
  return "unknown";
}

inline Family parse_family(std::string_view name) {
  if (name == "lda") return Family::kLDA;
  if (name == "qda") return Family::kQDA;
  if (name == "gnb") return Family::kGNB;
  if (name == "bayes") return Family::kBayes;
  throw Error(ErrorCode::kInvalidArgument, "unknown classifier family '" + std::string(name) + "'");
}

/// Independent univariate Gaussians per feature (the naive Bayes likelihood).
struct DiagonalGaussian {
  Vector means;
  Vector variances;

  std::size_t dim() const noexcept { return means.size(); }
};

namespace detail {

struct DiagonalTerms {
  double log_sd_sum;  ///< sum_j ln sigma_j
  double quad;        ///< sum_j ((x_j - mu_j) / sigma_j)^2
};

// Mirrors the Cholesky route of GaussianParams term by term, so a diagonal
// covariance evaluates bit-identically either way.
inline DiagonalTerms diagonal_terms(const DiagonalGaussian& g, std::span<const double> x) {
  require_same_size(x.size(), g.dim(), "naive Bayes argument");
  double log_sd = 0.0;
  for (double v : g.variances) log_sd += std::log(std::sqrt(v));
  double quad = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double z = (x[j] - g.means[j]) / std::sqrt(g.variances[j]);
    quad += z * z;
  }
  return {log_sd, quad};
}

}  // namespace detail

inline double log_pdf(const DiagonalGaussian& g, std::span<const double> x) {
  const auto [log_sd, quad] = detail::diagonal_terms(g, x);
  return -0.5 * static_cast<double>(g.dim()) * kLogTwoPi - log_sd - 0.5 * quad;
}

using Likelihood = std::variant<GaussianParams, DiagonalGaussian, MixtureModel>;

inline std::size_t likelihood_dim(const Likelihood& l) {
  return std::visit([](const auto& v) { return v.dim(); }, l);
}

inline double log_likelihood(const Likelihood& l, std::span<const double> x) {
  if (const auto* m = std::get_if<MixtureModel>(&l)) return log_pdf_mix(*m, x);
  if (const auto* g = std::get_if<GaussianParams>(&l)) return log_pdf(*g, x);
  return log_pdf(std::get<DiagonalGaussian>(l), x);
}

struct ClassModel {
  double prior;
  Likelihood likelihood;
};

/// An immutable trained classifier. LDA carries the shared covariance and
/// every class likelihood is a Gaussian with exactly that covariance.
class FittedClassifier {
 public:
  FittedClassifier(Family family, std::vector<ClassModel> classes,
                   std::optional<SymMatrix> shared_cov = std::nullopt,
                   std::vector<std::string> warnings = {})
      : family_(family),
        classes_(std::move(classes)),
        shared_cov_(std::move(shared_cov)),
        warnings_(std::move(warnings)) {
    validate();
    labels_.resize(classes_.size());
    for (std::size_t k = 0; k < classes_.size(); ++k) {
      labels_[k] = static_cast<int>(k);
      log_priors_.push_back(std::log(classes_[k].prior));
    }
    if (family_ == Family::kLDA) {
      const SymMatrix& inv = std::get<GaussianParams>(classes_.front().likelihood).inverse();
      for (std::size_t k = 0; k < classes_.size(); ++k) {
        const Vector& mu = std::get<GaussianParams>(classes_[k].likelihood).mean();
        Vector w = matvec(inv, mu);
        lda_bias_.push_back(-0.5 * dot(mu, w));
        lda_weights_.push_back(std::move(w));
      }
    }
  }

  Family family() const noexcept { return family_; }
  std::size_t num_classes() const noexcept { return classes_.size(); }
  std::size_t dim() const noexcept { return likelihood_dim(classes_.front().likelihood); }
  const std::vector<ClassModel>& classes() const noexcept { return classes_; }
  const std::optional<SymMatrix>& shared_cov() const noexcept { return shared_cov_; }
  const std::vector<int>& labels() const noexcept { return labels_; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  Vector priors() const {
    Vector p;
    for (const auto& c : classes_) p.push_back(c.prior);
    return p;
  }

  // Discriminant scores; see score() below for the per-family forms.
  Vector score(std::span<const double> x) const {
    require_same_size(x.size(), dim(), "classifier argument");
    const std::size_t k_count = classes_.size();
    Vector out(k_count);
    for (std::size_t k = 0; k < k_count; ++k) {
      const Likelihood& lik = classes_[k].likelihood;
      switch (family_) {
        case Family::kLDA:
          out[k] = (dot(lda_weights_[k], x) + lda_bias_[k]) + log_priors_[k];
          break;
        case Family::kQDA: {
          const auto& g = std::get<GaussianParams>(lik);
          out[k] = -0.5 * g.logdet() - 0.5 * g.mahalanobis_sq(x) + log_priors_[k];
          break;
        }
        case Family::kGNB: {
          const auto [log_sd, quad] = detail::diagonal_terms(std::get<DiagonalGaussian>(lik), x);
          out[k] = -log_sd - 0.5 * quad + log_priors_[k];
          break;
        }
        case Family::kBayes:
          out[k] = log_priors_[k] + log_likelihood(lik, x);
          break;
      }
    }
    return out;
  }

 private:
  void validate() const {
    if (classes_.size() < 2) {
      throw Error(ErrorCode::kInvalidArgument, "a classifier needs at least two classes");
    }
    double total = 0.0;
    for (const auto& c : classes_) {
      if (!(c.prior > 0.0)) throw Error(ErrorCode::kPriorSumInvalid, "priors must be positive");
      total += c.prior;
    }
    if (std::abs(total - 1.0) > 1e-12) {
      throw Error(ErrorCode::kPriorSumInvalid, "priors sum to " + std::to_string(total));
    }
    const std::size_t d = likelihood_dim(classes_.front().likelihood);
    for (const auto& c : classes_) require_same_size(likelihood_dim(c.likelihood), d, "class likelihood");

    auto all_of = [&](auto pred) {
      return std::all_of(classes_.begin(), classes_.end(),
                         [&](const ClassModel& c) { return pred(c.likelihood); });
    };
    switch (family_) {
      case Family::kLDA:
        if (!shared_cov_) throw Error(ErrorCode::kInvalidArgument, "LDA needs a shared covariance");
        if (!all_of([&](const Likelihood& l) {
              const auto* g = std::get_if<GaussianParams>(&l);
              return g != nullptr && g->cov() == *shared_cov_;
            })) {
          throw Error(ErrorCode::kInvalidArgument,
                      "LDA class likelihoods must be Gaussians with the shared covariance");
        }
        break;
      case Family::kQDA:
        if (!all_of([](const Likelihood& l) { return std::holds_alternative<GaussianParams>(l); })) {
          throw Error(ErrorCode::kInvalidArgument, "QDA class likelihoods must be Gaussians");
        }
        break;
      case Family::kGNB:
        if (!all_of([](const Likelihood& l) {
              const auto* g = std::get_if<DiagonalGaussian>(&l);
              return g != nullptr && g->means.size() == g->variances.size() &&
                     std::all_of(g->variances.begin(), g->variances.end(),
                                 [](double v) { return v > 0.0; });
            })) {
          throw Error(ErrorCode::kInvalidArgument,
                      "naive Bayes likelihoods must be diagonal with positive variances");
        }
        break;
      case Family::kBayes:
        break;
    }
    if (family_ != Family::kLDA && shared_cov_) {
      throw Error(ErrorCode::kInvalidArgument, "only LDA carries a shared covariance");
    }
  }

  Family family_;
  std::vector<ClassModel> classes_;
  std::optional<SymMatrix> shared_cov_;
  std::vector<std::string> warnings_;
  std::vector<int> labels_;
  std::vector<double> log_priors_;
  std::vector<Vector> lda_weights_;  // Sigma^{-1} mu_k
  std::vector<double> lda_bias_;     // -1/2 mu_k^T Sigma^{-1} mu_k
};

// ---------------------------------------------------------------------------
// Construction.

struct FitOptions {
  CovarianceMode cov_mode = CovarianceMode::kUnbiased;
  double ridge = 0.0;  ///< added to every estimated covariance diagonal
};

inline FittedClassifier make_qda(std::span<const double> priors, std::vector<GaussianParams> params) {
  require_same_size(priors.size(), params.size(), "make_qda");
  std::vector<ClassModel> classes;
  for (std::size_t k = 0; k < priors.size(); ++k) classes.push_back({priors[k], std::move(params[k])});
  return FittedClassifier(Family::kQDA, std::move(classes));
}

inline FittedClassifier make_lda(std::span<const double> priors, std::span<const Vector> means,
                                 const SymMatrix& shared_cov) {
  require_same_size(priors.size(), means.size(), "make_lda");
  std::vector<ClassModel> classes;
  for (std::size_t k = 0; k < priors.size(); ++k) {
    classes.push_back({priors[k], GaussianParams(means[k], shared_cov)});
  }
  return FittedClassifier(Family::kLDA, std::move(classes), shared_cov);
}

inline FittedClassifier make_gnb(std::span<const double> priors, std::vector<DiagonalGaussian> params) {
  require_same_size(priors.size(), params.size(), "make_gnb");
  std::vector<ClassModel> classes;
  for (std::size_t k = 0; k < priors.size(); ++k) classes.push_back({priors[k], std::move(params[k])});
  return FittedClassifier(Family::kGNB, std::move(classes));
}

/// Plug-in Bayes classifier scoring ln pi_k + ln f_k(x) with the given
/// likelihoods (exact generator parameters, fitted mixtures, ...).
inline FittedClassifier make_bayes(std::span<const double> priors, std::vector<Likelihood> likelihoods) {
  require_same_size(priors.size(), likelihoods.size(), "make_bayes");
  std::vector<ClassModel> classes;
  for (std::size_t k = 0; k < priors.size(); ++k) classes.push_back({priors[k], std::move(likelihoods[k])});
  return FittedClassifier(Family::kBayes, std::move(classes));
}

namespace detail {

inline GaussianParams gaussian_or_hint(Vector mean, SymMatrix cov, std::size_t k) {
  try {
    return GaussianParams(std::move(mean), std::move(cov));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNotPositiveDefinite) throw;
    throw Error(ErrorCode::kNotPositiveDefinite,
                "covariance of class " + std::to_string(k) +
                    " is singular; consider a ridge term (--ridge)");
  }
}

}  // namespace detail

/// Estimates priors, means and covariances from `ds` for LDA, QDA or
/// Gaussian naive Bayes. Bayes classifiers come from make_bayes instead.
inline FittedClassifier fit(const LabeledDataset& ds, Family family, const FitOptions& opts = {}) {
  if (family == Family::kBayes) {
    throw Error(ErrorCode::kInvalidArgument,
                "the Bayes family takes its likelihoods from make_bayes, not from fit");
  }
  const Vector priors = estimate_priors(ds);
  const std::size_t k_count = ds.num_classes();
  if (k_count < 2) {
    throw Error(ErrorCode::kInvalidArgument, "fitting a classifier needs at least two classes");
  }
  for (std::size_t k = 0; k < k_count; ++k) {
    if (ds.class_count(k) == 0) {
      throw Error(ErrorCode::kEmptyClass, "class " + std::to_string(k) + " has no samples");
    }
  }

  switch (family) {
    case Family::kQDA: {
      std::vector<GaussianParams> params;
      for (std::size_t k = 0; k < k_count; ++k) {
        params.push_back(detail::gaussian_or_hint(
            estimate_mean(ds, k), add_ridge(estimate_cov(ds, k, opts.cov_mode), opts.ridge), k));
      }
      return make_qda(priors, std::move(params));
    }
    case Family::kLDA: {
      std::vector<Vector> means;
      std::vector<ClassCovariance> covs;
      for (std::size_t k = 0; k < k_count; ++k) {
        means.push_back(estimate_mean(ds, k));
        covs.push_back({ds.class_count(k), estimate_cov(ds, k, opts.cov_mode)});
      }
      const SymMatrix shared = add_ridge(pooled_cov(covs), opts.ridge);
      std::vector<ClassModel> classes;
      for (std::size_t k = 0; k < k_count; ++k) {
        classes.push_back({priors[k], detail::gaussian_or_hint(means[k], shared, k)});
      }
      return FittedClassifier(Family::kLDA, std::move(classes), shared);
    }
    case Family::kGNB: {
      // Constant features get their variance floored at 1e-12 * range^2.
      const std::size_t d = ds.dim();
      Vector range(d, 0.0);
      for (std::size_t j = 0; j < d; ++j) {
        double lo = ds.rows().front()[j], hi = lo;
        for (const Vector& x : ds.rows()) {
          lo = std::min(lo, x[j]);
          hi = std::max(hi, x[j]);
        }
        range[j] = hi - lo;
      }
      std::vector<std::string> warnings;
      std::vector<DiagonalGaussian> params;
      for (std::size_t k = 0; k < k_count; ++k) {
        DiagonalGaussian g;
        if (opts.cov_mode == CovarianceMode::kUnbiased) {
          for (std::size_t j = 0; j < d; ++j) {
            const FeatureParams fp = estimate_feature_params(ds, k, j);
            g.means.push_back(fp.mean);
            g.variances.push_back(fp.variance);
          }
        } else {
          g.means = estimate_mean(ds, k);
          const SymMatrix cov = estimate_cov(ds, k, CovarianceMode::kMLE);
          for (std::size_t j = 0; j < d; ++j) g.variances.push_back(cov(j, j));
        }
        for (std::size_t j = 0; j < d; ++j) {
          g.variances[j] += opts.ridge;
          const double floor = range[j] > 0.0 ? 1e-12 * range[j] * range[j] : 1e-12;
          if (!(g.variances[j] > floor)) {
            g.variances[j] = floor;
            warnings.push_back("class " + std::to_string(k) + " feature " + std::to_string(j) +
                               " has zero variance; floored at " + std::to_string(floor));
          }
        }
        params.push_back(std::move(g));
      }
      std::vector<ClassModel> classes;
      for (std::size_t k = 0; k < k_count; ++k) classes.push_back({priors[k], std::move(params[k])});
      return FittedClassifier(Family::kGNB, std::move(classes), std::nullopt, std::move(warnings));
    }
    case Family::kBayes:
      break;
  }
  throw Error(ErrorCode::kInvalidArgument, "unsupported family");
}

// ---------------------------------------------------------------------------
// Scoring.

/// delta_k(x) for every class:
///   LDA   mu_k^T S^{-1} x - 1/2 mu_k^T S^{-1} mu_k + ln pi_k
///   QDA   -1/2 ln|S_k| - 1/2 (x-mu_k)^T S_k^{-1} (x-mu_k) + ln pi_k
///   GNB   ln pi_k + sum_j ln N(x_j; mu_kj, s_kj^2), minus (d/2) ln(2 pi)
///   Bayes ln pi_k + ln f_k(x)
inline Vector score(const FittedClassifier& clf, std::span<const double> x) { return clf.score(x); }

/// argmax_k delta_k(x); ties go to the lowest class index.
inline int predict(const FittedClassifier& clf, std::span<const double> x) {
  const Vector s = clf.score(x);
  std::size_t best = 0;
  for (std::size_t k = 1; k < s.size(); ++k) {
    if (s[k] > s[best]) best = k;
  }
  return clf.labels()[best];
}

/// Coefficients of delta(x) = x^T A x + b^T x + c, the two-class boundary
/// function equal to 2 (delta_2(x) - delta_1(x)). Negative means class 1
/// (index 0), positive means class 2 (index 1).
struct BinaryBoundary {
  SymMatrix quadratic;
  Vector linear;
  double constant;
};

inline BinaryBoundary binary_boundary(const FittedClassifier& clf) {
  if (clf.num_classes() != 2) {
    throw Error(ErrorCode::kNotBinary,
                "binary boundary needs 2 classes, got " + std::to_string(clf.num_classes()));
  }
  if (clf.family() != Family::kLDA && clf.family() != Family::kQDA) {
    throw Error(ErrorCode::kInvalidArgument, "binary boundary is defined for LDA and QDA");
  }
  const auto& g1 = std::get<GaussianParams>(clf.classes()[0].likelihood);
  const auto& g2 = std::get<GaussianParams>(clf.classes()[1].likelihood);
  const double log_prior_ratio = 2.0 * (std::log(clf.classes()[1].prior) - std::log(clf.classes()[0].prior));
  const Vector w1 = matvec(g1.inverse(), g1.mean());
  const Vector w2 = matvec(g2.inverse(), g2.mean());
  const double c12 = dot(g1.mean(), w1) - dot(g2.mean(), w2);

  Vector linear(w1.size());
  for (std::size_t i = 0; i < linear.size(); ++i) linear[i] = 2.0 * (w2[i] - w1[i]);

  if (clf.family() == Family::kLDA) {
    return {SymMatrix::zeros(clf.dim()), std::move(linear), c12 + log_prior_ratio};
  }
  Matrix a(clf.dim(), clf.dim());
  for (std::size_t i = 0; i < clf.dim(); ++i) {
    for (std::size_t j = 0; j < clf.dim(); ++j) a(i, j) = g1.inverse()(i, j) - g2.inverse()(i, j);
  }
  return {SymMatrix(a), std::move(linear), c12 + g1.logdet() - g2.logdet() + log_prior_ratio};
}

inline double evaluate(const BinaryBoundary& b, std::span<const double> x) {
  return quadratic_form(b.quadratic, x) + dot(b.linear, x) + b.constant;
}

inline double binary_delta(const FittedClassifier& clf, std::span<const double> x) {
  require_same_size(x.size(), clf.dim(), "classifier argument");
  return evaluate(binary_boundary(clf), x);
}

/// Likelihood-ratio rule: class index 1 iff
/// ln(pi_2 f_2(x)) - ln(pi_1 f_1(x)) >= ln t, else class index 0.
inline int lrt_classify(const FittedClassifier& clf, std::span<const double> x, double t) {
  if (clf.num_classes() != 2) {
    throw Error(ErrorCode::kNotBinary,
                "likelihood-ratio rule needs 2 classes, got " + std::to_string(clf.num_classes()));
  }
  if (!(t > 0.0)) throw Error(ErrorCode::kInvalidArgument, "threshold t must be positive");
  const Vector s = clf.score(x);
  return s[1] - s[0] >= std::log(t) ? clf.labels()[1] : clf.labels()[0];
}

}  // namespace gda
