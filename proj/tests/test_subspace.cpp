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

#include <gtest/gtest.h>

#include <cmath>

#include "gda/subspace.hpp"
#include "test_support.hpp"

namespace gda {
namespace {

using testing::random_spd;
using testing::random_vector;

double sq_dist(std::span<const double> a, std::span<const double> b) {
  const Vector d = subtract(a, b);
  return dot(d, d);
}

TEST(Whitening, IdentityCovariancePreservesDistances) {
  const WhiteningTransform w(SymMatrix::identity(3));
  Rng rng(1);
  for (int i = 0; i < 20; ++i) {
    const Vector x = random_vector(rng, 3), y = random_vector(rng, 3);
    EXPECT_NEAR(sq_dist(w.apply(x), w.apply(y)), sq_dist(x, y), 1e-12);
  }
}

TEST(Whitening, DiagonalCovarianceScalesAxes) {
  const WhiteningTransform w(SymMatrix{{4.0, 0.0}, {0.0, 1.0}});
  EXPECT_NEAR(std::sqrt(sq_dist(w.apply(Vector{2.0, 0.0}), w.apply(Vector{0.0, 0.0}))), 1.0, 1e-15);
  const GaussianParams g({0.0, 0.0}, SymMatrix{{4.0, 0.0}, {0.0, 1.0}});
  EXPECT_NEAR(mahalanobis_sq(g, Vector{2.0, 0.0}), 1.0, 1e-15);
}

TEST(Whitening, MahalanobisIdentityForReferenceCovariance) {
  const GaussianParams g({-4.0, 4.0}, SymMatrix{{10.0, 1.0}, {1.0, 5.0}});
  const WhiteningTransform w = whitening(g);
  const InverseLogdet il = inverse_and_logdet(g.cov());
  Rng rng(2);
  for (int i = 0; i < 1000; ++i) {
    const Vector x = random_vector(rng, 2, -15.0, 15.0);
    const double want = quadratic_form(il.inverse, subtract(x, g.mean()));
    EXPECT_NEAR(sq_dist(w.apply(x), w.apply(g.mean())), want, 1e-10 * want);
  }
}

TEST(Whitening, RejectsNonPositiveDefinite) {
  EXPECT_THROW(WhiteningTransform(SymMatrix{{1.0, 2.0}, {2.0, 1.0}}), Error);
}

TEST(Whitening, WhitenedSamplesHaveIdentityCovariance) {
  Rng rng(3);
  const SymMatrix cov = random_spd(rng, 3);
  const GaussianParams g({1.0, 2.0, 3.0}, cov);
  const WhiteningTransform w(cov);
  std::vector<Vector> z;
  for (const Vector& x : sample(g, 20000, rng)) z.push_back(w.apply(x));
  const SymMatrix s = scatter_of(z, mean_of(z), static_cast<double>(z.size() - 1));
  EXPECT_LE(max_abs_diff(s.matrix(), Matrix::identity(3)), 0.05);
}

TEST(Mahalanobis, IdentityAndScaling) {
  const GaussianParams unit({1.0, 1.0}, SymMatrix::identity(2));
  EXPECT_NEAR(mahalanobis_sq(unit, Vector{4.0, 5.0}), 25.0, 1e-13);
  Rng rng(4);
  const SymMatrix cov = random_spd(rng, 3);
  const Vector mu = random_vector(rng, 3), x = random_vector(rng, 3);
  const double base = mahalanobis_sq(GaussianParams(mu, cov), x);
  EXPECT_NEAR(mahalanobis_sq(GaussianParams(mu, scale(cov, 3.0)), x), base / 3.0, 1e-12 * base);
}

TEST(QdaReexpression, ScoreThroughWhitening) {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 1 + trial % 4;
    const auto gs = testing::random_gaussians(rng, 3, d);
    const Vector p = testing::random_priors(rng, 3);
    const FittedClassifier qda = make_qda(p, gs);
    for (int i = 0; i < 20; ++i) {
      const Vector x = random_vector(rng, d);
      const Vector s = score(qda, x);
      for (std::size_t k = 0; k < 3; ++k) {
        const WhiteningTransform w = whitening(gs[k]);
        const double want = -0.5 * gs[k].logdet() - 0.5 * sq_dist(w.apply(x), w.apply(gs[k].mean())) + std::log(p[k]);
        EXPECT_NEAR(s[k], want, 1e-10 * (1.0 + std::abs(want)));
      }
    }
  }
}

TEST(QdaReexpression, IdentityCovarianceIsNearestMean) {
  Rng rng(6);
  std::vector<GaussianParams> gs;
  for (int k = 0; k < 4; ++k) gs.emplace_back(random_vector(rng, 2), SymMatrix::identity(2));
  const FittedClassifier qda = make_qda(Vector{0.25, 0.25, 0.25, 0.25}, gs);
  for (int i = 0; i < 5000; ++i) {
    const Vector x = random_vector(rng, 2, -8.0, 8.0);
    std::size_t nearest = 0;
    for (std::size_t k = 1; k < 4; ++k) {
      if (sq_dist(x, gs[k].mean()) < sq_dist(x, gs[nearest].mean())) nearest = k;
    }
    ASSERT_EQ(predict(qda, x), static_cast<int>(nearest));
  }
}

Matrix squared_distances(const std::vector<Vector>& pts) {
  Matrix d(pts.size(), pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < pts.size(); ++j) d(i, j) = sq_dist(pts[i], pts[j]);
  }
  return d;
}

TEST(DoubleCenter, TwoPointsOnALine) {
  const Matrix k = double_center(Matrix{{0.0, 4.0}, {4.0, 0.0}});
  EXPECT_EQ(k, (Matrix{{1.0, -1.0}, {-1.0, 1.0}}));
}

TEST(DoubleCenter, IdenticalPointsGiveZero) {
  EXPECT_EQ(double_center(Matrix(4, 4)), Matrix(4, 4));
}

TEST(DoubleCenter, MatchesCenteredGramAndHasZeroRowSums) {
  Rng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng.uniform_index(50);
    const std::size_t d = 1 + rng.uniform_index(5);
    std::vector<Vector> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back(random_vector(rng, d));
    const Vector c = mean_of(pts);
    Matrix gram(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) gram(i, j) = dot(subtract(pts[i], c), subtract(pts[j], c));
    }
    const Matrix k = double_center(squared_distances(pts));
    EXPECT_LE(max_abs_diff(k, gram), 1e-10);
    for (std::size_t i = 0; i < n; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < n; ++j) row += k(i, j);
      EXPECT_NEAR(row, 0.0, 1e-10);
    }
  }
}

TEST(DoubleCenter, RejectsNonDistanceMatrices) {
  for (const Matrix& bad : {Matrix{{1.0, 2.0}, {2.0, 0.0}}, Matrix{{0.0, -1.0}, {-1.0, 0.0}},
                            Matrix{{0.0, 1.0}, {2.0, 0.0}}, Matrix(2, 3)}) {
    try {
      double_center(bad);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kNotDistanceMatrix);
    }
  }
}

TEST(Fisher, IsotropicScatter) {
  const FisherDirection f = fisher_direction(Vector{0.0, 0.0}, Vector{2.0, 0.0}, SymMatrix::identity(2),
                                             SymMatrix::identity(2));
  EXPECT_NEAR(f.u[0], 1.0, 1e-15);
  EXPECT_NEAR(f.u[1], 0.0, 1e-15);
  EXPECT_NEAR(f.criterion_value, 2.0, 1e-14);
}

TEST(Fisher, HighVarianceAxisSuppressed) {
  const SymMatrix s{{1.0, 0.0}, {0.0, 100.0}};
  const FisherDirection f = fisher_direction(Vector{0.0, 0.0}, Vector{1.0, 1.0}, s, s);
  // (S1 + S2)^{-1} (mu2 - mu1) = (1/2, 1/200), i.e. proportional to (1, 0.01).
  EXPECT_NEAR(f.u[1] / f.u[0], 0.01, 1e-13);
  EXPECT_NEAR(norm2(f.u), 1.0, 1e-15);
}

TEST(Fisher, RandomCasesMatchClosedFormAndBeatRandomDirections) {
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 2 + trial % 5;
    const Vector mu1 = random_vector(rng, d), mu2 = random_vector(rng, d);
    const SymMatrix s1 = random_spd(rng, d), s2 = random_spd(rng, d);
    const FisherDirection f = fisher_direction(mu1, mu2, s1, s2);
    const Vector closed = cholesky_solve(cholesky(add(s1, s2)), subtract(mu2, mu1));
    EXPECT_GE(std::abs(dot(f.u, closed)) / norm2(closed), 1.0 - 1e-8);
    EXPECT_NEAR(norm2(f.u), 1.0, 1e-12);
    for (int i = 0; i < 100; ++i) {
      Vector u(d);
      for (double& v : u) v = rng.normal();
      EXPECT_GE(f.criterion_value, fisher_criterion(u, mu1, mu2, s1, s2) * (1.0 - 1e-12));
    }
    // Rescaling both scatters keeps the line and divides the criterion.
    const FisherDirection g = fisher_direction(mu1, mu2, scale(s1, 7.0), scale(s2, 7.0));
    EXPECT_GE(std::abs(dot(f.u, g.u)), 1.0 - 1e-8);
    EXPECT_NEAR(g.criterion_value, f.criterion_value / 7.0, 1e-9 * f.criterion_value);
  }
}

TEST(Fisher, CoincidentMeans) {
  try {
    fisher_direction(Vector{1.0, 1.0}, Vector{1.0, 1.0}, SymMatrix::identity(2), SymMatrix::identity(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateMeans);
  }
}

TEST(LdaFda, SampledDatasetsAreCollinear) {
  Rng rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t d = 2 + trial % 4;
    const auto gs = testing::random_gaussians(rng, 2, d);
    const LabeledDataset ds = testing::sample_dataset(rng, gs, {40, 25});
    const LdaFdaReport r = lda_fda_equivalence(ds);
    EXPECT_GE(r.cosine, 1.0 - 1e-8);
    // The LDA normal is the Fisher direction times the signed scale.
    for (std::size_t i = 0; i < d; ++i) {
      EXPECT_NEAR(r.lda_normal[i], r.scale * r.fisher[i], 1e-8 * norm2(r.lda_normal));
    }
  }
}

TEST(LdaFda, IdentityScatterGivesMeanDifference) {
  LabeledDataset ds(2);
  for (const Vector& x : std::vector<Vector>{{-1, 0}, {1, 0}, {0, -1}, {0, 1}}) ds.add(x, 0);
  for (const Vector& x : std::vector<Vector>{{2, 2}, {4, 2}, {3, 1}, {3, 3}}) ds.add(x, 1);
  const LdaFdaReport r = lda_fda_equivalence(ds);
  // Both scatters are 2I, so the direction is the unit mean difference (3, 2) / sqrt(13).
  const double n = std::sqrt(13.0);
  EXPECT_NEAR(r.fisher[0], 3.0 / n, 1e-14);
  EXPECT_NEAR(r.fisher[1], 2.0 / n, 1e-14);
}

TEST(LdaFda, NeedsTwoClasses) {
  Rng rng(10);
  const LabeledDataset ds = testing::sample_dataset(rng, testing::random_gaussians(rng, 3, 2), {5, 5, 5});
  EXPECT_THROW(lda_fda_equivalence(ds), Error);
}

}  // namespace
}  // namespace gda
