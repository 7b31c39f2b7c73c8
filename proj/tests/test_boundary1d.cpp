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

#include "gda/boundary1d.hpp"
#include "test_support.hpp"

namespace gda {
namespace {

UnivariateClassPair pair_of(double m1, double v1, double p1, double m2, double v2) {
  return UnivariateClassPair({m1, v1, p1}, {m2, v2, 1.0 - p1});
}

// Random pair with sd in [0.5, 2], priors in [0.25, 0.75] and a mean gap of
// at least one larger sd.
UnivariateClassPair random_moderate_pair(Rng& rng, bool equal_variance) {
  const double s1 = 0.5 + 1.5 * rng.uniform();
  const double s2 = equal_variance ? s1 : 0.5 + 1.5 * rng.uniform();
  const double m1 = -3.0 + 6.0 * rng.uniform();
  const double gap = std::max(s1, s2) * (1.0 + 2.0 * rng.uniform());
  const double p1 = 0.25 + 0.5 * rng.uniform();
  return pair_of(m1, s1 * s1, p1, m1 + gap, s2 * s2);
}

TEST(ErrorProbability, SymmetricCase) {
  const auto pair = pair_of(0.0, 1.0, 0.5, 2.0, 1.0);
  const double want = 0.5 * (1.0 - testing::normal_cdf_by_quadrature(1.0)) +
                      0.5 * testing::normal_cdf_by_quadrature(-1.0);
  EXPECT_NEAR(error_probability(pair, 1.0), want, 1e-9);
  EXPECT_NEAR(error_probability(pair, 1.0), 0.158655, 1e-6);
}

TEST(ErrorProbability, Limits) {
  const auto pair = pair_of(0.0, 1.0, 0.3, 2.0, 4.0);
  EXPECT_NEAR(error_probability(pair, -1e6), 0.3, 1e-15);
  EXPECT_NEAR(error_probability(pair, 1e6), 0.7, 1e-15);
}

TEST(UnivariatePair, Validation) {
  EXPECT_THROW(pair_of(2.0, 1.0, 0.5, 0.0, 1.0), Error);
  EXPECT_THROW(pair_of(0.0, 0.0, 0.5, 1.0, 1.0), Error);
  try {
    UnivariateClassPair({0.0, 1.0, 0.5}, {1.0, 1.0, 0.6});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPriorSumInvalid);
  }
}

TEST(OptimalBoundary, EqualVarianceEqualPriorMidpoint) {
  const BoundaryResult r = optimal_boundary(pair_of(-1.0, 2.5, 0.5, 3.0, 2.5));
  EXPECT_NEAR(r.x_star, 1.0, 1e-14);
  EXPECT_EQ(r.roots.size(), 1u);
}

TEST(OptimalBoundary, EqualVarianceClosedForm) {
  const BoundaryResult r = optimal_boundary(pair_of(0.0, 1.0, 0.8, 2.0, 1.0));
  EXPECT_NEAR(r.x_star, 1.0 + std::log(4.0) / 2.0, 1e-12);
  EXPECT_NEAR(r.x_star, 1.6931, 1e-4);
}

TEST(OptimalBoundary, EqualVarianceRandomCasesMatchClosedForm) {
  Rng rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const auto pair = random_moderate_pair(rng, true);
    const auto& a = pair.first();
    const auto& b = pair.second();
    const double want = 0.5 * (a.mean + b.mean) + a.variance * std::log(a.prior / b.prior) / (b.mean - a.mean);
    EXPECT_NEAR(optimal_boundary(pair).x_star, want, 1e-10);
  }
}

TEST(OptimalBoundary, UnequalVarianceHasTwoRoots) {
  const BoundaryResult r = optimal_boundary(pair_of(0.0, 1.0, 0.5, 3.0, 4.0));
  ASSERT_EQ(r.roots.size(), 2u);
  EXPECT_LT(r.roots[0], r.roots[1]);
  for (double x : r.roots) EXPECT_NEAR(pair_of(0.0, 1.0, 0.5, 3.0, 4.0).log_posterior_gap(x), 0.0, 1e-9);
  EXPECT_GT(r.x_star, 0.0);
  EXPECT_LT(r.x_star, 3.0);
}

TEST(OptimalBoundary, NoCrossing) {
  // A narrow class with a tiny prior under a wide one never wins.
  try {
    optimal_boundary(pair_of(0.0, 100.0, 0.999, 0.5, 1.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoCrossing);
    EXPECT_TRUE(e.is_numeric());
  }
}

TEST(OptimalBoundary, PosteriorEqualityAtRoot) {
  Rng rng(2);
  for (int trial = 0; trial < 500; ++trial) {
    const auto pair = random_moderate_pair(rng, trial % 2 == 0);
    EXPECT_LE(std::abs(pair.log_posterior_gap(optimal_boundary(pair).x_star)), 1e-9);
  }
}

TEST(OptimalBoundary, MatchesDenseGridSearch) {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const auto pair = random_moderate_pair(rng, false);
    const auto& a = pair.first();
    const auto& b = pair.second();
    const double lo = a.mean - 6.0 * std::sqrt(a.variance);
    const double hi = b.mean + 6.0 * std::sqrt(b.variance);
    double best_x = lo, best_err = error_probability(pair, lo);
    for (double x = lo; x <= hi; x += 1e-4) {
      const double err = error_probability(pair, x);
      if (err < best_err) {
        best_err = err;
        best_x = x;
      }
    }
    const double x_star = optimal_boundary(pair).x_star;
    EXPECT_NEAR(x_star, best_x, 2e-4) << "trial " << trial;
    EXPECT_LE(error_probability(pair, x_star), best_err + 1e-15) << "trial " << trial;
  }
}

TEST(OptimalBoundary, LargerFirstPriorMovesBoundaryRight) {
  double previous = -INFINITY;
  for (double p1 = 0.05; p1 < 0.96; p1 += 0.05) {
    const double x = optimal_boundary(pair_of(0.0, 1.5, p1, 2.0, 1.5)).x_star;
    EXPECT_GE(x, previous);
    previous = x;
  }
}

TEST(OptimalBoundary, AgreesWithOneDimensionalQda) {
  Rng rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const auto pair = random_moderate_pair(rng, false);
    const auto& a = pair.first();
    const auto& b = pair.second();
    const FittedClassifier qda = make_qda(Vector{a.prior, b.prior},
                                          {GaussianParams({a.mean}, SymMatrix{{a.variance}}),
                                           GaussianParams({b.mean}, SymMatrix{{b.variance}})});
    for (double root : optimal_boundary(pair).roots) {
      const double eps = 1e-7 * (1.0 + std::abs(root));
      EXPECT_NE(predict(qda, Vector{root - eps}), predict(qda, Vector{root + eps})) << "trial " << trial;
    }
  }
}

}  // namespace
}  // namespace gda
