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

#include <algorithm>
#include <cmath>

#include "gda/linalg.hpp"
#include "test_support.hpp"

namespace gda {
namespace {

using testing::random_rotation;
using testing::random_spd;

// Determinant by Gaussian elimination with partial pivoting.
double det_by_elimination(Matrix a) {
  const std::size_t n = a.rows();
  double det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(a(r, c)) > std::abs(a(p, c))) p = r;
    }
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a(r, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
    }
  }
  return det;
}

TEST(SymMatrix, ConstructionSymmetrizesByAveraging) {
  const SymMatrix s(Matrix{{1.0, 2.0}, {4.0, 5.0}});
  EXPECT_EQ(s(0, 1), 3.0);
  EXPECT_EQ(s(1, 0), 3.0);
  EXPECT_EQ(s(0, 0), 1.0);
}

TEST(SymMatrix, RejectsEmptyAndNonSquare) {
  EXPECT_THROW(SymMatrix(Matrix(0, 0)), Error);
  try {
    SymMatrix(Matrix(2, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

TEST(Cholesky, IdentityAndDiagonal) {
  EXPECT_EQ(cholesky(SymMatrix::identity(2)), Matrix::identity(2));
  const Matrix l = cholesky(SymMatrix{{4.0, 0.0}, {0.0, 9.0}});
  EXPECT_EQ(l, (Matrix{{2.0, 0.0}, {0.0, 3.0}}));
}

TEST(Cholesky, ReconstructsFirstReferenceCovariance) {
  const SymMatrix sigma{{10.0, 1.0}, {1.0, 5.0}};
  const Matrix l = cholesky(sigma);
  EXPECT_EQ(l(0, 1), 0.0);
  EXPECT_LE(max_abs_diff(matmul(l, transpose(l)), sigma.matrix()), 1e-12);
}

TEST(Cholesky, RejectsIndefiniteAndSingular) {
  for (const SymMatrix& bad : {SymMatrix{{1.0, 2.0}, {2.0, 1.0}}, SymMatrix{{1.0, 1.0}, {1.0, 1.0}},
                               SymMatrix::zeros(3)}) {
    try {
      cholesky(bad);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kNotPositiveDefinite);
      EXPECT_TRUE(e.is_numeric());
    }
  }
}

TEST(Cholesky, ReconstructionOnRandomSpdMatrices) {
  Rng rng(11);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t d = 1 + trial % 8;
    const SymMatrix a = random_spd(rng, d);
    const Matrix l = cholesky(a);
    worst = std::max(worst, max_abs_diff(matmul(l, transpose(l)), a.matrix()) /
                                std::max(1.0, frobenius_norm(a.matrix())));
  }
  EXPECT_LE(worst, 1e-10);
}

TEST(Solve, CholeskySolveMatchesProduct) {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = 1 + trial % 6;
    const SymMatrix a = random_spd(rng, d);
    const Vector x = testing::random_vector(rng, d);
    const Vector b = matvec(a, x);
    const Vector solved = cholesky_solve(cholesky(a), b);
    for (std::size_t i = 0; i < d; ++i) EXPECT_NEAR(solved[i], x[i], 1e-9 * (1.0 + std::abs(x[i])));
  }
}

TEST(InverseLogdet, Identity) {
  const InverseLogdet r = inverse_and_logdet(SymMatrix::identity(3));
  EXPECT_EQ(r.inverse, SymMatrix::identity(3));
  EXPECT_EQ(r.logdet, 0.0);
}

TEST(InverseLogdet, CofactorFormulaForReferenceCovariance) {
  const InverseLogdet r = inverse_and_logdet(SymMatrix{{10.0, 1.0}, {1.0, 5.0}});
  // det = 10*5 - 1*1 = 49; inverse = adj / det.
  EXPECT_NEAR(r.logdet, std::log(49.0), 1e-14);
  EXPECT_NEAR(r.logdet, 3.8918, 1e-4);
  const double want[2][2] = {{5.0 / 49.0, -1.0 / 49.0}, {-1.0 / 49.0, 10.0 / 49.0}};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) EXPECT_NEAR(r.inverse(i, j), want[i][j], 1e-15);
  }
}

TEST(InverseLogdet, Diagonal) {
  const InverseLogdet r = inverse_and_logdet(SymMatrix{{4.0, 0.0}, {0.0, 1.0}});
  EXPECT_EQ(r.inverse(0, 0), 0.25);
  EXPECT_EQ(r.inverse(1, 1), 1.0);
  EXPECT_EQ(r.inverse(0, 1), 0.0);
  EXPECT_NEAR(r.logdet, std::log(4.0), 1e-15);
}

TEST(InverseLogdet, RandomMatricesAgainstEliminationDeterminant) {
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 1 + trial % 7;
    const SymMatrix a = random_spd(rng, d);
    const InverseLogdet r = inverse_and_logdet(a);
    EXPECT_NEAR(r.logdet, std::log(det_by_elimination(a.matrix())), 1e-9);
    EXPECT_LE(max_abs_diff(matmul(a.matrix(), r.inverse.matrix()), Matrix::identity(d)), 1e-9);
  }
}

TEST(SymEig, DiagonalMatrix) {
  const EigenPair e = sym_eig(SymMatrix{{2.0, 0.0}, {0.0, 3.0}});
  EXPECT_EQ(e.values, (Vector{3.0, 2.0}));
  EXPECT_EQ(e.vectors, (Matrix{{0.0, 1.0}, {1.0, 0.0}}));
}

TEST(SymEig, SwapMatrix) {
  const EigenPair e = sym_eig(SymMatrix{{0.0, 1.0}, {1.0, 0.0}});
  EXPECT_NEAR(e.values[0], 1.0, 1e-15);
  EXPECT_NEAR(e.values[1], -1.0, 1e-15);
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(e.vectors(0, 0), r, 1e-15);
  EXPECT_NEAR(e.vectors(1, 0), r, 1e-15);
  // first component positive in every column
  EXPECT_GT(e.vectors(0, 1), 0.0);
}

void expect_valid_eigendecomposition(const SymMatrix& a, const EigenPair& e) {
  const std::size_t d = a.dim();
  const Matrix& v = e.vectors;
  EXPECT_LE(max_abs_diff(matmul(transpose(v), v), Matrix::identity(d)), 1e-10);
  const double scale = frobenius_norm(a.matrix());
  for (std::size_t k = 0; k < d; ++k) {
    const Vector col = v.column(k);
    const Vector av = matvec(a, col);
    for (std::size_t i = 0; i < d; ++i) EXPECT_NEAR(av[i], e.values[k] * col[i], 1e-8 * scale);
  }
  EXPECT_TRUE(std::is_sorted(e.values.rbegin(), e.values.rend()));
}

TEST(SymEig, RandomSpdReconstruction) {
  Rng rng(23);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t d = 1 + trial % 8;
    const SymMatrix a = random_spd(rng, d, 1.0);
    const EigenPair e = sym_eig(a);
    if (trial < 100) expect_valid_eigendecomposition(a, e);
    const Matrix recon = matmul(matmul(e.vectors, Matrix::diagonal(e.values)), transpose(e.vectors));
    worst = std::max(worst, max_abs_diff(recon, a.matrix()) / std::max(1.0, frobenius_norm(a.matrix())));
  }
  EXPECT_LE(worst, 1e-10);
}

TEST(SymEig, SpectrumInvariantUnderRotation) {
  Rng rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 2 + trial % 6;
    const SymMatrix a = random_spd(rng, d);
    const Matrix q = random_rotation(rng, d);
    const SymMatrix rotated(matmul(matmul(q, a.matrix()), transpose(q)));
    const Vector va = sym_eig(a).values;
    const Vector vr = sym_eig(rotated).values;
    for (std::size_t i = 0; i < d; ++i) EXPECT_NEAR(va[i], vr[i], 1e-8 * std::max(1.0, std::abs(va[i])));
  }
}

TEST(SymEig, TraceAndDeterminantIdentities) {
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 1 + trial % 8;
    const SymMatrix a = random_spd(rng, d);
    const Vector v = sym_eig(a).values;
    double trace = 0.0, sum = 0.0, prod = 1.0;
    for (std::size_t i = 0; i < d; ++i) {
      trace += a(i, i);
      sum += v[i];
      prod *= v[i];
    }
    const double det = det_by_elimination(a.matrix());
    EXPECT_NEAR(sum, trace, 1e-8 * std::abs(trace));
    EXPECT_NEAR(prod, det, 1e-8 * std::abs(det));
  }
}

TEST(SymEig, IndefiniteMatrices) {
  Rng rng(37);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = 2 + trial % 5;
    const Matrix m = testing::random_matrix(rng, d, d);
    const SymMatrix a(m);
    expect_valid_eigendecomposition(a, sym_eig(a));
  }
}

TEST(GeneralizedEig, IdentityMetricGivesTopEigenvector) {
  Rng rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = 2 + trial % 5;
    const SymMatrix a = random_spd(rng, d);
    const GeneralizedEig g = generalized_eig_max(a, SymMatrix::identity(d));
    const EigenPair e = sym_eig(a);
    EXPECT_NEAR(g.value, e.values.front(), 1e-9 * e.values.front());
    const Vector top = e.vectors.column(0);
    EXPECT_NEAR(std::abs(dot(g.vector, top)), 1.0, 1e-9);
  }
}

TEST(GeneralizedEig, RankOneNumeratorWithIdentity) {
  const Vector diff{2.0, 0.0};
  const GeneralizedEig g = generalized_eig_max(SymMatrix(outer(diff, diff)), SymMatrix::identity(2));
  EXPECT_NEAR(g.vector[0], 1.0, 1e-15);
  EXPECT_NEAR(g.vector[1], 0.0, 1e-15);
  EXPECT_NEAR(g.value, 4.0, 1e-14);
}

TEST(GeneralizedEig, RankOneNumeratorMatchesDirectSolve) {
  Rng rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 2 + trial % 5;
    const Vector diff = testing::random_vector(rng, d);
    const SymMatrix b = add(random_spd(rng, d), random_spd(rng, d));
    const GeneralizedEig g = generalized_eig_max(SymMatrix(outer(diff, diff)), b);
    // For A = v v^T the top generalized eigenvector is B^{-1} v.
    const Vector direct = cholesky_solve(cholesky(b), diff);
    const double cosine = std::abs(dot(g.vector, direct)) / (norm2(g.vector) * norm2(direct));
    EXPECT_GE(cosine, 1.0 - 1e-8);
    EXPECT_NEAR(norm2(g.vector), 1.0, 1e-12);
  }
}

}  // namespace
}  // namespace gda
