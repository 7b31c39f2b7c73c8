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

// Dense kernels for the small symmetric matrices used throughout the
// library (covariances, scatter matrices). Sizes are expected to stay below
// ~16, so everything is plain O(d^3) loops over row-major storage.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gda/error.hpp"

namespace gda {

using Vector = std::vector<double>;

/// Row-major dense matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  Matrix(std::initializer_list<std::initializer_list<double>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) {
        throw Error(ErrorCode::kDimensionMismatch, "ragged matrix initializer");
      }
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static Matrix diagonal(std::span<const double> values) {
    Matrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<const double> data() const noexcept { return data_; }

  Vector column(std::size_t j) const {
    Vector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Square matrix whose entries are exactly symmetric. Construction averages
/// the input with its transpose, so roundoff asymmetry is absorbed here.
class SymMatrix {
 public:
  explicit SymMatrix(const Matrix& m) : m_(m) {
    if (m.rows() != m.cols()) {
      throw Error(ErrorCode::kDimensionMismatch, "symmetric matrix must be square");
    }
    if (m.rows() == 0) {
      throw Error(ErrorCode::kInvalidArgument, "symmetric matrix must have dim >= 1");
    }
    const std::size_t n = m.rows();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double avg = 0.5 * (m(i, j) + m(j, i));
        m_(i, j) = avg;
        m_(j, i) = avg;
      }
    }
  }

  SymMatrix(std::initializer_list<std::initializer_list<double>> init)
      : SymMatrix(Matrix(init)) {}

  static SymMatrix identity(std::size_t n) { return SymMatrix(Matrix::identity(n)); }
  static SymMatrix zeros(std::size_t n) { return SymMatrix(Matrix(n, n)); }
  static SymMatrix diagonal(std::span<const double> values) {
    return SymMatrix(Matrix::diagonal(values));
  }

  std::size_t dim() const noexcept { return m_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const Matrix& matrix() const noexcept { return m_; }

  friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

 private:
  Matrix m_;
};

// ---------------------------------------------------------------------------
// Small helpers.

inline void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(what) + ": " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  require_same_size(a.size(), b.size(), "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

inline Vector subtract(std::span<const double> a, std::span<const double> b) {
  require_same_size(a.size(), b.size(), "subtract");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

inline Vector matvec(const Matrix& a, std::span<const double> x) {
  require_same_size(a.cols(), x.size(), "matvec");
  Vector out(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    out[i] = s;
  }
  return out;
}

inline Vector matvec(const SymMatrix& a, std::span<const double> x) {
  return matvec(a.matrix(), x);
}

/// x^T A x.
inline double quadratic_form(const SymMatrix& a, std::span<const double> x) {
  return dot(x, matvec(a, x));
}

inline Matrix matmul(const Matrix& a, const Matrix& b) {
  require_same_size(a.cols(), b.rows(), "matmul");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

inline Matrix transpose(const Matrix& a) {
  Matrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  }
  return out;
}

inline Matrix outer(std::span<const double> a, std::span<const double> b) {
  Matrix out(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out(i, j) = a[i] * b[j];
  }
  return out;
}

inline SymMatrix add(const SymMatrix& a, const SymMatrix& b) {
  require_same_size(a.dim(), b.dim(), "add");
  Matrix out(a.dim(), a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) out(i, j) = a(i, j) + b(i, j);
  }
  return SymMatrix(out);
}

inline SymMatrix scale(const SymMatrix& a, double c) {
  Matrix out = a.matrix();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) out(i, j) *= c;
  }
  return SymMatrix(out);
}

/// A + eps * I.
inline SymMatrix add_ridge(const SymMatrix& a, double eps) {
  if (eps == 0.0) return a;
  Matrix out = a.matrix();
  for (std::size_t i = 0; i < a.dim(); ++i) out(i, i) += eps;
  return SymMatrix(out);
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  require_same_size(a.rows(), b.rows(), "max_abs_diff rows");
  require_same_size(a.cols(), b.cols(), "max_abs_diff cols");
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  }
  return m;
}

inline double frobenius_norm(const Matrix& a) {
  double s = 0.0;
  for (double v : a.data()) s += v * v;
  return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// Cholesky and triangular solves.

/// Lower-triangular L with A = L L^T. A pivot at or below 1e-12 times the
/// largest diagonal entry is treated as degeneracy, not roundoff.
inline Matrix cholesky(const SymMatrix& a) {
  const std::size_t n = a.dim();
  double max_diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, a(i, i));
  if (!(max_diag > 0.0)) {
    throw Error(ErrorCode::kNotPositiveDefinite, "matrix has no positive diagonal entry");
  }
  const double tol = 1e-12 * max_diag;

  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double pivot = a(j, j);
    for (std::size_t k = 0; k < j; ++k) pivot -= l(j, k) * l(j, k);
    if (!(pivot > tol)) {
      throw Error(ErrorCode::kNotPositiveDefinite,
                  "pivot " + std::to_string(j) + " is " + std::to_string(pivot) +
                      " (tolerance " + std::to_string(tol) + ")");
    }
    const double ljj = std::sqrt(pivot);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / ljj;
    }
  }
  return l;
}

/// Solves L y = b for lower-triangular L.
inline Vector forward_substitute(const Matrix& l, std::span<const double> b) {
  require_same_size(l.rows(), b.size(), "forward_substitute");
  const std::size_t n = b.size();
  Vector y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * y[k];
    y[i] = s / l(i, i);
  }
  return y;
}

/// Solves L^T x = y for lower-triangular L.
inline Vector back_substitute_transposed(const Matrix& l, std::span<const double> y) {
  require_same_size(l.rows(), y.size(), "back_substitute_transposed");
  const std::size_t n = y.size();
  Vector x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = y[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= l(k, ii) * x[k];
    x[ii] = s / l(ii, ii);
  }
  return x;
}

/// Solves A x = b given the Cholesky factor of A.
inline Vector cholesky_solve(const Matrix& l, std::span<const double> b) {
  return back_substitute_transposed(l, forward_substitute(l, b));
}

struct InverseLogdet {
  SymMatrix inverse;
  double logdet;
};

inline InverseLogdet inverse_from_cholesky(const Matrix& l) {
  const std::size_t n = l.rows();
  Matrix inv(n, n);
  Vector e(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    const Vector col = cholesky_solve(l, e);
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
    e[j] = 0.0;
  }
  double logdet = 0.0;
  for (std::size_t i = 0; i < n; ++i) logdet += std::log(l(i, i));
  return {SymMatrix(inv), 2.0 * logdet};
}

inline InverseLogdet inverse_and_logdet(const SymMatrix& a) {
  return inverse_from_cholesky(cholesky(a));
}

// ---------------------------------------------------------------------------
// Symmetric eigenproblems.

/// Eigenvalues in descending order; column i of `vectors` pairs with
/// values[i]. Each column has its first non-negligible component positive.
struct EigenPair {
  Vector values;
  Matrix vectors;
};

namespace detail {

inline void fix_sign(std::span<double> v) {
  for (double c : v) {
    if (std::abs(c) > 1e-12) {
      if (c < 0.0) {
        for (double& x : v) x = -x;
      }
      return;
    }
  }
}

}  // namespace detail

inline constexpr int kMaxJacobiSweeps = 100;

/// Cyclic Jacobi rotations until the off-diagonal Frobenius mass drops
/// below 1e-14 * ||A||_F.
inline EigenPair sym_eig(const SymMatrix& sym) {
  const std::size_t n = sym.dim();
  Matrix a = sym.matrix();
  Matrix v = Matrix::identity(n);
  const double threshold = 1e-14 * frobenius_norm(a);

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) s += 2.0 * a(p, q) * a(p, q);
    }
    return std::sqrt(s);
  };

  bool converged = false;
  for (int sweep = 0; sweep <= kMaxJacobiSweeps; ++sweep) {
    if (off_norm() <= threshold) {
      converged = true;
      break;
    }
    if (sweep == kMaxJacobiSweeps) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = a(r, p);
          const double arq = a(r, q);
          a(r, p) = a(p, r) = arp - s * (arq + tau * arp);
          a(r, q) = a(q, r) = arq + s * (arp - tau * arq);
        }
        for (std::size_t r = 0; r < n; ++r) {
          const double vrp = v(r, p);
          const double vrq = v(r, q);
          v(r, p) = vrp - s * (vrq + tau * vrp);
          v(r, q) = vrq + s * (vrp - tau * vrq);
        }
      }
    }
  }
  if (!converged) {
    throw Error(ErrorCode::kNoConvergence,
                "Jacobi sweeps did not converge within " + std::to_string(kMaxJacobiSweeps));
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

  EigenPair out{Vector(n), Matrix(n, n)};
  Vector col(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    out.values[k] = a(src, src);
    for (std::size_t r = 0; r < n; ++r) col[r] = v(r, src);
    detail::fix_sign(col);
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = col[r];
  }
  return out;
}

struct GeneralizedEig {
  Vector vector;  ///< unit Euclidean norm, first non-negligible entry positive
  double value;   ///< largest generalized eigenvalue
};

/// Top eigenpair of A u = lambda B u for symmetric A and SPD B, by reducing
/// to the standard problem on L^{-1} A L^{-T} with B = L L^T.
inline GeneralizedEig generalized_eig_max(const SymMatrix& a, const SymMatrix& b) {
  require_same_size(a.dim(), b.dim(), "generalized_eig_max");
  const std::size_t n = a.dim();
  const Matrix l = cholesky(b);

  // M = L^{-1} A, then C = L^{-1} M^T = L^{-1} A L^{-T} (A symmetric).
  Matrix m(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const Vector col = forward_substitute(l, a.matrix().column(j));
    for (std::size_t i = 0; i < n; ++i) m(i, j) = col[i];
  }
  Matrix c(n, n);
  const Matrix mt = transpose(m);
  for (std::size_t j = 0; j < n; ++j) {
    const Vector col = forward_substitute(l, mt.column(j));
    for (std::size_t i = 0; i < n; ++i) c(i, j) = col[i];
  }

  const EigenPair eig = sym_eig(SymMatrix(c));
  Vector u = back_substitute_transposed(l, eig.vectors.column(0));
  const double norm = norm2(u);
  for (double& x : u) x /= norm;
  detail::fix_sign(u);
  return {std::move(u), eig.values[0]};
}

}  // namespace gda
