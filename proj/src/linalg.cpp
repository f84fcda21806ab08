// Copyright 2026 The cogfemto Authors
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

#include "cogfemto/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace cogfemto {

namespace {

bool all_finite(std::span<const cdouble> xs) {
  return std::all_of(xs.begin(), xs.end(), [](const cdouble& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b,
                        const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(fmt::format("{}: shape {}x{} vs {}x{}", op, a.rows(),
                                     a.cols(), b.rows(), b.cols()));
  }
}

// Lower Cholesky factor of a Hermitian positive definite matrix, row-major.
std::vector<cdouble> cholesky_lower(const ComplexMatrix& s) {
  const std::size_t n = s.rows();
  std::vector<cdouble> l(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = s(j, j).real();
    for (std::size_t k = 0; k < j; ++k) d -= std::norm(l[j * n + k]);
    if (!(d > 0.0) || !std::isfinite(d)) {
      throw NotPositiveDefiniteError(
          fmt::format("hermitian_solve: non-positive pivot {} at {}", d, j));
    }
    const double ljj = std::sqrt(d);
    l[j * n + j] = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      cdouble acc = s(i, j);
      for (std::size_t k = 0; k < j; ++k) acc -= l[i * n + k] * std::conj(l[j * n + k]);
      l[i * n + j] = acc / ljj;
    }
  }
  return l;
}

ComplexVector cholesky_solve(const std::vector<cdouble>& l, std::size_t n,
                             const ComplexVector& b) {
  ComplexVector y(n);
  for (std::size_t i = 0; i < n; ++i) {
    cdouble acc = b[i];
    for (std::size_t k = 0; k < i; ++k) acc -= l[i * n + k] * y[k];
    y[i] = acc / l[i * n + i];
  }
  // L^H x = y
  ComplexVector x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    cdouble acc = y[ii];
    for (std::size_t k = ii + 1; k < n; ++k) acc -= std::conj(l[k * n + ii]) * x[k];
    x[ii] = acc / l[ii * n + ii];
  }
  return x;
}

}  // namespace

// ---------------------------------------------------------------- vector

ComplexVector::ComplexVector(std::initializer_list<cdouble> init)
    : ComplexVector(std::vector<cdouble>(init)) {}

ComplexVector::ComplexVector(std::vector<cdouble> data) : data_(std::move(data)) {
  if (!all_finite(data_)) {
    throw std::invalid_argument("ComplexVector: non-finite entry");
  }
}

ComplexVector ComplexVector::unit(std::size_t n, std::size_t i) {
  ComplexVector e(n);
  e[i] = 1.0;
  return e;
}

double ComplexVector::squared_norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return s;
}

double ComplexVector::norm() const { return std::sqrt(squared_norm()); }

ComplexVector& ComplexVector::operator*=(cdouble s) {
  for (auto& z : data_) z *= s;
  return *this;
}

ComplexVector& ComplexVector::operator+=(const ComplexVector& other) {
  if (other.size() != size()) throw DimensionError("vector +=: length mismatch");
  for (std::size_t i = 0; i < size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexVector& ComplexVector::operator-=(const ComplexVector& other) {
  if (other.size() != size()) throw DimensionError("vector -=: length mismatch");
  for (std::size_t i = 0; i < size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexVector operator*(cdouble s, ComplexVector v) { return v *= s; }
ComplexVector operator+(ComplexVector a, const ComplexVector& b) { return a += b; }
ComplexVector operator-(ComplexVector a, const ComplexVector& b) { return a -= b; }

cdouble dot(std::span<const cdouble> a, std::span<const cdouble> b) {
  if (a.size() != b.size()) throw DimensionError("dot: length mismatch");
  cdouble acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

// ---------------------------------------------------------------- matrix

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols,
                             std::vector<cdouble> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) {
    throw DimensionError(fmt::format("ComplexMatrix: {} entries for {}x{}",
                                     data_.size(), rows, cols));
  }
  if (!all_finite(data_)) {
    throw std::invalid_argument("ComplexMatrix: non-finite entry");
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::from_columns(std::span<const ComplexVector> columns) {
  if (columns.empty()) return {};
  const std::size_t rows = columns.front().size();
  ComplexMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) {
      throw DimensionError("from_columns: ragged columns");
    }
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

ComplexVector ComplexMatrix::column(std::size_t c) const {
  ComplexVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "matrix +=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "matrix -=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cdouble s) {
  for (auto& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError(fmt::format("matrix product: {}x{} * {}x{}", a.rows(),
                                     a.cols(), b.rows(), b.cols()));
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cdouble aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

ComplexVector operator*(const ComplexMatrix& a, const ComplexVector& x) {
  if (a.cols() != x.size()) throw DimensionError("matrix-vector: length mismatch");
  ComplexVector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cdouble acc = 0.0;
    for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * x[k];
    y[i] = acc;
  }
  return y;
}

ComplexVector adjoint_times(const ComplexMatrix& a, const ComplexVector& x) {
  if (a.rows() != x.size()) throw DimensionError("adjoint_times: length mismatch");
  ComplexVector y(a.cols());
  for (std::size_t k = 0; k < a.rows(); ++k) {
    const cdouble xk = x[k];
    for (std::size_t j = 0; j < a.cols(); ++j) y[j] += std::conj(a(k, j)) * xk;
  }
  return y;
}

// ---------------------------------------------------------------- kernels

ComplexMatrix pseudo_inverse(const ComplexMatrix& a, double rcond_floor) {
  const std::size_t m = a.rows();
  const std::size_t k = a.cols();
  if (k == 0 || k > m) {
    throw DimensionError(
        fmt::format("pseudo_inverse: need 1 <= cols <= rows, got {}x{}", m, k));
  }

  // Householder QR: a = Q R. Reflectors are kept to form Q^H explicitly.
  ComplexMatrix r = a;
  std::vector<ComplexVector> reflectors;
  reflectors.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    ComplexVector v(m - j);
    double xnorm2 = 0.0;
    for (std::size_t i = j; i < m; ++i) {
      v[i - j] = r(i, j);
      xnorm2 += std::norm(r(i, j));
    }
    const double xnorm = std::sqrt(xnorm2);
    if (xnorm == 0.0) {
      throw RankDeficientError("pseudo_inverse: zero column in factorization", 0.0);
    }
    const cdouble x0 = v[0];
    const cdouble phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : cdouble(1.0);
    const cdouble alpha = -phase * xnorm;
    v[0] -= alpha;
    const double vnorm = v.norm();
    if (vnorm > 0.0) v *= 1.0 / vnorm;

    for (std::size_t c = j; c < k; ++c) {
      cdouble proj = 0.0;
      for (std::size_t i = j; i < m; ++i) proj += std::conj(v[i - j]) * r(i, c);
      for (std::size_t i = j; i < m; ++i) r(i, c) -= 2.0 * v[i - j] * proj;
    }
    reflectors.push_back(std::move(v));
  }

  double dmin = std::abs(r(0, 0));
  double dmax = dmin;
  for (std::size_t j = 1; j < k; ++j) {
    dmin = std::min(dmin, std::abs(r(j, j)));
    dmax = std::max(dmax, std::abs(r(j, j)));
  }
  const double rcond = dmax > 0.0 ? dmin / dmax : 0.0;
  if (!(rcond >= rcond_floor)) {
    throw RankDeficientError(
        fmt::format("pseudo_inverse: reciprocal condition {:.3e} below {:.1e}",
                    rcond, rcond_floor),
        rcond);
  }

  // Q^H = H_{k-1} ... H_0; only the leading k rows are needed.
  ComplexMatrix qh = ComplexMatrix::identity(m);
  for (std::size_t j = 0; j < k; ++j) {
    const ComplexVector& v = reflectors[j];
    for (std::size_t c = 0; c < m; ++c) {
      cdouble proj = 0.0;
      for (std::size_t i = j; i < m; ++i) proj += std::conj(v[i - j]) * qh(i, c);
      for (std::size_t i = j; i < m; ++i) qh(i, c) -= 2.0 * v[i - j] * proj;
    }
  }

  // Back substitution R X = (Q^H)[0:k, :].
  ComplexMatrix x(k, m);
  for (std::size_t c = 0; c < m; ++c) {
    for (std::size_t ii = k; ii-- > 0;) {
      cdouble acc = qh(ii, c);
      for (std::size_t t = ii + 1; t < k; ++t) acc -= r(ii, t) * x(t, c);
      x(ii, c) = acc / r(ii, ii);
    }
  }
  return x;
}

ComplexVector hermitian_solve(const ComplexMatrix& s, const ComplexVector& b) {
  const std::size_t n = s.rows();
  if (s.cols() != n || b.size() != n) {
    throw DimensionError(fmt::format("hermitian_solve: {}x{} with rhs {}", s.rows(),
                                     s.cols(), b.size()));
  }
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(s(i, i)));
  if (hermitian_defect(s) > 1e-10 * std::max(scale, 1.0)) {
    throw NotPositiveDefiniteError("hermitian_solve: matrix is not Hermitian");
  }

  const auto l = cholesky_lower(s);
  ComplexVector x = cholesky_solve(l, n, b);
  ComplexVector residual = b - s * x;
  x += cholesky_solve(l, n, residual);
  return x;
}

ComplexMatrix rank_one_update(const ComplexMatrix& s, const ComplexVector& a,
                              double c) {
  if (s.rows() != s.cols() || s.rows() != a.size()) {
    throw DimensionError("rank_one_update: dimension mismatch");
  }
  ComplexMatrix out = s;
  accumulate_rank_one_upper(out, a.values(), c);
  hermitize_from_upper(out);
  return out;
}

void accumulate_rank_one_upper(ComplexMatrix& s, std::span<const cdouble> a,
                               double c) {
  const std::size_t n = s.rows();
  for (std::size_t i = 0; i < n; ++i) {
    const cdouble ai = c * a[i];
    for (std::size_t j = i; j < n; ++j) s(i, j) += ai * std::conj(a[j]);
  }
}

void hermitize_from_upper(ComplexMatrix& s) {
  const std::size_t n = s.rows();
  for (std::size_t i = 0; i < n; ++i) {
    s(i, i) = s(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) s(j, i) = std::conj(s(i, j));
  }
}

double hermitian_defect(const ComplexMatrix& s) {
  if (s.rows() != s.cols()) throw DimensionError("hermitian_defect: not square");
  double worst = 0.0;
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = i; j < s.cols(); ++j)
      worst = std::max(worst, std::abs(s(i, j) - std::conj(s(j, i))));
  return worst;
}

}  // namespace cogfemto
