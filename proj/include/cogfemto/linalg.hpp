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

#ifndef COGFEMTO_LINALG_HPP
#define COGFEMTO_LINALG_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cogfemto {

using cdouble = std::complex<double>;

/// Raised when a matrix is too close to rank deficient to be pseudo-inverted.
/// For fading draws this means the caller should resample.
class RankDeficientError : public std::runtime_error {
 public:
  RankDeficientError(const std::string& what, double rcond)
      : std::runtime_error(what), rcond_(rcond) {}
  double rcond() const noexcept { return rcond_; }

 private:
  double rcond_;
};

class NotPositiveDefiniteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense complex column vector.
class ComplexVector {
 public:
  ComplexVector() = default;
  explicit ComplexVector(std::size_t n) : data_(n) {}
  ComplexVector(std::initializer_list<cdouble> init);
  /// Throws std::invalid_argument if any entry is NaN or infinite.
  explicit ComplexVector(std::vector<cdouble> data);

  static ComplexVector unit(std::size_t n, std::size_t i);

  std::size_t size() const noexcept { return data_.size(); }
  cdouble& operator[](std::size_t i) { return data_[i]; }
  const cdouble& operator[](std::size_t i) const { return data_[i]; }
  std::span<const cdouble> values() const noexcept { return data_; }
  std::span<cdouble> values() noexcept { return data_; }

  double norm() const;
  double squared_norm() const;

  ComplexVector& operator*=(cdouble s);
  ComplexVector& operator+=(const ComplexVector& other);
  ComplexVector& operator-=(const ComplexVector& other);

  friend bool operator==(const ComplexVector&, const ComplexVector&) = default;

 private:
  std::vector<cdouble> data_;
};

ComplexVector operator*(cdouble s, ComplexVector v);
ComplexVector operator+(ComplexVector a, const ComplexVector& b);
ComplexVector operator-(ComplexVector a, const ComplexVector& b);

/// a^H b (conjugates the left operand).
cdouble dot(std::span<const cdouble> a, std::span<const cdouble> b);
inline cdouble dot(const ComplexVector& a, const ComplexVector& b) {
  return dot(a.values(), b.values());
}

/// Dense complex matrix, row-major storage.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  /// Row-major data; throws on size mismatch or non-finite entries.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cdouble> data);

  static ComplexMatrix identity(std::size_t n);
  /// Matrix whose columns are the given vectors (all of equal length).
  static ComplexMatrix from_columns(std::span<const ComplexVector> columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  cdouble& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cdouble& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<const cdouble> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  ComplexVector column(std::size_t c) const;

  ComplexMatrix adjoint() const;
  double frobenius_norm() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(cdouble s);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cdouble> data_;
};

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector operator*(const ComplexMatrix& a, const ComplexVector& x);
ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);

/// A^H x without forming the adjoint.
ComplexVector adjoint_times(const ComplexMatrix& a, const ComplexVector& x);

/// Default reciprocal-condition floor below which pseudo_inverse refuses.
inline constexpr double kDefaultRcondFloor = 1e-10;

/// Moore-Penrose pseudo-inverse of a tall full-column-rank matrix (K <= M),
/// computed from a Householder QR factorization. The reciprocal condition
/// estimate is min|R_ii| / max|R_ii|.
ComplexMatrix pseudo_inverse(const ComplexMatrix& a,
                             double rcond_floor = kDefaultRcondFloor);

/// Solves S x = b for Hermitian positive definite S by Cholesky, with one
/// step of iterative refinement.
ComplexVector hermitian_solve(const ComplexMatrix& s, const ComplexVector& b);

/// S + c a a^H, with the result made exactly Hermitian.
ComplexMatrix rank_one_update(const ComplexMatrix& s, const ComplexVector& a,
                              double c);

/// In-place accumulate S += c a a^H on the upper triangle only. Callers must
/// finish with hermitize_from_upper().
void accumulate_rank_one_upper(ComplexMatrix& s, std::span<const cdouble> a,
                               double c);
void hermitize_from_upper(ComplexMatrix& s);

/// max |S - S^H| entrywise.
double hermitian_defect(const ComplexMatrix& s);

}  // namespace cogfemto

#endif  // COGFEMTO_LINALG_HPP
