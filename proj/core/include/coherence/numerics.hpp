// Copyright 2026 The Coherence Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace coherence {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

// Library-wide tolerance defaults. Every operation taking a tolerance
// accepts an override.
inline constexpr double kStructuralTolerance = 1e-10;
inline constexpr double kArithmeticTolerance = 1e-12;
inline constexpr double kHermitianTolerance = 1e-10;

/// Dense square complex matrix, row-major.
class ComplexMatrix {
 public:
  /// Zero matrix of the given dimension.
  explicit ComplexMatrix(std::size_t dim);
  /// Row-major entries; throws kShapeError on size mismatch and kValueError on
  /// a non-finite component.
  ComplexMatrix(std::size_t dim, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> values);
  /// Matrix unit |row><col|.
  static ComplexMatrix unit(std::size_t dim, std::size_t row, std::size_t col);
  /// |ket><bra|.
  static ComplexMatrix outer(std::span<const Complex> ket,
                             std::span<const Complex> bra);

  std::size_t dim() const noexcept { return dim_; }
  std::span<const Complex> entries() const noexcept { return entries_; }

  Complex& operator()(std::size_t row, std::size_t col) {
    return entries_[row * dim_ + col];
  }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return entries_[row * dim_ + col];
  }

  ComplexMatrix adjoint() const;
  Complex trace() const;
  double frobenius_norm() const;
  /// max |A_ij - conj(A_ji)|.
  double hermitian_residual() const;
  /// (A + A^dag) / 2.
  ComplexMatrix hermitian_part() const;
  /// Keeps the diagonal, zeroes everything else.
  ComplexMatrix diagonal_part() const;
  std::vector<double> real_diagonal() const;
  bool all_finite() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scalar);

  friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) {
    return lhs += rhs;
  }
  friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) {
    return lhs -= rhs;
  }
  friend ComplexMatrix operator*(ComplexMatrix lhs, Complex scalar) {
    return lhs *= scalar;
  }
  friend ComplexMatrix operator*(Complex scalar, ComplexMatrix rhs) {
    return rhs *= scalar;
  }
  friend ComplexMatrix operator*(const ComplexMatrix& lhs,
                                 const ComplexMatrix& rhs);
  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

  ComplexVector operator*(std::span<const Complex> vec) const;

 private:
  std::size_t dim_;
  std::vector<Complex> entries_;
};

/// A * B * A^dag without forming A^dag.
ComplexMatrix sandwich(const ComplexMatrix& a, const ComplexMatrix& b);

/// Largest entrywise modulus of the difference.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// <u|v>, conjugate-linear in the first argument.
Complex inner(std::span<const Complex> u, std::span<const Complex> v);
double norm2(std::span<const Complex> v);

/// Eigenpairs of a Hermitian matrix. Eigenvalues are sorted non-increasing and
/// eigenvectors[k] is the unit eigenvector for eigenvalues[k].
struct Spectrum {
  std::vector<double> eigenvalues;
  std::vector<ComplexVector> eigenvectors;
  int sweeps = 0;

  /// Sum_k f(lambda_k) |v_k><v_k|.
  template <typename F>
  ComplexMatrix apply_function(F&& f) const {
    const std::size_t n = eigenvalues.size();
    ComplexMatrix out(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double w = f(eigenvalues[k]);
      if (w == 0.0) continue;
      const auto& v = eigenvectors[k];
      for (std::size_t i = 0; i < n; ++i) {
        const Complex vi = w * v[i];
        for (std::size_t j = 0; j < n; ++j) out(i, j) += vi * std::conj(v[j]);
      }
    }
    return out;
  }
};

struct EigenOptions {
  double hermitian_tolerance = kHermitianTolerance;
  /// Convergence when the off-diagonal Frobenius mass drops to this fraction
  /// of ||H||_F.
  double relative_off_diagonal = 1e-14;
  int max_sweeps = 100;
};

/// Cyclic complex Jacobi. Throws kNotHermitian (residual = offending
/// asymmetry) or kNoConvergence when the sweep budget runs out.
Spectrum hermitian_eigendecomposition(const ComplexMatrix& h,
                                      const EigenOptions& options = {});

double min_eigenvalue(const ComplexMatrix& h,
                      double hermitian_tolerance = kHermitianTolerance);
double max_eigenvalue(const ComplexMatrix& h,
                      double hermitian_tolerance = kHermitianTolerance);

inline bool is_psd(const ComplexMatrix& h, double tol = kStructuralTolerance) {
  return min_eigenvalue(h) >= -tol;
}

}  // namespace coherence
