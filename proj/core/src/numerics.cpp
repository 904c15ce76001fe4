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

#include "coherence/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "coherence/error.hpp"

namespace coherence {
namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) {
    std::ostringstream msg;
    msg << "matrix dimensions differ: " << a.dim() << " vs " << b.dim();
    throw Error(ErrorCode::kDimensionMismatch, msg.str());
  }
}

double off_diagonal_mass(const ComplexMatrix& a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (i != j) sum += std::norm(a(i, j));
  return std::sqrt(sum);
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (entries_.size() != dim_ * dim_) {
    std::ostringstream msg;
    msg << "expected " << dim_ * dim_ << " entries for dim " << dim_ << ", got "
        << entries_.size();
    throw Error(ErrorCode::kShapeError, msg.str());
  }
  if (!all_finite()) throw Error(ErrorCode::kValueError, "non-finite matrix entry");
}

ComplexMatrix::ComplexMatrix(
    std::initializer_list<std::initializer_list<Complex>> rows)
    : dim_(rows.size()) {
  entries_.reserve(dim_ * dim_);
  for (const auto& row : rows) {
    if (row.size() != dim_) throw Error(ErrorCode::kShapeError, "ragged row");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
  if (!all_finite()) throw Error(ErrorCode::kValueError, "non-finite matrix entry");
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::unit(std::size_t dim, std::size_t row,
                                  std::size_t col) {
  ComplexMatrix m(dim);
  m(row, col) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> ket,
                                   std::span<const Complex> bra) {
  if (ket.size() != bra.size())
    throw Error(ErrorCode::kDimensionMismatch, "outer product of unequal vectors");
  ComplexMatrix m(ket.size());
  for (std::size_t i = 0; i < ket.size(); ++i)
    for (std::size_t j = 0; j < bra.size(); ++j) m(i, j) = ket[i] * std::conj(bra[j]);
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double sum = 0.0;
  for (const Complex& z : entries_) sum += std::norm(z);
  return std::sqrt(sum);
}

double ComplexMatrix::hermitian_residual() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i; j < dim_; ++j)
      worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return worst;
}

ComplexMatrix ComplexMatrix::hermitian_part() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    out(i, i) = (*this)(i, i).real();
    for (std::size_t j = i + 1; j < dim_; ++j) {
      const Complex z = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
      out(i, j) = z;
      out(j, i) = std::conj(z);
    }
  }
  return out;
}

ComplexMatrix ComplexMatrix::diagonal_part() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) out(i, i) = (*this)(i, i);
  return out;
}

std::vector<double> ComplexMatrix::real_diagonal() const {
  std::vector<double> out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) out[i] = (*this)(i, i).real();
  return out;
}

bool ComplexMatrix::all_finite() const {
  return std::all_of(entries_.begin(), entries_.end(), finite);
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_dim(*this, other);
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_dim(*this, other);
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= other.entries_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
  for (Complex& z : entries_) z *= scalar;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  require_same_dim(lhs, rhs);
  const std::size_t n = lhs.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex a = lhs(i, k);
      if (a == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

ComplexVector ComplexMatrix::operator*(std::span<const Complex> vec) const {
  if (vec.size() != dim_)
    throw Error(ErrorCode::kDimensionMismatch, "matrix-vector dimension mismatch");
  ComplexVector out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out[i] += (*this)(i, j) * vec[j];
  return out;
}

ComplexMatrix sandwich(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b);
  const std::size_t n = a.dim();
  const ComplexMatrix ab = a * b;
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex sum = 0.0;
      for (std::size_t k = 0; k < n; ++k) sum += ab(i, k) * std::conj(a(j, k));
      out(i, j) = sum;
    }
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b);
  double worst = 0.0;
  for (std::size_t k = 0; k < a.entries().size(); ++k)
    worst = std::max(worst, std::abs(a.entries()[k] - b.entries()[k]));
  return worst;
}

Complex inner(std::span<const Complex> u, std::span<const Complex> v) {
  if (u.size() != v.size())
    throw Error(ErrorCode::kDimensionMismatch, "inner product of unequal vectors");
  Complex sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) sum += std::conj(u[i]) * v[i];
  return sum;
}

double norm2(std::span<const Complex> v) {
  double sum = 0.0;
  for (const Complex& z : v) sum += std::norm(z);
  return std::sqrt(sum);
}

Spectrum hermitian_eigendecomposition(const ComplexMatrix& h,
                                      const EigenOptions& options) {
  const double asym = h.hermitian_residual();
  if (asym > options.hermitian_tolerance) {
    std::ostringstream msg;
    msg << "matrix is not Hermitian: max |H_ij - conj(H_ji)| = " << asym;
    throw Error(ErrorCode::kNotHermitian, msg.str(), asym);
  }

  const std::size_t n = h.dim();
  ComplexMatrix a = h.hermitian_part();
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double target = options.relative_off_diagonal * a.frobenius_norm();

  int sweeps = 0;
  while (off_diagonal_mass(a) > target) {
    if (sweeps >= options.max_sweeps) {
      throw Error(ErrorCode::kNoConvergence,
                  "Jacobi eigensolver exceeded its sweep budget",
                  off_diagonal_mass(a));
    }
    ++sweeps;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        // Phase q so that the pivot is real, then apply a real Givens rotation.
        const Complex phase = apq / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // Rotation J restricted to (p, q): [[c, s], [-s conj(phase), c conj(phase)]].
        const Complex jpp = c;
        const Complex jpq = s;
        const Complex jqp = -s * std::conj(phase);
        const Complex jqq = c * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {  // A <- A J
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
        }
        for (std::size_t k = 0; k < n; ++k) {  // A <- J^dag A
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {  // V <- V J
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() > a(y, y).real();
  });

  Spectrum spectrum;
  spectrum.sweeps = sweeps;
  spectrum.eigenvalues.reserve(n);
  spectrum.eigenvectors.reserve(n);
  for (std::size_t k : order) {
    spectrum.eigenvalues.push_back(a(k, k).real());
    ComplexVector col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = v(i, k);
    spectrum.eigenvectors.push_back(std::move(col));
  }
  return spectrum;
}

double min_eigenvalue(const ComplexMatrix& h, double hermitian_tolerance) {
  if (h.dim() == 0) throw Error(ErrorCode::kInvalidArgument, "empty matrix");
  return hermitian_eigendecomposition(h, {.hermitian_tolerance = hermitian_tolerance})
      .eigenvalues.back();
}

double max_eigenvalue(const ComplexMatrix& h, double hermitian_tolerance) {
  if (h.dim() == 0) throw Error(ErrorCode::kInvalidArgument, "empty matrix");
  return hermitian_eigendecomposition(h, {.hermitian_tolerance = hermitian_tolerance})
      .eigenvalues.front();
}

}  // namespace coherence
