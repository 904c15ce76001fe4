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

#include "coherence/states.hpp"

#include <cmath>
#include <sstream>

#include "coherence/error.hpp"

namespace coherence {

DensityMatrix validate_state(const ComplexMatrix& m,
                             const StateTolerances& tolerances) {
  if (m.dim() == 0) throw Error(ErrorCode::kInvalidArgument, "state of dimension 0");
  if (!m.all_finite()) throw Error(ErrorCode::kValueError, "non-finite state entry");

  const double asym = m.hermitian_residual();
  if (asym > tolerances.hermitian) {
    std::ostringstream msg;
    msg << "state is not Hermitian (residual " << asym << ")";
    throw Error(ErrorCode::kNotHermitian, msg.str(), asym);
  }
  ComplexMatrix herm = m.hermitian_part();
  const double lowest = min_eigenvalue(herm);
  if (lowest < -tolerances.psd) {
    std::ostringstream msg;
    msg << "state is not positive semidefinite (min eigenvalue " << lowest << ")";
    throw Error(ErrorCode::kNotPsd, msg.str(), lowest);
  }
  const double trace_error = std::abs(herm.trace().real() - 1.0);
  if (trace_error > tolerances.trace) {
    std::ostringstream msg;
    msg << "state trace is " << herm.trace().real() << ", not 1";
    throw Error(ErrorCode::kTraceNotOne, msg.str(), trace_error);
  }
  return DensityMatrix(std::move(herm));
}

PureStateVector PureStateVector::normalized(ComplexVector amplitudes) {
  const double norm = norm2(amplitudes);
  if (std::abs(norm - 1.0) > kStructuralTolerance) {
    std::ostringstream msg;
    msg << "state vector norm is " << norm;
    throw Error(ErrorCode::kValueError, msg.str(), std::abs(norm - 1.0));
  }
  return PureStateVector{std::move(amplitudes)};
}

DensityMatrix PureStateVector::density() const {
  return validate_state(ComplexMatrix::outer(amplitudes, amplitudes));
}

DensityMatrix dephase(const DensityMatrix& rho) {
  return validate_state(rho.matrix().diagonal_part());
}

bool is_incoherent(const DensityMatrix& rho, double tol) {
  const std::size_t n = rho.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && std::abs(rho(i, j)) > tol) return false;
  return true;
}

ComplexMatrix off_diagonal_part(const DensityMatrix& rho) {
  ComplexMatrix chi = rho.matrix();
  for (std::size_t i = 0; i < chi.dim(); ++i) chi(i, i) = 0.0;
  return chi;
}

PureStateVector maximally_coherent_state(std::size_t d) {
  if (d == 0) throw Error(ErrorCode::kInvalidArgument, "dimension must be positive");
  return PureStateVector{ComplexVector(d, Complex(1.0 / std::sqrt(double(d)), 0.0))};
}

DensityMatrix random_density_matrix(std::size_t d, Rng& rng) {
  if (d == 0) throw Error(ErrorCode::kInvalidArgument, "dimension must be positive");
  ComplexMatrix g(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) g(i, j) = rng.complex_gaussian();
  ComplexMatrix rho = g * g.adjoint();
  rho *= 1.0 / rho.trace().real();
  return validate_state(rho);
}

DensityMatrix random_density_matrix(std::size_t d, std::uint64_t seed) {
  Rng rng(seed);
  return random_density_matrix(d, rng);
}

PureStateVector random_pure_state(std::size_t d, Rng& rng) {
  if (d == 0) throw Error(ErrorCode::kInvalidArgument, "dimension must be positive");
  return PureStateVector{rng.unit_vector(d)};
}

}  // namespace coherence
