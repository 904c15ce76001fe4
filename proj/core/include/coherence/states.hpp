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

#include <cstdint>

#include "coherence/numerics.hpp"
#include "coherence/random.hpp"

namespace coherence {

struct StateTolerances {
  double hermitian = kHermitianTolerance;
  double psd = kStructuralTolerance;
  double trace = kStructuralTolerance;
};

/// A validated density matrix in the fixed reference basis (the index order).
/// The only way to obtain one is through validate_state.
class DensityMatrix {
 public:
  const ComplexMatrix& matrix() const noexcept { return mat_; }
  std::size_t dim() const noexcept { return mat_.dim(); }
  const Complex& operator()(std::size_t i, std::size_t j) const { return mat_(i, j); }
  /// Populations rho_ii.
  std::vector<double> populations() const { return mat_.real_diagonal(); }

 private:
  explicit DensityMatrix(ComplexMatrix mat) : mat_(std::move(mat)) {}
  friend DensityMatrix validate_state(const ComplexMatrix&, const StateTolerances&);

  ComplexMatrix mat_;
};

/// Checks Hermiticity, PSD-ness and unit trace, in that order. Throws
/// kNotHermitian / kNotPsd / kTraceNotOne with the violating residual.
DensityMatrix validate_state(const ComplexMatrix& m,
                             const StateTolerances& tolerances = {});

struct PureStateVector {
  ComplexVector amplitudes;

  /// Throws kValueError unless the vector has unit norm to 1e-10.
  static PureStateVector normalized(ComplexVector amplitudes);
  DensityMatrix density() const;
};

/// Delta(rho): the diagonal part.
DensityMatrix dephase(const DensityMatrix& rho);

/// True iff every off-diagonal modulus is <= tol.
bool is_incoherent(const DensityMatrix& rho, double tol = kStructuralTolerance);

/// chi = rho - Delta(rho); zero diagonal by construction.
ComplexMatrix off_diagonal_part(const DensityMatrix& rho);

/// |psi_d> = d^{-1/2} sum_j |j>.
PureStateVector maximally_coherent_state(std::size_t d);

/// G G^dag / tr with G a complex Gaussian (Ginibre) matrix.
DensityMatrix random_density_matrix(std::size_t d, Rng& rng);
DensityMatrix random_density_matrix(std::size_t d, std::uint64_t seed);

/// Haar-random pure state.
PureStateVector random_pure_state(std::size_t d, Rng& rng);

}  // namespace coherence
