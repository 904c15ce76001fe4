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

#include <gtest/gtest.h>

#include <algorithm>

#include "coherence/error.hpp"
#include "coherence/witness.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace coherence;

namespace {

void expect_spectrum_invariants(const ComplexMatrix& h, const Spectrum& s) {
  const std::size_t n = h.dim();
  const double scale = h.frobenius_norm();
  ASSERT_EQ(s.eigenvalues.size(), n);
  for (std::size_t k = 0; k + 1 < n; ++k) EXPECT_GE(s.eigenvalues[k], s.eigenvalues[k + 1]);
  for (std::size_t k = 0; k < n; ++k) {
    const ComplexVector hv = h * s.eigenvectors[k];
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      residual += std::norm(hv[i] - s.eigenvalues[k] * s.eigenvectors[k][i]);
    EXPECT_LE(std::sqrt(residual), 1e-10 * std::max(scale, 1e-300) + 1e-300);
    for (std::size_t l = 0; l < n; ++l) {
      const Complex overlap = inner(s.eigenvectors[k], s.eigenvectors[l]);
      EXPECT_NEAR(std::abs(overlap - (k == l ? 1.0 : 0.0)), 0.0, 1e-10);
    }
  }
  const ComplexMatrix rebuilt = s.apply_function([](double x) { return x; });
  EXPECT_LE((rebuilt - h).frobenius_norm(), 1e-9 * std::max(1.0, scale));
}

}  // namespace

TEST(Eigensolver, diagonal_input) {
  const std::vector<double> diag{1.0, 2.0, 3.0};
  const auto s = hermitian_eigendecomposition(ComplexMatrix::diagonal(diag));
  EXPECT_EQ(s.eigenvalues, (std::vector<double>{3.0, 2.0, 1.0}));
}

TEST(Eigensolver, pauli_x) {
  const ComplexMatrix x{{0.0, 1.0}, {1.0, 0.0}};
  const auto s = hermitian_eigendecomposition(x);
  EXPECT_NEAR(s.eigenvalues[0], 1.0, 1e-15);
  EXPECT_NEAR(s.eigenvalues[1], -1.0, 1e-15);
  expect_spectrum_invariants(x, s);
}

TEST(Eigensolver, fixture_input_matches_characteristic_polynomial) {
  const auto rho = witness_fixtures().rho_in;
  const auto s = hermitian_eigendecomposition(rho.matrix());
  const auto roots = oracle::cubic_hermitian_eigenvalues(rho.matrix());
  double sum = 0.0;
  for (int k = 0; k < 3; ++k) {
    EXPECT_NEAR(s.eigenvalues[k], roots[k], 1e-12);
    EXPECT_GE(s.eigenvalues[k], 0.0);
    sum += s.eigenvalues[k];
  }
  EXPECT_NEAR(sum, 1.0, 1e-12);
  // Frozen from the cubic oracle: 0.68693565, 0.30334431, 0.00972004.
  EXPECT_NEAR(roots[0], 0.68693565, 1e-8);
  EXPECT_NEAR(roots[2], 0.00972004, 1e-8);
  expect_spectrum_invariants(rho.matrix(), s);
}

TEST(Eigensolver, rejects_non_hermitian_with_residual) {
  const ComplexMatrix m{{1.0, 0.5}, {0.0, 1.0}};
  try {
    hermitian_eigendecomposition(m);
    FAIL() << "expected NotHermitian";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotHermitian);
    ASSERT_TRUE(e.residual().has_value());
    EXPECT_DOUBLE_EQ(*e.residual(), 0.5);
  }
}

TEST(Eigensolver, reports_no_convergence_when_budget_is_zero) {
  Rng rng(3);
  const auto h = test_util::random_hermitian(4, rng);
  try {
    hermitian_eigendecomposition(h, {.max_sweeps = 0});
    FAIL() << "expected NoConvergence";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoConvergence);
  }
}

TEST(Eigensolver, zero_matrix) {
  const auto s = hermitian_eigendecomposition(ComplexMatrix(3));
  for (double x : s.eigenvalues) EXPECT_EQ(x, 0.0);
}

TEST(Eigensolver, degenerate_spectrum) {
  const std::vector<double> diag{2.0, 2.0, -1.0, -1.0};
  Rng rng(8);
  // Conjugate by a random unitary built from a random Hermitian spectrum.
  const auto basis = hermitian_eigendecomposition(test_util::random_hermitian(4, rng));
  ComplexMatrix h(4);
  for (std::size_t k = 0; k < 4; ++k)
    h += diag[k] * ComplexMatrix::outer(basis.eigenvectors[k], basis.eigenvectors[k]);
  h = h.hermitian_part();
  const auto s = hermitian_eigendecomposition(h);
  EXPECT_NEAR(s.eigenvalues[0], 2.0, 1e-12);
  EXPECT_NEAR(s.eigenvalues[1], 2.0, 1e-12);
  EXPECT_NEAR(s.eigenvalues[3], -1.0, 1e-12);
  expect_spectrum_invariants(h, s);
}

TEST(Eigensolver, random_hermitian_properties) {
  Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 1 + rng.below(16);
    const auto h = test_util::random_hermitian(d, rng);
    const auto s = hermitian_eigendecomposition(h);
    expect_spectrum_invariants(h, s);

    double eig_sum = 0.0;
    for (double x : s.eigenvalues) eig_sum += x;
    EXPECT_NEAR(eig_sum, h.trace().real(), 1e-9);

    const auto u = test_util::diagonal_phase_unitary(d, rng);
    const auto rotated = (u * h * u.adjoint()).hermitian_part();
    const auto s2 = hermitian_eigendecomposition(rotated);
    for (std::size_t k = 0; k < d; ++k) EXPECT_NEAR(s2.eigenvalues[k], s.eigenvalues[k], 1e-9);

    const double lowest = min_eigenvalue(h);
    for (std::size_t i = 0; i < d; ++i) EXPECT_LE(lowest, h(i, i).real() + 1e-12);
  }
}

TEST(MinEigenvalue, examples) {
  EXPECT_NEAR(min_eigenvalue(ComplexMatrix::identity(3)), 1.0, 1e-15);
  const std::vector<double> diag{0.5, 0.0, -0.25};
  EXPECT_EQ(min_eigenvalue(ComplexMatrix::diagonal(diag)), -0.25);
  EXPECT_FALSE(is_psd(ComplexMatrix::diagonal(diag)));

  const auto rho_out = witness_fixtures().rho_out;
  const double lowest = min_eigenvalue(rho_out.matrix());
  EXPECT_GE(lowest, -1e-10);
  const auto roots = oracle::cubic_hermitian_eigenvalues(rho_out.matrix());
  EXPECT_NEAR(lowest, roots[2], 1e-12);
}

TEST(MinEigenvalue, not_hermitian) {
  const ComplexMatrix m{{1.0, Complex(0.0, 1.0)}, {Complex(0.0, 1.0), 1.0}};
  EXPECT_THROW(min_eigenvalue(m), Error);
}

TEST(ComplexMatrix, construction_errors) {
  try {
    ComplexMatrix(2, std::vector<Complex>(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kShapeError);
  }
  try {
    ComplexMatrix(1, std::vector<Complex>{Complex(std::nan(""), 0.0)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kValueError);
  }
  EXPECT_THROW((ComplexMatrix{{1.0, 2.0}, {3.0}}), Error);
}

TEST(ComplexMatrix, arithmetic) {
  const ComplexMatrix a{{1.0, Complex(0.0, 2.0)}, {3.0, 4.0}};
  const ComplexMatrix b = ComplexMatrix::identity(2) * Complex(2.0, 0.0);
  EXPECT_EQ(a * b, a * Complex(2.0, 0.0));
  EXPECT_EQ(a.adjoint()(0, 1), 3.0);
  EXPECT_EQ(a.adjoint()(1, 0), Complex(0.0, -2.0));
  EXPECT_EQ(a.trace(), Complex(5.0, 0.0));
  EXPECT_EQ(sandwich(a, b), a * b * a.adjoint());
  EXPECT_THROW(a * ComplexMatrix(3), Error);
}
