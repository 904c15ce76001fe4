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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "coherence/error.hpp"
#include "coherence/witness.hpp"

using namespace coherence;

namespace {

ErrorCode validation_error(const ComplexMatrix& m) {
  try {
    validate_state(m);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "state unexpectedly valid";
  return ErrorCode::kInvalidArgument;
}

constexpr double kSqrt2 = std::numbers::sqrt2;

}  // namespace

TEST(ValidateState, fixture_is_valid) {
  const auto rho = witness_fixtures().rho_in;
  EXPECT_EQ(rho.dim(), 3u);
  EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-15);
}

TEST(ValidateState, failures_name_the_invariant) {
  const std::vector<double> negative{0.6, 0.6, -0.2};
  EXPECT_EQ(validation_error(ComplexMatrix::diagonal(negative)), ErrorCode::kNotPsd);
  EXPECT_EQ(validation_error(ComplexMatrix::identity(2)), ErrorCode::kTraceNotOne);
  EXPECT_EQ(validation_error(ComplexMatrix{{0.5, 0.1}, {0.2, 0.5}}), ErrorCode::kNotHermitian);
}

TEST(ValidateState, residual_is_reported) {
  try {
    validate_state(ComplexMatrix::identity(2));
    FAIL();
  } catch (const Error& e) {
    ASSERT_TRUE(e.residual());
    EXPECT_DOUBLE_EQ(*e.residual(), 1.0);
  }
  // Round-off sized violations pass.
  const std::vector<double> nearly{0.5 + 5e-11, 0.5};
  EXPECT_NO_THROW(validate_state(ComplexMatrix::diagonal(nearly)));
}

TEST(Dephase, fixture_diagonal) {
  const auto delta = dephase(witness_fixtures().rho_in);
  EXPECT_NEAR(delta(0, 0).real(), 0.5 + kSqrt2 / 20.0, 1e-15);
  EXPECT_NEAR(delta(1, 1).real(), 0.25 - kSqrt2 / 40.0, 1e-15);
  EXPECT_NEAR(delta(2, 2).real(), 0.25 - kSqrt2 / 40.0, 1e-15);
  EXPECT_TRUE(is_incoherent(delta, 0.0));
}

TEST(Dephase, plus_state_goes_to_maximally_mixed) {
  const auto plus = maximally_coherent_state(2).density();
  const auto delta = dephase(plus);
  EXPECT_NEAR(std::abs(delta(0, 0) - 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(delta(1, 1) - 0.5), 0.0, 1e-15);
  EXPECT_EQ(delta(0, 1), Complex{});
}

TEST(Dephase, random_state_properties) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto rho = random_density_matrix(1 + seed % 6, seed);
    const auto once = dephase(rho);
    const auto twice = dephase(once);
    EXPECT_LE(max_abs_diff(once.matrix(), twice.matrix()), 1e-12);
    EXPECT_NEAR(once.matrix().trace().real(), 1.0, 1e-12);
    EXPECT_TRUE(is_incoherent(once));

    const auto chi = off_diagonal_part(rho);
    for (std::size_t i = 0; i < chi.dim(); ++i) EXPECT_EQ(chi(i, i), Complex{});
    EXPECT_EQ(chi + once.matrix(), rho.matrix());
  }
}

TEST(IsIncoherent, examples) {
  const std::vector<double> diag{0.3, 0.7};
  EXPECT_TRUE(is_incoherent(validate_state(ComplexMatrix::diagonal(diag))));
  EXPECT_FALSE(is_incoherent(witness_fixtures().rho_in));
  // Tolerance is respected.
  const auto slightly = validate_state(ComplexMatrix{{0.5, 1e-9}, {1e-9, 0.5}});
  EXPECT_FALSE(is_incoherent(slightly));
  EXPECT_TRUE(is_incoherent(slightly, 1e-8));
}

TEST(OffDiagonalPart, fixture_entry) {
  const auto chi = off_diagonal_part(witness_fixtures().rho_in);
  EXPECT_NEAR(std::abs(chi(0, 1) - Complex(1.0 / (4.0 * kSqrt2), -1.0 / 20.0)), 0.0, 1e-15);
  const std::vector<double> diag{0.2, 0.8};
  EXPECT_EQ(off_diagonal_part(validate_state(ComplexMatrix::diagonal(diag))), ComplexMatrix(2));
}

TEST(MaximallyCoherentState, amplitudes) {
  EXPECT_EQ(maximally_coherent_state(1).amplitudes, ComplexVector{1.0});
  for (const Complex& z : maximally_coherent_state(2).amplitudes)
    EXPECT_DOUBLE_EQ(z.real(), 1.0 / kSqrt2);
  for (const Complex& z : maximally_coherent_state(4).amplitudes) EXPECT_EQ(z, 0.5);
  EXPECT_THROW(maximally_coherent_state(0), Error);
}

TEST(RandomDensityMatrix, deterministic_and_valid) {
  const auto a = random_density_matrix(3, 7);
  const auto b = random_density_matrix(3, 7);
  EXPECT_EQ(a.matrix(), b.matrix());
  EXPECT_NE(a.matrix(), random_density_matrix(3, 8).matrix());
  EXPECT_NO_THROW(validate_state(a.matrix()));
  EXPECT_GT(min_eigenvalue(a.matrix()), 0.0);  // full rank
  const auto scalar = random_density_matrix(1, 123);
  EXPECT_EQ(scalar(0, 0), Complex(1.0, 0.0));
}

TEST(PureStateVector, normalization_is_checked) {
  EXPECT_THROW(PureStateVector::normalized({1.0, 1.0}), Error);
  const auto psi = PureStateVector::normalized({0.6, Complex(0.0, 0.8)});
  EXPECT_NEAR(psi.density()(0, 1).imag(), -0.48, 1e-15);
}
