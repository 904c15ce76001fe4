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

#include "coherence/channels.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "coherence/error.hpp"
#include "coherence/witness.hpp"

using namespace coherence;

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

// Mixes the Kraus operators by a random unitary on the operator index.
KrausChannel remix(const KrausChannel& channel, Rng& rng) {
  const std::size_t m = channel.kraus().size();
  ComplexMatrix g(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) g(i, j) = rng.complex_gaussian();
  // Columns of G (G^dag G)^{-1/2} form a unitary.
  const auto gram = (g.adjoint() * g).hermitian_part();
  const auto u = g * hermitian_eigendecomposition(gram).apply_function(
                         [](double x) { return 1.0 / std::sqrt(x); });
  std::vector<ComplexMatrix> mixed(m, ComplexMatrix(channel.dim()));
  for (std::size_t mu = 0; mu < m; ++mu)
    for (std::size_t nu = 0; nu < m; ++nu) mixed[mu] += u(mu, nu) * channel.kraus()[nu];
  return KrausChannel::create(std::move(mixed));
}

}  // namespace

TEST(KrausChannel, validation) {
  EXPECT_THROW(KrausChannel::create({}), Error);
  EXPECT_THROW(KrausChannel::create({ComplexMatrix::identity(2), ComplexMatrix::identity(3)}),
               Error);
  try {
    KrausChannel::create({ComplexMatrix::identity(2) * Complex(0.5, 0.0)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotTracePreserving);
    EXPECT_TRUE(e.residual());
  }
  // The same operator is a fine stochastic map.
  EXPECT_NO_THROW(KrausChannel::create({ComplexMatrix::identity(2) * Complex(0.5, 0.0)},
                                       KrausMode::kTraceNonincreasing));
  try {
    KrausChannel::create({ComplexMatrix::identity(2) * Complex(1.5, 0.0)},
                         KrausMode::kTraceNonincreasing);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotTraceNonincreasing);
  }
}

TEST(Apply, fixture_output_matches_closed_form) {
  const auto fx = witness_fixtures();
  EXPECT_LE(fx.channel.completeness_residual(), 1e-12);
  const auto out = apply(fx.channel, fx.rho_in);
  EXPECT_LE(max_abs_diff(out.matrix(), fx.rho_out.matrix()), 1e-12);
}

TEST(Apply, identity_and_amplitude_damping) {
  const auto rho = random_density_matrix(2, 31);
  EXPECT_LE(max_abs_diff(apply(identity_channel(2), rho).matrix(), rho.matrix()), 1e-15);
  const auto damping = KrausChannel::create(
      {ComplexMatrix::unit(2, 0, 0), ComplexMatrix::unit(2, 0, 1)});
  const auto out = apply(damping, rho);
  EXPECT_LE(max_abs_diff(out.matrix(), ComplexMatrix::unit(2, 0, 0)), 1e-15);
}

TEST(Apply, errors) {
  const auto rho = random_density_matrix(2, 1);
  EXPECT_THROW(apply(identity_channel(3), rho), Error);
  const auto stochastic = KrausChannel::create({ComplexMatrix::unit(2, 0, 0)},
                                               KrausMode::kTraceNonincreasing);
  try {
    apply(stochastic, rho);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kModeMismatch);
  }
}

TEST(Apply, preserves_trace_and_positivity) {
  int pairs = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    Rng rng(seed);
    const std::size_t d = 2 + seed % 4;
    const auto channel = random_channel(d, 1 + rng.below(4), rng);
    const auto rho = random_density_matrix(d, rng);
    const auto raw = apply_linear(channel, rho.matrix());
    EXPECT_NEAR(raw.trace().real(), 1.0, 1e-12);
    EXPECT_GE(min_eigenvalue(raw.hermitian_part()), -1e-10);
    ++pairs;
  }
  EXPECT_EQ(pairs, 1000);
}

TEST(ApplyStochastic, fixture_branch) {
  const auto fx = witness_fixtures();
  const auto branch = apply_stochastic(fx.channel, kWitnessBranch, fx.rho_in);
  EXPECT_LE(max_abs_diff(branch.state.matrix(), fx.rho_branch.matrix()), 1e-12);
  // tr(K_2 rho_in K_2^dag) by hand: 3/4 - 3 sqrt2 / 80.
  EXPECT_NEAR(branch.probability, 0.75 - 3.0 * kSqrt2 / 80.0, 1e-15);
  EXPECT_NEAR(branch.probability, 0.6969669914110089, 1e-15);
}

TEST(ApplyStochastic, identity_and_zero_probability) {
  const auto rho = random_density_matrix(2, 4);
  const auto same = apply_stochastic(identity_channel(2), 0, rho);
  EXPECT_NEAR(same.probability, 1.0, 1e-15);
  EXPECT_LE(max_abs_diff(same.state.matrix(), rho.matrix()), 1e-15);

  const auto project0 = KrausChannel::create({ComplexMatrix::unit(2, 0, 0)},
                                             KrausMode::kTraceNonincreasing);
  const auto one = validate_state(ComplexMatrix::unit(2, 1, 1));
  try {
    apply_stochastic(project0, 0, one);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kZeroProbability);
  }
  EXPECT_THROW(apply_stochastic(project0, 3, one), Error);
}

TEST(Choi, identity_is_maximally_entangled) {
  const auto choi = choi_of(identity_channel(2));
  EXPECT_NEAR(choi.mat.trace().real(), 2.0, 1e-15);
  const auto s = hermitian_eigendecomposition(choi.mat);
  EXPECT_NEAR(s.eigenvalues[0], 2.0, 1e-14);
  for (std::size_t k = 1; k < 4; ++k) EXPECT_NEAR(s.eigenvalues[k], 0.0, 1e-14);
}

TEST(Choi, dephasing_blocks) {
  const auto choi = choi_of(dephasing_channel(2));
  // Diagonal blocks |0><0| and |1><1|, off-diagonal blocks vanish.
  EXPECT_EQ(choi.mat(0, 0), Complex(1.0));
  EXPECT_EQ(choi.mat(3, 3), Complex(1.0));
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) EXPECT_EQ(choi.mat(a, 2 + b), Complex{});
  EXPECT_NEAR(choi.mat.frobenius_norm(), std::sqrt(2.0), 1e-15);
}

TEST(Choi, fixture_channel_is_cptp) {
  const auto choi = choi_of(witness_fixtures().channel);
  EXPECT_GE(min_eigenvalue(choi.mat), -1e-10);
  EXPECT_LE(max_abs_diff(partial_trace_output(choi), ComplexMatrix::identity(3)), 1e-12);
  // Block (1,2) assembled directly from the Kraus action on |1><2|.
  const auto fx = witness_fixtures();
  ComplexMatrix block(3);
  for (const auto& k : fx.channel.kraus()) {
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 3; ++b) block(a, b) += k(a, 1) * std::conj(k(b, 2));
  }
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) EXPECT_EQ(choi.mat(3 + a, 6 + b), block(a, b));
}

TEST(Classify, fixture_channel) {
  const auto report = classify(witness_fixtures().channel);
  EXPECT_TRUE(report.io_certified);
  EXPECT_FALSE(report.sio_certified);
  EXPECT_FALSE(report.dio);
  EXPECT_TRUE(report.mio);
  EXPECT_NEAR(report.residuals.at("sio_row"), 1.0 / kSqrt2, 1e-15);
  EXPECT_EQ(report.residuals.at("io_branch_action"), 0.0);
  EXPECT_GT(report.residuals.at("dio_commutator"), 0.1);
  EXPECT_GT(fixture_dio_witness_residual(), 0.1);
}

TEST(Classify, identity_and_dephasing) {
  for (const auto& channel : {identity_channel(3), dephasing_channel(3)}) {
    const auto report = classify(channel);
    EXPECT_TRUE(report.io_certified);
    EXPECT_TRUE(report.sio_certified);
    EXPECT_TRUE(report.dio);
    EXPECT_TRUE(report.mio);
  }
}

TEST(Classify, implications_hold_on_random_channels) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const std::size_t d = 2 + seed % 3;
    std::vector<KrausChannel> channels{random_channel(d, 2, rng), sample_sio(d, 2, rng)};
    if (d >= 3) channels.push_back(sample_io_nonsio(d, rng));
    for (const auto& channel : channels) {
      const auto report = classify(channel);
      if (report.sio_certified) EXPECT_TRUE(report.io_certified);
      if (report.dio) EXPECT_TRUE(report.mio);
      if (report.io_certified) EXPECT_TRUE(report.mio);
    }
  }
}

TEST(Classify, dio_and_mio_ignore_kraus_representation) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    std::vector<KrausChannel> channels{
        random_channel(3, 3, rng), sample_sio(3, 3, rng), sample_io_nonsio(3, rng),
        dephasing_twirl(random_channel(2, 2, rng))};
    for (const auto& channel : channels) {
      const auto before = classify(channel);
      const auto after = classify(remix(channel, rng));
      EXPECT_EQ(before.dio, after.dio);
      EXPECT_EQ(before.mio, after.mio);
    }
  }
}

TEST(DephasingTwirl, identity_and_dephasing_are_fixed_points) {
  const auto twirled_id = dephasing_twirl(identity_channel(3));
  EXPECT_EQ(twirled_id.kraus().size(), 64u);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto rho = random_density_matrix(3, seed);
    EXPECT_LE(max_abs_diff(apply(twirled_id, rho).matrix(), rho.matrix()), 1e-12);
  }
  const auto twirled_delta = dephasing_twirl(dephasing_channel(2));
  const auto rho = random_density_matrix(2, 77);
  EXPECT_LE(max_abs_diff(apply(twirled_delta, rho).matrix(), dephase(rho).matrix()), 1e-12);
}

TEST(DephasingTwirl, random_channel_becomes_dio) {
  const auto channel = random_channel(3, 3, 11);
  EXPECT_FALSE(classify(channel).dio);
  const auto twirled = dephasing_twirl(channel);
  const auto report = classify(twirled);
  EXPECT_TRUE(report.dio);
  EXPECT_TRUE(report.mio);
  EXPECT_LE(report.residuals.at("dio_commutator"), 1e-12);
  EXPECT_LE(twirled.completeness_residual(), 1e-12);
}

TEST(DephasingTwirl, budget_and_compression) {
  try {
    dephasing_twirl(identity_channel(9));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionTooLarge);
  }
  EXPECT_THROW(dephasing_twirl(identity_channel(3), {.operator_budget = 63}), Error);
  // A zero Kraus operator twirls into 64 zero operators, all dropped.
  const auto channel = KrausChannel::create({ComplexMatrix::identity(3), ComplexMatrix(3)});
  const auto full = dephasing_twirl(channel);
  const auto compressed = dephasing_twirl(channel, {.compress = true});
  EXPECT_EQ(full.kraus().size(), 128u);
  EXPECT_EQ(compressed.kraus().size(), 64u);
  const auto rho = random_density_matrix(3, 5);
  EXPECT_LE(max_abs_diff(apply(full, rho).matrix(), apply(compressed, rho).matrix()), 1e-12);
}

TEST(SampleSio, structure_and_determinism) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::size_t d = 1 + seed % 5;
    const auto channel = sample_sio(d, 1 + seed % 3, seed);
    EXPECT_TRUE(classify(channel).sio_certified);
    EXPECT_LE(channel.completeness_residual(), 1e-12);
  }
  const auto a = sample_sio(3, 2, 5);
  const auto b = sample_sio(3, 2, 5);
  ASSERT_EQ(a.kraus().size(), b.kraus().size());
  for (std::size_t k = 0; k < a.kraus().size(); ++k) EXPECT_EQ(a.kraus()[k], b.kraus()[k]);
}

TEST(SampleSio, commutes_with_dephasing) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const auto channel = sample_sio(3, 1 + rng.below(3), rng);
    const auto rho = random_density_matrix(3, rng);
    const auto lhs = dephase(apply(channel, rho));
    const auto rhs = apply(channel, dephase(rho));
    EXPECT_LE(max_abs_diff(lhs.matrix(), rhs.matrix()), 1e-10);
  }
}

TEST(SampleIoNonSio, hadamard_merge_reproduces_fixture_kraus) {
  const double h = 1.0 / kSqrt2;
  const auto channel = merge_channel({.dim = 3,
                                      .first = 1,
                                      .second = 2,
                                      .v = {{{h, h}, {h, -h}}},
                                      .row_a = 0,
                                      .row_b = 1,
                                      .routes = {{0, 0, 0, 0.0, 1.0}}});
  const ComplexMatrix k1{{0.0, h, h}, {0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}};
  const ComplexMatrix k2{{1.0, 0.0, 0.0}, {0.0, h, -h}, {0.0, 0.0, 0.0}};
  EXPECT_EQ(channel.kraus()[0], k1);
  EXPECT_EQ(channel.kraus()[1], k2);
}

TEST(SampleIoNonSio, structure) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const std::size_t d = 3 + seed % 4;
    const auto channel = sample_io_nonsio(d, seed);
    const auto report = classify(channel);
    EXPECT_TRUE(report.io_certified);
    EXPECT_FALSE(report.sio_certified);
    EXPECT_LE(channel.completeness_residual(), 1e-12);
    EXPECT_GE(min_eigenvalue(choi_of(channel).mat), -1e-10);
  }
  EXPECT_THROW(sample_io_nonsio(2, 1), Error);
}

TEST(MergeChannel, non_unitary_mixer_breaks_completeness) {
  try {
    merge_channel({.dim = 3, .first = 1, .second = 2, .v = {{{1.0, 1.0}, {1.0, -1.0}}},
                   .row_a = 0, .row_b = 1, .routes = {{0, 0, 0, 0.0, 1.0}}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotTracePreserving);
  }
}

TEST(RandomChannel, choi_is_psd) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto channel = random_channel(2 + seed % 3, 1 + seed % 4, seed);
    const auto choi = choi_of(channel);
    EXPECT_GE(min_eigenvalue(choi.mat), -1e-10);
    EXPECT_LE(max_abs_diff(partial_trace_output(choi), ComplexMatrix::identity(channel.dim())),
              1e-12);
  }
}
