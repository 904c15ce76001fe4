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

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "coherence/numerics.hpp"
#include "coherence/random.hpp"
#include "coherence/states.hpp"

namespace coherence {

enum class KrausMode { kTracePreserving, kTraceNonincreasing };

/// Lambda(rho) = sum_mu K_mu rho K_mu^dag.
class KrausChannel {
 public:
  /// Validates dimensions and the completeness relation for `mode`.
  /// Throws kDimensionMismatch, kNotTracePreserving or kNotTraceNonincreasing.
  static KrausChannel create(std::vector<ComplexMatrix> kraus,
                             KrausMode mode = KrausMode::kTracePreserving,
                             double tol = kStructuralTolerance);

  std::size_t dim() const noexcept { return kraus_.front().dim(); }
  const std::vector<ComplexMatrix>& kraus() const noexcept { return kraus_; }
  KrausMode mode() const noexcept { return mode_; }

  /// sum_mu K_mu^dag K_mu.
  ComplexMatrix completeness() const;
  /// ||sum K^dag K - I||_F.
  double completeness_residual() const;

 private:
  KrausChannel(std::vector<ComplexMatrix> kraus, KrausMode mode)
      : kraus_(std::move(kraus)), mode_(mode) {}

  std::vector<ComplexMatrix> kraus_;
  KrausMode mode_;
};

KrausChannel identity_channel(std::size_t d);
/// Delta as a channel, Kraus operators |i><i|.
KrausChannel dephasing_channel(std::size_t d);

/// Linear action on an arbitrary operator; no validation of the output.
ComplexMatrix apply_linear(const KrausChannel& channel, const ComplexMatrix& x);

/// Throws kModeMismatch for trace-nonincreasing channels and
/// kDimensionMismatch on a dimension clash.
DensityMatrix apply(const KrausChannel& channel, const DensityMatrix& rho);

struct BranchOutcome {
  double probability;
  DensityMatrix state;
};

inline constexpr double kZeroProbability = 1e-14;

/// K rho K^dag / p for the selected Kraus operator, p = tr(K rho K^dag).
/// Throws kZeroProbability when p <= 1e-14.
BranchOutcome apply_stochastic(const KrausChannel& channel, std::size_t branch,
                               const DensityMatrix& rho);
/// The whole (possibly trace-nonincreasing) map, renormalized.
BranchOutcome apply_stochastic(const KrausChannel& channel, const DensityMatrix& rho);

struct ChoiMatrix {
  ComplexMatrix mat;
  std::size_t dim;
};

/// Block (i, j) is Lambda(|i><j|).
ChoiMatrix choi_of(const KrausChannel& channel);

/// Tr over the output factor; the identity for trace-preserving channels.
ComplexMatrix partial_trace_output(const ChoiMatrix& choi);

struct ClassificationReport {
  /// Column structure of the given Kraus operators (IO on this representation).
  bool io_certified = false;
  /// Row and column structure (SIO on this representation).
  bool sio_certified = false;
  /// Decisive: Lambda commutes with Delta on every matrix unit.
  bool dio = false;
  /// Decisive: Lambda(|i><i|) is diagonal for every i.
  bool mio = false;
  /// Worst-case violation magnitudes: io_column, sio_row, io_branch_action,
  /// mio_offdiagonal, dio_commutator, completeness.
  std::map<std::string, double> residuals;
};

ClassificationReport classify(const KrausChannel& channel,
                              double tol = kStructuralTolerance);

struct TwirlOptions {
  std::size_t operator_budget = 100000;
  /// Drop Kraus operators with Frobenius norm <= compress_threshold.
  bool compress = false;
  double compress_threshold = kArithmeticTolerance;
};

/// Average of U^dag Lambda(U . U^dag) U over U = diag(i^{k_0}, ..., i^{k_{d-1}}),
/// k in {0,1,2,3}^d. The result commutes with Delta exactly.
/// Throws kDimensionTooLarge when 4^d * m exceeds the budget.
KrausChannel dephasing_twirl(const KrausChannel& channel,
                             const TwirlOptions& options = {});

/// Kraus operators cut from a Haar-like isometry V = G (G^dag G)^{-1/2}.
KrausChannel random_channel(std::size_t d, std::size_t n_kraus, Rng& rng);
KrausChannel random_channel(std::size_t d, std::size_t n_kraus, std::uint64_t seed);

/// Random strictly incoherent channel: each Kraus operator is a permutation
/// pattern with random amplitudes, columnwise normalized across operators.
KrausChannel sample_sio(std::size_t d, std::size_t n_kraus, Rng& rng);
KrausChannel sample_sio(std::size_t d, std::size_t n_kraus, std::uint64_t seed);

/// Where one of the non-merged columns is sent by each of the two operators.
struct ColumnRoute {
  std::size_t column;
  std::size_t row_a;
  std::size_t row_b;
  Complex amp_a;
  Complex amp_b;
};

/// Two-operator IO that merges columns (first, second) into row_a of A with
/// amplitudes (v[0][0], v[0][1]) and into row_b of B with (v[1][0], v[1][1]).
/// v must be unitary; the routes cover every other column.
struct MergeSpec {
  std::size_t dim;
  std::size_t first;
  std::size_t second;
  std::array<std::array<Complex, 2>, 2> v;
  std::size_t row_a;
  std::size_t row_b;
  std::vector<ColumnRoute> routes;
};

/// Builds the merge channel; throws kNotTracePreserving if the routes or v
/// break completeness.
KrausChannel merge_channel(const MergeSpec& layout);

/// Random merge channel that is IO-certified but not SIO-certified. d >= 3.
KrausChannel sample_io_nonsio(std::size_t d, Rng& rng);
KrausChannel sample_io_nonsio(std::size_t d, std::uint64_t seed);

}  // namespace coherence
