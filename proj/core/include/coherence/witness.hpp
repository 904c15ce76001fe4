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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coherence/channels.hpp"
#include "coherence/measures.hpp"
#include "coherence/states.hpp"

namespace coherence {

/// The three-level counterexample: an input state whose coherence sits mostly
/// in the {|1>, |2>} block, a two-operator IO that interferes that block into
/// |0> and |1>, and the resulting states. Built from exact expressions
/// (rationals and sqrt(2)), not decimal literals.
struct WitnessFixtures {
  DensityMatrix rho_in;
  KrausChannel channel;
  DensityMatrix rho_out;
  /// K_2 rho_in K_2^dag / tr(K_2 rho_in K_2^dag).
  DensityMatrix rho_branch;
  /// tr(K_2 rho_in K_2^dag) = (60 - 3 sqrt 2) / 80.
  double branch_probability;
};

WitnessFixtures witness_fixtures();

/// Index of K_2 in witness_fixtures().channel.
inline constexpr std::size_t kWitnessBranch = 1;

enum class Verdict { kViolation, kRespected, kInconclusive };
std::string_view to_string(Verdict verdict);

enum class ChannelFamily { kSio, kIo, kDioTwirl };
std::string_view to_string(ChannelFamily family);
/// "sio", "io", "dio_twirl" (also "dio-twirl").
std::optional<ChannelFamily> parse_family(std::string_view name);
OperationClass operation_class(ChannelFamily family);

inline constexpr double kViolationTolerance = 1e-8;

struct WitnessReport {
  Measure measure;
  double value_in = 0.0;
  double value_out = 0.0;
  double delta = 0.0;
  Verdict verdict = Verdict::kInconclusive;
  int trials = 0;
  std::uint64_t seed = 0;
  double tolerance = kViolationTolerance;
  /// Trial that produced the embedded pair (the violating one, if any).
  std::optional<int> trial_index{};
  /// Replay data for the embedded pair.
  std::optional<DensityMatrix> input_state{};
  std::optional<DensityMatrix> output_state{};
  std::optional<KrausChannel> channel{};
  std::optional<ClassificationReport> classification{};
  std::string kraus_digest{};
  /// Success probability when the output is a renormalized branch.
  std::optional<double> probability{};
  std::string note{};
};

/// FNV-1a over the bit patterns of every Kraus entry, with the operator count.
std::string kraus_digest(const KrausChannel& channel);

/// End-to-end check that the merge IO raises c_max on the fixture input.
/// Throws kFixtureMismatch if the output state, the classification
/// (io, !sio, !dio, mio) or the increase does not come out as expected.
WitnessReport theorem1_report();

/// Residual ||Lambda(Delta rho) - Delta(Lambda rho)||_F on the pure state
/// (|1> + |2>)/sqrt 2: the fixture channel fails dephasing covariance here.
double fixture_dio_witness_residual();

struct OrderingRow {
  Measure measure;
  double value_in;
  double value_out;
  bool ordered;
};

/// Each measure on (rho_in, rho_out). The IO monotones come out ordered while
/// c_max does not, so no SIO can perform the conversion.
std::vector<OrderingRow> theorem2_report();
bool separation_certified(const std::vector<OrderingRow>& rows);

/// K_2 applied stochastically to rho_in; c_max of the renormalized output
/// exceeds that of the input. Throws kFixtureMismatch on disagreement with the
/// closed form.
WitnessReport stochastic_bound_report();

/// Random search for monotonicity violations of `measure` under `family`.
/// Trial t draws its state and channel from Rng::stream(seed, t). For c_max
/// under io at d = 3 the fixture pair is trial 0. Returns the first violation
/// beyond `tol`, otherwise respected (known monotone) or inconclusive.
WitnessReport falsify(Measure measure, ChannelFamily family, std::size_t d, int trials,
                      std::uint64_t seed, double tol = kViolationTolerance);

/// Recomputes delta from the embedded pair; true if it matches to `tol`.
bool replay(const WitnessReport& report, double tol = 1e-10);

}  // namespace coherence
