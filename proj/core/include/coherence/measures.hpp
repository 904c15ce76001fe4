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
#include <string_view>

#include "coherence/numerics.hpp"
#include "coherence/states.hpp"

namespace coherence {

enum class Measure { kL1, kRelEntropy, kRobustness, kCMax };

inline constexpr Measure kAllMeasures[] = {Measure::kL1, Measure::kRelEntropy,
                                           Measure::kRobustness, Measure::kCMax};

/// "l1", "rel_entropy", "robustness", "c_max".
std::string_view to_string(Measure measure);
/// Accepts the canonical names and the short forms l1, rel, rob, cmax.
std::optional<Measure> parse_measure(std::string_view name);

enum class OperationClass { kMio, kIo, kDio, kSio };

std::string_view to_string(OperationClass cls);

/// Whether `measure` is a known monotone under `cls`:
///
///            MIO  IO  DIO  SIO
///   l1        x   ok   x   ok
///   rel       ok  ok  ok   ok
///   rob       ok  ok  ok   ok
///   c_max     x    x  ok   ok
bool is_known_monotone(Measure measure, OperationClass cls);

struct SolverDiagnostics {
  int iterations = 0;
  /// Certified primal-dual gap of the robustness program.
  double duality_gap = 0.0;
  /// Smallest eigenvalue of diag(d) - rho at the returned point.
  double psd_residual = 0.0;
};

struct MeasureValue {
  Measure name;
  double value;
  std::optional<SolverDiagnostics> diagnostics;
};

/// Values in [-1e-10, 0) are reported as 0.
inline constexpr double kMeasureClampTolerance = 1e-10;

/// sum_{i != j} |rho_ij|.
MeasureValue c_l1(const DensityMatrix& rho);

/// S(Delta rho) - S(rho), von Neumann entropy in bits.
MeasureValue c_rel_entropy(const DensityMatrix& rho);

/// Von Neumann entropy in bits; eigenvalues <= 1e-14 contribute nothing.
double von_neumann_entropy(const DensityMatrix& rho);

struct RobustnessOptions {
  double gap_tolerance = 1e-11;
  int max_iterations = 100000;
};

/// Robustness of coherence, min { sum_i d_i - 1 : diag(d) >= rho }.
///
/// Solved by a log-barrier interior-point method on the diagonal variables.
/// Every outer step also produces a dual point W = mu S^{-1} rescaled to unit
/// diagonal, which is feasible for max { tr(rho W) : W >= 0, W_ii = 1 }, so
/// the primal-dual gap is certified rather than estimated. Throws
/// kSolverFailure if the budget runs out before the gap closes.
MeasureValue c_robustness(const DensityMatrix& rho, const RobustnessOptions& options = {});

/// (1/d) lambda_max(D rho D) - 1/d with D = (Delta rho)^{-1/2} taken
/// elementwise, zero on vanishing populations.
MeasureValue c_max(const DensityMatrix& rho);

/// Populations at or below this are treated as zero by c_max.
inline constexpr double kZeroPopulation = 1e-14;

/// The maximizing vector of the Rayleigh form: D v with v the top eigenvector
/// of D rho D.
ComplexVector c_max_optimizer(const DensityMatrix& rho);

/// (1/d) (<phi|rho|phi> / <phi|Delta rho|phi> - 1), or nullopt when the
/// denominator of the normalized vector is <= 1e-14.
std::optional<double> rayleigh_gain(const DensityMatrix& rho, std::span<const Complex> phi);

struct RayleighCheckOptions {
  /// Evaluate c_max_optimizer(rho) in addition to the random vectors.
  bool include_optimizer = true;
};

/// Largest Rayleigh gain over `trials` random vectors supported on the
/// populated indices. Never exceeds c_max(rho); reaches it when the optimizer
/// is included. Returns 0 if no candidate has a defined quotient.
double c_max_rayleigh_check(const DensityMatrix& rho, int trials, std::uint64_t seed,
                            const RayleighCheckOptions& options = {});

MeasureValue evaluate(Measure measure, const DensityMatrix& rho);

inline constexpr double kConvertibilitySlack = 1e-8;

/// Qubit state conversion rho_from -> rho_to is possible iff neither the
/// robustness nor c_max increases. Throws kDimensionNotTwo otherwise.
bool qubit_convertible(const DensityMatrix& from, const DensityMatrix& to,
                       double slack = kConvertibilitySlack);

}  // namespace coherence
