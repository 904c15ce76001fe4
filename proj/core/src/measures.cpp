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

#include "coherence/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "coherence/error.hpp"
#include "coherence/random.hpp"

namespace coherence {
namespace {

double clamp_small_negative(double value) {
  return (value < 0.0 && value >= -kMeasureClampTolerance) ? 0.0 : value;
}

double entropy_bits(const std::vector<double>& spectrum) {
  double s = 0.0;
  for (double p : spectrum)
    if (p > 1e-14) s -= p * std::log2(p);
  return s;
}

std::vector<std::size_t> populated_indices(const DensityMatrix& rho) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < rho.dim(); ++i)
    if (rho(i, i).real() > kZeroPopulation) idx.push_back(i);
  return idx;
}

ComplexMatrix restrict_to(const ComplexMatrix& m, const std::vector<std::size_t>& idx) {
  ComplexMatrix out(idx.size());
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b) out(a, b) = m(idx[a], idx[b]);
  return out;
}

// D rho D on the populated block.
ComplexMatrix conjugated_by_populations(const ComplexMatrix& block) {
  const std::size_t n = block.dim();
  std::vector<double> scale(n);
  for (std::size_t i = 0; i < n; ++i) scale[i] = 1.0 / std::sqrt(block(i, i).real());
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = block(i, j) * (scale[i] * scale[j]);
  return out.hermitian_part();
}

// Solves H x = b for symmetric positive definite H (row-major n x n) in place.
bool cholesky_solve(std::vector<double> h, std::vector<double>& b, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    double diag = h[j * n + j];
    for (std::size_t k = 0; k < j; ++k) diag -= h[j * n + k] * h[j * n + k];
    if (!(diag > 0.0)) return false;
    diag = std::sqrt(diag);
    h[j * n + j] = diag;
    for (std::size_t i = j + 1; i < n; ++i) {
      double v = h[i * n + j];
      for (std::size_t k = 0; k < j; ++k) v -= h[i * n + k] * h[j * n + k];
      h[i * n + j] = v / diag;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    double v = b[i];
    for (std::size_t k = 0; k < i; ++k) v -= h[i * n + k] * b[k];
    b[i] = v / h[i * n + i];
  }
  for (std::size_t i = n; i-- > 0;) {
    double v = b[i];
    for (std::size_t k = i + 1; k < n; ++k) v -= h[k * n + i] * b[k];
    b[i] = v / h[i * n + i];
  }
  return true;
}

// Barrier iterate: S = diag(x) - R and its spectrum.
struct BarrierPoint {
  std::vector<double> x;
  Spectrum spectrum;
  double objective;  // sum x - mu log det S
};

std::optional<BarrierPoint> barrier_point(const ComplexMatrix& r, std::vector<double> x,
                                          double mu) {
  ComplexMatrix s = ComplexMatrix::diagonal(x) - r;
  Spectrum spectrum = hermitian_eigendecomposition(s.hermitian_part());
  if (!(spectrum.eigenvalues.back() > 0.0)) return std::nullopt;
  double objective = 0.0;
  for (double xi : x) objective += xi;
  for (double lambda : spectrum.eigenvalues) objective -= mu * std::log(lambda);
  return BarrierPoint{std::move(x), std::move(spectrum), objective};
}

struct RobustnessSolution {
  double primal;
  double dual;
  double psd_residual;
  int iterations;
};

RobustnessSolution solve_robustness(const ComplexMatrix& r, const RobustnessOptions& options) {
  const std::size_t n = r.dim();

  // Gershgorin start: strictly diagonally dominant, hence S is positive definite.
  std::vector<double> x(n);
  double start_total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double radius = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) radius += std::abs(r(i, j));
    x[i] = r(i, i).real() + radius + 1e-2 / double(n);
    start_total += x[i] - r(i, i).real();
  }
  double mu = start_total / double(n);
  auto point = barrier_point(r, x, mu);
  if (!point) throw Error(ErrorCode::kSolverFailure, "infeasible Gershgorin start");

  int iterations = 0;
  RobustnessSolution best{std::numeric_limits<double>::infinity(), -1.0, 0.0, 0};

  for (;;) {
    // Centering by damped Newton.
    for (int step = 0; step < 100; ++step) {
      if (++iterations > options.max_iterations) {
        std::ostringstream msg;
        msg << "robustness solver exhausted " << options.max_iterations
            << " iterations with gap " << best.primal - best.dual;
        throw Error(ErrorCode::kSolverFailure, msg.str(), best.primal - best.dual);
      }
      const ComplexMatrix s_inv =
          point->spectrum.apply_function([](double lambda) { return 1.0 / lambda; });
      std::vector<double> grad(n);
      std::vector<double> hess(n * n);
      for (std::size_t i = 0; i < n; ++i) {
        grad[i] = 1.0 - mu * s_inv(i, i).real();
        for (std::size_t j = 0; j < n; ++j) hess[i * n + j] = mu * std::norm(s_inv(i, j));
      }
      std::vector<double> dir(n);
      for (std::size_t i = 0; i < n; ++i) dir[i] = -grad[i];
      if (!cholesky_solve(hess, dir, n)) break;
      double decrement = 0.0;
      for (std::size_t i = 0; i < n; ++i) decrement -= grad[i] * dir[i];
      if (decrement < 1e-14) break;

      double t = 1.0;
      std::optional<BarrierPoint> next;
      for (int halving = 0; halving < 60; ++halving, t *= 0.5) {
        std::vector<double> trial(n);
        for (std::size_t i = 0; i < n; ++i) trial[i] = point->x[i] + t * dir[i];
        next = barrier_point(r, std::move(trial), mu);
        if (next && next->objective <= point->objective - 0.25 * t * decrement) break;
        next.reset();
      }
      if (!next) break;
      point = std::move(next);
    }

    // Certificate at the current point.
    const ComplexMatrix w =
        point->spectrum.apply_function([mu](double lambda) { return mu / lambda; });
    double primal = 0.0;
    for (double xi : point->x) primal += xi;
    double dual = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        dual += (r(j, i) * w(i, j)).real() /
                std::sqrt(w(i, i).real() * w(j, j).real());
    if (primal - dual < best.primal - best.dual) {
      best = {primal, dual, point->spectrum.eigenvalues.back(), iterations};
    }
    if (best.primal - best.dual <= options.gap_tolerance) break;
    if (mu * double(n) < 1e-17) {
      if (best.primal - best.dual <= 1e3 * options.gap_tolerance) break;
      std::ostringstream msg;
      msg << "robustness solver stalled with gap " << best.primal - best.dual;
      throw Error(ErrorCode::kSolverFailure, msg.str(), best.primal - best.dual);
    }
    mu *= 0.1;
    // The old iterate is strictly feasible; only the barrier weight changes.
    point = barrier_point(r, point->x, mu);
  }
  best.iterations = iterations;
  return best;
}

}  // namespace

std::string_view to_string(Measure measure) {
  switch (measure) {
    case Measure::kL1: return "l1";
    case Measure::kRelEntropy: return "rel_entropy";
    case Measure::kRobustness: return "robustness";
    case Measure::kCMax: return "c_max";
  }
  return "unknown";
}

std::optional<Measure> parse_measure(std::string_view name) {
  if (name == "l1") return Measure::kL1;
  if (name == "rel" || name == "rel_entropy") return Measure::kRelEntropy;
  if (name == "rob" || name == "robustness") return Measure::kRobustness;
  if (name == "cmax" || name == "c_max") return Measure::kCMax;
  return std::nullopt;
}

std::string_view to_string(OperationClass cls) {
  switch (cls) {
    case OperationClass::kMio: return "mio";
    case OperationClass::kIo: return "io";
    case OperationClass::kDio: return "dio";
    case OperationClass::kSio: return "sio";
  }
  return "unknown";
}

bool is_known_monotone(Measure measure, OperationClass cls) {
  switch (measure) {
    case Measure::kL1:
      return cls == OperationClass::kIo || cls == OperationClass::kSio;
    case Measure::kRelEntropy:
    case Measure::kRobustness:
      return true;
    case Measure::kCMax:
      return cls == OperationClass::kDio || cls == OperationClass::kSio;
  }
  return false;
}

MeasureValue c_l1(const DensityMatrix& rho) {
  double sum = 0.0;
  for (std::size_t i = 0; i < rho.dim(); ++i)
    for (std::size_t j = 0; j < rho.dim(); ++j)
      if (i != j) sum += std::abs(rho(i, j));
  return {Measure::kL1, sum, std::nullopt};
}

double von_neumann_entropy(const DensityMatrix& rho) {
  return entropy_bits(hermitian_eigendecomposition(rho.matrix()).eigenvalues);
}

MeasureValue c_rel_entropy(const DensityMatrix& rho) {
  const double value = entropy_bits(rho.populations()) - von_neumann_entropy(rho);
  return {Measure::kRelEntropy, clamp_small_negative(value), std::nullopt};
}

MeasureValue c_robustness(const DensityMatrix& rho, const RobustnessOptions& options) {
  if (is_incoherent(rho, 0.0)) {
    return {Measure::kRobustness, 0.0, SolverDiagnostics{0, 0.0, 0.0}};
  }
  // Unpopulated rows and columns of a PSD matrix vanish; their d_i is 0.
  const auto idx = populated_indices(rho);
  if (idx.size() <= 1) {
    return {Measure::kRobustness, 0.0, SolverDiagnostics{0, 0.0, 0.0}};
  }
  const RobustnessSolution sol = solve_robustness(restrict_to(rho.matrix(), idx), options);
  const double value = 0.5 * (sol.primal + sol.dual) - 1.0;
  return {Measure::kRobustness, clamp_small_negative(value),
          SolverDiagnostics{sol.iterations, sol.primal - sol.dual, sol.psd_residual}};
}

MeasureValue c_max(const DensityMatrix& rho) {
  const auto idx = populated_indices(rho);
  if (idx.empty()) return {Measure::kCMax, 0.0, std::nullopt};
  const ComplexMatrix m = conjugated_by_populations(restrict_to(rho.matrix(), idx));
  const double d = static_cast<double>(rho.dim());
  const double value = (max_eigenvalue(m) - 1.0) / d;
  return {Measure::kCMax, clamp_small_negative(value), std::nullopt};
}

ComplexVector c_max_optimizer(const DensityMatrix& rho) {
  const auto idx = populated_indices(rho);
  ComplexVector phi(rho.dim());
  if (idx.empty()) return phi;
  const ComplexMatrix m = conjugated_by_populations(restrict_to(rho.matrix(), idx));
  const ComplexVector top = hermitian_eigendecomposition(m).eigenvectors.front();
  for (std::size_t a = 0; a < idx.size(); ++a)
    phi[idx[a]] = top[a] / std::sqrt(rho(idx[a], idx[a]).real());
  return phi;
}

std::optional<double> rayleigh_gain(const DensityMatrix& rho, std::span<const Complex> phi) {
  if (phi.size() != rho.dim())
    throw Error(ErrorCode::kDimensionMismatch, "vector and state dimensions differ");
  const double norm = norm2(phi);
  if (norm == 0.0) return std::nullopt;
  ComplexVector unit(phi.begin(), phi.end());
  for (Complex& z : unit) z /= norm;
  double denominator = 0.0;
  for (std::size_t i = 0; i < unit.size(); ++i)
    denominator += rho(i, i).real() * std::norm(unit[i]);
  if (denominator <= 1e-14) return std::nullopt;
  const double numerator = inner(unit, rho.matrix() * unit).real();
  return (numerator / denominator - 1.0) / static_cast<double>(rho.dim());
}

double c_max_rayleigh_check(const DensityMatrix& rho, int trials, std::uint64_t seed,
                            const RayleighCheckOptions& options) {
  const auto idx = populated_indices(rho);
  std::optional<double> best;
  auto consider = [&](std::span<const Complex> phi) {
    if (auto gain = rayleigh_gain(rho, phi)) best = std::max(best.value_or(*gain), *gain);
  };
  if (options.include_optimizer && !idx.empty()) consider(c_max_optimizer(rho));
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    ComplexVector phi(rho.dim());
    for (std::size_t i : idx) phi[i] = rng.complex_gaussian();
    consider(phi);
  }
  return best.value_or(0.0);
}

MeasureValue evaluate(Measure measure, const DensityMatrix& rho) {
  switch (measure) {
    case Measure::kL1: return c_l1(rho);
    case Measure::kRelEntropy: return c_rel_entropy(rho);
    case Measure::kRobustness: return c_robustness(rho);
    case Measure::kCMax: return c_max(rho);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown measure");
}

bool qubit_convertible(const DensityMatrix& from, const DensityMatrix& to, double slack) {
  if (from.dim() != 2 || to.dim() != 2) {
    throw Error(ErrorCode::kDimensionNotTwo,
                "the two-monotone convertibility criterion holds for qubits only");
  }
  return c_robustness(from).value >= c_robustness(to).value - slack &&
         c_max(from).value >= c_max(to).value - slack;
}

}  // namespace coherence
