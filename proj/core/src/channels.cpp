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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "coherence/error.hpp"

namespace coherence {
namespace {

double off_diagonal_frobenius(const ComplexMatrix& m) {
  double sum = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j)
      if (i != j) sum += std::norm(m(i, j));
  return std::sqrt(sum);
}

// Second-largest modulus among the entries, i.e. how far the line is from
// having a single nonzero.
double second_largest(const std::vector<double>& moduli) {
  double first = 0.0;
  double second = 0.0;
  for (double m : moduli) {
    if (m > first) {
      second = first;
      first = m;
    } else if (m > second) {
      second = m;
    }
  }
  return second;
}

void require_dim(const KrausChannel& channel, const DensityMatrix& rho) {
  if (channel.dim() != rho.dim()) {
    std::ostringstream msg;
    msg << "channel acts on dimension " << channel.dim() << " but state has dimension "
        << rho.dim();
    throw Error(ErrorCode::kDimensionMismatch, msg.str());
  }
}

// i^k for k in {0,1,2,3}, exact.
Complex power_of_i(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace

KrausChannel KrausChannel::create(std::vector<ComplexMatrix> kraus, KrausMode mode,
                                  double tol) {
  if (kraus.empty()) throw Error(ErrorCode::kInvalidArgument, "empty Kraus list");
  const std::size_t d = kraus.front().dim();
  if (d == 0) throw Error(ErrorCode::kInvalidArgument, "Kraus operator of dimension 0");
  for (const auto& k : kraus) {
    if (k.dim() != d)
      throw Error(ErrorCode::kDimensionMismatch, "Kraus operators differ in dimension");
  }
  KrausChannel channel(std::move(kraus), mode);
  if (mode == KrausMode::kTracePreserving) {
    const double residual = channel.completeness_residual();
    if (residual > tol) {
      std::ostringstream msg;
      msg << "Kraus operators are not complete: ||sum K^dag K - I||_F = " << residual;
      throw Error(ErrorCode::kNotTracePreserving, msg.str(), residual);
    }
  } else {
    const ComplexMatrix slack =
        ComplexMatrix::identity(d) - channel.completeness().hermitian_part();
    const double lowest = min_eigenvalue(slack);
    if (lowest < -tol) {
      std::ostringstream msg;
      msg << "sum K^dag K exceeds the identity (min eigenvalue of I - sum K^dag K = "
          << lowest << ")";
      throw Error(ErrorCode::kNotTraceNonincreasing, msg.str(), lowest);
    }
  }
  return channel;
}

ComplexMatrix KrausChannel::completeness() const {
  ComplexMatrix sum(dim());
  for (const auto& k : kraus_) sum += k.adjoint() * k;
  return sum;
}

double KrausChannel::completeness_residual() const {
  return (completeness() - ComplexMatrix::identity(dim())).frobenius_norm();
}

KrausChannel identity_channel(std::size_t d) {
  return KrausChannel::create({ComplexMatrix::identity(d)});
}

KrausChannel dephasing_channel(std::size_t d) {
  std::vector<ComplexMatrix> kraus;
  for (std::size_t i = 0; i < d; ++i) kraus.push_back(ComplexMatrix::unit(d, i, i));
  return KrausChannel::create(std::move(kraus));
}

ComplexMatrix apply_linear(const KrausChannel& channel, const ComplexMatrix& x) {
  if (x.dim() != channel.dim())
    throw Error(ErrorCode::kDimensionMismatch, "operator and channel dimensions differ");
  ComplexMatrix out(x.dim());
  for (const auto& k : channel.kraus()) out += sandwich(k, x);
  return out;
}

DensityMatrix apply(const KrausChannel& channel, const DensityMatrix& rho) {
  if (channel.mode() != KrausMode::kTracePreserving) {
    throw Error(ErrorCode::kModeMismatch,
                "apply needs a trace-preserving channel; use apply_stochastic");
  }
  require_dim(channel, rho);
  return validate_state(apply_linear(channel, rho.matrix()).hermitian_part());
}

namespace {

BranchOutcome renormalize(ComplexMatrix unnormalized) {
  const double p = unnormalized.trace().real();
  if (p <= kZeroProbability) {
    std::ostringstream msg;
    msg << "branch probability " << p << " is zero; no output state exists";
    throw Error(ErrorCode::kZeroProbability, msg.str(), p);
  }
  unnormalized *= 1.0 / p;
  return {std::min(p, 1.0), validate_state(unnormalized.hermitian_part())};
}

}  // namespace

BranchOutcome apply_stochastic(const KrausChannel& channel, std::size_t branch,
                               const DensityMatrix& rho) {
  require_dim(channel, rho);
  if (branch >= channel.kraus().size()) {
    std::ostringstream msg;
    msg << "branch " << branch << " out of range (" << channel.kraus().size()
        << " Kraus operators)";
    throw Error(ErrorCode::kInvalidArgument, msg.str());
  }
  return renormalize(sandwich(channel.kraus()[branch], rho.matrix()));
}

BranchOutcome apply_stochastic(const KrausChannel& channel, const DensityMatrix& rho) {
  require_dim(channel, rho);
  return renormalize(apply_linear(channel, rho.matrix()));
}

ChoiMatrix choi_of(const KrausChannel& channel) {
  const std::size_t d = channel.dim();
  ComplexMatrix choi(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const ComplexMatrix block = apply_linear(channel, ComplexMatrix::unit(d, i, j));
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) choi(i * d + a, j * d + b) = block(a, b);
    }
  return {std::move(choi), d};
}

ComplexMatrix partial_trace_output(const ChoiMatrix& choi) {
  const std::size_t d = choi.dim;
  ComplexMatrix out(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t a = 0; a < d; ++a) out(i, j) += choi.mat(i * d + a, j * d + a);
  return out;
}

ClassificationReport classify(const KrausChannel& channel, double tol) {
  const std::size_t d = channel.dim();
  ClassificationReport report;

  double column_violation = 0.0;
  double row_violation = 0.0;
  double branch_action = 0.0;
  for (const auto& k : channel.kraus()) {
    for (std::size_t line = 0; line < d; ++line) {
      std::vector<double> column(d);
      std::vector<double> row(d);
      for (std::size_t x = 0; x < d; ++x) {
        column[x] = std::abs(k(x, line));
        row[x] = std::abs(k(line, x));
      }
      column_violation = std::max(column_violation, second_largest(column));
      row_violation = std::max(row_violation, second_largest(row));
      // Direct action on the incoherent basis state |line><line|.
      branch_action = std::max(
          branch_action,
          off_diagonal_frobenius(sandwich(k, ComplexMatrix::unit(d, line, line))));
    }
  }

  double mio_violation = 0.0;
  double dio_violation = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const ComplexMatrix unit = ComplexMatrix::unit(d, i, j);
      const ComplexMatrix image = apply_linear(channel, unit);
      if (i == j) mio_violation = std::max(mio_violation, off_diagonal_frobenius(image));
      const ComplexMatrix lhs = apply_linear(channel, unit.diagonal_part());
      dio_violation =
          std::max(dio_violation, (lhs - image.diagonal_part()).frobenius_norm());
    }
  }

  report.io_certified = column_violation <= tol;
  report.sio_certified = report.io_certified && row_violation <= tol;
  report.mio = mio_violation <= tol;
  report.dio = dio_violation <= tol;
  report.residuals = {
      {"io_column", column_violation},
      {"sio_row", row_violation},
      {"io_branch_action", branch_action},
      {"mio_offdiagonal", mio_violation},
      {"dio_commutator", dio_violation},
      {"completeness", channel.completeness_residual()},
  };
  return report;
}

KrausChannel dephasing_twirl(const KrausChannel& channel, const TwirlOptions& options) {
  if (channel.mode() != KrausMode::kTracePreserving)
    throw Error(ErrorCode::kModeMismatch, "twirl needs a trace-preserving channel");
  const std::size_t d = channel.dim();
  const std::size_t m = channel.kraus().size();

  std::size_t tuples = 1;
  for (std::size_t i = 0; i < d; ++i) {
    tuples *= 4;
    if (tuples * m > options.operator_budget) {
      std::ostringstream msg;
      msg << "twirl would need more than " << options.operator_budget
          << " Kraus operators (d = " << d << ", m = " << m << ")";
      throw Error(ErrorCode::kDimensionTooLarge, msg.str());
    }
  }
  // U_k^dag K U_k / 2^d has entries K_ab i^{k_b - k_a} / 2^d.
  const double scale = std::ldexp(1.0, -static_cast<int>(d));

  std::vector<ComplexMatrix> twirled;
  twirled.reserve(tuples * m);
  std::vector<int> exponents(d, 0);
  for (std::size_t t = 0; t < tuples; ++t) {
    std::size_t code = t;
    for (std::size_t i = 0; i < d; ++i, code /= 4) exponents[i] = static_cast<int>(code % 4);
    for (const auto& k : channel.kraus()) {
      ComplexMatrix out(d);
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
          out(a, b) = k(a, b) * power_of_i(exponents[b] - exponents[a]) * scale;
      if (options.compress && out.frobenius_norm() <= options.compress_threshold) continue;
      twirled.push_back(std::move(out));
    }
  }
  return KrausChannel::create(std::move(twirled));
}

KrausChannel random_channel(std::size_t d, std::size_t n_kraus, Rng& rng) {
  if (d == 0 || n_kraus == 0)
    throw Error(ErrorCode::kInvalidArgument, "random_channel needs d, n_kraus >= 1");
  std::vector<ComplexMatrix> blocks;
  for (std::size_t mu = 0; mu < n_kraus; ++mu) {
    ComplexMatrix g(d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) g(i, j) = rng.complex_gaussian();
    blocks.push_back(std::move(g));
  }
  ComplexMatrix gram(d);
  for (const auto& g : blocks) gram += g.adjoint() * g;
  const ComplexMatrix inv_sqrt = hermitian_eigendecomposition(gram.hermitian_part())
                                     .apply_function([](double x) { return 1.0 / std::sqrt(x); });
  for (auto& g : blocks) g = g * inv_sqrt;
  return KrausChannel::create(std::move(blocks));
}

KrausChannel random_channel(std::size_t d, std::size_t n_kraus, std::uint64_t seed) {
  Rng rng(seed);
  return random_channel(d, n_kraus, rng);
}

KrausChannel sample_sio(std::size_t d, std::size_t n_kraus, Rng& rng) {
  if (d == 0 || n_kraus == 0)
    throw Error(ErrorCode::kInvalidArgument, "sample_sio needs d, n_kraus >= 1");
  std::vector<std::vector<std::size_t>> targets;
  for (std::size_t mu = 0; mu < n_kraus; ++mu) targets.push_back(rng.permutation(d));
  std::vector<ComplexMatrix> kraus(n_kraus, ComplexMatrix(d));
  for (std::size_t col = 0; col < d; ++col) {
    const ComplexVector amps = rng.unit_vector(n_kraus);
    for (std::size_t mu = 0; mu < n_kraus; ++mu) kraus[mu](targets[mu][col], col) = amps[mu];
  }
  return KrausChannel::create(std::move(kraus));
}

KrausChannel sample_sio(std::size_t d, std::size_t n_kraus, std::uint64_t seed) {
  Rng rng(seed);
  return sample_sio(d, n_kraus, rng);
}

KrausChannel merge_channel(const MergeSpec& layout) {
  const std::size_t d = layout.dim;
  if (layout.first >= d || layout.second >= d || layout.first == layout.second ||
      layout.row_a >= d || layout.row_b >= d) {
    throw Error(ErrorCode::kInvalidArgument, "merge indices out of range");
  }
  ComplexMatrix a(d);
  ComplexMatrix b(d);
  a(layout.row_a, layout.first) = layout.v[0][0];
  a(layout.row_a, layout.second) = layout.v[0][1];
  b(layout.row_b, layout.first) = layout.v[1][0];
  b(layout.row_b, layout.second) = layout.v[1][1];
  for (const auto& route : layout.routes) {
    if (route.column >= d || route.row_a >= d || route.row_b >= d ||
        route.column == layout.first || route.column == layout.second) {
      throw Error(ErrorCode::kInvalidArgument, "invalid column route");
    }
    a(route.row_a, route.column) += route.amp_a;
    b(route.row_b, route.column) += route.amp_b;
  }
  return KrausChannel::create({std::move(a), std::move(b)});
}

KrausChannel sample_io_nonsio(std::size_t d, Rng& rng) {
  if (d < 3) throw Error(ErrorCode::kInvalidArgument, "sample_io_nonsio needs d >= 3");
  MergeSpec layout;
  layout.dim = d;
  const auto columns = rng.permutation(d);
  layout.first = columns[0];
  layout.second = columns[1];
  layout.row_a = rng.below(d);
  layout.row_b = (layout.row_a + 1 + rng.below(d - 1)) % d;

  // Haar-like 2x2 unitary; reject near-diagonal draws so both merge rows keep
  // two clearly nonzero entries.
  ComplexVector ab;
  do {
    ab = rng.unit_vector(2);
  } while (std::min(std::abs(ab[0]), std::abs(ab[1])) < 0.1);
  const Complex phase = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
  layout.v = {{{ab[0], ab[1]}, {-phase * std::conj(ab[1]), phase * std::conj(ab[0])}}};

  // Remaining columns go to distinct rows away from each operator's merge row.
  std::vector<std::size_t> free_a;
  std::vector<std::size_t> free_b;
  for (std::size_t r : rng.permutation(d))
    if (r != layout.row_a) free_a.push_back(r);
  for (std::size_t r : rng.permutation(d))
    if (r != layout.row_b) free_b.push_back(r);
  std::size_t slot = 0;
  for (std::size_t c = 2; c < d; ++c, ++slot) {
    const ComplexVector amps = rng.unit_vector(2);
    layout.routes.push_back({columns[c], free_a[slot], free_b[slot], amps[0], amps[1]});
  }
  return merge_channel(layout);
}

KrausChannel sample_io_nonsio(std::size_t d, std::uint64_t seed) {
  Rng rng(seed);
  return sample_io_nonsio(d, rng);
}

}  // namespace coherence
