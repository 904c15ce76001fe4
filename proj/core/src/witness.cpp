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

#include "coherence/witness.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

#include "coherence/error.hpp"
#include "coherence/random.hpp"

namespace coherence {
namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr Complex kI{0.0, 1.0};

ComplexMatrix hermitian_from_upper(std::initializer_list<std::initializer_list<Complex>> upper) {
  ComplexMatrix m(upper.size());
  std::size_t i = 0;
  for (const auto& row : upper) {
    std::size_t j = i;
    for (const Complex& z : row) {
      m(i, j) = z;
      m(j, i) = std::conj(z);
      ++j;
    }
    ++i;
  }
  return m;
}

DensityMatrix fixture_input() {
  return validate_state(hermitian_from_upper({
      {0.5 + kSqrt2 / 20.0, 1.0 / (4.0 * kSqrt2) - kI / 20.0, -1.0 / (4.0 * kSqrt2) + kI / 80.0},
      {0.25 - kSqrt2 / 40.0, 1.0 / (8.0 * kSqrt2) + kI / 100.0},
      {0.25 - kSqrt2 / 40.0},
  }));
}

KrausChannel fixture_channel() {
  const double h = 1.0 / kSqrt2;
  MergeSpec layout;
  layout.dim = 3;
  layout.first = 1;
  layout.second = 2;
  layout.v = {{{h, h}, {h, -h}}};
  layout.row_a = 0;
  layout.row_b = 1;
  layout.routes = {{0, 0, 0, 0.0, 1.0}};
  return merge_channel(layout);
}

DensityMatrix fixture_output() {
  return validate_state(hermitian_from_upper({
      {0.75 + 7.0 * kSqrt2 / 80.0, 0.25 - kI * kSqrt2 / 32.0, 0.0},
      {0.25 - 7.0 * kSqrt2 / 80.0, 0.0},
      {0.0},
  }));
}

DensityMatrix fixture_branch() {
  const double den = 60.0 - 3.0 * kSqrt2;
  return validate_state(hermitian_from_upper({
      {(40.0 + 4.0 * kSqrt2) / den, (20.0 - kI * (5.0 / kSqrt2)) / den, 0.0},
      {(20.0 - 7.0 * kSqrt2) / den, 0.0},
      {0.0},
  }));
}

void expect_fixture(bool ok, const std::string& what, std::optional<double> residual = {}) {
  if (!ok) throw Error(ErrorCode::kFixtureMismatch, what, residual);
}

void check_entrywise(const DensityMatrix& got, const DensityMatrix& want,
                     const std::string& what) {
  const double diff = max_abs_diff(got.matrix(), want.matrix());
  std::ostringstream msg;
  msg << what << " differs from its closed form by " << diff;
  expect_fixture(diff <= kArithmeticTolerance, msg.str(), diff);
}

}  // namespace

WitnessFixtures witness_fixtures() {
  return {fixture_input(), fixture_channel(), fixture_output(), fixture_branch(),
          (60.0 - 3.0 * kSqrt2) / 80.0};
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kViolation: return "violation";
    case Verdict::kRespected: return "respected";
    case Verdict::kInconclusive: return "inconclusive";
  }
  return "unknown";
}

std::string_view to_string(ChannelFamily family) {
  switch (family) {
    case ChannelFamily::kSio: return "sio";
    case ChannelFamily::kIo: return "io";
    case ChannelFamily::kDioTwirl: return "dio_twirl";
  }
  return "unknown";
}

std::optional<ChannelFamily> parse_family(std::string_view name) {
  if (name == "sio") return ChannelFamily::kSio;
  if (name == "io") return ChannelFamily::kIo;
  if (name == "dio_twirl" || name == "dio-twirl") return ChannelFamily::kDioTwirl;
  return std::nullopt;
}

OperationClass operation_class(ChannelFamily family) {
  switch (family) {
    case ChannelFamily::kSio: return OperationClass::kSio;
    case ChannelFamily::kIo: return OperationClass::kIo;
    case ChannelFamily::kDioTwirl: return OperationClass::kDio;
  }
  return OperationClass::kMio;
}

std::string kraus_digest(const KrausChannel& channel) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  auto feed = [&hash](std::uint64_t word) {
    for (int byte = 0; byte < 8; ++byte) {
      hash ^= (word >> (8 * byte)) & 0xffU;
      hash *= 0x100000001b3ULL;
    }
  };
  feed(channel.dim());
  feed(channel.kraus().size());
  for (const auto& k : channel.kraus())
    for (const Complex& z : k.entries()) {
      feed(std::bit_cast<std::uint64_t>(z.real()));
      feed(std::bit_cast<std::uint64_t>(z.imag()));
    }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a:%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

double fixture_dio_witness_residual() {
  const KrausChannel channel = fixture_channel();
  const double h = 1.0 / kSqrt2;
  const DensityMatrix psi = PureStateVector::normalized({0.0, h, h}).density();
  const DensityMatrix dephase_first = apply(channel, dephase(psi));
  const DensityMatrix dephase_last = dephase(apply(channel, psi));
  return (dephase_first.matrix() - dephase_last.matrix()).frobenius_norm();
}

WitnessReport theorem1_report() {
  const WitnessFixtures fx = witness_fixtures();

  expect_fixture(fx.channel.completeness_residual() <= kArithmeticTolerance,
                 "fixture Kraus operators are not complete",
                 fx.channel.completeness_residual());
  const DensityMatrix out = apply(fx.channel, fx.rho_in);
  check_entrywise(out, fx.rho_out, "channel output");

  const ClassificationReport cls = classify(fx.channel);
  expect_fixture(cls.io_certified, "fixture channel failed the IO column test");
  expect_fixture(!cls.sio_certified, "fixture channel passed the SIO row test");
  expect_fixture(!cls.dio, "fixture channel passed the DIO test");
  expect_fixture(cls.mio, "fixture channel failed the MIO test");
  expect_fixture(fixture_dio_witness_residual() > kStructuralTolerance,
                 "fixture channel commutes with dephasing on (|1>+|2>)/sqrt2");

  WitnessReport report{.measure = Measure::kCMax};
  report.value_in = c_max(fx.rho_in).value;
  report.value_out = c_max(out).value;
  report.delta = report.value_out - report.value_in;
  report.trials = 1;
  report.trial_index = 0;
  expect_fixture(report.delta > report.tolerance, "c_max did not increase", report.delta);
  report.verdict = Verdict::kViolation;
  report.input_state = fx.rho_in;
  report.output_state = out;
  report.kraus_digest = kraus_digest(fx.channel);
  report.channel = fx.channel;
  report.classification = cls;
  report.note =
      "incoherent operation increases c_max; the conversion is impossible under SIO and DIO";
  return report;
}

std::vector<OrderingRow> theorem2_report() {
  const WitnessFixtures fx = witness_fixtures();
  std::vector<OrderingRow> rows;
  for (Measure m : kAllMeasures) {
    const double in = evaluate(m, fx.rho_in).value;
    const double out = evaluate(m, fx.rho_out).value;
    rows.push_back({m, in, out, in >= out - kViolationTolerance});
  }
  return rows;
}

bool separation_certified(const std::vector<OrderingRow>& rows) {
  bool io_monotones_ordered = true;
  bool cmax_ordered = true;
  bool saw_cmax = false;
  for (const auto& row : rows) {
    if (row.measure == Measure::kCMax) {
      saw_cmax = true;
      cmax_ordered = row.ordered;
    } else if (is_known_monotone(row.measure, OperationClass::kIo)) {
      io_monotones_ordered = io_monotones_ordered && row.ordered;
    }
  }
  return saw_cmax && io_monotones_ordered && !cmax_ordered;
}

WitnessReport stochastic_bound_report() {
  const WitnessFixtures fx = witness_fixtures();
  const BranchOutcome branch = apply_stochastic(fx.channel, kWitnessBranch, fx.rho_in);
  check_entrywise(branch.state, fx.rho_branch, "stochastic branch output");
  {
    const double diff = std::abs(branch.probability - fx.branch_probability);
    expect_fixture(diff <= kArithmeticTolerance, "branch probability mismatch", diff);
  }

  WitnessReport report{.measure = Measure::kCMax};
  report.value_in = c_max(fx.rho_in).value;
  report.value_out = c_max(branch.state).value;
  report.delta = report.value_out - report.value_in;
  report.trials = 1;
  report.trial_index = 0;
  expect_fixture(report.delta > report.tolerance, "c_max did not increase on the branch",
                 report.delta);
  report.verdict = Verdict::kViolation;
  report.input_state = fx.rho_in;
  report.output_state = branch.state;
  report.channel = KrausChannel::create({fx.channel.kraus()[kWitnessBranch]},
                                        KrausMode::kTraceNonincreasing);
  report.kraus_digest = kraus_digest(*report.channel);
  report.classification = classify(*report.channel);
  report.probability = branch.probability;
  report.note = "post-selected branch K_2 of the fixture IO";
  return report;
}

namespace {

struct Trial {
  DensityMatrix state;
  KrausChannel channel;
};

Trial draw_trial(ChannelFamily family, std::size_t d, Rng& rng) {
  DensityMatrix state = random_density_matrix(d, rng);
  switch (family) {
    case ChannelFamily::kSio:
      return {std::move(state), sample_sio(d, 2 + rng.below(2), rng)};
    case ChannelFamily::kIo:
      return {std::move(state), sample_io_nonsio(d, rng)};
    case ChannelFamily::kDioTwirl:
      return {std::move(state), dephasing_twirl(random_channel(d, 2, rng))};
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown channel family");
}

}  // namespace

WitnessReport falsify(Measure measure, ChannelFamily family, std::size_t d, int trials,
                      std::uint64_t seed, double tol) {
  if (trials < 1) throw Error(ErrorCode::kInvalidArgument, "falsify needs trials >= 1");
  if (d == 0) throw Error(ErrorCode::kInvalidArgument, "dimension must be positive");

  const bool embed_fixture = measure == Measure::kCMax && family == ChannelFamily::kIo && d == 3;
  const bool monotone = is_known_monotone(measure, operation_class(family));

  WitnessReport report{.measure = measure};
  report.seed = seed;
  report.tolerance = tol;
  double worst_delta = -std::numeric_limits<double>::infinity();

  for (int t = 0; t < trials; ++t) {
    std::optional<Trial> trial;
    if (embed_fixture && t == 0) {
      WitnessFixtures fx = witness_fixtures();
      trial.emplace(Trial{std::move(fx.rho_in), std::move(fx.channel)});
    } else {
      Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(t));
      trial.emplace(draw_trial(family, d, rng));
    }
    const DensityMatrix out = apply(trial->channel, trial->state);
    const double in_value = evaluate(measure, trial->state).value;
    const double out_value = evaluate(measure, out).value;
    const double delta = out_value - in_value;

    const bool violation = delta > tol;
    if (violation || delta > worst_delta) {
      worst_delta = delta;
      report.value_in = in_value;
      report.value_out = out_value;
      report.delta = delta;
      report.trial_index = t;
      report.input_state = trial->state;
      report.output_state = out;
      report.channel = trial->channel;
    }
    if (violation) {
      report.verdict = Verdict::kViolation;
      report.trials = t + 1;
      report.classification = classify(trial->channel);
      report.kraus_digest = kraus_digest(trial->channel);
      report.note = monotone ? "violation of a listed monotonicity; check the implementation"
                             : "monotonicity fails for this measure and class";
      return report;
    }
  }

  report.trials = trials;
  report.classification = classify(*report.channel);
  report.kraus_digest = kraus_digest(*report.channel);
  if (monotone) {
    report.verdict = Verdict::kRespected;
    report.note = "no increase beyond tolerance; embedded pair has the largest delta";
  } else {
    report.verdict = Verdict::kInconclusive;
    report.note = measure == Measure::kL1
                      ? "no violation found by random search; l1 is known not to be "
                        "monotone under DIO/MIO (Bu et al., Quantum Inf. Comput. 2017)"
                      : "no violation found by random search; the measure is not a "
                        "monotone for this class";
  }
  return report;
}

bool replay(const WitnessReport& report, double tol) {
  if (!report.input_state || !report.channel) return false;
  const DensityMatrix out =
      report.channel->mode() == KrausMode::kTracePreserving
          ? apply(*report.channel, *report.input_state)
          : apply_stochastic(*report.channel, *report.input_state).state;
  if (report.output_state && max_abs_diff(out.matrix(), report.output_state->matrix()) > tol)
    return false;
  const double delta =
      evaluate(report.measure, out).value - evaluate(report.measure, *report.input_state).value;
  return std::abs(delta - report.delta) <= tol;
}

}  // namespace coherence
