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

#include "coherence_cli/cli.hpp"

#include <fstream>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "coherence/error.hpp"
#include "coherence/measures.hpp"
#include "coherence/version.hpp"

namespace coherence::cli {
namespace {

Json header(const std::string& command) {
  return {{"version", std::string(kVersion)},
          {"command", command},
          {"tolerances",
           {{"structural", kStructuralTolerance},
            {"arithmetic", kArithmeticTolerance},
            {"hermitian", kHermitianTolerance}}}};
}

Json error_json(std::string_view code, const std::string& message,
                std::optional<double> residual = std::nullopt) {
  Json err = {{"code", std::string(code)}, {"message", message}};
  if (residual) err["residual"] = *residual;
  return {{"error", std::move(err)}};
}

void emit(std::ostream& out, const Json& report) { out << report.dump(2) << '\n'; }

Json measure_to_json(const MeasureValue& value) {
  Json j = {{"value", value.value}};
  if (value.diagnostics) {
    j["diagnostics"] = {{"iterations", value.diagnostics->iterations},
                        {"duality_gap", value.diagnostics->duality_gap},
                        {"psd_residual", value.diagnostics->psd_residual}};
  }
  return j;
}

// Shared option state for all subcommands; CLI11 binds into it.
struct Options {
  std::string state;
  std::string channel;
  std::string from;
  std::string to;
  std::string out;
  std::string measure = "all";
  std::string family;
  std::string which;
  double classify_tol = kStructuralTolerance;
  double falsify_tol = kViolationTolerance;
  std::optional<std::size_t> branch;
  std::size_t dim = 3;
  int trials = 1000;
  std::uint64_t seed = 0;
};

int cmd_measure(const Options& opt, std::ostream& out) {
  const DensityMatrix rho = parse_state(read_file(opt.state));
  Json report = header("measure");
  Json values = Json::object();
  if (opt.measure == "all") {
    for (Measure m : kAllMeasures) values[std::string(to_string(m))] = measure_to_json(evaluate(m, rho));
  } else {
    const Measure m = *parse_measure(opt.measure);
    values[std::string(to_string(m))] = measure_to_json(evaluate(m, rho));
  }
  report["dim"] = rho.dim();
  report["measures"] = std::move(values);
  emit(out, report);
  return kExitOk;
}

int cmd_classify(const Options& opt, std::ostream& out) {
  const KrausChannel channel = parse_channel(read_file(opt.channel));
  Json report = header("classify");
  report["tolerances"]["classify"] = opt.classify_tol;
  report.update(classification_to_json(classify(channel, opt.classify_tol)));
  report["kraus_count"] = channel.kraus().size();
  report["kraus_digest"] = kraus_digest(channel);
  emit(out, report);
  return kExitOk;
}

int cmd_apply(const Options& opt, std::ostream& out) {
  const KrausChannel channel = parse_channel(read_file(opt.channel));
  const DensityMatrix rho = parse_state(read_file(opt.state));
  Json report = header("apply");
  if (opt.branch) {
    const BranchOutcome outcome = apply_stochastic(channel, *opt.branch, rho);
    report["branch"] = *opt.branch;
    report["probability"] = outcome.probability;
    report["state"] = matrix_to_json(outcome.state.matrix());
  } else if (channel.mode() == KrausMode::kTraceNonincreasing) {
    const BranchOutcome outcome = apply_stochastic(channel, rho);
    report["probability"] = outcome.probability;
    report["state"] = matrix_to_json(outcome.state.matrix());
  } else {
    report["state"] = matrix_to_json(apply(channel, rho).matrix());
  }
  emit(out, report);
  return kExitOk;
}

int cmd_convertible(const Options& opt, std::ostream& out) {
  const DensityMatrix from = parse_state(read_file(opt.from));
  const DensityMatrix to = parse_state(read_file(opt.to));
  const bool ok = qubit_convertible(from, to);
  Json report = header("convertible");
  report["tolerances"]["comparison_slack"] = kConvertibilitySlack;
  report["convertible"] = ok;
  for (const auto& [key, rho] : {std::pair{"from", &from}, std::pair{"to", &to}}) {
    report[key] = {{"robustness", c_robustness(*rho).value}, {"c_max", c_max(*rho).value}};
  }
  emit(out, report);
  return kExitOk;
}

int cmd_verify(const Options& opt, std::ostream& out) {
  Json report = header("verify " + opt.which);
  if (opt.which == "theorem2") {
    const auto rows = theorem2_report();
    Json jrows = Json::array();
    for (const auto& row : rows) {
      jrows.push_back({{"measure", std::string(to_string(row.measure))},
                       {"value_in", row.value_in},
                       {"value_out", row.value_out},
                       {"ordered", row.ordered}});
    }
    const bool certified = separation_certified(rows);
    report["rows"] = std::move(jrows);
    report["separation_certified"] = certified;
    emit(out, report);
    return certified ? kExitOk : kExitVerdictFailure;
  }
  const WitnessReport witness =
      opt.which == "theorem1" ? theorem1_report() : stochastic_bound_report();
  report.update(witness_report_to_json(witness));
  emit(out, report);
  return kExitOk;
}

int cmd_falsify(const Options& opt, std::ostream& out) {
  const Measure measure = *parse_measure(opt.measure);
  const ChannelFamily family = *parse_family(opt.family);
  const WitnessReport witness = falsify(measure, family, opt.dim, opt.trials, opt.seed,
                                        opt.falsify_tol);
  Json report = header("falsify");
  report["tolerances"]["violation"] = opt.falsify_tol;
  report["family"] = std::string(to_string(family));
  report["dim"] = opt.dim;
  report.update(witness_report_to_json(witness));
  emit(out, report);
  const bool unexpected = witness.verdict == Verdict::kViolation &&
                          is_known_monotone(measure, operation_class(family));
  return unexpected ? kExitVerdictFailure : kExitOk;
}

int cmd_twirl(const Options& opt, std::ostream& out) {
  const KrausChannel channel = parse_channel(read_file(opt.channel));
  const KrausChannel twirled = dephasing_twirl(channel);
  {
    std::ofstream file(opt.out, std::ios::binary);
    if (!file) throw Error(ErrorCode::kInvalidArgument, "cannot write " + opt.out);
    file << emit_channel(twirled) << '\n';
  }
  Json report = header("twirl");
  report["out"] = opt.out;
  report["kraus_count"] = twirled.kraus().size();
  report["kraus_digest"] = kraus_digest(twirled);
  report["classification"] = classification_to_json(classify(twirled));
  emit(out, report);
  return kExitOk;
}

}  // namespace

Json classification_to_json(const ClassificationReport& report) {
  Json residuals = Json::object();
  for (const auto& [name, value] : report.residuals) residuals[name] = value;
  return {{"io_certified", report.io_certified},
          {"sio_certified", report.sio_certified},
          {"dio", report.dio},
          {"mio", report.mio},
          {"residuals", std::move(residuals)}};
}

Json witness_report_to_json(const WitnessReport& report) {
  Json j = {{"measure", std::string(to_string(report.measure))},
            {"value_in", report.value_in},
            {"value_out", report.value_out},
            {"delta", report.delta},
            {"verdict", std::string(to_string(report.verdict))},
            {"trials", report.trials},
            {"seed", report.seed},
            {"tolerance", report.tolerance},
            {"kraus_digest", report.kraus_digest},
            {"note", report.note}};
  j["trial_index"] = report.trial_index ? Json(*report.trial_index) : Json(nullptr);
  if (report.probability) j["probability"] = *report.probability;
  if (report.classification) j["classification"] = classification_to_json(*report.classification);
  if (report.input_state) j["input_state"] = matrix_to_json(report.input_state->matrix());
  if (report.output_state) j["output_state"] = matrix_to_json(report.output_state->matrix());
  if (report.channel) j["channel"] = channel_to_json(*report.channel);
  return j;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coherence measures, free-operation classifiers and monotonicity witnesses",
               "coherence"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  Options opt;

  const auto measure_names = CLI::IsMember({"l1", "rel", "rob", "cmax", "all", "rel_entropy",
                                            "robustness", "c_max"});
  const auto single_measure = CLI::IsMember({"l1", "rel", "rob", "cmax", "rel_entropy",
                                             "robustness", "c_max"});

  auto* measure = app.add_subcommand("measure", "Evaluate coherence measures of a state");
  measure->add_option("--state", opt.state, "MatrixFile with the state")->required();
  measure->add_option("--measure", opt.measure, "l1|rel|rob|cmax|all")->check(measure_names);

  auto* classify_cmd = app.add_subcommand("classify", "IO/SIO/DIO/MIO tests for a channel");
  classify_cmd->add_option("--channel", opt.channel, "ChannelFile")->required();
  classify_cmd->add_option("--tol", opt.classify_tol, "Structural tolerance");

  auto* apply_cmd = app.add_subcommand("apply", "Apply a channel (or one branch) to a state");
  apply_cmd->add_option("--channel", opt.channel, "ChannelFile")->required();
  apply_cmd->add_option("--state", opt.state, "MatrixFile")->required();
  apply_cmd->add_option("--branch", opt.branch, "Kraus index to post-select");

  auto* convertible = app.add_subcommand("convertible", "Qubit convertibility test");
  convertible->add_option("--from", opt.from, "MatrixFile")->required();
  convertible->add_option("--to", opt.to, "MatrixFile")->required();

  auto* verify = app.add_subcommand("verify", "Built-in fixture checks");
  verify->add_option("which", opt.which, "theorem1|theorem2|stochastic")
      ->required()
      ->check(CLI::IsMember({"theorem1", "theorem2", "stochastic"}));

  auto* falsify_cmd = app.add_subcommand("falsify", "Randomized monotonicity search");
  falsify_cmd->add_option("--measure", opt.measure, "l1|rel|rob|cmax")
      ->required()
      ->check(single_measure);
  falsify_cmd->add_option("--family", opt.family, "sio|io|dio-twirl")
      ->required()
      ->check(CLI::IsMember({"sio", "io", "dio-twirl", "dio_twirl"}));
  falsify_cmd->add_option("--dim", opt.dim, "Dimension")->required()->check(CLI::PositiveNumber);
  falsify_cmd->add_option("--trials", opt.trials, "Number of trials")
      ->required()
      ->check(CLI::PositiveNumber);
  falsify_cmd->add_option("--seed", opt.seed, "Seed")->required();
  falsify_cmd->add_option("--tol", opt.falsify_tol, "Violation tolerance");

  auto* twirl = app.add_subcommand("twirl", "Dephasing twirl of a channel");
  twirl->add_option("--channel", opt.channel, "ChannelFile")->required();
  twirl->add_option("--out", opt.out, "Output ChannelFile")->required();

  std::vector<const char*> argv{"coherence"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    err << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    emit(out, error_json("usage_error", e.what()));
    err << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (measure->parsed()) return cmd_measure(opt, out);
    if (classify_cmd->parsed()) return cmd_classify(opt, out);
    if (apply_cmd->parsed()) return cmd_apply(opt, out);
    if (convertible->parsed()) return cmd_convertible(opt, out);
    if (verify->parsed()) return cmd_verify(opt, out);
    if (falsify_cmd->parsed()) return cmd_falsify(opt, out);
    if (twirl->parsed()) return cmd_twirl(opt, out);
  } catch (const Error& e) {
    emit(out, error_json(to_string(e.code()), e.what(), e.residual()));
    return kExitVerdictFailure;
  }
  return kExitUsage;
}

}  // namespace coherence::cli
