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

#include <iosfwd>
#include <string>
#include <vector>

#include "coherence/witness.hpp"
#include "coherence_cli/json_io.hpp"

namespace coherence::cli {

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  /// Invalid input data, a failed fixture check, or an unexpected verdict.
  kExitVerdictFailure = 1,
  kExitUsage = 2,
};

/// Runs one command line (without the program name). The JSON report goes to
/// `out`; help and usage text go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

Json witness_report_to_json(const WitnessReport& report);
Json classification_to_json(const ClassificationReport& report);

}  // namespace coherence::cli
