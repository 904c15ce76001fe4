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

#include "coherence/error.hpp"

namespace coherence {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotHermitian: return "not_hermitian";
    case ErrorCode::kNoConvergence: return "no_convergence";
    case ErrorCode::kNotPsd: return "not_psd";
    case ErrorCode::kTraceNotOne: return "trace_not_one";
    case ErrorCode::kDimensionMismatch: return "dimension_mismatch";
    case ErrorCode::kModeMismatch: return "mode_mismatch";
    case ErrorCode::kNotTracePreserving: return "not_trace_preserving";
    case ErrorCode::kNotTraceNonincreasing: return "not_trace_nonincreasing";
    case ErrorCode::kZeroProbability: return "zero_probability";
    case ErrorCode::kDimensionTooLarge: return "dimension_too_large";
    case ErrorCode::kDimensionNotTwo: return "dimension_not_two";
    case ErrorCode::kSolverFailure: return "solver_failure";
    case ErrorCode::kFixtureMismatch: return "fixture_mismatch";
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kParseError: return "parse_error";
    case ErrorCode::kShapeError: return "shape_error";
    case ErrorCode::kValueError: return "value_error";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message,
             std::optional<double> residual)
    : std::runtime_error(message), code_(code), residual_(residual) {}

}  // namespace coherence
