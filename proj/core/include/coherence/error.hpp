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

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace coherence {

enum class ErrorCode {
  kNotHermitian,
  kNoConvergence,
  kNotPsd,
  kTraceNotOne,
  kDimensionMismatch,
  kModeMismatch,
  kNotTracePreserving,
  kNotTraceNonincreasing,
  kZeroProbability,
  kDimensionTooLarge,
  kDimensionNotTwo,
  kSolverFailure,
  kFixtureMismatch,
  kInvalidArgument,
  kParseError,
  kShapeError,
  kValueError,
};

/// Stable snake_case identifier used in machine-readable reports.
std::string_view to_string(ErrorCode code);

/// Every failure raised by the library. Carries the magnitude of the violated
/// invariant when one exists, so round-off can be told apart from bad input.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<double> residual = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<double> residual() const noexcept { return residual_; }

 private:
  ErrorCode code_;
  std::optional<double> residual_;
};

}  // namespace coherence
