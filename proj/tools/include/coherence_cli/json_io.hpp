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

// Reading and writing matrix, state and channel files.
//
// MatrixFile:  {"dim": d, "entries": [[[re, im], ...], ...]}   (row-major)
// ChannelFile: {"dim": d, "mode": "tp" | "stochastic", "kraus": [M, ...]}
//   where each M is either a MatrixFile object or a bare entries array.

#pragma once

#include <string>
#include <string_view>

#include "coherence/channels.hpp"
#include "coherence/numerics.hpp"
#include "coherence/states.hpp"
#include "json.hpp"

namespace coherence::cli {

using Json = nlohmann::json;

/// Throws Error with kParseError (malformed JSON or encoding), kShapeError
/// (ragged rows, dim mismatch) or kValueError (non-finite number). Messages
/// carry the JSON line/column or the offending field path.
ComplexMatrix parse_matrix(std::string_view text);
ComplexMatrix matrix_from_json(const Json& doc, const std::string& path = "");

/// parse_matrix followed by validate_state.
DensityMatrix parse_state(std::string_view text);

KrausChannel parse_channel(std::string_view text);
KrausChannel channel_from_json(const Json& doc);

Json entries_to_json(const ComplexMatrix& m);
Json matrix_to_json(const ComplexMatrix& m);
Json channel_to_json(const KrausChannel& channel);

/// Serialized with nlohmann's shortest round-trip float formatting.
std::string emit_matrix(const ComplexMatrix& m);
std::string emit_channel(const KrausChannel& channel);

/// Reads a whole file; throws Error(kInvalidArgument) when it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace coherence::cli
