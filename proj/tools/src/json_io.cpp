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

#include "coherence_cli/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "coherence/error.hpp"

namespace coherence::cli {
namespace {

[[noreturn]] void fail(ErrorCode code, const std::string& path, const std::string& what) {
  throw Error(code, (path.empty() ? std::string("document") : path) + ": " + what);
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kParseError, e.what());
  } catch (const Json::out_of_range& e) {
    // Literals such as 1e999 overflow a double while parsing.
    throw Error(ErrorCode::kValueError, e.what());
  }
}

std::size_t read_dim(const Json& doc, const std::string& path) {
  if (!doc.is_object()) fail(ErrorCode::kParseError, path, "expected an object");
  const auto it = doc.find("dim");
  if (it == doc.end()) fail(ErrorCode::kParseError, path, "missing field \"dim\"");
  if (!it->is_number_integer() || it->get<long long>() < 1)
    fail(ErrorCode::kParseError, path + ".dim", "expected a positive integer");
  return it->get<std::size_t>();
}

Complex read_complex(const Json& z, const std::string& path) {
  if (!z.is_array() || z.size() != 2)
    fail(ErrorCode::kParseError, path, "complex numbers are encoded as [re, im]");
  if (!z[0].is_number() || !z[1].is_number())
    fail(ErrorCode::kParseError, path, "complex components must be numbers");
  const double re = z[0].get<double>();
  const double im = z[1].get<double>();
  if (!std::isfinite(re) || !std::isfinite(im))
    fail(ErrorCode::kValueError, path, "non-finite complex component");
  return {re, im};
}

ComplexMatrix read_entries(const Json& entries, std::size_t dim, const std::string& path) {
  if (!entries.is_array()) fail(ErrorCode::kParseError, path, "expected an array of rows");
  if (entries.size() != dim) {
    std::ostringstream msg;
    msg << "expected " << dim << " rows, found " << entries.size();
    fail(ErrorCode::kShapeError, path, msg.str());
  }
  std::vector<Complex> values;
  values.reserve(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const std::string row_path = path + "[" + std::to_string(i) + "]";
    const Json& row = entries[i];
    if (!row.is_array()) fail(ErrorCode::kParseError, row_path, "expected an array");
    if (row.size() != dim) {
      std::ostringstream msg;
      msg << "expected " << dim << " entries, found " << row.size();
      fail(ErrorCode::kShapeError, row_path, msg.str());
    }
    for (std::size_t j = 0; j < dim; ++j)
      values.push_back(read_complex(row[j], row_path + "[" + std::to_string(j) + "]"));
  }
  return ComplexMatrix(dim, std::move(values));
}

}  // namespace

ComplexMatrix matrix_from_json(const Json& doc, const std::string& path) {
  const std::size_t dim = read_dim(doc, path);
  const auto it = doc.find("entries");
  if (it == doc.end()) fail(ErrorCode::kParseError, path, "missing field \"entries\"");
  return read_entries(*it, dim, path.empty() ? "entries" : path + ".entries");
}

ComplexMatrix parse_matrix(std::string_view text) { return matrix_from_json(parse_json(text)); }

DensityMatrix parse_state(std::string_view text) { return validate_state(parse_matrix(text)); }

KrausChannel channel_from_json(const Json& doc) {
  const std::size_t dim = read_dim(doc, "");
  KrausMode mode = KrausMode::kTracePreserving;
  if (const auto it = doc.find("mode"); it != doc.end()) {
    if (*it == "tp") {
      mode = KrausMode::kTracePreserving;
    } else if (*it == "stochastic") {
      mode = KrausMode::kTraceNonincreasing;
    } else {
      fail(ErrorCode::kParseError, "mode", "expected \"tp\" or \"stochastic\"");
    }
  }
  const auto kraus = doc.find("kraus");
  if (kraus == doc.end() || !kraus->is_array())
    fail(ErrorCode::kParseError, "kraus", "expected an array of matrices");
  if (kraus->empty()) fail(ErrorCode::kShapeError, "kraus", "empty Kraus list");
  std::vector<ComplexMatrix> ops;
  for (std::size_t k = 0; k < kraus->size(); ++k) {
    const std::string path = "kraus[" + std::to_string(k) + "]";
    const Json& item = (*kraus)[k];
    if (item.is_object()) {
      ComplexMatrix m = matrix_from_json(item, path);
      if (m.dim() != dim) fail(ErrorCode::kShapeError, path, "dimension differs from \"dim\"");
      ops.push_back(std::move(m));
    } else {
      ops.push_back(read_entries(item, dim, path));
    }
  }
  return KrausChannel::create(std::move(ops), mode);
}

KrausChannel parse_channel(std::string_view text) { return channel_from_json(parse_json(text)); }

Json entries_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Json matrix_to_json(const ComplexMatrix& m) {
  return {{"dim", m.dim()}, {"entries", entries_to_json(m)}};
}

Json channel_to_json(const KrausChannel& channel) {
  Json kraus = Json::array();
  for (const auto& k : channel.kraus()) kraus.push_back(entries_to_json(k));
  return {{"dim", channel.dim()},
          {"mode", channel.mode() == KrausMode::kTracePreserving ? "tp" : "stochastic"},
          {"kraus", std::move(kraus)}};
}

std::string emit_matrix(const ComplexMatrix& m) { return matrix_to_json(m).dump(); }

std::string emit_channel(const KrausChannel& channel) { return channel_to_json(channel).dump(); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace coherence::cli
