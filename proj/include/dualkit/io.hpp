// Copyright 2026 The dualkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Serialization: gate and permutation JSON, fixed-format CSV, SHA-256
// digests and run manifests.

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "dualkit/constructions.hpp"

namespace dualkit {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

// 17 significant digits, '.' decimal point; "inf"/"-inf"/"nan" otherwise.
std::string format_double(double v);

// {"q": q, "re": [[...]], "im": [[...]]}, row-major q² × q².
Json gate_to_json(const Gate& g);
// Throws Usage on malformed input and Validation if the matrix is not
// unitary to kUnitarityTol.
Gate gate_from_json(const Json& j, bool require_unitary = true);

// Entries of K, L are 1-indexed in JSON and 0-indexed in memory.
Json permutation_to_json(const PermutationSpec& spec);
PermutationSpec permutation_from_json(const Json& j);

// Whole-file helpers; "-" means stdin.
std::string read_text(const std::string& path);
Json parse_json(const std::string& text);

// Comma-separated rows terminated by LF.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  CsvWriter& row(const std::vector<std::string>& cells);
  const std::string& str() const { return text_; }

 private:
  std::size_t width_;
  std::string text_;
};

std::string sha256_hex(const std::string& bytes);

struct RunManifest {
  std::vector<std::string> argv;  // full command line after the program name
  Json flags = Json::object();    // resolved flag values
  std::uint64_t seed = 0;
  std::string version = kVersion;
  double wall_time_s = 0.0;
  std::map<std::string, std::string> digests;  // output path ("-" = stdout) → sha256

  Json to_json() const;
  static RunManifest from_json(const Json& j);
};

// {"error": {"kind": ..., "exit_code": ..., "message": ...}}
Json error_json(ErrorKind kind, const std::string& message);
std::string to_string(ErrorKind kind);

}  // namespace dualkit
