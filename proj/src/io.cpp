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

#include "dualkit/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <openssl/evp.h>

#include "dualkit/invariants.hpp"

namespace dualkit {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json gate_to_json(const Gate& g) {
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index r = 0; r < g.m.rows(); ++r) {
    Json rr = Json::array(), ir = Json::array();
    for (Eigen::Index c = 0; c < g.m.cols(); ++c) {
      rr.push_back(g.m(r, c).real());
      ir.push_back(g.m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ir));
  }
  Json j;
  j["q"] = g.q;
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j;
}

namespace {

CMat matrix_from_json(const Json& re, const Json& im, long side) {
  if (!re.is_array() || !im.is_array() || static_cast<long>(re.size()) != side ||
      static_cast<long>(im.size()) != side)
    throw Error(ErrorKind::Usage, "gate JSON: re/im must be arrays of q^2 rows");
  CMat m(side, side);
  for (long r = 0; r < side; ++r) {
    if (!re[r].is_array() || !im[r].is_array() || static_cast<long>(re[r].size()) != side ||
        static_cast<long>(im[r].size()) != side)
      throw Error(ErrorKind::Usage, "gate JSON: every row must hold q^2 numbers");
    for (long c = 0; c < side; ++c) {
      if (!re[r][c].is_number() || !im[r][c].is_number())
        throw Error(ErrorKind::Usage, "gate JSON: non-numeric entry");
      m(r, c) = cplx(re[r][c].get<double>(), im[r][c].get<double>());
    }
  }
  return m;
}

std::vector<std::vector<int>> table_from_json(const Json& t, int q, const char* name) {
  if (!t.is_array() || static_cast<int>(t.size()) != q)
    throw Error(ErrorKind::Usage, std::string("permutation JSON: ") + name + " must be q x q");
  std::vector<std::vector<int>> out(q, std::vector<int>(q));
  for (int i = 0; i < q; ++i) {
    if (!t[i].is_array() || static_cast<int>(t[i].size()) != q)
      throw Error(ErrorKind::Usage, std::string("permutation JSON: ") + name + " must be q x q");
    for (int j = 0; j < q; ++j) {
      if (!t[i][j].is_number_integer())
        throw Error(ErrorKind::Usage, "permutation JSON: entries must be integers");
      const int v = t[i][j].get<int>();
      if (v < 1 || v > q) throw Error(ErrorKind::Usage, "permutation JSON: entries must lie in 1..q");
      out[i][j] = v - 1;
    }
  }
  return out;
}

}  // namespace

Gate gate_from_json(const Json& j, bool require_unitary) {
  if (!j.is_object() || !j.contains("q") || !j["q"].is_number_integer())
    throw Error(ErrorKind::Usage, "gate JSON: missing integer field q");
  if (!j.contains("re") || !j.contains("im"))
    throw Error(ErrorKind::Usage, "gate JSON: missing re/im");
  const int q = j["q"].get<int>();
  if (q < 2 || q > 64) throw Error(ErrorKind::Usage, "gate JSON: q out of range");
  Gate g(q, matrix_from_json(j["re"], j["im"], static_cast<long>(q) * q));
  if (require_unitary && unitarity_defect(g.m) > kUnitarityTol)
    throw Error(ErrorKind::Validation, "gate JSON: matrix is not unitary");
  return g;
}

Json permutation_to_json(const PermutationSpec& spec) {
  Json k = Json::array(), l = Json::array();
  for (int i = 0; i < spec.q; ++i) {
    Json kr = Json::array(), lr = Json::array();
    for (int j = 0; j < spec.q; ++j) {
      kr.push_back(spec.K[i][j] + 1);
      lr.push_back(spec.L[i][j] + 1);
    }
    k.push_back(std::move(kr));
    l.push_back(std::move(lr));
  }
  Json out;
  out["q"] = spec.q;
  out["K"] = std::move(k);
  out["L"] = std::move(l);
  if (spec.theta) out["theta"] = *spec.theta;
  return out;
}

PermutationSpec permutation_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("q") || !j["q"].is_number_integer())
    throw Error(ErrorKind::Usage, "permutation JSON: missing integer field q");
  PermutationSpec s;
  s.q = j["q"].get<int>();
  if (s.q < 2) throw Error(ErrorKind::Usage, "permutation JSON: q must be >= 2");
  if (!j.contains("K") || !j.contains("L"))
    throw Error(ErrorKind::Usage, "permutation JSON: missing K/L");
  s.K = table_from_json(j["K"], s.q, "K");
  s.L = table_from_json(j["L"], s.q, "L");
  if (j.contains("theta")) {
    try {
      s.theta = j["theta"].get<std::vector<std::vector<double>>>();
    } catch (const nlohmann::json::exception&) {
      throw Error(ErrorKind::Usage, "permutation JSON: theta must be a q x q array of numbers");
    }
    if (static_cast<int>(s.theta->size()) != s.q)
      throw Error(ErrorKind::Usage, "permutation JSON: theta must be q x q");
    for (const auto& row : *s.theta)
      if (static_cast<int>(row.size()) != s.q)
        throw Error(ErrorKind::Usage, "permutation JSON: theta must be q x q");
  }
  if (!s.is_bijection()) throw Error(ErrorKind::Validation, "permutation JSON: not a bijection");
  return s;
}

std::string read_text(const std::string& path) {
  if (path == "-")
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Usage, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Usage, std::string("malformed JSON: ") + e.what());
  }
}

CsvWriter::CsvWriter(std::vector<std::string> header) : width_(header.size()) { row(header); }

CsvWriter& CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != width_) throw std::logic_error("CSV row width mismatch");
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (k) text_ += ',';
    text_ += cells[k];
  }
  text_ += '\n';
  return *this;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int k = 0; k < len; ++k) {
    out += hex[md[k] >> 4];
    out += hex[md[k] & 15];
  }
  return out;
}

Json RunManifest::to_json() const {
  Json j;
  j["command"] = argv;
  j["flags"] = flags;
  j["seed"] = seed;
  j["version"] = version;
  j["wall_time_s"] = wall_time_s;
  Json d = Json::object();
  for (const auto& [path, digest] : digests) d[path] = digest;
  j["outputs"] = std::move(d);
  return j;
}

RunManifest RunManifest::from_json(const Json& j) {
  RunManifest m;
  try {
    m.argv = j.at("command").get<std::vector<std::string>>();
    if (j.contains("flags")) m.flags = j["flags"];
    if (j.contains("seed")) m.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("version")) m.version = j["version"].get<std::string>();
    if (j.contains("wall_time_s")) m.wall_time_s = j["wall_time_s"].get<double>();
    if (j.contains("outputs"))
      for (const auto& [path, digest] : j["outputs"].items())
        m.digests[path] = digest.get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Usage, std::string("malformed manifest: ") + e.what());
  }
  return m;
}

std::string to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Usage: return "usage";
    case ErrorKind::Validation: return "validation";
    case ErrorKind::NonConvergence: return "non_convergence";
  }
  return "unknown";
}

Json error_json(ErrorKind kind, const std::string& message) {
  Json e;
  e["kind"] = to_string(kind);
  e["exit_code"] = static_cast<int>(kind);
  e["message"] = message;
  Json out;
  out["error"] = std::move(e);
  return out;
}

}  // namespace dualkit
