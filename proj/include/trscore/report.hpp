// Copyright 2026 The TRScore Authors.
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

// JSON and CSV renderings of every result type, the run manifest embedded in
// each output, and atomic file output.

#ifndef TRSCORE_REPORT_HPP_
#define TRSCORE_REPORT_HPP_

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>
#include <openssl/evp.h>

#include "trscore/engine.hpp"
#include "trscore/error.hpp"
#include "trscore/hrs.hpp"
#include "trscore/punct.hpp"

namespace trscore {

inline constexpr const char* kToolVersion = "0.1.0";

inline std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorKind::kInput, "SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

struct InputDigest {
  std::string path;
  std::string sha256;
};

struct RunManifest {
  std::string command;
  nlohmann::json config = nlohmann::json::object();
  std::vector<InputDigest> inputs;
  std::string tool_version = kToolVersion;

  void add_input(const std::filesystem::path& path) {
    inputs.push_back({path.string(), sha256_hex(detail::read_file(path))});
  }
};

inline nlohmann::json to_json(const RunManifest& m) {
  nlohmann::json inputs = nlohmann::json::array();
  for (const auto& in : m.inputs) inputs.push_back({{"path", in.path}, {"sha256", in.sha256}});
  return {{"command", m.command},
          {"config", m.config},
          {"inputs", inputs},
          {"tool_version", m.tool_version}};
}

inline nlohmann::json to_json(const TRScoreReport& r) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : r.percentiles) {
    pts.push_back({{"x", p.x}, {"candidate_value", p.candidate_value}, {"trscore", p.trscore}});
  }
  return {{"baseline_p50", r.baseline_p50},
          {"mode", to_string(r.mode)},
          {"percentiles", pts},
          {"metadata",
           {{"backend", r.metadata.backend},
            {"first_token_policy", r.metadata.first_token_policy},
            {"percentile_method", r.metadata.percentile_method},
            {"reference_size", r.metadata.reference_size},
            {"candidate_size", r.metadata.candidate_size},
            {"warnings", r.metadata.warnings}}}};
}

inline std::string format_number(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

inline std::string percentile_label(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "P%g", x);
  return buf;
}

// Header plus one row per report, one TRScore column per percentile.
inline std::string to_csv(const std::vector<std::pair<std::string, TRScoreReport>>& rows,
                          int decimals = 1) {
  std::ostringstream out;
  out << "candidate";
  if (!rows.empty()) {
    for (const auto& p : rows.front().second.percentiles) out << ',' << percentile_label(p.x);
  }
  out << '\n';
  for (const auto& [label, r] : rows) {
    out << label;
    for (const auto& p : r.percentiles) out << ',' << format_number(p.trscore, decimals);
    out << '\n';
  }
  return out.str();
}

inline nlohmann::json to_json(const PunctCounts& c) {
  return {{"tp", c.tp}, {"fp", c.fp}, {"fn", c.fn}};
}

inline nlohmann::json to_json(const PunctEvalResult& r) {
  nlohmann::json per_class = nlohmann::json::object();
  for (auto c : kPunctClasses) per_class[to_string(c)] = to_json(r.counts(c));
  return {{"precision", r.precision},
          {"recall", r.recall},
          {"f1", r.f1},
          {"micro", to_json(r.micro())},
          {"per_class", per_class},
          {"averaging", "micro"},
          {"alignment", "min_edit_distance_unit_cost"},
          {"diagnostics", r.diagnostics}};
}

inline nlohmann::json to_json(const HrsSummary& s) {
  return {{"mean_percent", s.mean_percent},
          {"stddev_percent", s.stddev_percent},
          {"n_ratings", s.n_ratings},
          {"n_judges", s.n_judges},
          {"single_rating", s.single_rating},
          {"normalization", "rating/4*100"},
          {"stddev", "sample_n_minus_1"},
          {"aggregation", "pooled"},
          {"display", format_hrs(s)}};
}

// Writes to a sibling temporary file and renames it over the target.
inline void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw InputError("error writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw InputError("cannot move output into place at '" + path.string() + "'");
  }
}

}  // namespace trscore

#endif  // TRSCORE_REPORT_HPP_
