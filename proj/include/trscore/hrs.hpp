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

// Human readability score: judge ratings on a 0-4 scale normalized to
// percent and pooled over every (sentence, judge) pair.

#ifndef TRSCORE_HRS_HPP_
#define TRSCORE_HRS_HPP_

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "trscore/error.hpp"
#include "trscore/ingest.hpp"
#include "trscore/stats.hpp"

namespace trscore {

inline constexpr int kMaxRating = 4;

struct JudgeRating {
  std::string sentence_id;
  std::string judge_id;
  int rating = 0;
};

struct HrsSummary {
  double mean_percent = 0.0;
  double stddev_percent = 0.0;
  std::size_t n_ratings = 0;
  std::size_t n_judges = 0;
  bool single_rating = false;
};

namespace hrs_detail {

inline std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur.push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(text::collapse_whitespace(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(text::collapse_whitespace(cur));
  return fields;
}

}  // namespace hrs_detail

// CSV with header sentence_id,judge_id,rating (any column order). Row numbers
// in errors are 1-based file lines, the header being line 1.
inline std::vector<JudgeRating> parse_ratings(std::string_view raw, const std::string& origin = "ratings") {
  if (!text::is_valid_utf8(raw)) throw InputError(origin + ": not valid UTF-8");
  std::istringstream in(text::normalize_newlines(raw));
  std::string line;
  std::size_t line_no = 0;
  std::map<std::string, std::size_t> col;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::collapse_whitespace(line).empty()) continue;
    const auto header = hrs_detail::split_csv_row(line);
    for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
    break;
  }
  for (const char* name : {"sentence_id", "judge_id", "rating"}) {
    if (!col.contains(name)) {
      throw InputError(origin + ": header must contain sentence_id,judge_id,rating");
    }
  }
  const std::size_t width = col.size();

  std::vector<JudgeRating> out;
  std::map<std::pair<std::string, std::string>, std::size_t> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::collapse_whitespace(line).empty()) continue;
    const std::string where = origin + " row " + std::to_string(line_no);
    const auto f = hrs_detail::split_csv_row(line);
    if (f.size() != width) {
      throw InputError(where + ": expected " + std::to_string(width) + " fields, got " +
                       std::to_string(f.size()));
    }
    JudgeRating r{f[col["sentence_id"]], f[col["judge_id"]], 0};
    if (r.sentence_id.empty() || r.judge_id.empty()) throw InputError(where + ": empty id");
    const std::string& rs = f[col["rating"]];
    if (rs.empty() || !std::all_of(rs.begin(), rs.end(), text::is_ascii_digit) || rs.size() > 3) {
      throw InputError(where + ": rating '" + rs + "' is not an integer in [0, 4]");
    }
    r.rating = std::stoi(rs);
    if (r.rating > kMaxRating) {
      throw InputError(where + ": rating " + rs + " is outside the 0-4 scale");
    }
    auto [it, inserted] = seen.emplace(std::make_pair(r.sentence_id, r.judge_id), line_no);
    if (!inserted) {
      throw InputError(origin + ": duplicate rating for sentence '" + r.sentence_id +
                       "' by judge '" + r.judge_id + "' (rows " + std::to_string(it->second) +
                       " and " + std::to_string(line_no) + ")");
    }
    out.push_back(std::move(r));
  }
  return out;
}

inline std::vector<JudgeRating> load_ratings(const std::filesystem::path& path) {
  return parse_ratings(detail::read_file(path), path.string());
}

inline double normalize_rating(int rating) {
  return static_cast<double>(rating) / static_cast<double>(kMaxRating) * 100.0;
}

inline HrsSummary hrs_summary(const std::vector<JudgeRating>& ratings) {
  if (ratings.empty()) throw DomainError("no ratings to summarize");
  std::vector<double> pct;
  pct.reserve(ratings.size());
  std::set<std::string> judges;
  for (const auto& r : ratings) {
    if (r.rating < 0 || r.rating > kMaxRating) {
      throw DomainError("rating " + std::to_string(r.rating) + " is outside the 0-4 scale");
    }
    pct.push_back(normalize_rating(r.rating));
    judges.insert(r.judge_id);
  }
  const auto ms = stats::mean_std(pct);
  return {ms.mean, ms.sample_std, ratings.size(), judges.size(), ms.degenerate};
}

// "75% ± 19.1%"
inline std::string format_hrs(const HrsSummary& s, int mean_decimals = 0, int std_decimals = 1) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f%% \xC2\xB1 %.*f%%", mean_decimals, s.mean_percent,
                std_decimals, s.stddev_percent);
  return buf;
}

}  // namespace trscore

#endif  // TRSCORE_HRS_HPP_
