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

// Descriptive statistics shared by the scoring engine and the reports:
// linear-interpolation percentiles, Pearson's r and mean/sample deviation.

#ifndef TRSCORE_STATS_HPP_
#define TRSCORE_STATS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>

#include "trscore/error.hpp"

namespace trscore::stats {

// Name stamped into report metadata so runs are comparable.
inline constexpr const char* kPercentileMethod = "linear_interpolation_n_minus_1";

// A percentile rank strictly inside (0, 100). The endpoints are served by
// percentile_min/percentile_max instead.
class PercentileSpec {
 public:
  explicit PercentileSpec(double x) : x_(x) {
    if (!(x > 0.0 && x < 100.0)) {
      throw DomainError("percentile must lie in the open interval (0, 100), got " +
                        std::to_string(x));
    }
  }
  double value() const noexcept { return x_; }

 private:
  double x_;
};

namespace detail {

inline void require_sorted(std::span<const double> values) {
  if (values.empty()) throw DomainError("percentile of an empty list");
  if (!std::is_sorted(values.begin(), values.end())) {
    throw DomainError("percentile input is not sorted ascending");
  }
}

}  // namespace detail

// Value at fractional rank (x/100)*(n-1) of an ascending list, linearly
// interpolated between the two closest ranks.
inline double percentile(std::span<const double> sorted, PercentileSpec spec) {
  detail::require_sorted(sorted);
  const std::size_t n = sorted.size();
  if (n == 1) return sorted[0];
  const double pos = spec.value() / 100.0 * static_cast<double>(n - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  if (lo + 1 >= n) return sorted[n - 1];
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

inline double percentile(std::span<const double> sorted, double x) {
  return percentile(sorted, PercentileSpec(x));
}

inline double percentile_min(std::span<const double> sorted) {
  detail::require_sorted(sorted);
  return sorted.front();
}

inline double percentile_max(std::span<const double> sorted) {
  detail::require_sorted(sorted);
  return sorted.back();
}

struct MeanStd {
  double mean = 0.0;
  double sample_std = 0.0;
  // Set when n == 1 and the deviation is reported as 0 by convention.
  bool degenerate = false;
};

inline MeanStd mean_std(std::span<const double> values) {
  if (values.empty()) throw DomainError("mean/std of an empty list");
  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  MeanStd out;
  out.mean = sum / n;
  if (values.size() == 1) {
    out.degenerate = true;
    return out;
  }
  double ss = 0.0;
  for (double v : values) ss += (v - out.mean) * (v - out.mean);
  out.sample_std = std::sqrt(ss / (n - 1.0));
  return out;
}

// Product-moment correlation, clamped to [-1, 1]. A constant series has no
// defined correlation and is reported as an error.
inline double pearson_r(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw DomainError("pearson_r: length mismatch (" + std::to_string(xs.size()) +
                      " vs " + std::to_string(ys.size()) + ")");
  }
  if (xs.size() < 2) throw DomainError("pearson_r needs at least two points");
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw DomainError("pearson_r: constant series has undefined correlation");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

}  // namespace trscore::stats

#endif  // TRSCORE_STATS_HPP_
