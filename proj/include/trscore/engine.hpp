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

// Sentence scores, corpus score distributions, and TRScore: the reference
// corpus median NLL relative to a candidate corpus percentile, in percent.

#ifndef TRSCORE_ENGINE_HPP_
#define TRSCORE_ENGINE_HPP_

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "trscore/backend.hpp"
#include "trscore/error.hpp"
#include "trscore/ingest.hpp"
#include "trscore/stats.hpp"

namespace trscore {

// Below this many sentences a distribution is flagged as a weak estimate.
inline constexpr std::size_t kRecommendedCorpusSize = 100;

struct SentenceScore {
  std::string sentence_id;
  std::size_t token_count = 0;  // scored terms, including the end marker when modelled
  double total_nll = 0.0;       // nats
  double per_token_nll = 0.0;
};

enum class ScoreMode { kSum, kMean };

inline const char* to_string(ScoreMode m) { return m == ScoreMode::kSum ? "sum" : "mean"; }

inline ScoreMode parse_score_mode(std::string_view s) {
  if (s == "sum") return ScoreMode::kSum;
  if (s == "mean") return ScoreMode::kMean;
  throw InputError("unknown score mode '" + std::string(s) + "'");
}

struct ScoreDistribution {
  std::string corpus_id;
  std::vector<double> scores;  // ascending
  ScoreMode mode = ScoreMode::kSum;
  std::vector<std::string> warnings;
};

struct PercentilePoint {
  double x = 0.0;
  double candidate_value = 0.0;
  double trscore = 0.0;
};

struct ReportMetadata {
  std::string backend;
  std::string first_token_policy;
  std::string percentile_method = stats::kPercentileMethod;
  std::size_t reference_size = 0;
  std::size_t candidate_size = 0;
  std::vector<std::string> warnings;
};

struct TRScoreReport {
  double baseline_p50 = 0.0;
  ScoreMode mode = ScoreMode::kSum;
  std::vector<PercentilePoint> percentiles;  // ascending in x
  ReportMetadata metadata;

  // Throws if x was not requested.
  double trscore_at(double x) const {
    for (const auto& p : percentiles) {
      if (p.x == x) return p.trscore;
    }
    throw DomainError("percentile " + std::to_string(x) + " not in report");
  }
};

inline const std::vector<double>& default_percentiles() {
  static const std::vector<double> kDefault{25.0, 50.0, 75.0, 90.0};
  return kDefault;
}

// Negated sum of the defined token log-probabilities plus the end event.
inline SentenceScore aggregate_scores(std::string sentence_id, const TokenScores& scored) {
  SentenceScore out;
  out.sentence_id = std::move(sentence_id);
  double sum = 0.0;
  for (const auto& t : scored.tokens) {
    if (!t.logprob) continue;
    sum += *t.logprob;
    ++out.token_count;
  }
  if (scored.end_logprob) {
    sum += *scored.end_logprob;
    ++out.token_count;
  }
  if (out.token_count == 0) {
    throw BackendError("sentence " + out.sentence_id + " has no scorable tokens");
  }
  out.total_nll = -sum;
  out.per_token_nll = out.total_nll / static_cast<double>(out.token_count);
  return out;
}

inline SentenceScore score_sentence(const LikelihoodBackend& backend, const Sentence& sentence) {
  const TokenSeq tokens = tokenize(sentence, backend.casing());
  if (tokens.empty()) throw InputError("sentence " + sentence.id + " has no tokens");
  try {
    return aggregate_scores(sentence.id, backend.score_tokens(tokens));
  } catch (const BackendError& e) {
    throw BackendError("sentence " + sentence.id + ": " + e.what());
  }
}

// Scores every sentence using up to backend.max_parallel() workers. Results
// are ordered by sentence index. The first failure (lowest index) is rethrown.
inline std::vector<SentenceScore> score_corpus(const LikelihoodBackend& backend,
                                               const Corpus& corpus) {
  const std::size_t n = corpus.size();
  std::vector<SentenceScore> out(n);
  std::vector<std::exception_ptr> errors(n);
  const std::size_t workers = std::clamp<std::size_t>(backend.max_parallel(), 1, std::max<std::size_t>(n, 1));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = score_sentence(backend, corpus.sentences[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

inline ScoreDistribution build_distribution(std::span<const SentenceScore> scores, ScoreMode mode,
                                            std::string corpus_id = {}) {
  if (scores.empty()) throw DomainError("cannot build a distribution from no scores");
  ScoreDistribution d;
  d.corpus_id = std::move(corpus_id);
  d.mode = mode;
  d.scores.reserve(scores.size());
  for (const auto& s : scores) {
    d.scores.push_back(mode == ScoreMode::kSum ? s.total_nll : s.per_token_nll);
  }
  std::sort(d.scores.begin(), d.scores.end());
  if (d.scores.size() == 1) {
    d.warnings.push_back("single-sentence distribution: every percentile equals that score");
  }
  if (d.scores.size() < kRecommendedCorpusSize) {
    d.warnings.push_back("small corpus: " + std::to_string(d.scores.size()) +
                         " sentences (100-150 recommended for a stable estimate)");
  }
  return d;
}

// TRScore_x = 100 * P50(reference) / Px(candidate). Percentiles are sorted
// and de-duplicated in the report.
inline TRScoreReport trscore(const ScoreDistribution& reference,
                             const ScoreDistribution& candidate,
                             std::span<const double> percentiles) {
  if (reference.scores.empty() || candidate.scores.empty()) {
    throw DomainError("trscore requires non-empty distributions");
  }
  if (reference.mode != candidate.mode) {
    throw DomainError(std::string("score mode mismatch: reference is ") + to_string(reference.mode) +
                      ", candidate is " + to_string(candidate.mode));
  }
  if (percentiles.empty()) throw DomainError("no percentiles requested");

  TRScoreReport report;
  report.mode = reference.mode;
  report.baseline_p50 = stats::percentile(reference.scores, 50.0);
  if (!(report.baseline_p50 > 0.0)) {
    throw DomainError("reference P50 must be positive, got " + std::to_string(report.baseline_p50));
  }
  std::vector<double> xs(percentiles.begin(), percentiles.end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  for (double x : xs) {
    const double value = stats::percentile(candidate.scores, x);
    if (!(value > 0.0)) {
      throw DomainError("candidate P" + std::to_string(x) +
                        " is not positive; degenerate scoring (empty sentences?)");
    }
    report.percentiles.push_back({x, value, 100.0 * (report.baseline_p50 / value)});
  }
  report.metadata.reference_size = reference.scores.size();
  report.metadata.candidate_size = candidate.scores.size();
  for (const auto& w : reference.warnings) report.metadata.warnings.push_back("reference: " + w);
  for (const auto& w : candidate.warnings) report.metadata.warnings.push_back("candidate: " + w);
  return report;
}

// Unweighted mean of several reports' TRScore curves, keyed by percentile.
// Only percentiles present in every report are kept.
inline std::map<double, double> mean_curve(std::span<const TRScoreReport> reports) {
  std::map<double, double> sums;
  std::map<double, std::size_t> hits;
  for (const auto& r : reports) {
    for (const auto& p : r.percentiles) {
      sums[p.x] += p.trscore;
      ++hits[p.x];
    }
  }
  std::map<double, double> out;
  for (const auto& [x, s] : sums) {
    if (hits[x] == reports.size()) out[x] = s / static_cast<double>(reports.size());
  }
  return out;
}

enum class PairwiseMode { kNllRatio, kProbRatio };

inline const char* to_string(PairwiseMode m) {
  return m == PairwiseMode::kNllRatio ? "nll_ratio" : "prob_ratio";
}

inline PairwiseMode parse_pairwise_mode(std::string_view s) {
  if (s == "nll_ratio") return PairwiseMode::kNllRatio;
  if (s == "prob_ratio") return PairwiseMode::kProbRatio;
  throw InputError("unknown pairwise mode '" + std::string(s) + "'");
}

inline double pairwise_from_nll(double reference_nll, double hypothesis_nll, PairwiseMode mode) {
  if (reference_nll == hypothesis_nll) return 100.0;
  if (mode == PairwiseMode::kProbRatio) return 100.0 * std::exp(reference_nll - hypothesis_nll);
  if (!(hypothesis_nll > 0.0)) throw DomainError("hypothesis NLL is zero; ratio undefined");
  return 100.0 * (reference_nll / hypothesis_nll);
}

inline double pairwise_trscore(const LikelihoodBackend& backend, const Sentence& reference,
                               const Sentence& hypothesis,
                               PairwiseMode mode = PairwiseMode::kNllRatio) {
  const auto ref = score_sentence(backend, reference);
  const auto hyp = score_sentence(backend, hypothesis);
  return pairwise_from_nll(ref.total_nll, hyp.total_nll, mode);
}

}  // namespace trscore

#endif  // TRSCORE_ENGINE_HPP_
