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

// Punctuation precision / recall / F1 against a written-form reference.
// Words are aligned by minimum edit distance (punctuation and case ignored);
// each word then carries the punctuation mark that follows it, and marks are
// compared across aligned positions.

#ifndef TRSCORE_PUNCT_HPP_
#define TRSCORE_PUNCT_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "trscore/error.hpp"
#include "trscore/ingest.hpp"

namespace trscore {

enum class PunctClass { kPeriod = 0, kComma = 1, kQuestion = 2 };

inline constexpr std::array<PunctClass, 3> kPunctClasses{PunctClass::kPeriod, PunctClass::kComma,
                                                          PunctClass::kQuestion};

inline const char* to_string(PunctClass c) {
  switch (c) {
    case PunctClass::kPeriod: return "period";
    case PunctClass::kComma: return "comma";
    case PunctClass::kQuestion: return "question";
  }
  return "?";
}

enum class AlignKind { kMatch, kSubstitute, kInsert, kDelete };

struct AlignOp {
  AlignKind kind;
  std::optional<std::size_t> ref_index;
  std::optional<std::size_t> hyp_index;

  friend bool operator==(const AlignOp&, const AlignOp&) = default;
};

struct PunctCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  PunctCounts& operator+=(const PunctCounts& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    return *this;
  }
  friend bool operator==(const PunctCounts&, const PunctCounts&) = default;
};

struct PunctEvalResult {
  std::array<PunctCounts, 3> per_class{};
  double precision = 1.0;
  double recall = 1.0;
  double f1 = 1.0;
  std::vector<std::string> diagnostics;

  const PunctCounts& counts(PunctClass c) const { return per_class[static_cast<std::size_t>(c)]; }
  PunctCounts& counts(PunctClass c) { return per_class[static_cast<std::size_t>(c)]; }

  PunctCounts micro() const {
    PunctCounts total;
    for (const auto& c : per_class) total += c;
    return total;
  }
};

struct PunctOptions {
  // Score '!' as a period instead of ignoring it.
  bool exclamation_as_period = false;
};

namespace punct_detail {

inline std::optional<PunctClass> classify(std::string_view tok, const PunctOptions& opt) {
  if (tok == ".") return PunctClass::kPeriod;
  if (tok == ",") return PunctClass::kComma;
  if (tok == "?") return PunctClass::kQuestion;
  if (tok == "!" && opt.exclamation_as_period) return PunctClass::kPeriod;
  return std::nullopt;
}

// Cost of aligning ref[i..] with hyp[j..], for every (i, j).
inline std::vector<std::vector<std::size_t>> suffix_costs(std::span<const std::string> ref,
                                                          std::span<const std::string> hyp) {
  const std::size_t n = ref.size(), m = hyp.size();
  std::vector<std::vector<std::size_t>> d(n + 1, std::vector<std::size_t>(m + 1, 0));
  for (std::size_t i = n + 1; i-- > 0;) {
    for (std::size_t j = m + 1; j-- > 0;) {
      if (i == n) {
        d[i][j] = m - j;
      } else if (j == m) {
        d[i][j] = n - i;
      } else {
        const std::size_t diag = d[i + 1][j + 1] + (ref[i] == hyp[j] ? 0 : 1);
        d[i][j] = std::min({diag, d[i + 1][j] + 1, d[i][j + 1] + 1});
      }
    }
  }
  return d;
}

}  // namespace punct_detail

// Unit-cost edit distance between word sequences.
inline std::size_t edit_distance(std::span<const std::string> ref,
                                 std::span<const std::string> hyp) {
  return punct_detail::suffix_costs(ref, hyp)[0][0];
}

// Minimum edit distance alignment. Among optimal alignments the one returned
// is the first when read left to right under the preference
// match > substitute > delete > insert.
inline std::vector<AlignOp> align_words(std::span<const std::string> ref,
                                        std::span<const std::string> hyp) {
  const auto d = punct_detail::suffix_costs(ref, hyp);
  const std::size_t n = ref.size(), m = hyp.size();
  std::vector<AlignOp> ops;
  ops.reserve(n + m);
  std::size_t i = 0, j = 0;
  while (i < n || j < m) {
    if (i < n && j < m) {
      const bool same = ref[i] == hyp[j];
      if (d[i][j] == d[i + 1][j + 1] + (same ? 0 : 1)) {
        ops.push_back({same ? AlignKind::kMatch : AlignKind::kSubstitute, i, j});
        ++i;
        ++j;
        continue;
      }
    }
    if (i < n && d[i][j] == d[i + 1][j] + 1) {
      ops.push_back({AlignKind::kDelete, i, std::nullopt});
      ++i;
      continue;
    }
    ops.push_back({AlignKind::kInsert, std::nullopt, j});
    ++j;
  }
  return ops;
}

// Word tokens (lowercased, punctuation removed) and the punctuation class
// attached to each slot. Slot 0 is the document start; slot k+1 follows
// word k.
struct PunctView {
  std::vector<std::string> words;
  std::vector<std::optional<PunctClass>> slots;
};

inline PunctView punct_view(const TokenSeq& seq, const PunctOptions& opt = {},
                            std::vector<std::string>* diagnostics = nullptr) {
  PunctView v;
  v.slots.emplace_back();
  bool slot_taken = false;
  for (const auto& tok : seq.tokens) {
    if (!is_punct_token(tok)) {
      v.words.push_back(text::to_lower_ascii(tok));
      v.slots.emplace_back();
      slot_taken = false;
      continue;
    }
    if (slot_taken) {
      if (diagnostics != nullptr) {
        diagnostics->push_back("extra punctuation '" + tok + "' after word " +
                               std::to_string(v.words.size()) + " ignored");
      }
      continue;
    }
    slot_taken = true;
    v.slots.back() = punct_detail::classify(tok, opt);
  }
  return v;
}

inline void finalize(PunctEvalResult& r) {
  const PunctCounts t = r.micro();
  if (t.tp == 0 && t.fp == 0 && t.fn == 0) {
    r.precision = r.recall = r.f1 = 1.0;
    return;
  }
  r.precision = t.tp + t.fp == 0 ? 0.0 : static_cast<double>(t.tp) / static_cast<double>(t.tp + t.fp);
  r.recall = t.tp + t.fn == 0 ? 0.0 : static_cast<double>(t.tp) / static_cast<double>(t.tp + t.fn);
  r.f1 = r.precision + r.recall > 0.0
             ? 2.0 * r.precision * r.recall / (r.precision + r.recall)
             : 0.0;
}

namespace punct_detail {

inline void tally(PunctEvalResult& r, std::optional<PunctClass> ref, std::optional<PunctClass> hyp) {
  if (ref && hyp && *ref == *hyp) {
    ++r.counts(*ref).tp;
    return;
  }
  if (hyp) ++r.counts(*hyp).fp;
  if (ref) ++r.counts(*ref).fn;
}

// Per-class counts only; micro scores are left for finalize().
inline PunctEvalResult count_punct(const TokenSeq& reference, const TokenSeq& hypothesis,
                                   const PunctOptions& opt) {
  PunctEvalResult r;
  const PunctView ref = punct_view(reference, opt, &r.diagnostics);
  const PunctView hyp = punct_view(hypothesis, opt, &r.diagnostics);
  tally(r, ref.slots[0], hyp.slots[0]);
  for (const auto& op : align_words(ref.words, hyp.words)) {
    switch (op.kind) {
      case AlignKind::kMatch:
      case AlignKind::kSubstitute:
        tally(r, ref.slots[*op.ref_index + 1], hyp.slots[*op.hyp_index + 1]);
        break;
      case AlignKind::kInsert:
        tally(r, std::nullopt, hyp.slots[*op.hyp_index + 1]);
        break;
      case AlignKind::kDelete:
        tally(r, ref.slots[*op.ref_index + 1], std::nullopt);
        break;
    }
  }
  return r;
}

}  // namespace punct_detail

inline PunctEvalResult punct_f1(const TokenSeq& reference, const TokenSeq& hypothesis,
                                const PunctOptions& opt = {}) {
  auto r = punct_detail::count_punct(reference, hypothesis, opt);
  finalize(r);
  return r;
}

// Micro-averaged over all paired documents: counts are summed first.
inline PunctEvalResult corpus_punct_f1(const Corpus& reference, const Corpus& hypothesis,
                                       const PunctOptions& opt = {}) {
  std::unordered_map<std::string, const Sentence*> hyp_by_id;
  for (const auto& s : hypothesis.sentences) hyp_by_id.emplace(s.id, &s);
  if (reference.size() != hypothesis.size()) {
    throw InputError("unpaired documents: reference has " + std::to_string(reference.size()) +
                     ", hypothesis has " + std::to_string(hypothesis.size()));
  }
  PunctEvalResult total;
  for (const auto& ref : reference.sentences) {
    auto it = hyp_by_id.find(ref.id);
    if (it == hyp_by_id.end()) {
      throw InputError("unpaired document id '" + ref.id + "' (missing from hypothesis)");
    }
    auto part = punct_detail::count_punct(tokenize(ref), tokenize(*it->second), opt);
    for (std::size_t c = 0; c < total.per_class.size(); ++c) total.per_class[c] += part.per_class[c];
    for (auto& d : part.diagnostics) total.diagnostics.push_back(ref.id + ": " + d);
  }
  finalize(total);
  return total;
}

}  // namespace trscore

#endif  // TRSCORE_PUNCT_HPP_
