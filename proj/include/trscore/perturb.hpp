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

// Seeded text corruptions that degrade readability in controlled ways:
// segmentation/punctuation errors, disfluencies, casing loss and spoken-form
// numbers. Position choice uses SplitMix64 so any implementation of the same
// rules yields byte-identical output.

#ifndef TRSCORE_PERTURB_HPP_
#define TRSCORE_PERTURB_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trscore/error.hpp"
#include "trscore/ingest.hpp"

namespace trscore {

enum class PerturbKind {
  kPunctShift,
  kPunctInsert,
  kWordDuplicate,
  kFillerInsert,
  kDecapitalize,
  kItnSpellout,
};

inline constexpr std::array<PerturbKind, 6> kPerturbKinds{
    PerturbKind::kPunctShift,    PerturbKind::kPunctInsert,  PerturbKind::kWordDuplicate,
    PerturbKind::kFillerInsert,  PerturbKind::kDecapitalize, PerturbKind::kItnSpellout};

inline const char* to_string(PerturbKind k) {
  switch (k) {
    case PerturbKind::kPunctShift: return "punct_shift";
    case PerturbKind::kPunctInsert: return "punct_insert";
    case PerturbKind::kWordDuplicate: return "word_duplicate";
    case PerturbKind::kFillerInsert: return "filler_insert";
    case PerturbKind::kDecapitalize: return "decapitalize";
    case PerturbKind::kItnSpellout: return "itn_spellout";
  }
  return "?";
}

inline PerturbKind parse_perturb_kind(std::string_view s) {
  for (auto k : kPerturbKinds) {
    if (s == to_string(k)) return k;
  }
  throw InputError("unknown perturbation kind '" + std::string(s) + "'");
}

struct PerturbSpec {
  PerturbKind kind = PerturbKind::kWordDuplicate;
  double rate = 0.0;  // fraction of eligible positions, in [0, 1]
  std::uint64_t seed = 0;

  void validate() const {
    if (!(rate >= 0.0 && rate <= 1.0)) {
      throw InputError("perturbation rate must lie in [0, 1], got " + std::to_string(rate));
    }
  }
};

// SplitMix64 (Steele, Lea & Flood): state advances by the golden gamma and
// each output is the standard 64-bit finalizer of the new state.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform-ish index in [0, n); plain modulo so other implementations agree.
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }

 private:
  std::uint64_t state_;
};

inline constexpr std::array<std::string_view, 3> kFillers{"umm", "uh", "you know"};

// Spell-out table version, stamped into sweep reports.
inline constexpr int kSpelloutTableVersion = 1;

// Spoken form of a written token: integers 0-99, AM/PM, "%" and "<n>%".
inline std::optional<std::string> spell_out(std::string_view tok) {
  static constexpr std::array<std::string_view, 20> kOnes{
      "zero",    "one",     "two",       "three",    "four",     "five",    "six",
      "seven",   "eight",   "nine",      "ten",      "eleven",   "twelve",  "thirteen",
      "fourteen", "fifteen", "sixteen",  "seventeen", "eighteen", "nineteen"};
  static constexpr std::array<std::string_view, 10> kTens{
      "", "", "twenty", "thirty", "forty", "fifty", "sixty", "seventy", "eighty", "ninety"};
  if (tok == "AM") return "am";
  if (tok == "PM") return "pm";
  if (tok == "%") return "percent";
  std::string_view digits = tok;
  bool percent = false;
  if (digits.size() > 1 && digits.back() == '%') {
    digits.remove_suffix(1);
    percent = true;
  }
  if (digits.empty() || digits.size() > 2 ||
      !std::all_of(digits.begin(), digits.end(), text::is_ascii_digit) ||
      (digits.size() == 2 && digits[0] == '0')) {
    return std::nullopt;
  }
  const int n = digits.size() == 1 ? digits[0] - '0' : (digits[0] - '0') * 10 + (digits[1] - '0');
  std::string out;
  if (n < 20) {
    out = kOnes[static_cast<std::size_t>(n)];
  } else {
    out = kTens[static_cast<std::size_t>(n / 10)];
    if (n % 10 != 0) {
      out += "-";
      out += kOnes[static_cast<std::size_t>(n % 10)];
    }
  }
  if (percent) out += " percent";
  return out;
}

struct PerturbOutcome {
  Sentence sentence;
  std::size_t applied = 0;      // positions changed
  bool no_eligible = false;     // nothing in the sentence could be perturbed
};

namespace perturb_detail {

inline bool is_word(const std::string& tok) { return !is_punct_token(tok); }

inline void capitalize(std::string& w) {
  if (!w.empty() && text::is_ascii_lower(w[0])) w[0] = static_cast<char>(w[0] - 'a' + 'A');
}

// "To" -> "to", but leave "I", "ICASSP", "iPhone" alone.
inline void uncapitalize_title(std::string& w) {
  if (w.size() < 2 || !text::is_ascii_upper(w[0])) return;
  bool has_lower = false;
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (text::is_ascii_upper(w[i])) return;
    has_lower = has_lower || text::is_ascii_lower(w[i]);
  }
  if (has_lower) w[0] = static_cast<char>(w[0] - 'A' + 'a');
}

inline bool fully_uppercase(const std::string& w) {
  std::size_t letters = 0;
  for (char c : w) {
    if (text::is_ascii_lower(c)) return false;
    if (text::is_ascii_upper(c)) ++letters;
  }
  return letters >= 2;
}

// Number of positions to change for `eligible` candidates.
inline std::size_t quota(double rate, std::size_t eligible) {
  if (rate <= 0.0 || eligible == 0) return 0;
  const auto k = static_cast<std::size_t>(std::llround(rate * static_cast<double>(eligible)));
  return std::clamp<std::size_t>(k, 1, eligible);
}

// k distinct picks by partial Fisher-Yates, returned in ascending order.
inline std::vector<std::size_t> choose(std::vector<std::size_t> pool, std::size_t k,
                                       SplitMix64& rng) {
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + rng.below(pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace perturb_detail

inline PerturbOutcome perturb_sentence(const Sentence& sentence, const PerturbSpec& spec) {
  using namespace perturb_detail;
  spec.validate();
  PerturbOutcome out{sentence, 0, false};
  std::vector<std::string> toks = tokenize(sentence).tokens;

  std::vector<std::size_t> word_at;  // token index of each word
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (is_word(toks[i])) word_at.push_back(i);
  }
  auto followed_by_word = [&](std::size_t tok_index) {
    return tok_index + 1 < toks.size() && is_word(toks[tok_index + 1]);
  };

  // Eligible items are token indices, except for filler_insert and
  // punct_insert where they are word ordinals.
  std::vector<std::size_t> eligible;
  switch (spec.kind) {
    case PerturbKind::kWordDuplicate:
      if (word_at.size() >= 2) eligible = word_at;
      break;
    case PerturbKind::kFillerInsert:
      for (std::size_t w = 1; w < word_at.size(); ++w) eligible.push_back(w);
      break;
    case PerturbKind::kPunctInsert:
      for (std::size_t w = 0; w + 1 < word_at.size(); ++w) {
        if (followed_by_word(word_at[w])) eligible.push_back(w);
      }
      break;
    case PerturbKind::kPunctShift:
      for (std::size_t w = 1; w < word_at.size(); ++w) {
        const std::size_t p = word_at[w] + 1;
        if (p < toks.size() && toks[p] == "." && followed_by_word(word_at[w - 1])) {
          eligible.push_back(p);
        }
      }
      break;
    case PerturbKind::kDecapitalize:
      for (std::size_t i : word_at) {
        if (fully_uppercase(toks[i])) eligible.push_back(i);
      }
      break;
    case PerturbKind::kItnSpellout:
      for (std::size_t i : word_at) {
        if (spell_out(toks[i])) eligible.push_back(i);
      }
      break;
  }
  if (eligible.empty()) {
    out.no_eligible = true;
    return out;
  }
  const std::size_t k = quota(spec.rate, eligible.size());
  if (k == 0) return out;

  SplitMix64 rng(spec.seed);
  const auto picks = choose(eligible, k, rng);

  auto word_ordinal = [&](std::size_t tok_index) {
    return static_cast<std::size_t>(std::lower_bound(word_at.begin(), word_at.end(), tok_index) -
                                    word_at.begin());
  };
  auto insert_at = [&](std::size_t pos, std::string_view s) {
    std::vector<std::string> parts;
    for (auto w : text::split_whitespace(s)) parts.emplace_back(w);
    toks.insert(toks.begin() + static_cast<std::ptrdiff_t>(pos), parts.begin(), parts.end());
  };

  // Filler choices are drawn left to right after the positions.
  std::vector<std::string_view> fillers;
  if (spec.kind == PerturbKind::kFillerInsert) {
    for (std::size_t i = 0; i < picks.size(); ++i) fillers.push_back(kFillers[rng.below(kFillers.size())]);
  }

  // Apply right to left so earlier token indices stay valid.
  for (std::size_t r = picks.size(); r-- > 0;) {
    const std::size_t pick = picks[r];
    switch (spec.kind) {
      case PerturbKind::kWordDuplicate:
        toks.insert(toks.begin() + static_cast<std::ptrdiff_t>(pick + 1), toks[pick]);
        break;
      case PerturbKind::kFillerInsert:
        insert_at(word_at[pick], fillers[r]);
        break;
      case PerturbKind::kPunctInsert:
        capitalize(toks[word_at[pick + 1]]);
        insert_at(word_at[pick] + 1, ".");
        break;
      case PerturbKind::kPunctShift: {
        const std::size_t w = word_ordinal(pick - 1);
        const bool terminal = pick + 1 >= toks.size() || !is_word(toks[pick + 1]);
        if (!terminal) uncapitalize_title(toks[pick + 1]);
        toks.erase(toks.begin() + static_cast<std::ptrdiff_t>(pick));
        capitalize(toks[word_at[w]]);
        insert_at(word_at[w - 1] + 1, ".");
        break;
      }
      case PerturbKind::kDecapitalize:
        toks[pick] = text::to_lower_ascii(toks[pick]);
        break;
      case PerturbKind::kItnSpellout: {
        const std::string spoken = *spell_out(toks[pick]);
        toks.erase(toks.begin() + static_cast<std::ptrdiff_t>(pick));
        insert_at(pick, spoken);
        break;
      }
    }
  }
  out.applied = picks.size();
  out.sentence.text = detokenize(TokenSeq{std::move(toks)});
  return out;
}

inline constexpr char kPerturbIdMarker = '+';

inline std::string perturbed_id(const std::string& id, PerturbKind kind) {
  return id + kPerturbIdMarker + to_string(kind);
}

// Strips the suffix added by perturb_corpus.
inline std::string original_id(const std::string& id) {
  auto pos = id.rfind(kPerturbIdMarker);
  if (pos == std::string::npos) return id;
  const std::string_view suffix = std::string_view(id).substr(pos + 1);
  for (auto k : kPerturbKinds) {
    if (suffix == to_string(k)) return id.substr(0, pos);
  }
  return id;
}

struct PerturbedCorpus {
  Corpus corpus;
  std::size_t modified = 0;
  std::size_t no_eligible = 0;
};

// Sentence i is perturbed with seed spec.seed + i.
inline PerturbedCorpus perturb_corpus(const Corpus& corpus, const PerturbSpec& spec) {
  spec.validate();
  PerturbedCorpus out;
  out.corpus.id = corpus.id + kPerturbIdMarker + to_string(spec.kind);
  out.corpus.segmentation = corpus.segmentation;
  out.corpus.sentences.reserve(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    PerturbSpec s = spec;
    s.seed = spec.seed + static_cast<std::uint64_t>(i);
    auto o = perturb_sentence(corpus.sentences[i], s);
    if (o.applied > 0) ++out.modified;
    if (o.no_eligible) ++out.no_eligible;
    o.sentence.id = perturbed_id(o.sentence.id, spec.kind);
    out.corpus.sentences.push_back(std::move(o.sentence));
  }
  return out;
}

}  // namespace trscore

#endif  // TRSCORE_PERTURB_HPP_
