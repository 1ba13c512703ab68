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

#include <random>

#include <gtest/gtest.h>

#include "support/synthetic.hpp"
#include "trscore/perturb.hpp"

namespace trscore {
namespace {

const Sentence kSubmit{"1", "I am going to submit this paper.", 1};
const Sentence kIcassp{"1", "I am going to submit this paper to ICASSP.", 1};
const Sentence kSeven{"1", "Submit this paper to ICASSP at 7 AM.", 1};

std::string apply(const Sentence& s, PerturbKind kind, double rate, std::uint64_t seed) {
  return perturb_sentence(s, {kind, rate, seed}).sentence.text;
}

// Returns true when `sub` is a subsequence of `seq`.
bool subsequence(const std::vector<std::string>& sub, const std::vector<std::string>& seq) {
  std::size_t i = 0;
  for (const auto& t : seq) {
    if (i < sub.size() && sub[i] == t) ++i;
  }
  return i == sub.size();
}

TEST(SplitMix64, ReferenceSequence) {
  SplitMix64 rng(0);
  EXPECT_EQ(rng.next(), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(rng.next(), 0x6E789E6AA1B965F4ULL);
  EXPECT_EQ(rng.next(), 0x06C45D188009454FULL);
}

TEST(SpellOut, Table) {
  EXPECT_EQ(spell_out("7"), "seven");
  EXPECT_EQ(spell_out("0"), "zero");
  EXPECT_EQ(spell_out("13"), "thirteen");
  EXPECT_EQ(spell_out("40"), "forty");
  EXPECT_EQ(spell_out("99"), "ninety-nine");
  EXPECT_EQ(spell_out("AM"), "am");
  EXPECT_EQ(spell_out("PM"), "pm");
  EXPECT_EQ(spell_out("%"), "percent");
  EXPECT_EQ(spell_out("5%"), "five percent");
  EXPECT_FALSE(spell_out("100"));
  EXPECT_FALSE(spell_out("07"));
  EXPECT_FALSE(spell_out("am"));
  EXPECT_FALSE(spell_out("7a"));
}

TEST(PerturbSentence, QualitativeRows) {
  EXPECT_EQ(apply(kSubmit, PerturbKind::kPunctInsert, 0.1, 3), "I am going to. Submit this paper.");
  EXPECT_EQ(apply(kSubmit, PerturbKind::kPunctInsert, 0.1, 5), "I am going. To submit this paper.");
  EXPECT_EQ(apply(kSubmit, PerturbKind::kFillerInsert, 0.1, 3),
            "I am going to umm submit this paper.");
  EXPECT_EQ(apply(kIcassp, PerturbKind::kDecapitalize, 1.0, 0),
            "I am going to submit this paper to icassp.");
  EXPECT_EQ(apply(kSeven, PerturbKind::kItnSpellout, 1.0, 0),
            "Submit this paper to ICASSP at seven am.");
}

TEST(PerturbSentence, WordDuplicateAndShift) {
  const auto dup = perturb_sentence(kSubmit, {PerturbKind::kWordDuplicate, 0.01, 0});
  EXPECT_EQ(dup.applied, 1u);
  EXPECT_EQ(tokenize(dup.sentence).tokens.size(), tokenize(kSubmit).tokens.size() + 1);

  EXPECT_EQ(apply({"1", "I am going. To submit it.", 1}, PerturbKind::kPunctShift, 1.0, 0),
            "I am. Going to submit. It");
  EXPECT_EQ(apply(kSubmit, PerturbKind::kPunctShift, 1.0, 0), "I am going to submit this. Paper");
  const auto none = perturb_sentence({"1", "Yes.", 1}, {PerturbKind::kPunctShift, 1.0, 0});
  EXPECT_TRUE(none.no_eligible);
  EXPECT_EQ(none.sentence.text, "Yes.");
}

TEST(PerturbSentence, RateZeroIsIdentity) {
  synthetic::Generator gen(8);
  for (int i = 0; i < 100; ++i) {
    const Sentence s{"x", gen.sentence(), 1};
    for (auto kind : kPerturbKinds) {
      const auto o = perturb_sentence(s, {kind, 0.0, static_cast<std::uint64_t>(i)});
      EXPECT_EQ(o.sentence.text, s.text);
      EXPECT_EQ(o.applied, 0u);
    }
  }
}

TEST(PerturbSentence, QuotaRule) {
  // six eligible punct_insert positions in kSubmit
  EXPECT_EQ(perturb_sentence(kSubmit, {PerturbKind::kPunctInsert, 0.01, 1}).applied, 1u);
  EXPECT_EQ(perturb_sentence(kSubmit, {PerturbKind::kPunctInsert, 0.5, 1}).applied, 3u);
  EXPECT_EQ(perturb_sentence(kSubmit, {PerturbKind::kPunctInsert, 1.0, 1}).applied, 6u);
  EXPECT_EQ(apply(kSubmit, PerturbKind::kPunctInsert, 1.0, 1), "I. Am. Going. To. Submit. This. Paper.");
  EXPECT_THROW(perturb_sentence(kSubmit, {PerturbKind::kPunctInsert, 1.5, 1}), InputError);
}

TEST(PerturbSentence, DeterministicContainedAndEligible) {
  synthetic::Generator gen(21);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    const Sentence s{"x", gen.sentence() + (i % 3 == 0 ? " Call NASA at 9 PM." : ""), 1};
    const double rate = (rng() % 101) / 100.0;
    const std::uint64_t seed = rng();
    const auto orig = tokenize(s).tokens;
    for (auto kind : kPerturbKinds) {
      const PerturbSpec spec{kind, rate, seed};
      const auto a = perturb_sentence(s, spec);
      EXPECT_EQ(a.sentence.text, perturb_sentence(s, spec).sentence.text);
      const auto out = tokenize(a.sentence).tokens;
      if (kind == PerturbKind::kWordDuplicate || kind == PerturbKind::kFillerInsert) {
        EXPECT_TRUE(subsequence(orig, out)) << s.text << " -> " << a.sentence.text;
      }
      if (kind == PerturbKind::kDecapitalize) {
        ASSERT_EQ(out.size(), orig.size());
        for (std::size_t t = 0; t < out.size(); ++t) {
          if (out[t] != orig[t]) {
            EXPECT_TRUE(perturb_detail::fully_uppercase(orig[t]));
            EXPECT_EQ(out[t], text::to_lower_ascii(orig[t]));
          }
        }
      }
      if (kind == PerturbKind::kItnSpellout) {
        std::size_t changed = 0;
        for (const auto& t : orig) changed += spell_out(t).has_value();
        EXPECT_EQ(a.applied > 0, changed > 0 && rate > 0);
        std::vector<std::string> kept;
        for (const auto& t : orig) {
          if (!spell_out(t)) kept.push_back(t);
        }
        EXPECT_TRUE(subsequence(kept, out));
      }
    }
  }
}

TEST(PerturbCorpus, SeedsAndIds) {
  Corpus c;
  for (int i = 0; i < 5; ++i) c.sentences.push_back({std::to_string(i + 1), kSubmit.text, 1});
  const auto out = perturb_corpus(c, {PerturbKind::kPunctInsert, 0.1, 3});
  EXPECT_EQ(out.corpus.sentences[0].text, "I am going to. Submit this paper.");
  EXPECT_EQ(out.corpus.sentences[2].text, "I am going. To submit this paper.");  // seed 5
  EXPECT_EQ(out.corpus.sentences[0].id, "1+punct_insert");
  EXPECT_EQ(original_id(out.corpus.sentences[0].id), "1");
  EXPECT_EQ(original_id("a+b"), "a+b");
  EXPECT_EQ(out.modified, 5u);
}

TEST(PerturbCorpus, RateZeroEqualsInputModuloIds) {
  synthetic::Generator gen(3);
  const Corpus c = gen.corpus(50);
  const auto out = perturb_corpus(c, {PerturbKind::kFillerInsert, 0.0, 9});
  ASSERT_EQ(out.corpus.size(), c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    EXPECT_EQ(out.corpus.sentences[i].text, c.sentences[i].text);
    EXPECT_EQ(original_id(out.corpus.sentences[i].id), c.sentences[i].id);
  }
  EXPECT_EQ(out.modified, 0u);
}

TEST(PerturbCorpus, DuplicateAtRateOneModifiesMultiWordSentences) {
  SplitMix64 rng(31);
  Corpus c;
  std::size_t multi = 0;
  for (int i = 0; i < 100; ++i) {
    const auto words = synthetic::random_words(rng, rng.below(5), 20);
    std::string textv;
    for (const auto& w : words) textv += (textv.empty() ? "" : " ") + w;
    if (words.empty()) textv = ".";
    if (words.size() >= 2) ++multi;
    c.sentences.push_back({std::to_string(i), textv + ".", 1});
  }
  const auto out = perturb_corpus(c, {PerturbKind::kWordDuplicate, 1.0, 0});
  EXPECT_EQ(out.modified, multi);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const bool changed = out.corpus.sentences[i].text != c.sentences[i].text;
    EXPECT_EQ(changed, tokenize(c.sentences[i]).tokens.size() >= 3);
  }
}

TEST(PerturbKinds, RoundTrip) {
  for (auto k : kPerturbKinds) EXPECT_EQ(parse_perturb_kind(to_string(k)), k);
  EXPECT_THROW(parse_perturb_kind("shuffle"), InputError);
}

}  // namespace
}  // namespace trscore
