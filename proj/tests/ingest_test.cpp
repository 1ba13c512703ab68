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

#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "trscore/ingest.hpp"

namespace trscore {
namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& content) {
  auto dir = std::filesystem::temp_directory_path() / "trscore_ingest_test";
  std::filesystem::create_directories(dir);
  auto path = dir / name;
  std::ofstream(path, std::ios::binary) << content;
  return path;
}

std::vector<std::string> texts(const std::vector<Sentence>& s) {
  std::vector<std::string> out;
  for (const auto& x : s) out.push_back(x.text);
  return out;
}

TEST(Segment, SingleSentence) {
  EXPECT_EQ(texts(segment_sentences("I am here.")), std::vector<std::string>{"I am here."});
}

TEST(Segment, SplitsAfterTerminalPunctuation) {
  EXPECT_EQ(texts(segment_sentences("I am going. To submit this paper.")),
            (std::vector<std::string>{"I am going.", "To submit this paper."}));
  EXPECT_EQ(texts(segment_sentences("A b. C d?")), (std::vector<std::string>{"A b.", "C d?"}));
  EXPECT_EQ(texts(segment_sentences("Wow! Really")), (std::vector<std::string>{"Wow!", "Really"}));
}

TEST(Segment, RequiresWhitespaceAfterPeriod) {
  EXPECT_EQ(texts(segment_sentences("a.b. next")), (std::vector<std::string>{"a.b.", "next"}));
}

TEST(Segment, LineBreaksAreBoundaries) {
  auto s = segment_sentences("first part\n\nsecond part\nthird");
  EXPECT_EQ(texts(s), (std::vector<std::string>{"first part", "second part", "third"}));
  EXPECT_EQ(s[0].source_line, 1u);
  EXPECT_EQ(s[1].source_line, 3u);
  EXPECT_EQ(s[2].source_line, 4u);
  EXPECT_EQ(s[2].id, "3");
}

TEST(Segment, EmptyInput) {
  EXPECT_TRUE(segment_sentences("").empty());
  EXPECT_TRUE(segment_sentences("  \n\t ").empty());
}

TEST(Segment, ForceSplitsLongSegments) {
  std::string text;
  for (int i = 0; i < 300; ++i) text += "w" + std::to_string(i) + " ";
  std::vector<std::string> diags;
  auto s = segment_sentences(text, {}, &diags);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(text::split_whitespace(s[0].text).size(), 128u);
  EXPECT_EQ(text::split_whitespace(s[2].text).size(), 44u);
  ASSERT_EQ(diags.size(), 1u);
  EXPECT_NE(diags[0].find("force-split"), std::string::npos);

  SegmentOptions small{5};
  EXPECT_EQ(segment_sentences("a b c d e f g.", small).size(), 2u);
}

TEST(Segment, TotalityProperty) {
  std::mt19937_64 rng(5);
  const std::vector<std::string> pieces{"alpha", "beta.", "gamma?", "x!", "a.b", " ", "\n",
                                        "\t",    "  ",    "delta,", "e"};
  for (int trial = 0; trial < 500; ++trial) {
    std::string text;
    const int n = rng() % 30;
    for (int i = 0; i < n; ++i) {
      text += pieces[rng() % pieces.size()];
      if (rng() % 2) text += ' ';
    }
    std::string joined;
    for (const auto& s : segment_sentences(text)) {
      EXPECT_EQ(s.text.find('\n'), std::string::npos);
      EXPECT_FALSE(s.text.empty());
      if (!joined.empty()) joined += ' ';
      joined += s.text;
    }
    EXPECT_EQ(joined, text::collapse_whitespace(text)) << "input: " << text;
  }
}

TEST(Tokenize, Examples) {
  EXPECT_EQ(tokenize("I am here.").tokens, (std::vector<std::string>{"I", "am", "here", "."}));
  EXPECT_EQ(tokenize("Submit this paper to ICASSP at 7 AM.").tokens,
            (std::vector<std::string>{"Submit", "this", "paper", "to", "ICASSP", "at", "7", "AM",
                                      "."}));
  EXPECT_EQ(tokenize("don't stop, now").tokens,
            (std::vector<std::string>{"don't", "stop", ",", "now"}));
  EXPECT_EQ(tokenize("well-known a.b. ?!").tokens,
            (std::vector<std::string>{"well-known", "a.b", ".", "?", "!"}));
}

TEST(Tokenize, Lowercase) {
  EXPECT_EQ(tokenize("ICASSP Paper.", Casing::kLower).tokens,
            (std::vector<std::string>{"icassp", "paper", "."}));
}

TEST(Tokenize, RoundTripProperty) {
  std::mt19937_64 rng(9);
  const std::string letters = "abcXYZ'-09";
  const std::string punct = ".,?!;:";
  for (int trial = 0; trial < 1000; ++trial) {
    std::string text;
    const int words = 1 + rng() % 12;
    for (int w = 0; w < words; ++w) {
      if (!text.empty()) text += ' ';
      const int len = 1 + rng() % 6;
      for (int i = 0; i < len; ++i) text += letters[rng() % letters.size()];
      // interior punctuation stays inside the word
      if (rng() % 5 == 0) text += std::string(1, punct[rng() % punct.size()]) + "q";
      const int trail = rng() % 3;
      for (int i = 0; i < trail; ++i) text += punct[rng() % punct.size()];
    }
    const auto seq = tokenize(text);
    for (const auto& t : seq.tokens) EXPECT_FALSE(t.empty());
    EXPECT_EQ(detokenize(seq), text);
  }
}

TEST(Utf8, Validation) {
  EXPECT_TRUE(text::is_valid_utf8("caf\xC3\xA9 \xE2\x82\xAC \xF0\x9F\x98\x80"));
  EXPECT_FALSE(text::is_valid_utf8("\xC3"));
  EXPECT_FALSE(text::is_valid_utf8("\xC0\xAF"));          // overlong
  EXPECT_FALSE(text::is_valid_utf8("\xED\xA0\x80"));      // surrogate
  EXPECT_FALSE(text::is_valid_utf8("\xF4\x90\x80\x80"));  // > U+10FFFF
  EXPECT_FALSE(text::is_valid_utf8("\xFF"));
}

TEST(LoadCorpus, OnePerLine) {
  auto p = write_temp("lines.txt", "\xEF\xBB\xBF" "first one.\r\n\r\nsecond  one\r\nthird.\n");
  auto c = load_corpus(p, InputFormat::kOnePerLine);
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c.id, "lines");
  EXPECT_EQ(c.sentences[0].text, "first one.");
  EXPECT_EQ(c.sentences[1].text, "second one");
  EXPECT_EQ(c.sentences[1].id, "2");
  EXPECT_EQ(c.sentences[1].source_line, 3u);
  EXPECT_EQ(c.segmentation, "one-per-line");
}

TEST(LoadCorpus, PlainSegments) {
  auto p = write_temp("plain.txt", "A b. C d?");
  auto c = load_corpus(p, InputFormat::kPlain);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c.sentences[0].text, "A b.");
  EXPECT_EQ(c.sentences[1].text, "C d?");
  EXPECT_EQ(c.segmentation, "plain");

  auto doc = load_documents(p, InputFormat::kPlain);
  ASSERT_EQ(doc.size(), 1u);
  EXPECT_EQ(doc.sentences[0].text, "A b. C d?");
}

TEST(LoadCorpus, Jsonl) {
  auto p = write_temp("recs.jsonl",
                      "{\"id\":\"a\",\"text\":\"Hello there.\"}\n\n{\"id\":\"b\",\"text\":\"Two\\nlines\"}\n");
  auto c = load_corpus(p, InputFormat::kJsonl);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c.sentences[1].id, "b");
  EXPECT_EQ(c.sentences[1].text, "Two lines");
  EXPECT_EQ(c.sentences[1].source_line, 3u);
}

TEST(LoadCorpus, JsonlErrors) {
  auto dup = write_temp("dup.jsonl", "{\"id\":\"x\",\"text\":\"a\"}\n{\"id\":\"x\",\"text\":\"b\"}\n");
  try {
    load_corpus(dup, InputFormat::kJsonl);
    FAIL() << "expected duplicate id error";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("'x'"), std::string::npos);
  }
  auto missing = write_temp("missing.jsonl", "{\"id\":\"x\",\"text\":\"a\"}\n{\"id\":\"y\"}\n");
  try {
    load_corpus(missing, InputFormat::kJsonl);
    FAIL() << "expected missing field error";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find(":2"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("text"), std::string::npos);
  }
  auto bad = write_temp("bad.jsonl", "{not json\n");
  EXPECT_THROW(load_corpus(bad, InputFormat::kJsonl), InputError);
}

TEST(LoadCorpus, FileErrors) {
  EXPECT_THROW(load_corpus("/nonexistent/trscore.txt", InputFormat::kPlain), InputError);
  auto p = write_temp("latin1.txt", "caf\xE9\n");
  EXPECT_THROW(load_corpus(p, InputFormat::kOnePerLine), InputError);
}

TEST(LoadCorpus, Deterministic) {
  auto p = write_temp("det.txt", "One. Two? Three!\nFour");
  auto a = load_corpus(p, InputFormat::kPlain);
  auto b = load_corpus(p, InputFormat::kPlain);
  EXPECT_EQ(a.sentences, b.sentences);
}

}  // namespace
}  // namespace trscore
