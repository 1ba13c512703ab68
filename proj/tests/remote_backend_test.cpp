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

#include <cmath>
#include <cstdlib>
#include <numeric>

#include <gtest/gtest.h>
#include <json.hpp>

#include "support/fake_completion_server.hpp"
#include "trscore/engine.hpp"
#include "trscore/remote_backend.hpp"

namespace trscore {
namespace {

TEST(MapSubtokens, SumsPiecesInsideAWord) {
  const TokenSeq seq{{"to", "ICASSP", "."}};
  // prompt "to ICASSP."
  std::vector<SubToken> pieces{{"to", std::nullopt, 0}, {" IC", -1.0, 2},
                               {"AS", -2.0, 5},         {"SP", -0.5, 7},
                               {".", -0.25, 9}};
  const auto out = map_subtokens(seq, pieces);
  ASSERT_EQ(out.size(), 3u);
  EXPECT_FALSE(out[0].logprob.has_value());
  EXPECT_DOUBLE_EQ(*out[1].logprob, -3.5);
  EXPECT_DOUBLE_EQ(*out[2].logprob, -0.25);
}

TEST(MapSubtokens, WhitespacePieceAttachesToNextWord) {
  const TokenSeq seq{{"a", "b"}};
  std::vector<SubToken> pieces{{"a", -1.0, 0}, {" ", -0.5, 1}, {"b", -2.0, 2}};
  const auto out = map_subtokens(seq, pieces);
  EXPECT_DOUBLE_EQ(*out[0].logprob, -1.0);
  EXPECT_DOUBLE_EQ(*out[1].logprob, -2.5);
}

TEST(MapSubtokens, CodePointOffsets) {
  const TokenSeq seq{{"caf\xC3\xA9", "ok"}};
  // "café ok": é is one code point, so " ok" starts at code point 4.
  std::vector<SubToken> pieces{{"caf\xC3\xA9", -1.0, 0}, {" ok", -2.0, 4}};
  const auto out = map_subtokens(seq, pieces);
  EXPECT_DOUBLE_EQ(*out[0].logprob, -1.0);
  EXPECT_DOUBLE_EQ(*out[1].logprob, -2.0);
}

TEST(MapSubtokens, CrossingPieceIsMismatch) {
  const TokenSeq seq{{"paper", "."}};
  std::vector<SubToken> pieces{{"paper.", -1.0, 0}};
  EXPECT_THROW(map_subtokens(seq, pieces), BackendError);
}

TEST(MapSubtokens, UncoveredWordIsMismatch) {
  const TokenSeq seq{{"a", "b"}};
  std::vector<SubToken> pieces{{"a", -1.0, 0}};
  // "a b": the single piece spans "a b" because it runs to the end.
  EXPECT_THROW(map_subtokens(seq, pieces), BackendError);
}

TEST(MapSubtokens, PreservesTotal) {
  const std::string sentence = "I am going to submit this paper to ICASSP, quickly.";
  const TokenSeq seq = tokenize(sentence);
  const auto layout = layout_prompt(seq);
  ASSERT_EQ(layout.prompt, sentence);
  const auto echo = testing::gpt_like_pieces(layout.prompt);
  std::vector<SubToken> pieces;
  double total = 0.0;
  for (std::size_t i = 0; i < echo.size(); ++i) {
    const double lp = -0.1 * static_cast<double>(i + 1);
    total += lp;
    pieces.push_back({echo[i].text, lp, echo[i].offset});
  }
  const auto out = map_subtokens(seq, pieces);
  ASSERT_EQ(out.size(), seq.size());
  double mapped = 0.0;
  for (const auto& t : out) mapped += *t.logprob;
  EXPECT_NEAR(mapped, total, 1e-12);
}

TEST(CompletionResponse, ParsesAndRejects) {
  const auto ok = parse_completion_response(
      R"({"choices":[{"logprobs":{"tokens":["a"," b"],"token_logprobs":[null,-1.5],"text_offset":[0,1]}}]})");
  ASSERT_EQ(ok.size(), 2u);
  EXPECT_FALSE(ok[0].logprob.has_value());
  EXPECT_EQ(ok[1].offset, 1u);
  EXPECT_THROW(parse_completion_response("{"), BackendError);
  EXPECT_THROW(parse_completion_response(R"({"choices":[]})"), BackendError);
  EXPECT_THROW(parse_completion_response(
                   R"({"choices":[{"logprobs":{"tokens":["a"],"token_logprobs":[],"text_offset":[0]}}]})"),
               BackendError);
}

TEST(CompletionRequest, WireFields) {
  const auto req = completion_request("gpt-x", "Hello there.", 0);
  EXPECT_EQ(req["model"], "gpt-x");
  EXPECT_EQ(req["prompt"], "Hello there.");
  EXPECT_EQ(req["max_tokens"], 0);
  EXPECT_EQ(req["echo"], true);
  EXPECT_EQ(req["logprobs"], 0);
}

class RemoteBackendTest : public ::testing::Test {
 protected:
  BackendConfig config() const {
    BackendConfig c;
    c.kind = BackendKind::kRemote;
    c.endpoint = server.endpoint();
    c.model_name = "fake-model";
    c.token_env = "TRSCORE_TEST_TOKEN";
    c.max_parallel = 4;
    c.timeout = std::chrono::milliseconds(5000);
    return c;
  }

  testing::FakeCompletionServer server;
};

TEST_F(RemoteBackendTest, ScoresThroughTheWire) {
  ::setenv("TRSCORE_TEST_TOKEN", "sekrit", 1);
  RemoteBackend backend(config());
  const TokenSeq seq = tokenize("I am going to submit this paper.");
  const auto out = backend.score_tokens(seq);
  ASSERT_EQ(out.tokens.size(), seq.size());
  EXPECT_FALSE(out.tokens[0].logprob.has_value());
  EXPECT_FALSE(out.end_logprob.has_value());

  // Expected: each word token sums the pieces the server made for it.
  const auto pieces = testing::gpt_like_pieces("I am going to submit this paper.");
  double expected_total = 0.0;
  for (std::size_t i = 1; i < pieces.size(); ++i) {
    expected_total += testing::FakeCompletionServer::piece_logprob(i);
  }
  double total = 0.0;
  for (const auto& t : out.tokens) total += t.logprob.value_or(0.0);
  EXPECT_NEAR(total, expected_total, 1e-12);

  const auto bodies = server.bodies();
  ASSERT_EQ(bodies.size(), 1u);
  const auto req = nlohmann::json::parse(bodies[0]);
  EXPECT_EQ(req["prompt"], "I am going to submit this paper.");
  EXPECT_EQ(req["max_tokens"], 0);
  EXPECT_EQ(req["echo"], true);
  EXPECT_EQ(server.auth_headers()[0], "Bearer sekrit");
  ::unsetenv("TRSCORE_TEST_TOKEN");
}

TEST_F(RemoteBackendTest, FirstTokenDroppedInSentenceScore) {
  RemoteBackend backend(config());
  const Sentence s{"x", "Hello world again.", 1};
  const auto score = score_sentence(backend, s);
  EXPECT_EQ(score.token_count, 3u);  // "world", "again", "."
  EXPECT_EQ(backend.first_token_policy(), FirstTokenPolicy::kDropped);
}

TEST_F(RemoteBackendTest, IdenticalResponsesGiveIdenticalOutputs) {
  RemoteBackend backend(config());
  const TokenSeq seq = tokenize("Submit this paper to ICASSP at 7 AM.");
  const auto a = backend.score_tokens(seq);
  const auto b = backend.score_tokens(seq);
  for (std::size_t i = 0; i < seq.size(); ++i) EXPECT_EQ(a.tokens[i].logprob, b.tokens[i].logprob);
}

TEST_F(RemoteBackendTest, ErrorStatuses) {
  RemoteBackend backend(config());
  const TokenSeq seq = tokenize("one two three.");
  server.set_behavior(testing::FakeCompletionServer::Behavior::kServerError);
  EXPECT_THROW(backend.score_tokens(seq), BackendError);
  server.set_behavior(testing::FakeCompletionServer::Behavior::kMalformed);
  EXPECT_THROW(backend.score_tokens(seq), BackendError);
  server.set_behavior(testing::FakeCompletionServer::Behavior::kWordCrossing);
  EXPECT_THROW(backend.score_tokens(seq), BackendError);
  server.set_behavior(testing::FakeCompletionServer::Behavior::kShortArrays);
  EXPECT_THROW(backend.score_tokens(seq), BackendError);
}

TEST(RemoteBackend, TransportFailure) {
  BackendConfig c;
  c.kind = BackendKind::kRemote;
  c.endpoint = "http://127.0.0.1:1/v1/completions";
  c.model_name = "m";
  c.timeout = std::chrono::milliseconds(500);
  RemoteBackend backend(c);
  EXPECT_THROW(backend.score_tokens(tokenize("hello there")), BackendError);
}

TEST_F(RemoteBackendTest, ParallelScoringKeepsInputOrder) {
  server.set_delay_ms(20);
  auto backend = make_backend(config());
  Corpus corpus;
  for (int i = 0; i < 12; ++i) {
    std::string text;
    for (int w = 0; w <= i % 5 + 1; ++w) text += "word" + std::to_string(w) + " ";
    corpus.sentences.push_back({"s" + std::to_string(i), text + "end.", 1});
  }
  const auto scores = score_corpus(*backend, corpus);
  ASSERT_EQ(scores.size(), corpus.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    EXPECT_EQ(scores[i].sentence_id, corpus.sentences[i].id);
    EXPECT_EQ(scores[i].sentence_id, score_sentence(*backend, corpus.sentences[i]).sentence_id);
    EXPECT_EQ(scores[i].total_nll, score_sentence(*backend, corpus.sentences[i]).total_nll);
  }
  EXPECT_GE(server.max_in_flight(), 2);
  EXPECT_LE(server.max_in_flight(), 4);
}

}  // namespace
}  // namespace trscore
