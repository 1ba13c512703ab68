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

// Client for completion services that echo prompt tokens with their
// log-probabilities (max_tokens = 0, echo = true). The service tokenizes into
// sub-word pieces; those pieces are summed back onto our word tokens by
// character span.

#ifndef TRSCORE_REMOTE_BACKEND_HPP_
#define TRSCORE_REMOTE_BACKEND_HPP_

#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "trscore/backend.hpp"
#include "trscore/error.hpp"
#include "trscore/ingest.hpp"

namespace trscore {

// One echoed sub-token. `offset` counts Unicode code points from the start
// of the prompt, as completion services report it.
struct SubToken {
  std::string text;
  std::optional<double> logprob;
  std::size_t offset = 0;
};

struct Span {
  std::size_t begin = 0;  // byte offsets, half-open
  std::size_t end = 0;
};

// Detokenized prompt plus the byte span of every input token inside it.
struct PromptLayout {
  std::string prompt;
  std::vector<Span> spans;
};

inline PromptLayout layout_prompt(const TokenSeq& tokens) {
  PromptLayout layout;
  for (const auto& tok : tokens.tokens) {
    if (!layout.prompt.empty() && !is_punct_token(tok)) layout.prompt.push_back(' ');
    const std::size_t begin = layout.prompt.size();
    layout.prompt += tok;
    layout.spans.push_back({begin, layout.prompt.size()});
  }
  return layout;
}

namespace detail {

// Byte offset of every code point boundary, plus the end of the string.
inline std::vector<std::size_t> codepoint_byte_offsets(std::string_view s) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if ((static_cast<unsigned char>(s[i]) & 0xC0) != 0x80) out.push_back(i);
  }
  out.push_back(s.size());
  return out;
}

}  // namespace detail

// Sums sub-token log-probabilities onto the input tokens whose span contains
// them. Whitespace-only pieces attach to the next token. A sub-token crossing
// a token boundary, or a token receiving no piece, is a mapping mismatch. A
// token with any undefined piece is itself undefined.
inline std::vector<TokenLogProb> map_subtokens(const TokenSeq& tokens,
                                               const std::vector<SubToken>& pieces) {
  const PromptLayout layout = layout_prompt(tokens);
  const auto cp = detail::codepoint_byte_offsets(layout.prompt);
  const std::size_t n_cp = cp.size() - 1;

  std::vector<std::size_t> starts;
  for (const auto& p : pieces) {
    if (p.offset >= n_cp) break;  // anything past the prompt is generated text
    if (!starts.empty() && cp[p.offset] < starts.back()) {
      throw BackendError("response text offsets are not monotone");
    }
    starts.push_back(cp[p.offset]);
  }
  if (starts.empty()) throw BackendError("response echoed no prompt tokens");

  std::vector<TokenLogProb> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens.tokens) out.push_back({t, 0.0});
  std::vector<bool> covered(tokens.size(), false);

  for (std::size_t i = 0; i < starts.size(); ++i) {
    std::size_t b = starts[i];
    std::size_t e = i + 1 < starts.size() ? starts[i + 1] : layout.prompt.size();
    while (b < e && text::is_space(layout.prompt[b])) ++b;
    while (e > b && text::is_space(layout.prompt[e - 1])) --e;

    std::size_t target = tokens.size();
    if (b == e) {
      // whitespace-only or zero-width piece: next token starting at or after b
      for (std::size_t j = 0; j < layout.spans.size(); ++j) {
        if (layout.spans[j].end > b) {
          target = j;
          break;
        }
      }
      if (target == tokens.size()) target = tokens.size() - 1;
    } else {
      for (std::size_t j = 0; j < layout.spans.size(); ++j) {
        if (layout.spans[j].begin <= b && e <= layout.spans[j].end) {
          target = j;
          break;
        }
      }
      if (target == tokens.size()) {
        throw BackendError("span-mapping mismatch: sub-token '" + pieces[i].text +
                           "' crosses a word boundary in \"" + layout.prompt + "\"");
      }
    }
    covered[target] = covered[target] || b < e;
    auto& slot = out[target].logprob;
    if (!pieces[i].logprob.has_value() || !slot.has_value()) {
      slot.reset();
    } else {
      *slot += *pieces[i].logprob;
    }
  }
  for (std::size_t j = 0; j < covered.size(); ++j) {
    if (!covered[j]) {
      throw BackendError("span-mapping mismatch: no sub-token covers word '" + tokens.tokens[j] +
                         "'");
    }
  }
  return out;
}

// Request body for one sentence.
inline nlohmann::json completion_request(const std::string& model, const std::string& prompt,
                                         int logprobs) {
  return {{"model", model}, {"prompt", prompt}, {"max_tokens", 0},
          {"echo", true},   {"logprobs", logprobs}};
}

// Extracts the parallel token / logprob / offset arrays of the first choice.
inline std::vector<SubToken> parse_completion_response(std::string_view body) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    throw BackendError(std::string("malformed response JSON: ") + e.what());
  }
  try {
    const auto& lp = doc.at("choices").at(0).at("logprobs");
    const auto& toks = lp.at("tokens");
    const auto& vals = lp.at("token_logprobs");
    const auto& offs = lp.at("text_offset");
    if (toks.size() != vals.size() || toks.size() != offs.size()) {
      throw BackendError("malformed response: logprob arrays differ in length");
    }
    std::vector<SubToken> out;
    out.reserve(toks.size());
    for (std::size_t i = 0; i < toks.size(); ++i) {
      SubToken st;
      st.text = toks[i].get<std::string>();
      if (!vals[i].is_null()) {
        const double v = vals[i].get<double>();
        if (!std::isfinite(v)) throw BackendError("malformed response: non-finite logprob");
        st.logprob = v;
      }
      const auto off = offs[i].get<long long>();
      if (off < 0) throw BackendError("malformed response: negative text offset");
      st.offset = static_cast<std::size_t>(off);
      out.push_back(std::move(st));
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw BackendError(std::string("malformed response: ") + e.what());
  }
}

class RemoteBackend final : public LikelihoodBackend {
 public:
  explicit RemoteBackend(BackendConfig config) : config_(std::move(config)) {
    config_.validate();
    const auto scheme = config_.endpoint.find("://");
    if (scheme == std::string::npos) {
      throw InputError("endpoint must be an absolute http(s) URL: " + config_.endpoint);
    }
    const auto slash = config_.endpoint.find('/', scheme + 3);
    origin_ = config_.endpoint.substr(0, slash);
    path_ = slash == std::string::npos ? "/" : config_.endpoint.substr(slash);
  }

  TokenScores score_tokens(const TokenSeq& tokens) const override {
    if (tokens.empty()) throw BackendError("cannot score an empty token sequence");
    const PromptLayout layout = layout_prompt(tokens);
    const std::string body =
        completion_request(config_.model_name, layout.prompt, config_.logprobs).dump();

    // One client per call: httplib clients are not shareable across threads.
    httplib::Client client(origin_);
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(config_.timeout);
    const auto usecs =
        std::chrono::duration_cast<std::chrono::microseconds>(config_.timeout - secs);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    client.set_write_timeout(secs.count(), usecs.count());
    if (const char* token = std::getenv(config_.token_env.c_str());
        token != nullptr && *token != '\0') {
      client.set_bearer_token_auth(token);
    }
    auto res = client.Post(path_, body, "application/json");
    if (!res) {
      throw BackendError("transport failure contacting " + config_.endpoint + ": " +
                         httplib::to_string(res.error()));
    }
    if (res->status < 200 || res->status >= 300) {
      throw BackendError("endpoint returned HTTP " + std::to_string(res->status));
    }
    TokenScores out;
    out.tokens = map_subtokens(tokens, parse_completion_response(res->body));
    // Services disagree on whether the first piece is conditioned at all, so
    // it is always left out.
    out.tokens.front().logprob.reset();
    return out;
  }

  std::string id() const override { return "remote(" + config_.model_name + ")"; }
  FirstTokenPolicy first_token_policy() const override { return FirstTokenPolicy::kDropped; }
  std::size_t max_parallel() const override { return config_.max_parallel; }

 private:
  BackendConfig config_;
  std::string origin_;
  std::string path_;
};

inline std::shared_ptr<const LikelihoodBackend> make_backend(
    const BackendConfig& config, std::shared_ptr<const NgramModel> model = nullptr) {
  config.validate();
  if (config.kind == BackendKind::kRemote) return std::make_shared<RemoteBackend>(config);
  if (!model) throw BackendError("n-gram backend requires a trained model");
  return std::make_shared<NgramBackend>(std::move(model), config.max_parallel);
}

}  // namespace trscore

#endif  // TRSCORE_REMOTE_BACKEND_HPP_
