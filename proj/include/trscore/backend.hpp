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

// Likelihood-scoring contract shared by every backend, plus the local n-gram
// implementation of it.

#ifndef TRSCORE_BACKEND_HPP_
#define TRSCORE_BACKEND_HPP_

#include <chrono>
#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trscore/error.hpp"
#include "trscore/ingest.hpp"
#include "trscore/ngram.hpp"

namespace trscore {

// Natural-log probability of one input token. Empty when the backend cannot
// condition it (typically the first token for remote services).
struct TokenLogProb {
  std::string token;
  std::optional<double> logprob;
};

struct TokenScores {
  std::vector<TokenLogProb> tokens;  // one per input token, in input order
  // Log-probability of the end-of-sentence event, when the backend models it.
  std::optional<double> end_logprob;
};

enum class BackendKind { kRemote, kNgram };

enum class FirstTokenPolicy {
  kKept,     // first token is conditioned on a begin marker and scored
  kDropped,  // first token carries no log-probability and is left out
};

inline const char* to_string(FirstTokenPolicy p) {
  return p == FirstTokenPolicy::kKept ? "kept" : "dropped";
}

inline const char* to_string(BackendKind k) {
  return k == BackendKind::kRemote ? "remote" : "ngram";
}

inline BackendKind parse_backend_kind(std::string_view s) {
  if (s == "remote") return BackendKind::kRemote;
  if (s == "ngram") return BackendKind::kNgram;
  throw InputError("unknown backend '" + std::string(s) + "'");
}

struct BackendConfig {
  BackendKind kind = BackendKind::kNgram;
  // remote
  std::string endpoint;
  std::string model_name;
  std::string token_env = "TRSCORE_API_TOKEN";
  int logprobs = 0;
  // ngram
  int order = 2;
  double smoothing_k = 1.0;
  // both
  std::size_t max_parallel = 4;
  std::chrono::milliseconds timeout{30000};

  void validate() const {
    if (max_parallel < 1) throw InputError("max_parallel must be at least 1");
    if (timeout.count() <= 0) throw InputError("timeout must be positive");
    if (kind == BackendKind::kRemote) {
      if (endpoint.empty()) throw InputError("remote backend requires an endpoint");
      if (model_name.empty()) throw InputError("remote backend requires a model name");
      if (logprobs < 0) throw InputError("logprobs must be >= 0");
    } else {
      if (order != 2 && order != 3) throw InputError("n-gram order must be 2 or 3");
      if (!(smoothing_k > 0.0)) throw InputError("smoothing_k must be positive");
    }
  }
};

// Implementations must be safe to call concurrently from up to
// max_parallel() threads.
class LikelihoodBackend {
 public:
  virtual ~LikelihoodBackend() = default;

  virtual TokenScores score_tokens(const TokenSeq& tokens) const = 0;
  virtual std::string id() const = 0;
  virtual FirstTokenPolicy first_token_policy() const = 0;
  virtual std::size_t max_parallel() const { return 1; }
  virtual Casing casing() const { return Casing::kPreserve; }
};

class NgramBackend final : public LikelihoodBackend {
 public:
  explicit NgramBackend(std::shared_ptr<const NgramModel> model, std::size_t max_parallel = 4,
                        Casing casing = Casing::kPreserve)
      : model_(std::move(model)), max_parallel_(max_parallel), casing_(casing) {
    if (!model_) throw BackendError("n-gram backend has no trained model attached");
  }

  TokenScores score_tokens(const TokenSeq& tokens) const override {
    if (tokens.empty()) throw BackendError("cannot score an empty token sequence");
    const auto ctx_len = static_cast<std::size_t>(model_->order() - 1);
    Context ctx(ctx_len, std::string(kBos));
    TokenScores out;
    out.tokens.reserve(tokens.size());
    auto step = [&](const std::string& tok) {
      const double lp = std::log(model_->prob(ctx, tok));
      ctx.erase(ctx.begin());
      ctx.push_back(model_->map_token(tok));
      return lp;
    };
    for (const auto& tok : tokens.tokens) out.tokens.push_back({tok, step(tok)});
    out.end_logprob = step(std::string(kEos));
    return out;
  }

  std::string id() const override {
    std::ostringstream os;
    os.precision(17);
    os << "ngram(order=" << model_->order() << ",k=" << model_->smoothing_k()
       << ",V=" << model_->vocab_size() << ")";
    return os.str();
  }

  FirstTokenPolicy first_token_policy() const override { return FirstTokenPolicy::kKept; }
  std::size_t max_parallel() const override { return max_parallel_; }
  Casing casing() const override { return casing_; }

  const NgramModel& model() const noexcept { return *model_; }

 private:
  std::shared_ptr<const NgramModel> model_;
  std::size_t max_parallel_;
  Casing casing_;
};

}  // namespace trscore

#endif  // TRSCORE_BACKEND_HPP_
