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

// Add-k smoothed n-gram language model (orders 2 and 3). This is the local,
// deterministic likelihood backend: every probability it produces can be
// checked by hand.

#ifndef TRSCORE_NGRAM_HPP_
#define TRSCORE_NGRAM_HPP_

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "trscore/error.hpp"
#include "trscore/ingest.hpp"

namespace trscore {

inline constexpr std::string_view kBos = "<s>";
inline constexpr std::string_view kEos = "</s>";
inline constexpr std::string_view kUnk = "<unk>";

using Context = std::vector<std::string>;

class NgramModel {
 public:
  NgramModel() = default;
  NgramModel(int order, double smoothing_k) : order_(order), k_(smoothing_k) {
    if (order != 2 && order != 3) {
      throw InputError("n-gram order must be 2 or 3, got " + std::to_string(order));
    }
    if (!(smoothing_k > 0.0) || !std::isfinite(smoothing_k)) {
      throw InputError("smoothing_k must be a positive finite number");
    }
    vocab_.emplace(kEos);
  }

  int order() const noexcept { return order_; }
  double smoothing_k() const noexcept { return k_; }

  // Seen tokens plus the end marker. The unknown symbol is not stored here
  // but is counted by vocab_size().
  const std::set<std::string, std::less<>>& vocabulary() const noexcept { return vocab_; }
  std::size_t vocab_size() const noexcept { return vocab_.size() + 1; }

  const std::map<Context, std::map<std::string, std::uint64_t>>& counts() const noexcept {
    return counts_;
  }

  std::uint64_t count(const Context& ctx, std::string_view token) const {
    auto it = counts_.find(ctx);
    if (it == counts_.end()) return 0;
    auto jt = it->second.find(std::string(token));
    return jt == it->second.end() ? 0 : jt->second;
  }

  std::uint64_t context_total(const Context& ctx) const {
    auto it = totals_.find(ctx);
    return it == totals_.end() ? 0 : it->second;
  }

  bool in_vocabulary(std::string_view token) const { return vocab_.contains(token); }

  // Out-of-vocabulary tokens collapse onto the unknown symbol.
  std::string map_token(std::string_view token) const {
    return in_vocabulary(token) ? std::string(token) : std::string(kUnk);
  }

  // (count(ctx, token) + k) / (total(ctx) + k * |V|)
  double prob(const Context& ctx, std::string_view token) const {
    const std::string t = map_token(token);
    Context mapped;
    mapped.reserve(ctx.size());
    for (const auto& c : ctx) mapped.push_back(c == kBos ? c : map_token(c));
    const double num = static_cast<double>(count(mapped, t)) + k_;
    const double den = static_cast<double>(context_total(mapped)) +
                       k_ * static_cast<double>(vocab_size());
    return num / den;
  }

  void add(const Context& ctx, const std::string& token, std::uint64_t n = 1) {
    counts_[ctx][token] += n;
    totals_[ctx] += n;
    vocab_.insert(token);
  }

  // Line-oriented count file: a version line, the order and k, then one
  // "context<TAB>token<TAB>count" line per n-gram (context words separated by
  // single spaces).
  void save(std::ostream& out) const {
    out << "trscore-ngram\t1\n";
    out << "order\t" << order_ << "\n";
    std::ostringstream k;
    k.precision(17);
    k << k_;
    out << "smoothing_k\t" << k.str() << "\n";
    for (const auto& [ctx, row] : counts_) {
      std::string joined;
      for (const auto& c : ctx) {
        if (!joined.empty()) joined.push_back(' ');
        joined += c;
      }
      for (const auto& [tok, n] : row) out << joined << '\t' << tok << '\t' << n << '\n';
    }
  }

  static NgramModel load(std::istream& in, const std::string& origin = "model") {
    std::string line;
    std::size_t line_no = 0;
    auto next = [&](const char* what) {
      if (!std::getline(in, line)) throw InputError(origin + ": missing " + what);
      ++line_no;
      return split_tabs(line);
    };
    auto header = next("header");
    if (header.size() != 2 || header[0] != "trscore-ngram" || header[1] != "1") {
      throw InputError(origin + ": unsupported model file header");
    }
    auto ord = next("order line");
    auto kline = next("smoothing_k line");
    if (ord.size() != 2 || ord[0] != "order" || kline.size() != 2 || kline[0] != "smoothing_k") {
      throw InputError(origin + ": malformed model preamble");
    }
    NgramModel model;
    try {
      model = NgramModel(std::stoi(ord[1]), std::stod(kline[1]));
    } catch (const std::logic_error&) {
      throw InputError(origin + ": malformed order or smoothing_k");
    }
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      auto fields = split_tabs(line);
      const std::string where = origin + ":" + std::to_string(line_no);
      if (fields.size() != 3) throw InputError(where + ": expected 3 tab-separated fields");
      Context ctx;
      for (auto w : text::split_whitespace(fields[0])) ctx.emplace_back(w);
      if (static_cast<int>(ctx.size()) != model.order_ - 1) {
        throw InputError(where + ": context length does not match order");
      }
      std::uint64_t n = 0;
      try {
        std::size_t used = 0;
        n = std::stoull(fields[2], &used);
        if (used != fields[2].size()) throw std::invalid_argument("trailing");
      } catch (const std::logic_error&) {
        throw InputError(where + ": malformed count");
      }
      model.add(ctx, fields[1], n);
    }
    return model;
  }

  friend bool operator==(const NgramModel& a, const NgramModel& b) {
    return a.order_ == b.order_ && a.k_ == b.k_ && a.counts_ == b.counts_ &&
           a.vocab_ == b.vocab_;
  }

 private:
  static std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
      auto pos = line.find('\t', start);
      out.push_back(line.substr(start, pos - start));
      if (pos == std::string::npos) break;
      start = pos + 1;
    }
    return out;
  }

  int order_ = 2;
  double k_ = 1.0;
  std::set<std::string, std::less<>> vocab_;
  std::map<Context, std::map<std::string, std::uint64_t>> counts_;
  std::map<Context, std::uint64_t> totals_;
};

// Counts over tokenized sentences padded with order-1 begin markers and one
// end marker.
inline NgramModel train_ngram(const Corpus& corpus, int order, double smoothing_k,
                              Casing casing = Casing::kPreserve) {
  if (corpus.empty()) throw InputError("cannot train an n-gram model on an empty corpus");
  NgramModel model(order, smoothing_k);
  for (const auto& sentence : corpus.sentences) {
    std::vector<std::string> padded(static_cast<std::size_t>(order - 1), std::string(kBos));
    for (auto& tok : tokenize(sentence, casing).tokens) {
      if (tok == kBos || tok == kEos || tok == kUnk) {
        throw InputError("sentence " + sentence.id + " contains reserved marker '" + tok + "'");
      }
      padded.push_back(std::move(tok));
    }
    padded.emplace_back(kEos);
    for (std::size_t i = static_cast<std::size_t>(order - 1); i < padded.size(); ++i) {
      Context ctx(padded.begin() + static_cast<std::ptrdiff_t>(i - (order - 1)),
                  padded.begin() + static_cast<std::ptrdiff_t>(i));
      model.add(ctx, padded[i]);
    }
  }
  return model;
}

inline void save_ngram(const NgramModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write model file '" + path.string() + "'");
  model.save(out);
}

inline NgramModel load_ngram(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read model file '" + path.string() + "'");
  return NgramModel::load(in, path.string());
}

}  // namespace trscore

#endif  // TRSCORE_NGRAM_HPP_
