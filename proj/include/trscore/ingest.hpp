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

// Corpus loading, sentence segmentation and word/punctuation tokenization.

#ifndef TRSCORE_INGEST_HPP_
#define TRSCORE_INGEST_HPP_

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "trscore/error.hpp"

namespace trscore {

struct Sentence {
  std::string id;
  std::string text;
  std::size_t source_line = 1;

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

enum class InputFormat { kPlain, kOnePerLine, kJsonl };

struct Corpus {
  std::string id;
  std::vector<Sentence> sentences;
  // How sentences were obtained, e.g. "one-per-line" keeps the system's own
  // display segments while "plain" re-segments the document.
  std::string segmentation;
  std::vector<std::string> diagnostics;

  std::size_t size() const noexcept { return sentences.size(); }
  bool empty() const noexcept { return sentences.empty(); }
};

struct TokenSeq {
  std::vector<std::string> tokens;

  std::size_t size() const noexcept { return tokens.size(); }
  bool empty() const noexcept { return tokens.empty(); }
  friend bool operator==(const TokenSeq&, const TokenSeq&) = default;
};

enum class Casing { kPreserve, kLower };

struct SegmentOptions {
  // Segments with more whitespace tokens than this are force-split.
  std::size_t max_tokens = 128;
};

inline const char* to_string(InputFormat f) {
  switch (f) {
    case InputFormat::kPlain: return "plain";
    case InputFormat::kOnePerLine: return "one-per-line";
    case InputFormat::kJsonl: return "jsonl";
  }
  return "?";
}

inline InputFormat parse_input_format(std::string_view s) {
  if (s == "plain") return InputFormat::kPlain;
  if (s == "one-per-line" || s == "lines") return InputFormat::kOnePerLine;
  if (s == "jsonl") return InputFormat::kJsonl;
  throw InputError("unknown input format '" + std::string(s) + "'");
}

namespace text {

inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

inline bool is_ascii_upper(char c) { return c >= 'A' && c <= 'Z'; }
inline bool is_ascii_lower(char c) { return c >= 'a' && c <= 'z'; }
inline bool is_ascii_alpha(char c) { return is_ascii_upper(c) || is_ascii_lower(c); }
inline bool is_ascii_digit(char c) { return c >= '0' && c <= '9'; }

inline std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (is_ascii_upper(c)) c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

// Strict UTF-8 check: rejects overlong forms, surrogates and code points
// beyond U+10FFFF.
inline bool is_valid_utf8(std::string_view s) {
  std::size_t i = 0;
  const std::size_t n = s.size();
  while (i < n) {
    const auto c = static_cast<unsigned char>(s[i]);
    if (c < 0x80) {
      ++i;
      continue;
    }
    std::size_t len = 0;
    unsigned cp = 0;
    if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + len > n) return false;
    for (std::size_t k = 1; k < len; ++k) {
      const auto cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
        (len == 4 && cp < 0x10000) || cp > 0x10FFFF ||
        (cp >= 0xD800 && cp <= 0xDFFF)) {
      return false;
    }
    i += len;
  }
  return true;
}

// Trim and collapse every whitespace run (including line breaks) to one space.
inline std::string collapse_whitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char c : s) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

// Strip a UTF-8 BOM and normalize CRLF / lone CR to LF.
inline std::string normalize_newlines(std::string_view raw) {
  if (raw.starts_with("\xEF\xBB\xBF")) raw.remove_prefix(3);
  std::string out;
  out.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] == '\r') {
      out.push_back('\n');
      if (i + 1 < raw.size() && raw[i + 1] == '\n') ++i;
    } else {
      out.push_back(raw[i]);
    }
  }
  return out;
}

inline std::vector<std::string_view> split_whitespace(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    const std::size_t start = i;
    while (i < s.size() && !is_space(s[i])) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

}  // namespace text

// Terminal punctuation that ends a sentence when followed by whitespace.
inline bool is_sentence_terminal(char c) { return c == '.' || c == '?' || c == '!'; }

// Characters detached from the end of words by the tokenizer.
inline bool is_punct_char(char c) {
  return c == '.' || c == ',' || c == '?' || c == '!' || c == ';' || c == ':';
}

inline bool is_punct_token(std::string_view tok) {
  return tok.size() == 1 && is_punct_char(tok[0]);
}

// Splits on terminal punctuation followed by whitespace or end of text and on
// line breaks. Overlong segments are cut every `max_tokens` words; each cut is
// reported through `diagnostics` when given.
inline std::vector<Sentence> segment_sentences(std::string_view input,
                                               const SegmentOptions& options = {},
                                               std::vector<std::string>* diagnostics = nullptr) {
  std::vector<Sentence> out;
  const std::size_t cap = options.max_tokens == 0 ? 1 : options.max_tokens;

  auto emit = [&](std::string_view piece, std::size_t line) {
    const auto words = text::split_whitespace(piece);
    if (words.empty()) return;
    if (words.size() <= cap) {
      out.push_back({std::to_string(out.size() + 1), text::collapse_whitespace(piece), line});
      return;
    }
    const std::size_t parts = (words.size() + cap - 1) / cap;
    if (diagnostics != nullptr) {
      diagnostics->push_back("line " + std::to_string(line) + ": segment of " +
                             std::to_string(words.size()) + " tokens force-split into " +
                             std::to_string(parts) + " parts at cap " + std::to_string(cap));
    }
    for (std::size_t p = 0; p < parts; ++p) {
      std::string joined;
      for (std::size_t w = p * cap; w < std::min(words.size(), (p + 1) * cap); ++w) {
        if (!joined.empty()) joined.push_back(' ');
        joined.append(words[w]);
      }
      out.push_back({std::to_string(out.size() + 1), std::move(joined), line});
    }
  };

  std::size_t line = 1;
  std::size_t start = 0;
  std::size_t start_line = 1;
  bool seen_content = false;
  for (std::size_t i = 0; i < input.size(); ++i) {
    const char c = input[i];
    if (!seen_content && !text::is_space(c)) {
      seen_content = true;
      start_line = line;
    }
    if (c == '\n') {
      emit(input.substr(start, i - start), start_line);
      start = i + 1;
      seen_content = false;
      ++line;
      continue;
    }
    if (is_sentence_terminal(c) &&
        (i + 1 == input.size() || text::is_space(input[i + 1]))) {
      emit(input.substr(start, i + 1 - start), start_line);
      start = i + 1;
      seen_content = false;
    }
  }
  if (start < input.size()) emit(input.substr(start), start_line);
  return out;
}

// Whitespace split, then trailing punctuation characters . , ? ! ; : are
// detached one per token. Characters inside a word (apostrophes, hyphens,
// "a.b") stay with the word.
inline TokenSeq tokenize(std::string_view sentence_text, Casing casing = Casing::kPreserve) {
  TokenSeq seq;
  for (std::string_view word : text::split_whitespace(sentence_text)) {
    std::size_t end = word.size();
    while (end > 0 && is_punct_char(word[end - 1])) --end;
    if (end > 0) {
      seq.tokens.emplace_back(casing == Casing::kLower ? text::to_lower_ascii(word.substr(0, end))
                                                       : std::string(word.substr(0, end)));
    }
    for (std::size_t i = end; i < word.size(); ++i) seq.tokens.emplace_back(1, word[i]);
  }
  return seq;
}

inline TokenSeq tokenize(const Sentence& sentence, Casing casing = Casing::kPreserve) {
  return tokenize(sentence.text, casing);
}

// Space-join, with no space before punctuation tokens.
inline std::string detokenize(const TokenSeq& seq) {
  std::string out;
  for (const auto& tok : seq.tokens) {
    if (!out.empty() && !is_punct_token(tok)) out.push_back(' ');
    out.append(tok);
  }
  return out;
}

namespace detail {

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read file '" + path.string() + "'");
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw InputError("error while reading '" + path.string() + "'");
  return data;
}

inline void check_unique_ids(const Corpus& corpus, const std::string& origin) {
  std::unordered_map<std::string, std::size_t> seen;
  for (const auto& s : corpus.sentences) {
    auto [it, inserted] = seen.emplace(s.id, s.source_line);
    if (!inserted) {
      throw InputError(origin + ": duplicate sentence id '" + s.id + "' (lines " +
                       std::to_string(it->second) + " and " + std::to_string(s.source_line) +
                       ")");
    }
  }
}

}  // namespace detail

// Parse already-read bytes. `whole_document` makes the plain format yield a
// single unit instead of re-segmenting (used for document-level metrics).
inline Corpus parse_corpus(std::string_view raw, InputFormat format, std::string corpus_id,
                           const SegmentOptions& options = {}, bool whole_document = false) {
  if (!text::is_valid_utf8(raw)) throw InputError(corpus_id + ": input is not valid UTF-8");
  const std::string data = text::normalize_newlines(raw);

  Corpus corpus;
  corpus.id = std::move(corpus_id);
  corpus.segmentation = to_string(format);

  switch (format) {
    case InputFormat::kPlain: {
      if (whole_document) {
        std::string doc = text::collapse_whitespace(data);
        if (!doc.empty()) corpus.sentences.push_back({"1", std::move(doc), 1});
        corpus.segmentation = "whole-document";
      } else {
        corpus.sentences = segment_sentences(data, options, &corpus.diagnostics);
      }
      break;
    }
    case InputFormat::kOnePerLine: {
      std::size_t line_no = 0;
      std::istringstream lines(data);
      for (std::string line; std::getline(lines, line);) {
        ++line_no;
        std::string t = text::collapse_whitespace(line);
        if (t.empty()) continue;
        corpus.sentences.push_back({std::to_string(corpus.sentences.size() + 1), std::move(t),
                                    line_no});
      }
      break;
    }
    case InputFormat::kJsonl: {
      std::size_t line_no = 0;
      std::istringstream lines(data);
      for (std::string line; std::getline(lines, line);) {
        ++line_no;
        if (text::collapse_whitespace(line).empty()) continue;
        const std::string where = corpus.id + ":" + std::to_string(line_no);
        nlohmann::json rec;
        try {
          rec = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
          throw InputError(where + ": malformed JSON record (" + e.what() + ")");
        }
        if (!rec.is_object()) throw InputError(where + ": record is not a JSON object");
        for (const char* field : {"id", "text"}) {
          if (!rec.contains(field) || !rec[field].is_string()) {
            throw InputError(where + ": record missing string field '" + field + "'");
          }
        }
        std::string t = text::collapse_whitespace(rec["text"].get<std::string>());
        if (t.empty()) throw InputError(where + ": record has empty text");
        corpus.sentences.push_back({rec["id"].get<std::string>(), std::move(t), line_no});
      }
      break;
    }
  }
  detail::check_unique_ids(corpus, corpus.id);
  return corpus;
}

inline Corpus load_corpus(const std::filesystem::path& path, InputFormat format,
                          const SegmentOptions& options = {}) {
  return parse_corpus(detail::read_file(path), format, path.stem().string(), options);
}

// Like load_corpus, but a plain file is one document rather than a list of
// sentences. Punctuation metrics pair documents by id.
inline Corpus load_documents(const std::filesystem::path& path, InputFormat format) {
  return parse_corpus(detail::read_file(path), format, path.stem().string(), {}, true);
}

}  // namespace trscore

#endif  // TRSCORE_INGEST_HPP_
