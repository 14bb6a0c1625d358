/*
 * Copyright 2026 The vocalnmt Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "vocalnmt/error.hpp"
#include "vocalnmt/text.hpp"

namespace vocalnmt::corpus {

struct SentencePair {
  std::string source;
  std::string target;

  bool operator==(const SentencePair&) const = default;
};

struct ParallelCorpus {
  std::vector<SentencePair> pairs;

  std::size_t size() const noexcept { return pairs.size(); }
  bool operator==(const ParallelCorpus&) const = default;
};

namespace detail {

inline std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::FileMissing, path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

}  // namespace detail

/// Zips two line-aligned files into sentence pairs.
inline ParallelCorpus load_parallel(const std::filesystem::path& src_path, const std::filesystem::path& tgt_path) {
  auto src = detail::read_lines(src_path);
  auto tgt = detail::read_lines(tgt_path);
  if (src.size() != tgt.size()) {
    fail(ErrorKind::LineCountMismatch,
         "LineCountMismatch(" + std::to_string(src.size()) + "," + std::to_string(tgt.size()) + ")");
  }
  ParallelCorpus c;
  c.pairs.reserve(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) c.pairs.push_back({std::move(src[i]), std::move(tgt[i])});
  return c;
}

inline void write_parallel(const ParallelCorpus& corpus, const std::filesystem::path& src_path,
                           const std::filesystem::path& tgt_path) {
  std::ofstream src(src_path, std::ios::binary), tgt(tgt_path, std::ios::binary);
  if (!src || !tgt) fail(ErrorKind::IoError, "cannot write " + src_path.string() + " / " + tgt_path.string());
  for (const auto& p : corpus.pairs) {
    src << p.source << '\n';
    tgt << p.target << '\n';
  }
}

inline bool is_delimited_punct(char c) {
  switch (c) {
    case '.': case ',': case '!': case '?': case '\'': case '"': case ';': case ':':
      return true;
    default:
      return false;
  }
}

/// Lowercases, puts single spaces around . , ! ? ' " ; : and collapses
/// whitespace.
inline std::string preprocess(std::string_view text) {
  std::string spaced;
  spaced.reserve(text.size() * 2);
  for (char c : text) {
    if (is_delimited_punct(c)) {
      spaced += ' ';
      spaced += c;
      spaced += ' ';
    } else {
      spaced += (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
    }
  }
  return join(split_whitespace(spaced));
}

struct WordCount {
  std::string word;
  std::size_t count = 0;

  bool operator==(const WordCount&) const = default;
};

/// Frequency table preserving first-occurrence order.
class FrequencyTable {
 public:
  void add(const std::string& w) {
    auto [it, inserted] = index_.try_emplace(w, order_.size());
    if (inserted) order_.push_back({w, 0});
    ++order_[it->second].count;
  }

  std::size_t total() const {
    std::size_t t = 0;
    for (const auto& e : order_) t += e.count;
    return t;
  }
  std::size_t unique() const { return order_.size(); }

  /// Entries sorted by descending count, ties by first occurrence.
  std::vector<WordCount> ranked() const {
    auto out = order_;
    std::stable_sort(out.begin(), out.end(), [](const WordCount& a, const WordCount& b) { return a.count > b.count; });
    return out;
  }

 private:
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<WordCount> order_;
};

struct CorpusStats {
  std::size_t sentence_pairs = 0;
  std::size_t words_src = 0;
  std::size_t words_tgt = 0;
  std::size_t unique_src = 0;
  std::size_t unique_tgt = 0;
};

struct CorpusSummary {
  CorpusStats stats;
  std::vector<WordCount> top_src;
  std::vector<WordCount> top_tgt;
};

inline CorpusSummary corpus_stats(const ParallelCorpus& corpus, std::size_t top_k = 10) {
  FrequencyTable src, tgt;
  for (const auto& p : corpus.pairs) {
    for (const auto& w : split_whitespace(preprocess(p.source))) src.add(w);
    for (const auto& w : split_whitespace(preprocess(p.target))) tgt.add(w);
  }
  CorpusSummary s;
  s.stats = {corpus.size(), src.total(), tgt.total(), src.unique(), tgt.unique()};
  s.top_src = src.ranked();
  s.top_tgt = tgt.ranked();
  if (s.top_src.size() > top_k) s.top_src.resize(top_k);
  if (s.top_tgt.size() > top_k) s.top_tgt.resize(top_k);
  return s;
}

/// Keeps the pairs whose every (preprocessed) token is among the top-k most
/// frequent words of its side and whose lengths are at most max_len.
inline ParallelCorpus subset_corpus(const ParallelCorpus& corpus, std::size_t max_vocab_src,
                                    std::size_t max_vocab_tgt, std::size_t max_len) {
  std::vector<std::vector<std::string>> src_tokens, tgt_tokens;
  FrequencyTable src, tgt;
  for (const auto& p : corpus.pairs) {
    src_tokens.push_back(split_whitespace(preprocess(p.source)));
    tgt_tokens.push_back(split_whitespace(preprocess(p.target)));
    for (const auto& w : src_tokens.back()) src.add(w);
    for (const auto& w : tgt_tokens.back()) tgt.add(w);
  }
  auto top_set = [](const FrequencyTable& t, std::size_t k) {
    std::unordered_map<std::string, bool> keep;
    const auto ranked = t.ranked();
    for (std::size_t i = 0; i < ranked.size() && i < k; ++i) keep[ranked[i].word] = true;
    return keep;
  };
  const auto keep_src = top_set(src, max_vocab_src);
  const auto keep_tgt = top_set(tgt, max_vocab_tgt);
  auto covered = [](const std::vector<std::string>& toks, const std::unordered_map<std::string, bool>& keep) {
    return std::all_of(toks.begin(), toks.end(), [&](const std::string& w) { return keep.count(w) != 0; });
  };

  ParallelCorpus out;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (src_tokens[i].size() > max_len || tgt_tokens[i].size() > max_len) continue;
    if (covered(src_tokens[i], keep_src) && covered(tgt_tokens[i], keep_tgt)) out.pairs.push_back(corpus.pairs[i]);
  }
  return out;
}

}  // namespace vocalnmt::corpus
