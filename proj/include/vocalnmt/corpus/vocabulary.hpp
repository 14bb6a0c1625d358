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
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "vocalnmt/corpus/parallel.hpp"
#include "vocalnmt/error.hpp"
#include "vocalnmt/rng.hpp"
#include "vocalnmt/text.hpp"

namespace vocalnmt::corpus {

using TokenId = std::int32_t;

inline constexpr TokenId kPadId = 0;
inline constexpr std::string_view kUnkToken = "<UNK>";
inline constexpr std::string_view kPadToken = "<PAD>";

/// Word <-> id map. Ids 1..V are words in frequency order, 0 is padding and
/// V+1 is the unknown-word token.
class Vocabulary {
 public:
  Vocabulary() : id_to_word_{std::string()} {}

  /// Builds from words already in id order (the first gets id 1).
  static Vocabulary from_ranked(const std::vector<WordCount>& ranked) {
    Vocabulary v;
    for (const auto& wc : ranked) {
      v.word_to_id_.emplace(wc.word, static_cast<TokenId>(v.id_to_word_.size()));
      v.id_to_word_.push_back(wc.word);
      v.freq_.push_back(wc.count);
    }
    return v;
  }

  /// Number of real words V (excludes pad and unk).
  std::size_t word_count() const noexcept { return id_to_word_.size() - 1; }
  /// Exclusive upper bound on ids: V + 2.
  std::size_t id_bound() const noexcept { return word_count() + 2; }
  TokenId unk_id() const noexcept { return static_cast<TokenId>(word_count() + 1); }

  std::optional<TokenId> find(const std::string& word) const {
    auto it = word_to_id_.find(word);
    if (it == word_to_id_.end()) return std::nullopt;
    return it->second;
  }

  TokenId id_of(const std::string& word) const { return find(word).value_or(unk_id()); }

  /// Word for an id; pad renders as "<PAD>", unk and unseen ids as "<UNK>".
  std::string word_of(TokenId id) const {
    if (id == kPadId) return std::string(kPadToken);
    if (id > 0 && static_cast<std::size_t>(id) <= word_count()) return id_to_word_[static_cast<std::size_t>(id)];
    return std::string(kUnkToken);
  }

  std::size_t frequency(TokenId id) const {
    return id > 0 && static_cast<std::size_t>(id) <= word_count() ? freq_[static_cast<std::size_t>(id) - 1] : 0;
  }

  /// Ordered (word, id) listing including the reserved unk entry.
  std::vector<std::pair<std::string, TokenId>> entries() const {
    std::vector<std::pair<std::string, TokenId>> out;
    for (std::size_t i = 1; i < id_to_word_.size(); ++i) out.emplace_back(id_to_word_[i], static_cast<TokenId>(i));
    out.emplace_back(std::string(kUnkToken), unk_id());
    return out;
  }

  bool operator==(const Vocabulary& o) const { return id_to_word_ == o.id_to_word_ && freq_ == o.freq_; }

 private:
  std::unordered_map<std::string, TokenId> word_to_id_;
  std::vector<std::string> id_to_word_;  // index 0 is the pad slot
  std::vector<std::size_t> freq_;
};

/// Lowercases and blanks out the characters a word tokenizer discards
/// (ASCII punctuation except the apostrophe, plus tab/newline).
inline std::vector<std::string> word_tokens(std::string_view sentence) {
  static constexpr std::string_view kFilters = "!\"#$%&()*+,-./:;<=>?@[\\]^_`{|}~\t\n";
  std::string s(sentence);
  for (auto& c : s) {
    if (kFilters.find(c) != std::string_view::npos) c = ' ';
    else if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return split_whitespace(s);
}

/// Ids 1..V by descending frequency, ties by first occurrence in reading
/// order.
inline Vocabulary fit_tokenizer(std::span<const std::string> sentences) {
  FrequencyTable table;
  for (const auto& s : sentences) {
    for (const auto& w : word_tokens(s)) table.add(w);
  }
  if (table.unique() == 0) fail(ErrorKind::EmptyInput, "no words to fit a vocabulary on");
  return Vocabulary::from_ranked(table.ranked());
}

inline std::vector<TokenId> tokenize(std::string_view sentence, const Vocabulary& vocab) {
  std::vector<TokenId> ids;
  for (const auto& w : word_tokens(sentence)) ids.push_back(vocab.id_of(w));
  return ids;
}

inline std::vector<std::vector<TokenId>> tokenize(std::span<const std::string> sentences, const Vocabulary& vocab) {
  std::vector<std::vector<TokenId>> out;
  out.reserve(sentences.size());
  for (const auto& s : sentences) out.push_back(tokenize(s, vocab));
  return out;
}

/// Words for ids, skipping pad and unk.
inline std::string detokenize(std::span<const TokenId> ids, const Vocabulary& vocab) {
  std::vector<std::string> words;
  for (auto id : ids) {
    if (id == kPadId || id == vocab.unk_id()) continue;
    words.push_back(vocab.word_of(id));
  }
  return join(words);
}

/// Row-major [rows x cols] matrix of token ids.
struct IdMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<TokenId> data;

  std::span<const TokenId> row(std::size_t r) const { return {data.data() + r * cols, cols}; }
  std::span<TokenId> row(std::size_t r) { return {data.data() + r * cols, cols}; }
  TokenId at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  bool operator==(const IdMatrix&) const = default;
};

enum class PadMode { post };

/// Appends pad ids after each sequence up to `length`. Longer sequences are
/// an error unless `truncate` is set, in which case they are cut at the end.
inline IdMatrix pad(std::span<const std::vector<TokenId>> sequences, std::size_t length, bool truncate = false,
                    PadMode = PadMode::post) {
  IdMatrix m;
  m.rows = sequences.size();
  m.cols = length;
  m.data.assign(m.rows * length, kPadId);
  for (std::size_t r = 0; r < sequences.size(); ++r) {
    const auto& seq = sequences[r];
    if (seq.size() > length && !truncate) {
      fail(ErrorKind::SequenceTooLong,
           "sequence " + std::to_string(r) + " has " + std::to_string(seq.size()) + " tokens > " + std::to_string(length));
    }
    std::copy_n(seq.begin(), std::min(seq.size(), length), m.data.begin() + static_cast<std::ptrdiff_t>(r * length));
  }
  return m;
}

inline IdMatrix pad(const std::vector<TokenId>& sequence, std::size_t length, bool truncate = false) {
  return pad(std::span<const std::vector<TokenId>>(&sequence, 1), length, truncate);
}

struct TokenizedDataset {
  IdMatrix source_ids;
  IdMatrix target_ids;
  std::size_t pad_length = 0;
  Vocabulary source_vocab;
  Vocabulary target_vocab;

  std::size_t size() const noexcept { return source_ids.rows; }
};

struct DatasetOptions {
  std::optional<std::size_t> pad_length;  // defaults to the longest sequence on either side
  bool truncate = false;
};

/// Preprocesses both sides, fits one vocabulary per side and pads to a
/// common length.
inline TokenizedDataset make_dataset(const ParallelCorpus& corpus, const DatasetOptions& opts = {}) {
  std::vector<std::string> src, tgt;
  src.reserve(corpus.size());
  tgt.reserve(corpus.size());
  for (const auto& p : corpus.pairs) {
    src.push_back(preprocess(p.source));
    tgt.push_back(preprocess(p.target));
  }
  TokenizedDataset d;
  d.source_vocab = fit_tokenizer(src);
  d.target_vocab = fit_tokenizer(tgt);
  const auto src_seq = tokenize(src, d.source_vocab);
  const auto tgt_seq = tokenize(tgt, d.target_vocab);
  std::size_t longest = 0;
  for (const auto& s : src_seq) longest = std::max(longest, s.size());
  for (const auto& s : tgt_seq) longest = std::max(longest, s.size());
  d.pad_length = opts.pad_length.value_or(longest);
  d.source_ids = pad(src_seq, d.pad_length, opts.truncate);
  d.target_ids = pad(tgt_seq, d.pad_length, opts.truncate);
  return d;
}

/// Tokenizes a new corpus against existing vocabularies (e.g. a held-out set).
inline TokenizedDataset encode_with(const ParallelCorpus& corpus, const Vocabulary& source_vocab,
                                    const Vocabulary& target_vocab, std::size_t pad_length, bool truncate = true) {
  std::vector<std::string> src, tgt;
  for (const auto& p : corpus.pairs) {
    src.push_back(preprocess(p.source));
    tgt.push_back(preprocess(p.target));
  }
  TokenizedDataset d;
  d.source_vocab = source_vocab;
  d.target_vocab = target_vocab;
  d.pad_length = pad_length;
  d.source_ids = pad(tokenize(src, source_vocab), pad_length, truncate);
  d.target_ids = pad(tokenize(tgt, target_vocab), pad_length, truncate);
  return d;
}

inline TokenizedDataset select_rows(const TokenizedDataset& d, std::span<const std::size_t> rows) {
  TokenizedDataset out;
  out.pad_length = d.pad_length;
  out.source_vocab = d.source_vocab;
  out.target_vocab = d.target_vocab;
  for (auto* m : {&out.source_ids, &out.target_ids}) {
    m->rows = rows.size();
    m->cols = d.pad_length;
    m->data.reserve(rows.size() * d.pad_length);
  }
  for (auto r : rows) {
    const auto s = d.source_ids.row(r);
    const auto t = d.target_ids.row(r);
    out.source_ids.data.insert(out.source_ids.data.end(), s.begin(), s.end());
    out.target_ids.data.insert(out.target_ids.data.end(), t.begin(), t.end());
  }
  return out;
}

struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> validation;
};

/// Seeded shuffle, then the first floor(n * ratio) indices train.
inline SplitIndices split_indices(std::size_t n, double ratio, std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio < 1.0)) fail(ErrorKind::InvalidRatio, "ratio must lie strictly between 0 and 1");
  Rng rng(seed);
  auto perm = rng.permutation(n);
  const auto n_train = static_cast<std::size_t>(std::floor(static_cast<double>(n) * ratio));
  SplitIndices s;
  s.train.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n_train));
  s.validation.assign(perm.begin() + static_cast<std::ptrdiff_t>(n_train), perm.end());
  return s;
}

struct DatasetSplit {
  TokenizedDataset train;
  TokenizedDataset validation;
};

inline DatasetSplit split(const TokenizedDataset& dataset, double ratio, std::uint64_t seed) {
  const auto idx = split_indices(dataset.size(), ratio, seed);
  return {select_rows(dataset, idx.train), select_rows(dataset, idx.validation)};
}

inline nlohmann::ordered_json to_json(const Vocabulary& v) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& [word, id] : v.entries()) {
    arr.push_back({{"word", word}, {"id", id}, {"frequency", v.frequency(id)}});
  }
  return arr;
}

inline Vocabulary vocabulary_from_json(const nlohmann::json& j) {
  std::vector<WordCount> ranked;
  for (const auto& e : j) {
    const auto word = e.at("word").get<std::string>();
    if (word == kUnkToken) continue;
    const auto id = e.at("id").get<std::size_t>();
    if (id != ranked.size() + 1) fail(ErrorKind::InvalidConfig, "vocabulary ids must be dense and ordered");
    ranked.push_back({word, e.at("frequency").get<std::size_t>()});
  }
  return Vocabulary::from_ranked(ranked);
}

inline void write_ids_csv(std::ostream& out, const IdMatrix& m) {
  for (std::size_t r = 0; r < m.rows; ++r) {
    for (std::size_t c = 0; c < m.cols; ++c) out << (c ? "," : "") << m.at(r, c);
    out << '\n';
  }
}

}  // namespace vocalnmt::corpus
