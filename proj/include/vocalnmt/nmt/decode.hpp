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
#include <span>
#include <string>
#include <vector>

#include "vocalnmt/corpus/vocabulary.hpp"
#include "vocalnmt/nmt/model.hpp"
#include "vocalnmt/text.hpp"

namespace vocalnmt::nmt {

/// Index of the largest value; ties go to the smaller index.
template <typename T>
TokenId argmax(std::span<const T> row) {
  std::size_t best = 0;
  for (std::size_t j = 1; j < row.size(); ++j) {
    if (row[j] > row[best]) best = j;
  }
  return static_cast<TokenId>(best);
}

/// Argmax id per position of a [... x V] probability tensor.
template <typename T>
std::vector<TokenId> argmax_rows(const Tensor<T>& probs) {
  const std::size_t v = probs.shape.back();
  std::vector<TokenId> ids(probs.size() / v);
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = argmax(std::span<const T>(probs.data.data() + i * v, v));
  return ids;
}

/// Predicted target ids for every row of a padded source matrix, processed
/// in chunks of `chunk` rows.
template <typename T>
corpus::IdMatrix predict(const Model<T>& model, const corpus::IdMatrix& source, std::size_t chunk = 1024) {
  const std::size_t t = model.spec().seq_len;
  if (source.cols != t) {
    fail(ErrorKind::ShapeMismatch, "source width " + std::to_string(source.cols) + " != seq_len " + std::to_string(t));
  }
  corpus::IdMatrix out{source.rows, t, {}};
  out.data.reserve(source.rows * t);
  for (std::size_t start = 0; start < source.rows; start += chunk) {
    const std::size_t b = std::min(chunk, source.rows - start);
    const auto fp = model.forward(std::span<const TokenId>(source.data.data() + start * t, b * t), b);
    const auto ids = argmax_rows(fp.probs);
    out.data.insert(out.data.end(), ids.begin(), ids.end());
  }
  return out;
}

template <typename T>
std::vector<TokenId> predict(const Model<T>& model, std::span<const TokenId> source_ids) {
  const std::size_t t = model.spec().seq_len;
  if (source_ids.size() != t) {
    fail(ErrorKind::ShapeMismatch, std::to_string(source_ids.size()) + " source ids, expected " + std::to_string(t));
  }
  return argmax_rows(model.forward(source_ids, 1).probs);
}

enum class TextMode { clean, verbose };

/// Words for ids joined by single spaces. Clean mode drops pad positions;
/// verbose mode renders them as <PAD>.
inline std::string logits_to_text(std::span<const TokenId> ids, const corpus::Vocabulary& vocab,
                                  TextMode mode = TextMode::clean) {
  std::vector<std::string> words;
  for (auto id : ids) {
    if (id == corpus::kPadId && mode == TextMode::clean) continue;
    words.push_back(vocab.word_of(id));
  }
  return join(words);
}

/// Same, starting from a [T x V] probability (or logit) matrix.
template <typename T>
std::string logits_to_text(const Tensor<T>& probs, const corpus::Vocabulary& vocab, TextMode mode = TextMode::clean) {
  const auto ids = argmax_rows(probs);
  return logits_to_text(std::span<const TokenId>(ids), vocab, mode);
}

/// Fraction of equal positions. Masked counts only positions whose target
/// is not pad; with no such position the result is 1.
inline double accuracy(std::span<const TokenId> pred, std::span<const TokenId> target, bool masked) {
  if (pred.size() != target.size()) {
    fail(ErrorKind::ShapeMismatch, std::to_string(pred.size()) + " predictions vs " + std::to_string(target.size()) + " targets");
  }
  std::size_t hit = 0, total = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (masked && target[i] == corpus::kPadId) continue;
    ++total;
    hit += pred[i] == target[i];
  }
  return total == 0 ? 1.0 : static_cast<double>(hit) / static_cast<double>(total);
}

inline double accuracy(const corpus::IdMatrix& pred, const corpus::IdMatrix& target, bool masked) {
  if (pred.rows != target.rows || pred.cols != target.cols) {
    fail(ErrorKind::ShapeMismatch, "prediction and target matrices differ in shape");
  }
  return accuracy(std::span<const TokenId>(pred.data), std::span<const TokenId>(target.data), masked);
}

}  // namespace vocalnmt::nmt
