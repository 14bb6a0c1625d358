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
#include <cstdlib>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "vocalnmt/corpus/parallel.hpp"
#include "vocalnmt/error.hpp"
#include "vocalnmt/text.hpp"

namespace vocalnmt::evaluation {

enum class Smoothing { none, epsilon, add_one_counts };

inline std::string to_string(Smoothing s) {
  switch (s) {
    case Smoothing::none: return "none";
    case Smoothing::epsilon: return "epsilon";
    case Smoothing::add_one_counts: return "add_one_counts";
  }
  return "none";
}

inline Smoothing parse_smoothing(const std::string& s) {
  if (s == "none") return Smoothing::none;
  if (s == "epsilon") return Smoothing::epsilon;
  if (s == "add_one_counts") return Smoothing::add_one_counts;
  fail(ErrorKind::InvalidConfig, "unknown smoothing '" + s + "'");
}

struct BleuConfig {
  std::size_t max_n = 4;
  /// Empty means uniform 1/max_n.
  std::vector<double> weights;
  Smoothing smoothing = Smoothing::none;
  /// Numerator added to zero-count precisions under Smoothing::epsilon.
  double epsilon = 0.1;

  std::vector<double> resolved_weights() const {
    if (max_n == 0) fail(ErrorKind::InvalidConfig, "max_n must be at least 1");
    if (weights.empty()) return std::vector<double>(max_n, 1.0 / static_cast<double>(max_n));
    if (weights.size() != max_n) fail(ErrorKind::InvalidConfig, "need one weight per n-gram order");
    double sum = 0;
    for (double w : weights) {
      if (!(w >= 0.0)) fail(ErrorKind::InvalidConfig, "weights must be non-negative");
      sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9) fail(ErrorKind::InvalidConfig, "weights must sum to 1");
    return weights;
  }
};

struct BleuScore {
  double score = 0;
  std::vector<double> precisions;  // p_1 .. p_max_n after smoothing
  double brevity_penalty = 0;
  std::size_t hyp_len = 0;
  std::size_t ref_len = 0;
};

using Tokens = std::vector<std::string>;

/// Tokens for scoring: the corpus preprocessing, then whitespace split.
inline Tokens bleu_tokens(std::string_view text) { return split_whitespace(corpus::preprocess(text)); }

inline std::map<Tokens, std::size_t> ngram_counts(const Tokens& toks, std::size_t n) {
  std::map<Tokens, std::size_t> counts;
  if (toks.size() < n) return counts;
  for (std::size_t i = 0; i + n <= toks.size(); ++i) ++counts[Tokens(toks.begin() + static_cast<std::ptrdiff_t>(i), toks.begin() + static_cast<std::ptrdiff_t>(i + n))];
  return counts;
}

/// Reference length closest to the hypothesis length; ties pick the shorter.
inline std::size_t closest_ref_length(std::span<const Tokens> refs, std::size_t hyp_len) {
  std::size_t best = refs.front().size();
  for (const auto& r : refs) {
    const auto d = [&](std::size_t len) { return len > hyp_len ? len - hyp_len : hyp_len - len; };
    if (d(r.size()) < d(best) || (d(r.size()) == d(best) && r.size() < best)) best = r.size();
  }
  return best;
}

inline double brevity_penalty(std::size_t ref_len, std::size_t hyp_len) {
  if (hyp_len > ref_len) return 1.0;
  if (hyp_len == 0) return 0.0;
  return std::exp(1.0 - static_cast<double>(ref_len) / static_cast<double>(hyp_len));
}

/// Sentence-level BLEU with clipped n-gram precision. An unsmoothed zero
/// precision at any order makes the score 0.
inline BleuScore sentence_bleu(std::span<const Tokens> references, const Tokens& hypothesis,
                               const BleuConfig& config = {}) {
  if (references.empty()) fail(ErrorKind::EmptyReference, "no reference given");
  for (const auto& r : references) {
    if (r.empty()) fail(ErrorKind::EmptyReference, "reference has no tokens");
  }
  if (hypothesis.empty()) fail(ErrorKind::EmptyHypothesis, "hypothesis has no tokens");
  const auto weights = config.resolved_weights();

  BleuScore s;
  s.hyp_len = hypothesis.size();
  s.ref_len = closest_ref_length(references, s.hyp_len);
  s.brevity_penalty = brevity_penalty(s.ref_len, s.hyp_len);

  std::vector<std::size_t> num(config.max_n), den(config.max_n);
  for (std::size_t n = 1; n <= config.max_n; ++n) {
    const auto hyp = ngram_counts(hypothesis, n);
    std::map<Tokens, std::size_t> max_ref;
    for (const auto& r : references) {
      for (const auto& [g, c] : ngram_counts(r, n)) max_ref[g] = std::max(max_ref[g], c);
    }
    std::size_t clipped = 0, total = 0;
    for (const auto& [g, c] : hyp) {
      total += c;
      auto it = max_ref.find(g);
      if (it != max_ref.end()) clipped += std::min(c, it->second);
    }
    num[n - 1] = clipped;
    den[n - 1] = std::max<std::size_t>(total, 1);
  }

  bool any_zero = false;
  s.precisions.resize(config.max_n);
  for (std::size_t i = 0; i < config.max_n; ++i) {
    double p = static_cast<double>(num[i]) / static_cast<double>(den[i]);
    if (config.smoothing == Smoothing::epsilon && num[i] == 0) {
      p = config.epsilon / static_cast<double>(den[i]);
    } else if (config.smoothing == Smoothing::add_one_counts && i > 0) {
      p = static_cast<double>(num[i] + 1) / static_cast<double>(den[i] + 1);
    }
    s.precisions[i] = p;
    any_zero = any_zero || p == 0.0;
  }
  // no unigram overlap scores 0 under every smoothing
  if (num[0] == 0 || any_zero) {
    s.score = 0.0;
    return s;
  }
  double log_sum = 0;
  for (std::size_t i = 0; i < config.max_n; ++i) log_sum += weights[i] * std::log(s.precisions[i]);
  s.score = s.brevity_penalty * std::exp(log_sum);
  return s;
}

inline BleuScore sentence_bleu(const Tokens& reference, const Tokens& hypothesis, const BleuConfig& config = {}) {
  return sentence_bleu(std::span<const Tokens>(&reference, 1), hypothesis, config);
}

/// Convenience over raw strings using bleu_tokens.
inline BleuScore sentence_bleu(std::string_view reference, std::string_view hypothesis, const BleuConfig& config = {}) {
  return sentence_bleu(bleu_tokens(reference), bleu_tokens(hypothesis), config);
}

inline nlohmann::ordered_json to_json(const BleuScore& s) {
  return {{"score", s.score},
          {"precisions", s.precisions},
          {"brevity_penalty", s.brevity_penalty},
          {"hyp_len", s.hyp_len},
          {"ref_len", s.ref_len}};
}

}  // namespace vocalnmt::evaluation
