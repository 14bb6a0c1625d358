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
#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "vocalnmt/corpus/parallel.hpp"
#include "vocalnmt/error.hpp"
#include "vocalnmt/rng.hpp"
#include "vocalnmt/text.hpp"

namespace vocalnmt::corpus {

/// Word classes filling the template slots.
enum class Slot { noun = 0, adverb, adjective, season, month };
inline constexpr std::size_t kSlotClasses = 5;

/// Source -> target lexicon used by the generator. Every source word has
/// exactly one translation and translations are distinct, so a target
/// sentence is the word-by-word image of its source.
struct SyntheticDictionary {
  std::vector<std::pair<std::string, std::string>> function_words;
  std::array<std::vector<std::pair<std::string, std::string>>, kSlotClasses> slots;

  std::unordered_map<std::string, std::string> as_map() const {
    std::unordered_map<std::string, std::string> m;
    for (const auto& [s, t] : function_words) m.emplace(s, t);
    for (const auto& cls : slots) {
      for (const auto& [s, t] : cls) m.emplace(s, t);
    }
    return m;
  }
};

struct SyntheticOptions {
  /// Exponent of the rank-frequency law used to draw slot words. The
  /// skew keeps the corpus close to small-vocabulary phrasebook data where
  /// a few fillers dominate.
  double zipf_exponent = 3.0;
};

namespace detail {

inline const std::vector<std::pair<std::string, std::string>>& template_function_words() {
  static const std::vector<std::pair<std::string, std::string>> words{
      {"the", "le"},     {"is", "est"},    {"during", "pendant"}, {"and", "et"},  {"it", "ce"},
      {"in", "en"},      {"a", "un"},      {"he", "il"},          {"she", "elle"}, {"they", "ils"},
      {"saw", "vu"},     {"likes", "aime"}, {"was", "etait"},     {",", ","},     {".", "."}};
  return words;
}

inline std::string make_word(Rng& rng, const char* const* onsets, std::size_t n_onsets, const char* const* nuclei,
                             std::size_t n_nuclei, std::size_t syllables, const char* coda) {
  std::string w;
  for (std::size_t s = 0; s < syllables; ++s) {
    w += onsets[rng.below(n_onsets)];
    w += nuclei[rng.below(n_nuclei)];
  }
  w += coda;
  return w;
}

}  // namespace detail

/// Number of distinct words every synthetic corpus needs at minimum.
inline std::size_t synthetic_min_vocab() { return detail::template_function_words().size() + kSlotClasses; }

/// Builds the translation dictionary for a vocabulary budget. Independent of
/// the corpus seed so that corpora of equal size share one lexicon.
inline SyntheticDictionary synthetic_dictionary(std::size_t vocab_src, std::size_t vocab_tgt) {
  const std::size_t budget = std::min(vocab_src, vocab_tgt);
  if (budget < synthetic_min_vocab()) {
    fail(ErrorKind::InvalidParams, "vocabulary budget " + std::to_string(budget) + " below template minimum " +
                                       std::to_string(synthetic_min_vocab()));
  }
  SyntheticDictionary dict;
  dict.function_words = detail::template_function_words();
  std::unordered_set<std::string> used_src, used_tgt;
  for (const auto& [s, t] : dict.function_words) {
    used_src.insert(s);
    used_tgt.insert(t);
  }

  static const char* const kSrcOnsets[] = {"b", "d", "f", "g", "k", "l", "m", "n", "p", "r", "s", "t", "v", "z", "sh", "tr"};
  static const char* const kSrcNuclei[] = {"a", "e", "i", "o", "u", "ay", "oo"};
  static const char* const kSrcCodas[] = {"", "n", "k", "t", "s"};
  static const char* const kTgtOnsets[] = {"b", "ch", "d", "f", "g", "j", "l", "m", "n", "p", "qu", "r", "s", "t", "v"};
  static const char* const kTgtNuclei[] = {"a", "e", "i", "o", "ou", "ai", "eu", "au"};
  static const char* const kTgtCodas[] = {"e", "er", "eau", "ette", "ier"};

  Rng rng(0x5a17c0de);
  const std::size_t slot_words = budget - dict.function_words.size();
  for (std::size_t i = 0; i < slot_words; ++i) {
    std::string src, tgt;
    do {
      src = detail::make_word(rng, kSrcOnsets, std::size(kSrcOnsets), kSrcNuclei, std::size(kSrcNuclei),
                              2 + rng.below(2), kSrcCodas[rng.below(std::size(kSrcCodas))]);
    } while (!used_src.insert(src).second);
    do {
      tgt = detail::make_word(rng, kTgtOnsets, std::size(kTgtOnsets), kTgtNuclei, std::size(kTgtNuclei),
                              1 + rng.below(2), kTgtCodas[rng.below(std::size(kTgtCodas))]);
    } while (!used_tgt.insert(tgt).second);
    dict.slots[i % kSlotClasses].emplace_back(std::move(src), std::move(tgt));
  }
  return dict;
}

/// Seeded template-grammar corpus with a word-aligned deterministic
/// translation. Measured vocabularies never exceed the requested sizes.
inline ParallelCorpus generate_synthetic(std::size_t n_pairs, std::size_t vocab_src, std::size_t vocab_tgt,
                                         std::size_t max_len, std::uint64_t seed, const SyntheticOptions& opts = {}) {
  if (n_pairs == 0 || max_len == 0) fail(ErrorKind::InvalidParams, "n_pairs and max_len must be positive");
  if (!(opts.zipf_exponent >= 0.0)) fail(ErrorKind::InvalidParams, "zipf exponent must be non-negative");
  const auto dict = synthetic_dictionary(vocab_src, vocab_tgt);

  using S = Slot;
  // a template element is a function word index (>= 0) or a slot class (< 0)
  struct Elem {
    int function_index;
    Slot slot;
  };
  auto fw = [](int i) { return Elem{i, S::noun}; };
  auto sl = [](Slot s) { return Elem{-1, s}; };
  enum { THE, IS, DURING, AND, IT, IN, A, HE, SHE, THEY, SAW, LIKES, WAS, COMMA, STOP };
  const std::vector<std::vector<Elem>> templates{
      {sl(S::noun), fw(IS), sl(S::adverb), sl(S::adjective), fw(DURING), sl(S::season), fw(COMMA), fw(AND), fw(IT),
       fw(IS), sl(S::adjective), fw(IN), sl(S::month), fw(STOP)},
      {fw(HE), fw(SAW), fw(A), sl(S::adjective), sl(S::adjective), sl(S::noun), fw(IN), sl(S::season), fw(COMMA),
       fw(AND), fw(SHE), fw(LIKES), fw(THE), sl(S::adverb), sl(S::noun), fw(STOP)},
      {fw(SHE), fw(LIKES), fw(THE), sl(S::adverb), sl(S::noun), fw(DURING), sl(S::season), fw(COMMA), fw(AND),
       fw(IT), fw(WAS), sl(S::adjective), fw(IN), sl(S::month), fw(STOP)},
      {sl(S::noun), fw(WAS), sl(S::adjective), fw(IN), sl(S::season), fw(COMMA), fw(AND), fw(THEY), fw(SAW),
       fw(THE), sl(S::adverb), sl(S::noun), fw(DURING), sl(S::month), fw(STOP)},
  };
  std::vector<const std::vector<Elem>*> usable;
  for (const auto& t : templates) {
    if (t.size() <= max_len) usable.push_back(&t);
  }
  if (usable.empty()) fail(ErrorKind::InvalidParams, "max_len too small for every template");

  // cumulative rank-frequency weights per slot class
  std::array<std::vector<double>, kSlotClasses> cdf;
  for (std::size_t c = 0; c < kSlotClasses; ++c) {
    double acc = 0.0;
    for (std::size_t r = 0; r < dict.slots[c].size(); ++r) {
      acc += 1.0 / std::pow(static_cast<double>(r + 1), opts.zipf_exponent);
      cdf[c].push_back(acc);
    }
  }
  Rng rng(seed);
  auto draw = [&](Slot s) -> const std::pair<std::string, std::string>& {
    const auto c = static_cast<std::size_t>(s);
    const double u = rng.uniform() * cdf[c].back();
    auto it = std::upper_bound(cdf[c].begin(), cdf[c].end(), u);
    const auto r = std::min<std::size_t>(static_cast<std::size_t>(it - cdf[c].begin()), cdf[c].size() - 1);
    return dict.slots[c][r];
  };

  ParallelCorpus corpus;
  corpus.pairs.reserve(n_pairs);
  std::vector<std::string> src, tgt;
  for (std::size_t i = 0; i < n_pairs; ++i) {
    const auto& t = *usable[rng.below(usable.size())];
    src.clear();
    tgt.clear();
    for (const auto& e : t) {
      const auto& w = e.function_index >= 0 ? dict.function_words[static_cast<std::size_t>(e.function_index)]
                                            : draw(e.slot);
      src.push_back(w.first);
      tgt.push_back(w.second);
    }
    corpus.pairs.push_back({join(src), join(tgt)});
  }
  return corpus;
}

}  // namespace vocalnmt::corpus
