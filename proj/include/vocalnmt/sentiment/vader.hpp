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
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "vocalnmt/sentiment/lexicon.hpp"
#include "vocalnmt/text.hpp"

namespace vocalnmt::sentiment {

/// Heuristic constants of the rule-based scorer. Defaults are the published
/// reference values.
struct SentimentConfig {
  double alpha = 15.0;
  double caps_increment = 0.733;
  double negation_scalar = -0.74;
  double exclamation_increment = 0.292;
  int exclamation_max = 4;
  double question_increment = 0.18;   // per mark, for 2 or 3 marks
  double question_saturated = 0.96;   // 4 or more marks
  double but_before = 0.5;
  double but_after = 1.5;
  std::array<double, 3> distance_damping{1.0, 0.95, 0.9};
  double never_so_scalar = 1.25;
};

struct SentimentScore {
  double neg = 0.0;
  double neu = 0.0;
  double pos = 0.0;
  double compound = 0.0;
  double alpha = 15.0;
};

/// s / sqrt(s^2 + alpha), clamped to [-1, 1].
inline double normalize_compound(double sum, double alpha = 15.0) {
  const double c = sum / std::sqrt(sum * sum + alpha);
  return std::clamp(c, -1.0, 1.0);
}

namespace detail {

inline bool is_punct(char c) {
  // ASCII punctuation as in C's ispunct for the "C" locale
  return (c >= '!' && c <= '/') || (c >= ':' && c <= '@') || (c >= '[' && c <= '`') || (c >= '{' && c <= '~');
}

/// Strips leading/trailing punctuation unless that leaves two or fewer
/// characters (emoticons such as ":)" survive intact).
inline std::string strip_punct_if_word(const std::string& token) {
  std::size_t b = 0, e = token.size();
  while (b < e && is_punct(token[b])) ++b;
  while (e > b && is_punct(token[e - 1])) --e;
  if (e - b <= 2) return token;
  return token.substr(b, e - b);
}

/// True when the word has at least one letter and none of them lowercase.
inline bool is_upper(std::string_view w) {
  bool cased = false;
  for (char c : w) {
    if (c >= 'a' && c <= 'z') return false;
    if (c >= 'A' && c <= 'Z') cased = true;
  }
  return cased;
}

inline const std::unordered_map<std::string, double>& special_cases() {
  static const std::unordered_map<std::string, double> m{
      {"the shit", 3},       {"the bomb", 3},      {"bad ass", 1.5},      {"badass", 1.5},
      {"bus stop", 0.0},     {"yeah right", -2},   {"kiss of death", -1.5}, {"to die for", 3},
      {"beating heart", 3.5}};
  return m;
}

/// One scoring pass over a single text. Holds the tokenized words so the
/// rule helpers can look around a position.
class ScoringPass {
 public:
  ScoringPass(const Lexicon& lexicon, const SentimentConfig& config, std::string_view text)
      : lex_(&lexicon), cfg_(&config), text_(text) {
    for (const auto& t : split_whitespace(text)) {
      words_.push_back(strip_punct_if_word(t));
      lower_.push_back(ascii_lower(words_.back()));
    }
    std::size_t upper = 0;
    for (const auto& w : words_) upper += is_upper(w) ? 1 : 0;
    cap_diff_ = upper > 0 && upper < words_.size();
  }

  SentimentScore run() const {
    std::vector<double> sentiments;
    sentiments.reserve(words_.size());
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (lex_->boosters.count(lower_[i])) {
        sentiments.push_back(0.0);
        continue;
      }
      if (i + 1 < words_.size() && lower_[i] == "kind" && lower_[i + 1] == "of") {
        sentiments.push_back(0.0);
        continue;
      }
      sentiments.push_back(valence_at(i));
    }
    but_check(sentiments);
    return score_valence(sentiments, text_);
  }

 private:
  bool in_lex(std::size_t i) const { return lex_->contains(lower_[i]); }

  bool negated(const std::string& lower) const {
    return lex_->negations.count(lower) != 0 || lower.find("n't") != std::string::npos;
  }

  double scalar_inc_dec(std::size_t j, double valence) const {
    auto it = lex_->boosters.find(lower_[j]);
    if (it == lex_->boosters.end()) return 0.0;
    double scalar = it->second;
    if (valence < 0) scalar = -scalar;
    if (is_upper(words_[j]) && cap_diff_) scalar += valence > 0 ? cfg_->caps_increment : -cfg_->caps_increment;
    return scalar;
  }

  double valence_at(std::size_t i) const {
    if (!in_lex(i)) return 0.0;
    const double base = lex_->entries.at(lower_[i]);
    double valence = base;
    const std::size_t n = words_.size();

    // "no" before another lexicon word acts as negation, not sentiment
    if (lower_[i] == "no" && i + 1 < n && in_lex(i + 1)) valence = 0.0;
    if ((i > 0 && lower_[i - 1] == "no") || (i > 1 && lower_[i - 2] == "no") ||
        (i > 2 && lower_[i - 3] == "no" && (lower_[i - 1] == "or" || lower_[i - 1] == "nor"))) {
      valence = base * cfg_->negation_scalar;
    }

    if (is_upper(words_[i]) && cap_diff_) {
      valence += valence > 0 ? cfg_->caps_increment : -cfg_->caps_increment;
    }

    for (std::size_t back = 0; back < 3; ++back) {
      if (i > back && !in_lex(i - (back + 1))) {
        double s = scalar_inc_dec(i - (back + 1), valence);
        if (s != 0.0) s *= cfg_->distance_damping[back];
        valence += s;
        valence = negation_check(valence, back, i);
        if (back == 2) valence = special_idioms_check(valence, i);
      }
    }
    return least_check(valence, i);
  }

  double negation_check(double valence, std::size_t back, std::size_t i) const {
    const auto& w = lower_;
    if (back == 0) {
      if (negated(w[i - 1])) valence *= cfg_->negation_scalar;
    } else if (back == 1) {
      if (w[i - 2] == "never" && (w[i - 1] == "so" || w[i - 1] == "this")) {
        valence *= cfg_->never_so_scalar;
      } else if (w[i - 2] == "without" && w[i - 1] == "doubt") {
        // intensifying idiom, no flip
      } else if (negated(w[i - 2])) {
        valence *= cfg_->negation_scalar;
      }
    } else {
      if ((w[i - 3] == "never" && (w[i - 2] == "so" || w[i - 2] == "this")) ||
          (w[i - 1] == "so" || w[i - 1] == "this")) {
        valence *= cfg_->never_so_scalar;
      } else if (w[i - 3] == "without" && (w[i - 2] == "doubt" || w[i - 1] == "doubt")) {
      } else if (negated(w[i - 3])) {
        valence *= cfg_->negation_scalar;
      }
    }
    return valence;
  }

  double special_idioms_check(double valence, std::size_t i) const {
    const auto& w = lower_;
    const std::string onezero = w[i - 1] + " " + w[i];
    const std::string twoonezero = w[i - 2] + " " + w[i - 1] + " " + w[i];
    const std::string twoone = w[i - 2] + " " + w[i - 1];
    const std::string threetwoone = w[i - 3] + " " + w[i - 2] + " " + w[i - 1];
    const std::string threetwo = w[i - 3] + " " + w[i - 2];
    const auto& special = special_cases();
    for (const auto* seq : {&onezero, &twoonezero, &twoone, &threetwoone, &threetwo}) {
      auto it = special.find(*seq);
      if (it != special.end()) {
        valence = it->second;
        break;
      }
    }
    if (w.size() - 1 > i) {
      auto it = special.find(w[i] + " " + w[i + 1]);
      if (it != special.end()) valence = it->second;
    }
    if (w.size() - 1 > i + 1) {
      auto it = special.find(w[i] + " " + w[i + 1] + " " + w[i + 2]);
      if (it != special.end()) valence = it->second;
    }
    for (const auto* gram : {&threetwoone, &threetwo, &twoone}) {
      auto it = lex_->boosters.find(*gram);
      if (it != lex_->boosters.end()) valence += it->second;
    }
    return valence;
  }

  double least_check(double valence, std::size_t i) const {
    const auto& w = lower_;
    if (i > 1 && !in_lex(i - 1) && w[i - 1] == "least") {
      if (w[i - 2] != "at" && w[i - 2] != "very") valence *= cfg_->negation_scalar;
    } else if (i > 0 && !in_lex(i - 1) && w[i - 1] == "least") {
      valence *= cfg_->negation_scalar;
    }
    return valence;
  }

  /// Contrastive "but": earlier clause damped, later clause amplified.
  void but_check(std::vector<double>& sentiments) const {
    auto it = std::find(lower_.begin(), lower_.end(), "but");
    if (it == lower_.end()) return;
    const auto bi = static_cast<std::size_t>(it - lower_.begin());
    for (std::size_t si = 0; si < sentiments.size(); ++si) {
      if (si < bi) sentiments[si] *= cfg_->but_before;
      else if (si > bi) sentiments[si] *= cfg_->but_after;
    }
  }

  double punctuation_emphasis(std::string_view text) const {
    const auto ep = std::min<long>(std::count(text.begin(), text.end(), '!'), cfg_->exclamation_max);
    const auto qm = std::count(text.begin(), text.end(), '?');
    double qm_amp = 0.0;
    if (qm > 1) qm_amp = qm <= 3 ? static_cast<double>(qm) * cfg_->question_increment : cfg_->question_saturated;
    return static_cast<double>(ep) * cfg_->exclamation_increment + qm_amp;
  }

  SentimentScore score_valence(const std::vector<double>& sentiments, std::string_view text) const {
    SentimentScore out;
    out.alpha = cfg_->alpha;
    if (sentiments.empty()) return out;

    double sum = 0.0;
    for (double s : sentiments) sum += s;
    const double amp = punctuation_emphasis(trim_view(text));
    if (sum > 0) sum += amp;
    else if (sum < 0) sum -= amp;
    out.compound = normalize_compound(sum, cfg_->alpha);

    double pos_sum = 0.0, neg_sum = 0.0;
    std::size_t neu_count = 0;
    for (double s : sentiments) {
      if (s > 0) pos_sum += s + 1.0;  // +1 offsets neutral words counting as 1
      if (s < 0) neg_sum += s - 1.0;
      if (s == 0) ++neu_count;
    }
    if (pos_sum > std::fabs(neg_sum)) pos_sum += amp;
    else if (pos_sum < std::fabs(neg_sum)) neg_sum -= amp;

    const double total = pos_sum + std::fabs(neg_sum) + static_cast<double>(neu_count);
    out.pos = std::fabs(pos_sum / total);
    out.neg = std::fabs(neg_sum / total);
    out.neu = std::fabs(static_cast<double>(neu_count) / total);
    return out;
  }

  const Lexicon* lex_;
  const SentimentConfig* cfg_;
  std::string_view text_;
  std::vector<std::string> words_;
  std::vector<std::string> lower_;
  bool cap_diff_ = false;
};

}  // namespace detail

/// Lexicon-and-rules sentiment scorer. Stateless per call; one analyzer may
/// score texts from several threads.
class SentimentAnalyzer {
 public:
  explicit SentimentAnalyzer(const Lexicon& lexicon, SentimentConfig config = {})
      : lex_(&lexicon), cfg_(config) {}

  const SentimentConfig& config() const { return cfg_; }

  SentimentScore polarity_scores(std::string_view text) const {
    return detail::ScoringPass(*lex_, cfg_, text).run();
  }

 private:
  const Lexicon* lex_;
  SentimentConfig cfg_;
};

inline SentimentScore polarity_scores(std::string_view text, const Lexicon& lexicon,
                                      const SentimentConfig& config = {}) {
  return SentimentAnalyzer(lexicon, config).polarity_scores(text);
}

}  // namespace vocalnmt::sentiment
