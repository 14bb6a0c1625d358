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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vocalnmt/acoustics/intensity.hpp"
#include "vocalnmt/audio/manifest.hpp"
#include "vocalnmt/audio/wav.hpp"
#include "vocalnmt/error.hpp"
#include "vocalnmt/sentiment/classify.hpp"
#include "vocalnmt/sentiment/transcript.hpp"
#include "vocalnmt/sentiment/vader.hpp"

namespace vocalnmt::behavior {

using acoustics::IntensityClass;
using sentiment::SentimentClass;

struct AnalysisConfig {
  double trim_seconds = 5.0;
  acoustics::StftParams stft{};
  double p_ref = acoustics::kDefaultReference;
  sentiment::SentimentConfig sentiment{};
};

/// Acoustic and textual view of one clip.
struct SessionAnalysis {
  audio::SpeakerRecord record;
  acoustics::IntensityProfile intensity;
  IntensityClass intensity_class = IntensityClass::whisper;
  sentiment::SentimentScore sentiment;
  SentimentClass sentiment_class = SentimentClass::neutral;
};

inline SessionAnalysis analyze_session(const audio::SpeakerRecord& record, const audio::AudioClip& clip,
                                       const sentiment::Transcript& transcript, const sentiment::Lexicon& lexicon,
                                       const AnalysisConfig& config = {}) {
  try {
    SessionAnalysis a;
    a.record = record;
    const auto window = audio::trim_prefix(clip, config.trim_seconds);
    a.intensity = acoustics::intensity_profile(window, config.stft, config.p_ref);
    a.intensity_class = acoustics::classify_intensity(a.intensity.mean_db);
    a.sentiment = sentiment::polarity_scores(transcript.text, lexicon, config.sentiment);
    a.sentiment_class = sentiment::classify_sentiment(a.sentiment.compound);
    return a;
  } catch (const Error& e) {
    throw Error(e.kind(), "clip '" + record.clip_id + "': " + e.what());
  }
}

/// Sample Pearson correlation coefficient.
inline double pearson_correlation(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    fail(ErrorKind::LengthMismatch, std::to_string(xs.size()) + " vs " + std::to_string(ys.size()));
  }
  if (xs.size() < 2) fail(ErrorKind::LengthMismatch, "need at least two points");
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx, dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) fail(ErrorKind::ZeroVariance, "a series is constant");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

/// Conversation ceiling used when expressing intensity as a percentage.
inline constexpr double kConversationCeilingDb = 90.0;

struct ComparisonPoint {
  double pos_pct = 0.0;
  double intensity_pct = 0.0;
};

inline ComparisonPoint normalize_for_comparison(const SessionAnalysis& a) {
  return {a.sentiment.pos * 100.0, std::clamp(a.intensity.mean_db / kConversationCeilingDb, 0.0, 1.0) * 100.0};
}

enum class GroupBy { gender, sentence_id };

struct CohortSummary {
  std::size_t n = 0;
  std::map<SentimentClass, std::size_t> per_class_counts;
  std::map<std::string, double> group_means;  // mean dB per group key
  std::optional<double> pearson_r;            // over positive-sentiment clips
};

inline std::string group_key(const audio::SpeakerRecord& r, GroupBy by) {
  if (by == GroupBy::gender) return std::string(audio::to_string(r.speaker_gender));
  return r.sentence_id ? std::to_string(*r.sentence_id) : std::string("none");
}

inline CohortSummary cohort_summary(std::span<const SessionAnalysis> analyses, GroupBy by) {
  if (analyses.empty()) fail(ErrorKind::EmptyCohort, "cohort has no analyses");
  CohortSummary s;
  s.n = analyses.size();
  for (int c = 0; c <= 4; ++c) s.per_class_counts[static_cast<SentimentClass>(c)] = 0;

  std::map<std::string, std::pair<double, std::size_t>> acc;
  std::vector<double> pos, inten;
  for (const auto& a : analyses) {
    ++s.per_class_counts[a.sentiment_class];
    auto& slot = acc[group_key(a.record, by)];
    slot.first += a.intensity.mean_db;
    ++slot.second;
    if (a.sentiment.pos > 0.0) {
      const auto p = normalize_for_comparison(a);
      pos.push_back(p.pos_pct);
      inten.push_back(p.intensity_pct);
    }
  }
  for (const auto& [key, v] : acc) s.group_means[key] = v.first / static_cast<double>(v.second);
  if (pos.size() >= 2) {
    try {
      s.pearson_r = pearson_correlation(pos, inten);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ZeroVariance) throw;
    }
  }
  return s;
}

}  // namespace vocalnmt::behavior
