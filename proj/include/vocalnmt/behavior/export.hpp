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

#include <ostream>
#include <span>
#include <string>

#include "json.hpp"
#include "vocalnmt/behavior/analysis.hpp"
#include "vocalnmt/format.hpp"
#include "vocalnmt/text.hpp"

namespace vocalnmt::behavior {

inline nlohmann::ordered_json to_json(const SessionAnalysis& a) {
  const auto cmp = normalize_for_comparison(a);
  nlohmann::ordered_json rec{{"clip_id", a.record.clip_id},
                             {"gender", std::string(audio::to_string(a.record.speaker_gender))}};
  rec["sentence_id"] = a.record.sentence_id ? nlohmann::ordered_json(*a.record.sentence_id) : nlohmann::ordered_json(nullptr);
  rec["intensity"] = {{"mean_db", a.intensity.mean_db},
                      {"p_ref", a.intensity.p_ref},
                      {"frames", a.intensity.frame_db.size()},
                      {"class", std::string(acoustics::to_string(a.intensity_class))}};
  rec["sentiment"] = {{"neg", a.sentiment.neg},
                      {"neu", a.sentiment.neu},
                      {"pos", a.sentiment.pos},
                      {"compound", a.sentiment.compound},
                      {"class", std::string(sentiment::to_string(a.sentiment_class))}};
  rec["comparison"] = {{"pos_pct", cmp.pos_pct}, {"intensity_pct", cmp.intensity_pct}};
  return rec;
}

/// class,count over all five classes.
inline void write_class_histogram_csv(std::ostream& out, const CohortSummary& s) {
  out << "class,count\n";
  for (const auto& [cls, n] : s.per_class_counts) out << sentiment::to_string(cls) << ',' << n << '\n';
}

/// group,mean_db in key order.
inline void write_group_means_csv(std::ostream& out, const CohortSummary& s) {
  out << "group,mean_db\n";
  for (const auto& [key, mean] : s.group_means) out << csv_field(key) << ',' << fmt_real(mean) << '\n';
}

/// clip_id,pos_pct,intensity_pct for every analysis, in input order.
inline void write_comparison_csv(std::ostream& out, std::span<const SessionAnalysis> analyses) {
  out << "clip_id,pos_pct,intensity_pct\n";
  for (const auto& a : analyses) {
    const auto p = normalize_for_comparison(a);
    out << csv_field(a.record.clip_id) << ',' << fmt_real(p.pos_pct) << ',' << fmt_real(p.intensity_pct) << '\n';
  }
}

inline nlohmann::ordered_json to_json(const CohortSummary& s) {
  nlohmann::ordered_json counts = nlohmann::ordered_json::object();
  for (const auto& [cls, n] : s.per_class_counts) counts[std::string(sentiment::to_string(cls))] = n;
  nlohmann::ordered_json means = nlohmann::ordered_json::object();
  for (const auto& [key, m] : s.group_means) means[key] = m;
  nlohmann::ordered_json j{{"n", s.n}, {"per_class_counts", counts}, {"group_means_db", means}};
  j["pearson_r"] = s.pearson_r ? nlohmann::ordered_json(*s.pearson_r) : nlohmann::ordered_json(nullptr);
  return j;
}

}  // namespace vocalnmt::behavior
