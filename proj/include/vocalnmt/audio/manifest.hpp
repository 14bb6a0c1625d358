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

#include <charconv>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "vocalnmt/error.hpp"

namespace vocalnmt::audio {

enum class Gender { female, male, unspecified };

inline std::string_view to_string(Gender g) {
  switch (g) {
    case Gender::female: return "female";
    case Gender::male: return "male";
    case Gender::unspecified: return "unspecified";
  }
  return "unspecified";
}

struct SpeakerRecord {
  std::string clip_id;
  std::string audio_path;
  std::optional<std::string> transcript_path;
  Gender speaker_gender = Gender::unspecified;
  std::optional<int> sentence_id;  // 1..5
};

namespace detail {

/// Splits one CSV line. Double-quoted fields may contain commas; "" is a
/// literal quote.
inline std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace detail

inline Gender parse_gender(std::string_view text, std::size_t line_no) {
  if (text == "female") return Gender::female;
  if (text == "male") return Gender::male;
  if (text.empty() || text == "unspecified") return Gender::unspecified;
  fail(ErrorKind::MalformedRow,
       "line " + std::to_string(line_no) + ": unknown gender '" + std::string(text) + "'");
}

inline std::vector<SpeakerRecord> parse_manifest(std::istream& in) {
  static constexpr std::string_view kHeader = "clip_id,audio_path,transcript_path,gender,sentence_id";
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) return {};
  ++line_no;
  if (!line.empty() && line.front() == '\xEF') line.erase(0, 3);  // UTF-8 BOM
  if (detail::trim(line) != kHeader) {
    fail(ErrorKind::MalformedRow, "header must be '" + std::string(kHeader) + "'");
  }

  std::vector<SpeakerRecord> records;
  std::set<std::string> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    auto fields = detail::split_csv_line(line);
    if (fields.size() != 5) {
      fail(ErrorKind::MalformedRow, "line " + std::to_string(line_no) + ": expected 5 columns, got " +
                                        std::to_string(fields.size()));
    }
    for (auto& f : fields) f = std::string(detail::trim(f));

    SpeakerRecord r;
    r.clip_id = fields[0];
    r.audio_path = fields[1];
    if (r.clip_id.empty() || r.audio_path.empty()) {
      fail(ErrorKind::MalformedRow, "line " + std::to_string(line_no) + ": clip_id and audio_path are required");
    }
    if (!fields[2].empty()) r.transcript_path = fields[2];
    r.speaker_gender = parse_gender(fields[3], line_no);
    if (!fields[4].empty()) {
      int id = 0;
      const auto* first = fields[4].data();
      const auto* last = first + fields[4].size();
      auto [ptr, ec] = std::from_chars(first, last, id);
      if (ec != std::errc{} || ptr != last || id < 1 || id > 5) {
        fail(ErrorKind::MalformedRow,
             "line " + std::to_string(line_no) + ": sentence_id must be an integer in 1..5");
      }
      r.sentence_id = id;
    }
    if (!seen.insert(r.clip_id).second) {
      fail(ErrorKind::DuplicateClipId, "line " + std::to_string(line_no) + ": '" + r.clip_id + "'");
    }
    records.push_back(std::move(r));
  }
  return records;
}

inline std::vector<SpeakerRecord> load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::FileMissing, path.string());
  return parse_manifest(in);
}

}  // namespace vocalnmt::audio
