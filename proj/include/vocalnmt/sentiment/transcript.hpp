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

#include <filesystem>
#include <fstream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "vocalnmt/audio/manifest.hpp"
#include "vocalnmt/error.hpp"
#include "vocalnmt/text.hpp"

namespace vocalnmt::sentiment {

struct Transcript {
  std::string clip_id;
  std::string text;
};

/// Source of speech transcripts. Implementations return nullopt when they
/// have nothing for the record so that callers can fall through to another
/// provider.
class TranscriptProvider {
 public:
  virtual ~TranscriptProvider() = default;
  virtual std::optional<Transcript> fetch(const audio::SpeakerRecord& record) const = 0;
};

/// Reads the record's sidecar text file, resolved against `base_dir` when
/// the path is relative.
class FileTranscriptProvider final : public TranscriptProvider {
 public:
  explicit FileTranscriptProvider(std::filesystem::path base_dir = {}) : base_(std::move(base_dir)) {}

  std::optional<Transcript> fetch(const audio::SpeakerRecord& record) const override {
    if (!record.transcript_path) return std::nullopt;
    std::filesystem::path p(*record.transcript_path);
    if (p.is_relative() && !base_.empty()) p = base_ / p;
    std::ifstream in(p, std::ios::binary);
    if (!in) return std::nullopt;
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return Transcript{record.clip_id, std::string(rtrim_view(text))};
  }

 private:
  std::filesystem::path base_;
};

/// Fixed clip_id -> text table; handy as a fallback or in tests.
class StaticTranscriptProvider final : public TranscriptProvider {
 public:
  void add(std::string clip_id, std::string text) { table_.emplace_back(std::move(clip_id), std::move(text)); }

  std::optional<Transcript> fetch(const audio::SpeakerRecord& record) const override {
    for (const auto& [id, text] : table_) {
      if (id == record.clip_id) return Transcript{id, text};
    }
    return std::nullopt;
  }

 private:
  std::vector<std::pair<std::string, std::string>> table_;
};

/// Consults providers in insertion order and returns the first hit.
class ChainedTranscriptProvider final : public TranscriptProvider {
 public:
  void add(std::shared_ptr<const TranscriptProvider> p) { chain_.push_back(std::move(p)); }

  std::optional<Transcript> fetch(const audio::SpeakerRecord& record) const override {
    for (const auto& p : chain_) {
      if (auto t = p->fetch(record)) return t;
    }
    return std::nullopt;
  }

 private:
  std::vector<std::shared_ptr<const TranscriptProvider>> chain_;
};

inline Transcript get_transcript(const audio::SpeakerRecord& record, const TranscriptProvider& provider) {
  if (auto t = provider.fetch(record)) return *t;
  fail(ErrorKind::TranscriptMissing, "no transcript for clip '" + record.clip_id + "'");
}

inline Transcript get_transcript(const audio::SpeakerRecord& record) {
  return get_transcript(record, FileTranscriptProvider{});
}

}  // namespace vocalnmt::sentiment
