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

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <string>

#include "json.hpp"
#include "vocalnmt/acoustics/spectrogram.hpp"
#include "vocalnmt/behavior/analysis.hpp"
#include "vocalnmt/evaluation/bleu.hpp"
#include "vocalnmt/nmt/model.hpp"
#include "vocalnmt/nmt/train.hpp"
#include "vocalnmt/sentiment/vader.hpp"
#include "vocalnmt/version.hpp"

#ifndef VOCALNMT_DATA_DIR
#define VOCALNMT_DATA_DIR "data"
#endif

namespace vocalnmt::cli {

inline constexpr std::uint64_t kDefaultSeed = 42;

/// Data directory holding the sentiment lexicon. The VOCALNMT_DATA_DIR
/// environment variable wins over the compiled-in location.
inline std::filesystem::path data_dir() {
  if (const char* env = std::getenv("VOCALNMT_DATA_DIR"); env && *env) return env;
  return VOCALNMT_DATA_DIR;
}

inline std::filesystem::path default_lexicon_path() { return data_dir() / "vader_lexicon.txt"; }

struct PathsConfig {
  std::string manifest, audio_dir, transcripts_dir, lexicon, source, target;
};

struct CorpusConfig {
  std::size_t pairs = 10000;
  std::size_t vocab_src = 200;
  std::size_t vocab_tgt = 350;
  std::size_t max_len = 21;
  double zipf_exponent = 3.0;
  double split_ratio = 0.8;
  /// 0 pads to the longest sequence.
  std::size_t pad_length = 21;
};

struct ModelConfig {
  std::string kind = "embedded_gru";
  std::size_t hidden = 64;
  std::size_t embed_dim = 64;
};

/// Every tunable in one place. Loaded from JSON; unknown keys are errors.
struct RunConfig {
  std::uint64_t seed = kDefaultSeed;
  PathsConfig paths;
  behavior::AnalysisConfig analysis;
  std::string group_by = "gender";
  CorpusConfig corpus;
  ModelConfig model;
  nmt::TrainConfig train{20, 1024, 0.001, kDefaultSeed, true};
  evaluation::BleuConfig bleu;
};

namespace detail {

inline void reject_unknown(const nlohmann::json& obj, std::initializer_list<const char*> known, const std::string& where) {
  if (!obj.is_object()) fail(ErrorKind::InvalidConfig, where + " must be a JSON object");
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) fail(ErrorKind::InvalidConfig, "unknown key '" + where + (where.empty() ? "" : ".") + key + "'");
  }
}

template <typename V>
void read(const nlohmann::json& obj, const char* key, V& out) {
  if (obj.contains(key)) out = obj.at(key).get<V>();
}

}  // namespace detail

inline RunConfig parse_run_config(const nlohmann::json& j) {
  RunConfig c;
  try {
    detail::reject_unknown(j, {"seed", "paths", "acoustics", "sentiment", "group_by", "corpus", "model", "train", "bleu"}, "");
    detail::read(j, "seed", c.seed);
    c.train.seed = c.seed;
    detail::read(j, "group_by", c.group_by);
    if (j.contains("paths")) {
      const auto& p = j["paths"];
      detail::reject_unknown(p, {"manifest", "audio_dir", "transcripts_dir", "lexicon", "source", "target"}, "paths");
      detail::read(p, "manifest", c.paths.manifest);
      detail::read(p, "audio_dir", c.paths.audio_dir);
      detail::read(p, "transcripts_dir", c.paths.transcripts_dir);
      detail::read(p, "lexicon", c.paths.lexicon);
      detail::read(p, "source", c.paths.source);
      detail::read(p, "target", c.paths.target);
    }
    if (j.contains("acoustics")) {
      const auto& a = j["acoustics"];
      detail::reject_unknown(a, {"frame_size", "hop", "p_ref", "trim_seconds"}, "acoustics");
      detail::read(a, "frame_size", c.analysis.stft.frame_size);
      detail::read(a, "hop", c.analysis.stft.hop);
      detail::read(a, "p_ref", c.analysis.p_ref);
      detail::read(a, "trim_seconds", c.analysis.trim_seconds);
    }
    if (j.contains("sentiment")) {
      const auto& s = j["sentiment"];
      auto& sc = c.analysis.sentiment;
      detail::reject_unknown(s, {"alpha", "caps_increment", "negation_scalar", "exclamation_increment",
                                 "exclamation_max", "question_increment", "question_saturated", "but_before",
                                 "but_after", "distance_damping", "never_so_scalar"},
                             "sentiment");
      detail::read(s, "alpha", sc.alpha);
      detail::read(s, "caps_increment", sc.caps_increment);
      detail::read(s, "negation_scalar", sc.negation_scalar);
      detail::read(s, "exclamation_increment", sc.exclamation_increment);
      detail::read(s, "exclamation_max", sc.exclamation_max);
      detail::read(s, "question_increment", sc.question_increment);
      detail::read(s, "question_saturated", sc.question_saturated);
      detail::read(s, "but_before", sc.but_before);
      detail::read(s, "but_after", sc.but_after);
      detail::read(s, "distance_damping", sc.distance_damping);
      detail::read(s, "never_so_scalar", sc.never_so_scalar);
    }
    if (j.contains("corpus")) {
      const auto& k = j["corpus"];
      detail::reject_unknown(k, {"pairs", "vocab_src", "vocab_tgt", "max_len", "zipf_exponent", "split_ratio", "pad_length"},
                             "corpus");
      detail::read(k, "pairs", c.corpus.pairs);
      detail::read(k, "vocab_src", c.corpus.vocab_src);
      detail::read(k, "vocab_tgt", c.corpus.vocab_tgt);
      detail::read(k, "max_len", c.corpus.max_len);
      detail::read(k, "zipf_exponent", c.corpus.zipf_exponent);
      detail::read(k, "split_ratio", c.corpus.split_ratio);
      detail::read(k, "pad_length", c.corpus.pad_length);
    }
    if (j.contains("model")) {
      const auto& m = j["model"];
      detail::reject_unknown(m, {"kind", "hidden", "embed_dim"}, "model");
      detail::read(m, "kind", c.model.kind);
      detail::read(m, "hidden", c.model.hidden);
      detail::read(m, "embed_dim", c.model.embed_dim);
    }
    if (j.contains("train")) {
      const auto& t = j["train"];
      detail::reject_unknown(t, {"epochs", "batch_size", "lr", "shuffle"}, "train");
      detail::read(t, "epochs", c.train.epochs);
      detail::read(t, "batch_size", c.train.batch_size);
      detail::read(t, "lr", c.train.lr);
      detail::read(t, "shuffle", c.train.shuffle);
    }
    if (j.contains("bleu")) {
      const auto& b = j["bleu"];
      detail::reject_unknown(b, {"max_n", "weights", "smoothing"}, "bleu");
      detail::read(b, "max_n", c.bleu.max_n);
      detail::read(b, "weights", c.bleu.weights);
      if (b.contains("smoothing")) c.bleu.smoothing = evaluation::parse_smoothing(b["smoothing"].get<std::string>());
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::InvalidConfig, std::string("config: ") + e.what());
  }
  if (c.group_by != "gender" && c.group_by != "sentence_id") {
    fail(ErrorKind::InvalidConfig, "group_by must be 'gender' or 'sentence_id'");
  }
  nmt::parse_model_kind(c.model.kind);
  c.bleu.resolved_weights();
  return c;
}

inline RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::FileMissing, "config " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::InvalidConfig, "config " + path.string() + ": " + e.what());
  }
  return parse_run_config(j);
}

/// Fully resolved configuration; the basis of the config hash.
inline nlohmann::ordered_json to_json(const RunConfig& c) {
  const auto& sc = c.analysis.sentiment;
  nlohmann::ordered_json j;
  j["seed"] = c.seed;
  j["paths"] = {{"manifest", c.paths.manifest}, {"audio_dir", c.paths.audio_dir},
                {"transcripts_dir", c.paths.transcripts_dir}, {"lexicon", c.paths.lexicon},
                {"source", c.paths.source}, {"target", c.paths.target}};
  j["acoustics"] = {{"frame_size", c.analysis.stft.frame_size}, {"hop", c.analysis.stft.hop},
                    {"p_ref", c.analysis.p_ref}, {"trim_seconds", c.analysis.trim_seconds}};
  j["sentiment"] = {{"alpha", sc.alpha}, {"caps_increment", sc.caps_increment},
                    {"negation_scalar", sc.negation_scalar}, {"exclamation_increment", sc.exclamation_increment},
                    {"exclamation_max", sc.exclamation_max}, {"question_increment", sc.question_increment},
                    {"question_saturated", sc.question_saturated}, {"but_before", sc.but_before},
                    {"but_after", sc.but_after}, {"distance_damping", sc.distance_damping},
                    {"never_so_scalar", sc.never_so_scalar}};
  j["group_by"] = c.group_by;
  j["corpus"] = {{"pairs", c.corpus.pairs}, {"vocab_src", c.corpus.vocab_src}, {"vocab_tgt", c.corpus.vocab_tgt},
                 {"max_len", c.corpus.max_len}, {"zipf_exponent", c.corpus.zipf_exponent},
                 {"split_ratio", c.corpus.split_ratio}, {"pad_length", c.corpus.pad_length}};
  j["model"] = {{"kind", c.model.kind}, {"hidden", c.model.hidden}, {"embed_dim", c.model.embed_dim}};
  j["train"] = {{"epochs", c.train.epochs}, {"batch_size", c.train.batch_size}, {"lr", c.train.lr},
                {"shuffle", c.train.shuffle}};
  j["bleu"] = {{"max_n", c.bleu.max_n}, {"weights", c.bleu.resolved_weights()},
               {"smoothing", evaluation::to_string(c.bleu.smoothing)}};
  return j;
}

/// 64-bit FNV-1a, hex encoded.
inline std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = kHex[h & 0xf];
  return out;
}

inline std::string config_hash(const RunConfig& c) { return fnv1a_hex(to_json(c).dump()); }

/// Record written next to every output set. Holds nothing time-dependent
/// so reruns stay byte-identical.
inline nlohmann::ordered_json metadata(const RunConfig& c, const std::string& command) {
  return {{"artifact", "vocalnmt"},
          {"version", kVersion},
          {"command", command},
          {"config_hash", config_hash(c)},
          {"seeds", {{"seed", c.seed}, {"train_seed", c.train.seed}}},
          {"config", to_json(c)}};
}

}  // namespace vocalnmt::cli
