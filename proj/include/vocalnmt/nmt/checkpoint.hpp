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

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "vocalnmt/corpus/vocabulary.hpp"
#include "vocalnmt/nmt/model.hpp"

namespace vocalnmt::nmt {

inline constexpr char kCheckpointMagic[] = "VBNN1";
inline constexpr std::size_t kMagicSize = 5;

/// A model plus what is needed to run it on text later.
struct Checkpoint {
  Model<float> model;
  std::uint64_t seed = 0;
  std::size_t epoch = 0;
  std::optional<corpus::Vocabulary> source_vocab;
  std::optional<corpus::Vocabulary> target_vocab;
};

namespace detail {

inline void put_u32_le(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

inline std::uint32_t get_u32_le(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | static_cast<std::uint32_t>(p[1]) << 8 |
         static_cast<std::uint32_t>(p[2]) << 16 | static_cast<std::uint32_t>(p[3]) << 24;
}

}  // namespace detail

/// Layout: "VBNN1", u32 LE header length, JSON header, then every tensor as
/// LE float32 in header order.
inline std::string serialize_checkpoint(const Checkpoint& ck) {
  const auto& model = ck.model;
  if (model.empty()) fail(ErrorKind::InvalidSpec, "cannot save an empty model");
  nlohmann::ordered_json header;
  header["format"] = kCheckpointMagic;
  header["spec"] = to_json(model.spec());
  header["seed"] = ck.seed;
  header["epoch"] = ck.epoch;
  auto tensors = nlohmann::ordered_json::array();
  const auto names = model.parameter_names();
  const auto params = model.parameters();
  for (std::size_t i = 0; i < params.size(); ++i) tensors.push_back({{"name", names[i]}, {"shape", params[i]->shape}});
  header["tensors"] = tensors;
  if (ck.source_vocab) header["source_vocab"] = corpus::to_json(*ck.source_vocab);
  if (ck.target_vocab) header["target_vocab"] = corpus::to_json(*ck.target_vocab);
  const std::string h = header.dump();

  std::string out(kCheckpointMagic, kMagicSize);
  detail::put_u32_le(out, static_cast<std::uint32_t>(h.size()));
  out += h;
  for (const auto* t : params) {
    for (float v : t->data) detail::put_u32_le(out, std::bit_cast<std::uint32_t>(v));
  }
  return out;
}

/// Parses a whole checkpoint; any inconsistency throws before a model is
/// returned.
inline Checkpoint deserialize_checkpoint(const std::string& bytes) {
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
  if (bytes.size() < kMagicSize + 4 || std::memcmp(p, kCheckpointMagic, kMagicSize) != 0) {
    fail(ErrorKind::VersionMismatch, "missing VBNN1 magic");
  }
  const std::size_t hlen = detail::get_u32_le(p + kMagicSize);
  std::size_t pos = kMagicSize + 4;
  if (bytes.size() - pos < hlen) fail(ErrorKind::IoError, "checkpoint truncated inside the header");
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(bytes.substr(pos, hlen));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::IoError, std::string("unreadable checkpoint header: ") + e.what());
  }
  pos += hlen;

  Checkpoint ck;
  auto read_tensors = [&](const nlohmann::json& listed) {
    auto params = ck.model.parameters();
    if (listed.size() != params.size()) fail(ErrorKind::ShapeMismatch, "tensor count differs from the model spec");
    for (std::size_t i = 0; i < params.size(); ++i) {
      const auto shape = listed[i].at("shape").get<std::vector<std::size_t>>();
      if (shape != params[i]->shape) {
        fail(ErrorKind::ShapeMismatch, "tensor " + std::to_string(i) + " has shape " + neural::shape_string(shape) +
                                           ", spec implies " + neural::shape_string(params[i]->shape));
      }
      const std::size_t need = params[i]->size() * 4;
      if (bytes.size() - pos < need) fail(ErrorKind::IoError, "checkpoint truncated inside tensor " + std::to_string(i));
      for (auto& v : params[i]->data) {
        v = std::bit_cast<float>(detail::get_u32_le(p + pos));
        pos += 4;
      }
    }
  };
  try {
    if (header.at("format").get<std::string>() != kCheckpointMagic) fail(ErrorKind::VersionMismatch, "format field");
    ck.model = Model<float>::zeros_like(model_spec_from_json(header.at("spec")));
    ck.seed = header.at("seed").get<std::uint64_t>();
    ck.epoch = header.at("epoch").get<std::size_t>();
    if (header.contains("source_vocab")) ck.source_vocab = corpus::vocabulary_from_json(header["source_vocab"]);
    if (header.contains("target_vocab")) ck.target_vocab = corpus::vocabulary_from_json(header["target_vocab"]);
    read_tensors(header.at("tensors"));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::IoError, std::string("malformed checkpoint header: ") + e.what());
  }
  if (pos != bytes.size()) fail(ErrorKind::IoError, "trailing bytes after the last tensor");
  return ck;
}

inline void save_checkpoint(const Checkpoint& ck, const std::filesystem::path& path) {
  const auto bytes = serialize_checkpoint(ck);
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::IoError, "cannot open " + path.string() + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(ErrorKind::IoError, "write failed for " + path.string());
}

inline void save_checkpoint(const Model<float>& model, const std::filesystem::path& path) {
  save_checkpoint(Checkpoint{model, 0, 0, std::nullopt, std::nullopt}, path);
}

inline Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::IoError, "cannot open checkpoint " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return deserialize_checkpoint(bytes);
}

}  // namespace vocalnmt::nmt
