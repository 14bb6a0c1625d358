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
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <span>
#include <string>
#include <vector>

#include "vocalnmt/error.hpp"

namespace vocalnmt::audio {

/// Mono sample buffer in full-scale units ([-1, 1]) with its rate in Hz.
struct AudioClip {
  std::vector<double> samples;
  double sample_rate = 0.0;

  std::size_t size() const noexcept { return samples.size(); }
  double duration_seconds() const noexcept {
    return sample_rate > 0.0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
  }
};

namespace detail {

inline std::uint16_t read_u16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

inline std::uint32_t read_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

inline void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

inline void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
}

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

}  // namespace detail

/// Decodes an in-memory RIFF/WAVE image. Supports PCM16, PCM24 and float32,
/// one or two channels; stereo frames are averaged to mono.
inline AudioClip decode_wav(std::span<const std::uint8_t> bytes) {
  using detail::read_u16;
  using detail::read_u32;
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    fail(ErrorKind::CorruptHeader, "missing RIFF/WAVE signature");
  }
  const std::uint64_t riff_size = read_u32(bytes.data() + 4);
  if (riff_size + 8 > bytes.size()) {
    fail(ErrorKind::CorruptHeader, "RIFF size exceeds file length");
  }
  const std::size_t end = static_cast<std::size_t>(riff_size + 8);

  bool have_fmt = false;
  std::uint16_t format = 0;
  std::uint16_t channels = 0;
  std::uint32_t rate = 0;
  std::uint16_t block_align = 0;
  std::uint16_t bits = 0;
  const std::uint8_t* data = nullptr;
  std::size_t data_size = 0;

  std::size_t pos = 12;
  while (pos + 8 <= end) {
    const std::uint8_t* chunk = bytes.data() + pos;
    const std::uint64_t size = read_u32(chunk + 4);
    if (pos + 8 + size > end) {
      fail(ErrorKind::CorruptHeader, "chunk '" + std::string(reinterpret_cast<const char*>(chunk), 4) +
                                         "' overruns the file");
    }
    const std::uint8_t* body = chunk + 8;
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16) fail(ErrorKind::CorruptHeader, "fmt chunk too small");
      format = read_u16(body);
      channels = read_u16(body + 2);
      rate = read_u32(body + 4);
      block_align = read_u16(body + 12);
      bits = read_u16(body + 14);
      if (format == detail::kFormatExtensible) {
        if (size < 40) fail(ErrorKind::CorruptHeader, "extensible fmt chunk too small");
        format = read_u16(body + 24);  // first two bytes of the subformat GUID
      }
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data = body;
      data_size = static_cast<std::size_t>(size);
    }
    pos += 8 + static_cast<std::size_t>(size) + (size & 1);
  }

  if (!have_fmt) fail(ErrorKind::CorruptHeader, "no fmt chunk");
  if (data == nullptr) fail(ErrorKind::CorruptHeader, "no data chunk");

  const bool pcm = format == detail::kFormatPcm && (bits == 16 || bits == 24);
  const bool flt = format == detail::kFormatFloat && bits == 32;
  if (!pcm && !flt) {
    fail(ErrorKind::UnsupportedEncoding,
         "format tag " + std::to_string(format) + " with " + std::to_string(bits) + " bits");
  }
  if (channels != 1 && channels != 2) {
    fail(ErrorKind::UnsupportedEncoding, std::to_string(channels) + " channels");
  }
  if (rate == 0) fail(ErrorKind::CorruptHeader, "sample rate is zero");
  const std::size_t bytes_per_sample = bits / 8;
  if (block_align != bytes_per_sample * channels) {
    fail(ErrorKind::CorruptHeader, "block alignment does not match channels and bit depth");
  }
  if (data_size % block_align != 0) {
    fail(ErrorKind::CorruptHeader, "data chunk is not a whole number of frames");
  }

  const std::size_t frames = data_size / block_align;
  AudioClip clip;
  clip.sample_rate = static_cast<double>(rate);
  clip.samples.resize(frames);

  auto decode_one = [&](const std::uint8_t* p) -> double {
    if (flt) {
      float f;
      std::uint32_t u = read_u32(p);
      std::memcpy(&f, &u, sizeof f);
      if (!std::isfinite(f)) fail(ErrorKind::CorruptHeader, "non-finite float sample");
      return static_cast<double>(f);
    }
    if (bits == 16) {
      return static_cast<double>(static_cast<std::int16_t>(read_u16(p))) / 32768.0;
    }
    std::int32_t v = static_cast<std::int32_t>(p[0] | (p[1] << 8) | (p[2] << 16));
    if (v & 0x800000) v -= 0x1000000;
    return static_cast<double>(v) / 8388608.0;
  };

  for (std::size_t f = 0; f < frames; ++f) {
    const std::uint8_t* frame = data + f * block_align;
    double acc = 0.0;
    for (std::size_t c = 0; c < channels; ++c) acc += decode_one(frame + c * bytes_per_sample);
    clip.samples[f] = acc / static_cast<double>(channels);
  }
  return clip;
}

inline AudioClip load_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::FileMissing, path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return decode_wav(bytes);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + std::string(e.what()));
  }
}

/// Writes a mono 16-bit PCM file, clamping samples to [-1, 1).
inline void write_wav_pcm16(const std::filesystem::path& path, const AudioClip& clip) {
  using detail::put_u16;
  using detail::put_u32;
  const auto n = static_cast<std::uint32_t>(clip.samples.size());
  const auto rate = static_cast<std::uint32_t>(std::lround(clip.sample_rate));
  std::vector<std::uint8_t> out;
  out.reserve(44 + 2 * n);
  out.insert(out.end(), {'R', 'I', 'F', 'F'});
  put_u32(out, 36 + 2 * n);
  out.insert(out.end(), {'W', 'A', 'V', 'E', 'f', 'm', 't', ' '});
  put_u32(out, 16);
  put_u16(out, detail::kFormatPcm);
  put_u16(out, 1);
  put_u32(out, rate);
  put_u32(out, rate * 2);
  put_u16(out, 2);
  put_u16(out, 16);
  out.insert(out.end(), {'d', 'a', 't', 'a'});
  put_u32(out, 2 * n);
  for (double s : clip.samples) {
    const double scaled = std::clamp(std::round(s * 32768.0), -32768.0, 32767.0);
    put_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(scaled)));
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorKind::IoError, "cannot write " + path.string());
  f.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
}

/// First `seconds` of the clip; shorter clips come back whole.
inline AudioClip trim_prefix(const AudioClip& clip, double seconds = 5.0) {
  if (!(seconds > 0.0)) fail(ErrorKind::InvalidParams, "trim window must be positive");
  const double wanted = std::floor(seconds * clip.sample_rate + 1e-9);
  const std::size_t n = wanted >= static_cast<double>(clip.samples.size())
                            ? clip.samples.size()
                            : static_cast<std::size_t>(wanted);
  AudioClip out;
  out.sample_rate = clip.sample_rate;
  out.samples.assign(clip.samples.begin(), clip.samples.begin() + static_cast<std::ptrdiff_t>(n));
  return out;
}

}  // namespace vocalnmt::audio
