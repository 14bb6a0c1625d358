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
#include <numbers>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "vocalnmt/error.hpp"

namespace testing_support {

namespace fs = std::filesystem;

/// Fresh per-test directory under the build tree.
inline fs::path scratch_dir(const std::string& name) {
#ifdef VOCALNMT_TEST_TMP
  fs::path root = VOCALNMT_TEST_TMP;
#else
  fs::path root = fs::temp_directory_path() / "vocalnmt_tests";
#endif
  const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
  fs::path dir = root / (info ? std::string(info->test_suite_name()) + "." + info->name() : std::string("global")) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

inline void write_text(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
}

inline std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Byte-level RIFF writer kept independent of the library encoder.
/// format 1 = integer PCM, 3 = IEEE float.
struct RawWav {
  std::uint16_t format = 1;
  std::uint16_t channels = 1;
  std::uint32_t rate = 16000;
  std::uint16_t bits = 16;
  std::vector<std::uint8_t> frames;  // interleaved payload

  std::vector<std::uint8_t> bytes() const {
    std::vector<std::uint8_t> b;
    auto tag = [&](const char* s) { b.insert(b.end(), s, s + 4); };
    auto u32 = [&](std::uint32_t v) {
      for (int i = 0; i < 4; ++i) b.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    };
    auto u16 = [&](std::uint16_t v) {
      b.push_back(static_cast<std::uint8_t>(v));
      b.push_back(static_cast<std::uint8_t>(v >> 8));
    };
    const std::uint16_t align = static_cast<std::uint16_t>(channels * bits / 8);
    tag("RIFF");
    u32(static_cast<std::uint32_t>(36 + frames.size()));
    tag("WAVE");
    tag("fmt ");
    u32(16);
    u16(format);
    u16(channels);
    u32(rate);
    u32(rate * align);
    u16(align);
    u16(bits);
    tag("data");
    u32(static_cast<std::uint32_t>(frames.size()));
    b.insert(b.end(), frames.begin(), frames.end());
    return b;
  }

  void write(const fs::path& path) const {
    fs::create_directories(path.parent_path());
    const auto b = bytes();
    std::ofstream out(path, std::ios::binary);
    out.write(reinterpret_cast<const char*>(b.data()), static_cast<std::streamsize>(b.size()));
  }

  void push_i16(std::int16_t v) {
    frames.push_back(static_cast<std::uint8_t>(v & 0xff));
    frames.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
  }
  void push_i24(std::int32_t v) {
    for (int i = 0; i < 3; ++i) frames.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
  }
  void push_f32(float v) {
    std::uint8_t raw[4];
    std::memcpy(raw, &v, 4);
    frames.insert(frames.end(), raw, raw + 4);
  }
};

inline std::int16_t quantize16(double x) {
  const double s = std::round(x * 32768.0);
  return static_cast<std::int16_t>(std::clamp(s, -32768.0, 32767.0));
}

/// Mono PCM16 file of the given samples.
inline void write_pcm16(const fs::path& path, const std::vector<double>& samples, std::uint32_t rate = 16000) {
  RawWav w;
  w.rate = rate;
  for (double x : samples) w.push_i16(quantize16(x));
  w.write(path);
}

inline std::vector<double> sine(double freq, double amplitude, double seconds, double rate = 16000.0) {
  const auto n = static_cast<std::size_t>(seconds * rate);
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = amplitude * std::sin(2.0 * std::numbers::pi * freq * static_cast<double>(i) / rate);
  return s;
}

}  // namespace testing_support

/// Asserts that `stmt` throws vocalnmt::Error of the given kind.
#define EXPECT_ERROR_KIND(stmt, expected_kind)                                      \
  do {                                                                              \
    try {                                                                           \
      stmt;                                                                         \
      ADD_FAILURE() << "expected " << vocalnmt::to_string(expected_kind);           \
    } catch (const vocalnmt::Error& e_) {                                           \
      EXPECT_EQ(e_.kind(), expected_kind) << e_.what();                             \
    }                                                                               \
  } while (0)
