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
#include <bit>
#include <cmath>
#include <cstddef>
#include <vector>

#include "vocalnmt/acoustics/fft.hpp"
#include "vocalnmt/audio/wav.hpp"
#include "vocalnmt/error.hpp"

namespace vocalnmt::acoustics {

enum class Window { hann };

struct StftParams {
  std::size_t frame_size = 2048;
  std::size_t hop = 512;
};

/// Magnitude spectrogram stored bin-major: magnitudes[bin * n_frames + frame].
struct Spectrogram {
  std::vector<double> magnitudes;
  std::size_t n_bins = 0;
  std::size_t n_frames = 0;
  std::size_t frame_size = 0;
  std::size_t hop = 0;
  double sample_rate = 0.0;
  Window window = Window::hann;

  double at(std::size_t bin, std::size_t frame) const { return magnitudes[bin * n_frames + frame]; }
  double& at(std::size_t bin, std::size_t frame) { return magnitudes[bin * n_frames + frame]; }
  double bin_frequency(std::size_t bin) const {
    return static_cast<double>(bin) * sample_rate / static_cast<double>(frame_size);
  }
};

inline void validate(const StftParams& p) {
  if (p.frame_size == 0 || p.hop == 0) fail(ErrorKind::InvalidParams, "frame_size and hop must be positive");
  if (!std::has_single_bit(p.frame_size)) fail(ErrorKind::InvalidParams, "frame_size must be a power of two");
  if (p.hop > p.frame_size) fail(ErrorKind::InvalidParams, "hop must not exceed frame_size");
}

/// Number of hop-spaced frames covering `length` samples (ceil(length / hop)).
inline std::size_t frame_count(std::size_t length, std::size_t hop) { return (length + hop - 1) / hop; }

/// Frame t starts at sample t*hop; samples past the end of the clip are zero.
inline Spectrogram stft(const audio::AudioClip& clip, const StftParams& params = {}) {
  validate(params);
  if (clip.samples.empty()) fail(ErrorKind::InvalidParams, "clip has no samples");
  if (!(clip.sample_rate > 0.0)) fail(ErrorKind::InvalidParams, "sample rate must be positive");

  Spectrogram spec;
  spec.frame_size = params.frame_size;
  spec.hop = params.hop;
  spec.sample_rate = clip.sample_rate;
  spec.n_bins = params.frame_size / 2 + 1;
  spec.n_frames = frame_count(clip.samples.size(), params.hop);
  spec.magnitudes.assign(spec.n_bins * spec.n_frames, 0.0);

  const auto window = hann_window(params.frame_size);
  std::vector<double> frame(params.frame_size);
  for (std::size_t t = 0; t < spec.n_frames; ++t) {
    const std::size_t start = t * params.hop;
    for (std::size_t i = 0; i < params.frame_size; ++i) {
      const std::size_t s = start + i;
      frame[i] = s < clip.samples.size() ? clip.samples[s] * window[i] : 0.0;
    }
    const auto mag = rfft_magnitude(frame);
    for (std::size_t k = 0; k < spec.n_bins; ++k) spec.at(k, t) = mag[k];
  }
  return spec;
}

}  // namespace vocalnmt::acoustics
