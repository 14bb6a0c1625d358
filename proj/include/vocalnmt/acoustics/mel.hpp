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
#include <cstddef>
#include <optional>
#include <vector>

#include "vocalnmt/acoustics/spectrogram.hpp"
#include "vocalnmt/error.hpp"

namespace vocalnmt::acoustics {

// Slaney mel scale: linear below 1 kHz, logarithmic above.
inline double hz_to_mel(double hz) {
  constexpr double f_sp = 200.0 / 3.0;
  constexpr double min_log_hz = 1000.0;
  constexpr double min_log_mel = min_log_hz / f_sp;
  const double logstep = std::log(6.4) / 27.0;
  if (hz < min_log_hz) return hz / f_sp;
  return min_log_mel + std::log(hz / min_log_hz) / logstep;
}

inline double mel_to_hz(double mel) {
  constexpr double f_sp = 200.0 / 3.0;
  constexpr double min_log_hz = 1000.0;
  constexpr double min_log_mel = min_log_hz / f_sp;
  const double logstep = std::log(6.4) / 27.0;
  if (mel < min_log_mel) return mel * f_sp;
  return min_log_hz * std::exp(logstep * (mel - min_log_mel));
}

struct MelParams {
  std::size_t n_mels = 128;
  double fmin = 0.0;
  std::optional<double> fmax;  // defaults to Nyquist
  bool area_normalize = true;
};

/// Triangular filters, row-major [n_mels x n_bins].
struct MelFilterbank {
  std::vector<double> weights;
  std::vector<double> center_hz;
  std::size_t n_mels = 0;
  std::size_t n_bins = 0;

  double at(std::size_t mel, std::size_t bin) const { return weights[mel * n_bins + bin]; }
};

inline MelFilterbank mel_filterbank(double sample_rate, std::size_t frame_size, const MelParams& params = {}) {
  const double nyquist = sample_rate / 2.0;
  const double fmax = params.fmax.value_or(nyquist);
  if (params.n_mels == 0) fail(ErrorKind::InvalidParams, "n_mels must be positive");
  if (!(params.fmin >= 0.0 && params.fmin < fmax && fmax <= nyquist)) {
    fail(ErrorKind::InvalidParams, "require 0 <= fmin < fmax <= sample_rate/2");
  }
  MelFilterbank fb;
  fb.n_mels = params.n_mels;
  fb.n_bins = frame_size / 2 + 1;
  fb.weights.assign(fb.n_mels * fb.n_bins, 0.0);

  const double mel_lo = hz_to_mel(params.fmin);
  const double mel_hi = hz_to_mel(fmax);
  std::vector<double> edges(params.n_mels + 2);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    edges[i] = mel_to_hz(mel_lo + (mel_hi - mel_lo) * static_cast<double>(i) / static_cast<double>(params.n_mels + 1));
  }
  fb.center_hz.assign(edges.begin() + 1, edges.end() - 1);

  for (std::size_t m = 0; m < params.n_mels; ++m) {
    const double lo = edges[m], mid = edges[m + 1], hi = edges[m + 2];
    const double scale = params.area_normalize ? 2.0 / (hi - lo) : 1.0;
    for (std::size_t k = 0; k < fb.n_bins; ++k) {
      const double f = static_cast<double>(k) * sample_rate / static_cast<double>(frame_size);
      const double rising = (f - lo) / (mid - lo);
      const double falling = (hi - f) / (hi - mid);
      fb.weights[m * fb.n_bins + k] = scale * std::max(0.0, std::min(rising, falling));
    }
  }
  return fb;
}

/// Mel power spectrogram, row-major [n_mels x n_frames].
struct MelSpectrogram {
  std::vector<double> values;
  std::size_t n_mels = 0;
  std::size_t n_frames = 0;

  double at(std::size_t mel, std::size_t frame) const { return values[mel * n_frames + frame]; }
};

inline MelSpectrogram apply_filterbank(const Spectrogram& spec, const MelFilterbank& fb) {
  if (fb.n_bins != spec.n_bins) fail(ErrorKind::InvalidParams, "filterbank does not match spectrogram bins");
  MelSpectrogram out;
  out.n_mels = fb.n_mels;
  out.n_frames = spec.n_frames;
  out.values.assign(out.n_mels * out.n_frames, 0.0);
  for (std::size_t m = 0; m < fb.n_mels; ++m) {
    for (std::size_t k = 0; k < fb.n_bins; ++k) {
      const double w = fb.at(m, k);
      if (w == 0.0) continue;
      for (std::size_t t = 0; t < spec.n_frames; ++t) {
        const double mag = spec.at(k, t);
        out.values[m * out.n_frames + t] += w * mag * mag;
      }
    }
  }
  return out;
}

inline MelSpectrogram mel_spectrogram(const Spectrogram& spec, const MelParams& params = {}) {
  return apply_filterbank(spec, mel_filterbank(spec.sample_rate, spec.frame_size, params));
}

}  // namespace vocalnmt::acoustics
