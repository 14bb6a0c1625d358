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
#include <numeric>
#include <string_view>
#include <vector>

#include "vocalnmt/acoustics/spectrogram.hpp"
#include "vocalnmt/audio/wav.hpp"
#include "vocalnmt/error.hpp"

namespace vocalnmt::acoustics {

inline constexpr double kAmplitudeEpsilon = 1e-10;
inline constexpr double kFloorDb = -100.0;
inline constexpr double kDefaultReference = 1e-4;

/// 20*log10(amplitude / p_ref), with amplitude floored at 1e-10 and the
/// result clamped at -100 dB.
inline double amplitude_to_db(double amplitude, double p_ref) {
  if (!(p_ref > 0.0)) fail(ErrorKind::InvalidParams, "reference amplitude must be positive");
  const double db = 20.0 * std::log10(std::max(amplitude, kAmplitudeEpsilon) / p_ref);
  return std::max(db, kFloorDb);
}

struct IntensityProfile {
  std::vector<double> frame_db;
  double mean_db = kFloorDb;
  double p_ref = kDefaultReference;
};

/// Per-frame RMS level in dB. Frames share the stft framing; the RMS of the
/// final partial frames is taken over the samples that exist.
inline IntensityProfile intensity_profile(const audio::AudioClip& clip, const StftParams& params = {},
                                          double p_ref = kDefaultReference) {
  validate(params);
  if (!(p_ref > 0.0)) fail(ErrorKind::InvalidParams, "reference amplitude must be positive");
  if (clip.samples.empty()) fail(ErrorKind::InvalidParams, "clip has no samples");

  IntensityProfile out;
  out.p_ref = p_ref;
  const std::size_t n = clip.samples.size();
  const std::size_t frames = frame_count(n, params.hop);
  out.frame_db.reserve(frames);
  for (std::size_t t = 0; t < frames; ++t) {
    const std::size_t start = t * params.hop;
    const std::size_t stop = std::min(n, start + params.frame_size);
    double energy = 0.0;
    for (std::size_t i = start; i < stop; ++i) energy += clip.samples[i] * clip.samples[i];
    const double rms = std::sqrt(energy / static_cast<double>(stop - start));
    out.frame_db.push_back(amplitude_to_db(rms, p_ref));
  }
  out.mean_db = std::accumulate(out.frame_db.begin(), out.frame_db.end(), 0.0) /
                static_cast<double>(out.frame_db.size());
  return out;
}

/// Ordered quietest to loudest so that comparisons follow loudness.
enum class IntensityClass { whisper = 0, low_voice = 1, normal_speech = 2, excited = 3 };

inline std::string_view to_string(IntensityClass c) {
  switch (c) {
    case IntensityClass::whisper: return "whisper";
    case IntensityClass::low_voice: return "low_voice";
    case IntensityClass::normal_speech: return "normal_speech";
    case IntensityClass::excited: return "excited";
  }
  return "whisper";
}

/// Loudness bands: [.., 20) whisper, [20, 40) low voice, [40, 70] normal
/// speech, (70, ..] excited.
inline IntensityClass classify_intensity(double mean_db) {
  if (mean_db < 20.0) return IntensityClass::whisper;
  if (mean_db < 40.0) return IntensityClass::low_voice;
  if (mean_db <= 70.0) return IntensityClass::normal_speech;
  return IntensityClass::excited;
}

}  // namespace vocalnmt::acoustics
