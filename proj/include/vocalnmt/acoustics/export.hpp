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

#include "json.hpp"
#include "vocalnmt/acoustics/intensity.hpp"
#include "vocalnmt/acoustics/mel.hpp"
#include "vocalnmt/acoustics/spectrogram.hpp"
#include "vocalnmt/format.hpp"

namespace vocalnmt::acoustics {

inline void write_intensity_csv(std::ostream& out, const IntensityProfile& profile) {
  out << "frame_index,value\n";
  for (std::size_t t = 0; t < profile.frame_db.size(); ++t) {
    out << t << ',' << fmt_real(profile.frame_db[t]) << '\n';
  }
}

inline nlohmann::ordered_json to_json(const IntensityProfile& profile) {
  nlohmann::ordered_json j;
  j["p_ref"] = profile.p_ref;
  j["mean_db"] = profile.mean_db;
  j["frame_db"] = profile.frame_db;
  return j;
}

/// Long-form rows: one line per (frame, bin).
inline void write_spectrogram_csv(std::ostream& out, const Spectrogram& spec) {
  out << "frame_index,bin,value\n";
  for (std::size_t t = 0; t < spec.n_frames; ++t) {
    for (std::size_t k = 0; k < spec.n_bins; ++k) {
      out << t << ',' << k << ',' << fmt_real(spec.at(k, t)) << '\n';
    }
  }
}

inline nlohmann::ordered_json to_json(const Spectrogram& spec) {
  nlohmann::ordered_json j;
  j["frame_size"] = spec.frame_size;
  j["hop"] = spec.hop;
  j["sample_rate"] = spec.sample_rate;
  j["window"] = "hann";
  j["n_bins"] = spec.n_bins;
  j["n_frames"] = spec.n_frames;
  j["magnitudes"] = spec.magnitudes;
  return j;
}

inline void write_mel_csv(std::ostream& out, const MelSpectrogram& mel) {
  out << "frame_index,mel,value\n";
  for (std::size_t t = 0; t < mel.n_frames; ++t) {
    for (std::size_t m = 0; m < mel.n_mels; ++m) out << t << ',' << m << ',' << fmt_real(mel.at(m, t)) << '\n';
  }
}

}  // namespace vocalnmt::acoustics
