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

// Synthesises tones at several amplitudes, measures their mean level and
// maps each onto the speech-intensity classes.

#include <cmath>
#include <iomanip>
#include <iostream>
#include <numbers>

#include "vocalnmt/acoustics/intensity.hpp"

int main() {
  using namespace vocalnmt;
  constexpr double rate = 16000.0;
  std::cout << std::left << std::setw(12) << "amplitude" << std::setw(12) << "mean_db" << "class\n";
  for (double amp : {0.0, 0.0005, 0.005, 0.05, 0.5, 1.0}) {
    audio::AudioClip clip{std::vector<double>(static_cast<std::size_t>(rate)), rate};
    for (std::size_t i = 0; i < clip.samples.size(); ++i) {
      clip.samples[i] = amp * std::sin(2.0 * std::numbers::pi * 220.0 * static_cast<double>(i) / rate);
    }
    const auto prof = acoustics::intensity_profile(clip);
    std::cout << std::setw(12) << amp << std::setw(12) << std::fixed << std::setprecision(2) << prof.mean_db
              << acoustics::to_string(acoustics::classify_intensity(prof.mean_db)) << '\n';
    std::cout.unsetf(std::ios::fixed);
  }
}
