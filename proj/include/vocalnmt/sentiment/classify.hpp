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

#include <cmath>
#include <string>
#include <string_view>

#include "vocalnmt/error.hpp"

namespace vocalnmt::sentiment {

/// Ordered most negative to most positive.
enum class SentimentClass { very_negative = 0, negative = 1, neutral = 2, positive = 3, very_positive = 4 };

inline std::string_view to_string(SentimentClass c) {
  switch (c) {
    case SentimentClass::very_negative: return "very_negative";
    case SentimentClass::negative: return "negative";
    case SentimentClass::neutral: return "neutral";
    case SentimentClass::positive: return "positive";
    case SentimentClass::very_positive: return "very_positive";
  }
  return "neutral";
}

/// Five-band split of the compound score. Ties at |0.05| go to the
/// non-neutral side and ties at |0.5| to the stronger class.
inline SentimentClass classify_sentiment(double compound) {
  if (!(compound >= -1.0 && compound <= 1.0)) {
    fail(ErrorKind::OutOfRange, "compound score must lie in [-1, 1]");
  }
  if (compound >= 0.5) return SentimentClass::very_positive;
  if (compound >= 0.05) return SentimentClass::positive;
  if (compound > -0.05) return SentimentClass::neutral;
  if (compound > -0.5) return SentimentClass::negative;
  return SentimentClass::very_negative;
}

}  // namespace vocalnmt::sentiment
