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

// Scores a handful of conversational sentences with the bundled lexicon and
// prints compound score and five-way class for each.

#include <iomanip>
#include <iostream>

#include "vocalnmt/cli/config.hpp"
#include "vocalnmt/sentiment/classify.hpp"
#include "vocalnmt/sentiment/vader.hpp"

int main(int argc, char** argv) {
  using namespace vocalnmt;
  const auto lex = sentiment::load_lexicon(cli::default_lexicon_path());
  std::vector<std::string> lines{"Hello, how are you?", "You know I am finally feeling happy.", "Hi, good to see you.",
                                 "It feels great to talk to you after such a long time.", "oh my god, look at you.",
                                 "The phone is super cool.", "This is NOT good at all!!"};
  if (argc > 1) lines.assign(argv + 1, argv + argc);
  std::cout << std::left << std::setw(58) << "sentence" << std::setw(10) << "compound" << "class\n";
  for (const auto& line : lines) {
    const auto s = sentiment::polarity_scores(line, lex);
    std::cout << std::setw(58) << line << std::setw(10) << std::fixed << std::setprecision(4) << s.compound
              << sentiment::to_string(sentiment::classify_sentiment(s.compound)) << '\n';
  }
}
