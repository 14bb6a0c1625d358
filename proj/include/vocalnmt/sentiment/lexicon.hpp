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

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "vocalnmt/error.hpp"
#include "vocalnmt/text.hpp"

namespace vocalnmt::sentiment {

inline constexpr double kBoosterIncrement = 0.293;

/// Token valences plus the booster and negation word lists that modulate
/// them. Keys are lowercase.
struct Lexicon {
  std::unordered_map<std::string, double> entries;
  std::unordered_map<std::string, double> boosters;
  std::unordered_set<std::string> negations;

  // load diagnostics
  std::size_t skipped_lines = 0;
  std::size_t duplicate_tokens = 0;

  bool contains(const std::string& lower) const { return entries.count(lower) != 0; }
};

inline std::unordered_set<std::string> default_negations() {
  return {"aint",     "arent",   "cannot",  "cant",     "couldnt", "darent",  "didnt",   "doesnt",
          "ain't",    "aren't",  "can't",   "couldn't", "daren't", "didn't",  "doesn't", "dont",
          "hadnt",    "hasnt",   "havent",  "isnt",     "mightnt", "mustnt",  "neither", "don't",
          "hadn't",   "hasn't",  "haven't", "isn't",    "mightn't", "mustn't", "neednt", "needn't",
          "never",    "none",    "nope",    "nor",      "not",     "nothing", "nowhere", "oughtnt",
          "shant",    "shouldnt", "uhuh",   "wasnt",    "werent",  "oughtn't", "shan't", "shouldn't",
          "uh-uh",    "wasn't",  "weren't", "without",  "wont",    "wouldnt", "won't",   "wouldn't",
          "rarely",   "seldom",  "despite"};
}

/// Degree adverbs: positive entries boost, negative entries dampen.
inline std::unordered_map<std::string, double> default_boosters(double incr = kBoosterIncrement) {
  const double up = incr;
  const double down = -incr;
  std::unordered_map<std::string, double> b;
  for (const char* w :
       {"absolutely", "amazingly", "awfully", "completely", "considerable", "considerably", "decidedly",
        "deeply", "effing", "enormous", "enormously", "entirely", "especially", "exceptional",
        "exceptionally", "extreme", "extremely", "fabulously", "flipping", "flippin", "frackin", "fracking",
        "fricking", "frickin", "frigging", "friggin", "fully", "fuckin", "fucking", "fuggin", "fugging",
        "greatly", "hella", "highly", "hugely", "incredible", "incredibly", "intensely", "major", "majorly",
        "more", "most", "particularly", "purely", "quite", "really", "remarkably", "so", "substantially",
        "thoroughly", "total", "totally", "tremendous", "tremendously", "uber", "unbelievably", "unusually",
        "utter", "utterly", "very"}) {
    b[w] = up;
  }
  for (const char* w :
       {"almost", "barely", "hardly", "just enough", "kind of", "kinda", "kindof", "kind-of", "less",
        "little", "marginal", "marginally", "occasional", "occasionally", "partly", "scarce", "scarcely",
        "slight", "slightly", "somewhat", "sort of", "sorta", "sortof", "sort-of"}) {
    b[w] = down;
  }
  return b;
}

/// Parses valence rows of the form `token TAB mean TAB stddev TAB ratings`.
/// Malformed rows are skipped and counted. A mixed-case token never shadows
/// an all-lowercase one since lookups are case-insensitive.
inline Lexicon parse_lexicon(std::istream& in) {
  Lexicon lex;
  lex.boosters = default_boosters();
  lex.negations = default_negations();
  std::unordered_set<std::string> exact;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string_view> fields;
    std::string_view rest(line);
    while (true) {
      const auto tab = rest.find('\t');
      fields.push_back(rest.substr(0, tab));
      if (tab == std::string_view::npos) break;
      rest.remove_prefix(tab + 1);
    }
    double valence = 0.0;
    if (fields.size() != 4 || fields[0].empty() || !parse_double(fields[1], valence)) {
      ++lex.skipped_lines;
      continue;
    }
    const std::string token(fields[0]);
    const std::string key = ascii_lower(token);
    const bool is_exact = token == key;
    auto it = lex.entries.find(key);
    if (it != lex.entries.end()) {
      ++lex.duplicate_tokens;
      if (!is_exact && exact.count(key)) continue;
    }
    lex.entries[key] = valence;
    if (is_exact) exact.insert(key);
  }
  if (lex.entries.empty()) fail(ErrorKind::EmptyLexicon, "no valid lexicon rows");
  return lex;
}

/// One token per line; blank lines ignored.
inline std::vector<std::string> read_word_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::FileMissing, path.string());
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    const auto t = trim_view(line);
    if (!t.empty()) words.push_back(ascii_lower(std::string(t)));
  }
  return words;
}

inline Lexicon load_lexicon(const std::filesystem::path& path,
                            const std::filesystem::path& boosters_path = {},
                            const std::filesystem::path& negations_path = {}) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::FileMissing, path.string());
  Lexicon lex = parse_lexicon(in);
  if (!boosters_path.empty()) {
    // "word" boosts by the default increment; "word<TAB>value" sets it
    lex.boosters.clear();
    for (auto& w : read_word_list(boosters_path)) {
      double incr = kBoosterIncrement;
      const auto tab = w.find('\t');
      if (tab != std::string::npos && parse_double(std::string_view(w).substr(tab + 1), incr)) {
        w.resize(tab);
      }
      lex.boosters[w] = incr;
    }
  }
  if (!negations_path.empty()) {
    lex.negations.clear();
    for (auto& w : read_word_list(negations_path)) lex.negations.insert(w);
  }
  return lex;
}

}  // namespace vocalnmt::sentiment
