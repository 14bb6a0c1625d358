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

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "support.hpp"
#include "vocalnmt/corpus/parallel.hpp"
#include "vocalnmt/corpus/synthetic.hpp"
#include "vocalnmt/corpus/vocabulary.hpp"

using namespace vocalnmt;
using namespace vocalnmt::corpus;
namespace ts = testing_support;

namespace {

const std::vector<std::string> kGoldenSentences{
    "The quick brown fox jumps over the lazy dog .",
    "By Jove , my quick study of lexicography won a prize .",
    "This is a short sentence .",
};

ParallelCorpus make_corpus(std::initializer_list<std::pair<const char*, const char*>> pairs) {
  ParallelCorpus c;
  for (const auto& [s, t] : pairs) c.pairs.push_back({s, t});
  return c;
}

/// Brute-force subset: rank words by counting every token, keep top-k by
/// (count desc, first position asc), then filter.
ParallelCorpus subset_oracle(const ParallelCorpus& c, std::size_t ks, std::size_t kt, std::size_t max_len) {
  auto top = [](const std::vector<std::vector<std::string>>& sents, std::size_t k) {
    std::map<std::string, std::pair<std::size_t, std::size_t>> stat;  // count, first position
    std::size_t pos = 0;
    for (const auto& s : sents) {
      for (const auto& w : s) {
        auto [it, fresh] = stat.try_emplace(w, 0, pos);
        ++it->second.first;
        ++pos;
      }
    }
    std::vector<std::pair<std::string, std::pair<std::size_t, std::size_t>>> v(stat.begin(), stat.end());
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
      return a.second.first != b.second.first ? a.second.first > b.second.first : a.second.second < b.second.second;
    });
    std::set<std::string> keep;
    for (std::size_t i = 0; i < v.size() && i < k; ++i) keep.insert(v[i].first);
    return keep;
  };
  std::vector<std::vector<std::string>> src, tgt;
  for (const auto& p : c.pairs) {
    src.push_back(split_whitespace(preprocess(p.source)));
    tgt.push_back(split_whitespace(preprocess(p.target)));
  }
  const auto ks_set = top(src, ks), kt_set = top(tgt, kt);
  ParallelCorpus out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    bool ok = src[i].size() <= max_len && tgt[i].size() <= max_len;
    for (const auto& w : src[i]) ok = ok && ks_set.count(w);
    for (const auto& w : tgt[i]) ok = ok && kt_set.count(w);
    if (ok) out.pairs.push_back(c.pairs[i]);
  }
  return out;
}

}  // namespace

TEST(LoadParallel, ZipsLines) {
  const auto dir = ts::scratch_dir("par");
  ts::write_text(dir / "en.txt", "a\nb\nc\n");
  ts::write_text(dir / "fr.txt", "x\ny\nz\n");
  const auto c = load_parallel(dir / "en.txt", dir / "fr.txt");
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c.pairs[1].source, "b");
  EXPECT_EQ(c.pairs[2].target, "z");
}

TEST(LoadParallel, CrlfAndMissingFinalNewline) {
  const auto dir = ts::scratch_dir("par");
  ts::write_text(dir / "en.txt", "a\r\nb");
  ts::write_text(dir / "fr.txt", "x\ny\n");
  const auto c = load_parallel(dir / "en.txt", dir / "fr.txt");
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c.pairs[0].source, "a");
  EXPECT_EQ(c.pairs[1].source, "b");
}

TEST(LoadParallel, LineCountMismatchReportsBoth) {
  const auto dir = ts::scratch_dir("par");
  ts::write_text(dir / "en.txt", "1\n2\n3\n4\n5\n");
  ts::write_text(dir / "fr.txt", "1\n2\n3\n4\n");
  try {
    load_parallel(dir / "en.txt", dir / "fr.txt");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::LineCountMismatch);
    const std::string msg = e.what();
    EXPECT_NE(msg.find('5'), std::string::npos);
    EXPECT_NE(msg.find('4'), std::string::npos);
  }
  EXPECT_ERROR_KIND(load_parallel(dir / "nope.txt", dir / "fr.txt"), ErrorKind::FileMissing);
}

TEST(LoadParallel, WriteRoundTrip) {
  const auto dir = ts::scratch_dir("par");
  const auto c = make_corpus({{"new jersey is quiet .", "new jersey est calme ."}, {"a", "b"}});
  write_parallel(c, dir / "s.txt", dir / "t.txt");
  const auto back = load_parallel(dir / "s.txt", dir / "t.txt");
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back.pairs[0].target, "new jersey est calme .");
}

TEST(Preprocess, Rules) {
  EXPECT_EQ(preprocess("New Jersey is quiet."), "new jersey is quiet .");
  EXPECT_EQ(preprocess(""), "");
  EXPECT_EQ(preprocess("l'automne"), "l ' automne");
  EXPECT_EQ(preprocess("  Wait!Really?  \"Yes\";no:  "), "wait ! really ? \" yes \" ; no :");
  EXPECT_EQ(preprocess("a,b"), "a , b");
}

TEST(Preprocess, Idempotent) {
  for (const char* s : {"Hello, World!", "it's l'été.", "  x  y  "}) {
    const auto once = preprocess(s);
    EXPECT_EQ(preprocess(once), once);
  }
}

TEST(CorpusStats, SmallAndEmpty) {
  const auto s = corpus_stats(make_corpus({{"a a b", "x"}}));
  EXPECT_EQ(s.stats.words_src, 3u);
  EXPECT_EQ(s.stats.unique_src, 2u);
  ASSERT_FALSE(s.top_src.empty());
  EXPECT_EQ(s.top_src.front().word, "a");
  EXPECT_EQ(s.top_src.front().count, 2u);

  const auto e = corpus_stats(ParallelCorpus{});
  EXPECT_EQ(e.stats.sentence_pairs, 0u);
  EXPECT_EQ(e.stats.words_src + e.stats.words_tgt + e.stats.unique_src + e.stats.unique_tgt, 0u);
}

TEST(CorpusStats, TiesByFirstOccurrence) {
  const auto s = corpus_stats(make_corpus({{"c b a", "z"}, {"a b c", "z"}}), 2);
  ASSERT_EQ(s.top_src.size(), 2u);
  EXPECT_EQ(s.top_src[0].word, "c");
  EXPECT_EQ(s.top_src[1].word, "b");
}

TEST(FitTokenizer, GoldenDictionary) {
  const auto v = fit_tokenizer(kGoldenSentences);
  const std::vector<std::string> expected{"the", "quick", "a",   "brown", "fox",   "jumps", "over",
                                          "lazy", "dog",  "by",  "jove",  "my",    "study", "of",
                                          "lexicography", "won", "prize", "this", "is", "short", "sentence"};
  ASSERT_EQ(v.word_count(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_EQ(v.id_of(expected[i]), static_cast<TokenId>(i + 1));
}

TEST(FitTokenizer, SmallCases) {
  const std::vector<std::string> one{"a"};
  EXPECT_EQ(fit_tokenizer(one).id_of("a"), 1);
  const std::vector<std::string> two{"b a", "a"};
  const auto v = fit_tokenizer(two);
  EXPECT_EQ(v.id_of("a"), 1);
  EXPECT_EQ(v.id_of("b"), 2);
  const std::vector<std::string> none{"", " . , "};
  EXPECT_ERROR_KIND(fit_tokenizer(none), ErrorKind::EmptyInput);
}

TEST(FitTokenizer, FrequencyOrdering) {
  const std::vector<std::string> text{"x y z y z z w", "w w w q"};
  const auto v = fit_tokenizer(text);
  for (TokenId i = 1; i < static_cast<TokenId>(v.word_count()); ++i) EXPECT_GE(v.frequency(i), v.frequency(i + 1));
}

TEST(Tokenize, GoldenSequences) {
  const auto v = fit_tokenizer(kGoldenSentences);
  EXPECT_EQ(tokenize("this is a short sentence .", v), (std::vector<TokenId>{18, 19, 3, 20, 21}));
  EXPECT_EQ(tokenize("the quick brown fox jumps over the lazy dog", v),
            (std::vector<TokenId>{1, 2, 4, 5, 6, 7, 1, 8, 9}));
  EXPECT_EQ(tokenize(kGoldenSentences[1], v), (std::vector<TokenId>{10, 11, 12, 2, 13, 14, 15, 16, 3, 17}));
  EXPECT_EQ(tokenize("zebra", v), (std::vector<TokenId>{v.unk_id()}));
  EXPECT_EQ(v.unk_id(), 22);
}

TEST(Tokenize, DetokenizeRoundTrip) {
  const auto v = fit_tokenizer(kGoldenSentences);
  const std::vector<TokenId> ids{1, 2, 4, 5, 17, 21, 3};
  EXPECT_EQ(tokenize(detokenize(ids, v), v), ids);
  const std::vector<TokenId> with_specials{1, 0, v.unk_id(), 2};
  EXPECT_EQ(detokenize(with_specials, v), "the quick");
}

TEST(Vocabulary, BijectionAndReservedIds) {
  const auto v = fit_tokenizer(kGoldenSentences);
  for (const auto& [word, id] : v.entries()) {
    if (id == v.unk_id()) continue;
    EXPECT_EQ(v.word_of(id), word);
    EXPECT_EQ(v.id_of(word), id);
  }
  EXPECT_EQ(v.word_of(kPadId), "<PAD>");
  EXPECT_EQ(v.word_of(v.unk_id()), "<UNK>");
  EXPECT_EQ(v.id_bound(), v.word_count() + 2);
}

TEST(Vocabulary, JsonRoundTrip) {
  const auto v = fit_tokenizer(kGoldenSentences);
  EXPECT_EQ(vocabulary_from_json(to_json(v)), v);
}

TEST(Pad, Examples) {
  const auto m = pad(std::vector<TokenId>{18, 19, 3, 20, 21}, 10);
  EXPECT_EQ(m.data, (std::vector<TokenId>{18, 19, 3, 20, 21, 0, 0, 0, 0, 0}));
  EXPECT_EQ(pad(std::vector<TokenId>{}, 3).data, (std::vector<TokenId>{0, 0, 0}));
  EXPECT_ERROR_KIND(pad(std::vector<TokenId>{1, 2, 3}, 2), ErrorKind::SequenceTooLong);
  EXPECT_EQ(pad(std::vector<TokenId>{1, 2, 3}, 2, true).data, (std::vector<TokenId>{1, 2}));
}

TEST(Pad, PrefixPreserved) {
  const std::vector<std::vector<TokenId>> seqs{{5}, {1, 2, 3, 4}, {}, {9, 9}};
  const auto m = pad(seqs, 6);
  ASSERT_EQ(m.rows, 4u);
  for (std::size_t r = 0; r < seqs.size(); ++r) {
    for (std::size_t c = 0; c < 6; ++c) EXPECT_EQ(m.at(r, c), c < seqs[r].size() ? seqs[r][c] : kPadId);
  }
}

TEST(Dataset, PadLengthDefaultsToLongest) {
  const auto d = make_dataset(make_corpus({{"a b c", "x y"}, {"a", "x y z w"}}));
  EXPECT_EQ(d.pad_length, 4u);
  EXPECT_EQ(d.source_ids.cols, 4u);
  EXPECT_EQ(d.target_ids.at(1, 3), d.target_vocab.id_of("w"));
  for (auto id : d.source_ids.data) EXPECT_LT(static_cast<std::size_t>(id), d.source_vocab.id_bound());
}

TEST(Split, FullCorpusScaleSizes) {
  const auto s = split_indices(123892, 0.8, 42);
  EXPECT_EQ(s.train.size(), 99113u);
  EXPECT_EQ(s.validation.size(), 24779u);
}

TEST(Split, SmallAndDeterministicPartition) {
  const auto a = split_indices(10, 0.8, 7);
  EXPECT_EQ(a.train.size(), 8u);
  EXPECT_EQ(a.validation.size(), 2u);
  const auto b = split_indices(10, 0.8, 7);
  EXPECT_EQ(a.train, b.train);
  EXPECT_EQ(a.validation, b.validation);
  std::vector<std::size_t> all(a.train);
  all.insert(all.end(), a.validation.begin(), a.validation.end());
  std::sort(all.begin(), all.end());
  for (std::size_t i = 0; i < 10; ++i) EXPECT_EQ(all[i], i);
}

TEST(Split, InvalidRatio) {
  for (double r : {0.0, 1.0, -0.5, 1.5}) EXPECT_ERROR_KIND(split_indices(10, r, 1), ErrorKind::InvalidRatio);
}

TEST(Subset, LargeLimitsKeepEverything) {
  const auto c = make_corpus({{"a b", "x"}, {"c", "y z"}});
  const auto s = subset_corpus(c, 100, 100, 100);
  ASSERT_EQ(s.size(), 2u);
}

TEST(Subset, MatchesBruteForceOracle) {
  const auto c = make_corpus({{"a b", "x"}, {"c", "y"}, {"a a", "x x"}, {"b a c", "y x"}, {"a", "z"}});
  for (std::size_t ks = 1; ks <= 3; ++ks) {
    for (std::size_t kt = 1; kt <= 3; ++kt) {
      for (std::size_t len = 1; len <= 3; ++len) {
        const auto got = subset_corpus(c, ks, kt, len);
        const auto want = subset_oracle(c, ks, kt, len);
        ASSERT_EQ(got.size(), want.size()) << ks << kt << len;
        for (std::size_t i = 0; i < got.size(); ++i) EXPECT_EQ(got.pairs[i].source, want.pairs[i].source);
      }
    }
  }
  // top-1 source word is "a": only all-"a" sources survive
  const auto s = subset_corpus(c, 1, 3, 5);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s.pairs[0].source, "a a");
  EXPECT_EQ(s.pairs[1].source, "a");
}

TEST(Synthetic, Deterministic) {
  const auto a = generate_synthetic(10, 50, 60, 21, 5);
  const auto b = generate_synthetic(10, 50, 60, 21, 5);
  ASSERT_EQ(a.size(), 10u);
  for (std::size_t i = 0; i < 10; ++i) {
    EXPECT_EQ(a.pairs[i].source, b.pairs[i].source);
    EXPECT_EQ(a.pairs[i].target, b.pairs[i].target);
  }
  const auto c = generate_synthetic(10, 50, 60, 21, 6);
  bool differs = false;
  for (std::size_t i = 0; i < 10; ++i) differs = differs || a.pairs[i].source != c.pairs[i].source;
  EXPECT_TRUE(differs);
}

TEST(Synthetic, TargetIsWordImageOfSource) {
  const auto dict = synthetic_dictionary(50, 60).as_map();
  const auto c = generate_synthetic(300, 50, 60, 21, 11);
  for (const auto& p : c.pairs) {
    const auto s = split_whitespace(p.source);
    const auto t = split_whitespace(p.target);
    ASSERT_EQ(s.size(), t.size()) << p.source;
    for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(dict.at(s[i]), t[i]);
  }
}

TEST(Synthetic, VocabularyAndLengthBounds) {
  const auto c = generate_synthetic(2000, 50, 60, 15, 3);
  const auto s = corpus_stats(c);
  EXPECT_LE(s.stats.unique_src, 50u);
  EXPECT_LE(s.stats.unique_tgt, 60u);
  for (const auto& p : c.pairs) {
    EXPECT_LE(split_whitespace(p.source).size(), 15u);
    EXPECT_LE(split_whitespace(p.target).size(), 15u);
  }
}

TEST(Synthetic, InvalidParams) {
  EXPECT_ERROR_KIND(generate_synthetic(0, 50, 60, 21, 1), ErrorKind::InvalidParams);
  EXPECT_ERROR_KIND(generate_synthetic(10, 3, 60, 21, 1), ErrorKind::InvalidParams);
}
