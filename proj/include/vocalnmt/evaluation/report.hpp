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
#include <iomanip>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "vocalnmt/corpus/vocabulary.hpp"
#include "vocalnmt/evaluation/bleu.hpp"
#include "vocalnmt/format.hpp"
#include "vocalnmt/nmt/decode.hpp"

namespace vocalnmt::evaluation {

struct SentenceEval {
  std::string source;
  std::string target;
  std::string prediction;
  std::optional<double> bleu;  // empty when the prediction has no tokens
  double acc_padded = 0;
  double acc_masked = 0;
};

struct EvalReport {
  std::vector<SentenceEval> sentences;
  /// Mean over every sentence; empty hypotheses contribute 0.
  double mean_bleu = 0;
  double acc_padded = 0;
  double acc_masked = 0;
  std::size_t empty_hypotheses = 0;
};

/// Scores a matrix of predicted target ids against a test set.
inline EvalReport evaluate_predictions(const corpus::TokenizedDataset& testset, const corpus::IdMatrix& predicted,
                                       const BleuConfig& config = {}) {
  if (predicted.rows != testset.size() || predicted.cols != testset.target_ids.cols) {
    fail(ErrorKind::ShapeMismatch, "prediction matrix does not match the test set");
  }
  EvalReport r;
  double bleu_sum = 0;
  for (std::size_t i = 0; i < testset.size(); ++i) {
    SentenceEval s;
    const auto src = testset.source_ids.row(i);
    const auto tgt = testset.target_ids.row(i);
    const auto pred = predicted.row(i);
    s.source = nmt::logits_to_text(src, testset.source_vocab);
    s.target = nmt::logits_to_text(tgt, testset.target_vocab);
    s.prediction = nmt::logits_to_text(pred, testset.target_vocab);
    s.acc_padded = nmt::accuracy(pred, tgt, false);
    s.acc_masked = nmt::accuracy(pred, tgt, true);
    try {
      s.bleu = sentence_bleu(bleu_tokens(s.target), bleu_tokens(s.prediction), config).score;
      bleu_sum += *s.bleu;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::EmptyHypothesis) throw;
      ++r.empty_hypotheses;
    }
    r.sentences.push_back(std::move(s));
  }
  if (!r.sentences.empty()) r.mean_bleu = bleu_sum / static_cast<double>(r.sentences.size());
  r.acc_padded = nmt::accuracy(predicted, testset.target_ids, false);
  r.acc_masked = nmt::accuracy(predicted, testset.target_ids, true);
  return r;
}

template <typename T>
EvalReport evaluate_model(const nmt::Model<T>& model, const corpus::TokenizedDataset& testset,
                          const BleuConfig& config = {}) {
  return evaluate_predictions(testset, nmt::predict(model, testset.source_ids), config);
}

struct ComparisonRow {
  std::string source;
  std::string target;
  std::vector<std::string> predictions;     // one per model
  std::vector<std::optional<double>> bleu;  // one per model
};

struct Comparison {
  std::vector<std::string> names;
  std::vector<ComparisonRow> rows;
  std::vector<double> mean_bleu;

  /// BLEU of model m minus the first model's, per row (empty counts as 0).
  std::vector<double> deltas(std::size_t m) const {
    std::vector<double> out;
    for (const auto& r : rows) out.push_back(r.bleu[m].value_or(0.0) - r.bleu[0].value_or(0.0));
    return out;
  }
};

inline Comparison compare_models(std::span<const std::pair<std::string, EvalReport>> reports) {
  if (reports.size() < 2) fail(ErrorKind::InvalidParams, "comparison needs at least two reports");
  const auto& base = reports.front().second.sentences;
  for (const auto& [name, rep] : reports) {
    if (rep.sentences.size() != base.size()) {
      fail(ErrorKind::MismatchedTestSets, name + " has " + std::to_string(rep.sentences.size()) + " sentences, expected " +
                                              std::to_string(base.size()));
    }
    for (std::size_t i = 0; i < base.size(); ++i) {
      if (rep.sentences[i].source != base[i].source || rep.sentences[i].target != base[i].target) {
        fail(ErrorKind::MismatchedTestSets, name + " differs from the first report at sentence " + std::to_string(i));
      }
    }
  }
  Comparison c;
  for (const auto& [name, rep] : reports) {
    c.names.push_back(name);
    c.mean_bleu.push_back(rep.mean_bleu);
  }
  for (std::size_t i = 0; i < base.size(); ++i) {
    ComparisonRow row{base[i].source, base[i].target, {}, {}};
    for (const auto& [name, rep] : reports) {
      row.predictions.push_back(rep.sentences[i].prediction);
      row.bleu.push_back(rep.sentences[i].bleu);
    }
    c.rows.push_back(std::move(row));
  }
  return c;
}

namespace detail {

inline std::string opt_real(const std::optional<double>& v) { return v ? fmt_real(*v) : std::string(); }

}  // namespace detail

inline void write_eval_csv(std::ostream& out, const EvalReport& r) {
  out << "index,source,target,prediction,bleu,acc_padded,acc_masked\n";
  for (std::size_t i = 0; i < r.sentences.size(); ++i) {
    const auto& s = r.sentences[i];
    out << i << ',' << csv_field(s.source) << ',' << csv_field(s.target) << ',' << csv_field(s.prediction) << ','
        << detail::opt_real(s.bleu) << ',' << fmt_real(s.acc_padded) << ',' << fmt_real(s.acc_masked) << '\n';
  }
}

inline nlohmann::ordered_json to_json(const EvalReport& r) {
  auto rows = nlohmann::ordered_json::array();
  for (const auto& s : r.sentences) {
    nlohmann::ordered_json j{{"source", s.source}, {"target", s.target}, {"prediction", s.prediction}};
    j["bleu"] = s.bleu ? nlohmann::ordered_json(*s.bleu) : nlohmann::ordered_json(nullptr);
    j["acc_padded"] = s.acc_padded;
    j["acc_masked"] = s.acc_masked;
    rows.push_back(std::move(j));
  }
  return {{"mean_bleu", r.mean_bleu},
          {"acc_padded", r.acc_padded},
          {"acc_masked", r.acc_masked},
          {"empty_hypotheses", r.empty_hypotheses},
          {"sentences", rows}};
}

inline void write_comparison_csv(std::ostream& out, const Comparison& c) {
  out << "index,source,target";
  for (const auto& n : c.names) out << ',' << csv_field(n + "_prediction") << ',' << csv_field(n + "_bleu");
  out << '\n';
  for (std::size_t i = 0; i < c.rows.size(); ++i) {
    const auto& r = c.rows[i];
    out << i << ',' << csv_field(r.source) << ',' << csv_field(r.target);
    for (std::size_t m = 0; m < c.names.size(); ++m) {
      out << ',' << csv_field(r.predictions[m]) << ',' << detail::opt_real(r.bleu[m]);
    }
    out << '\n';
  }
}

/// Plain-text table, one block per sentence with labels aligned.
inline std::string render_comparison(const Comparison& c) {
  std::size_t width = std::string("Target").size();
  for (const auto& n : c.names) width = std::max(width, n.size());
  std::ostringstream os;
  auto line = [&](const std::string& label, const std::string& text, const std::string& extra = "") {
    os << std::left << std::setw(static_cast<int>(width)) << label << "  " << text;
    if (!extra.empty()) os << "  [BLEU " << extra << ']';
    os << '\n';
  };
  for (std::size_t i = 0; i < c.rows.size(); ++i) {
    const auto& r = c.rows[i];
    os << "#" << i << '\n';
    line("Source", r.source);
    line("Target", r.target);
    for (std::size_t m = 0; m < c.names.size(); ++m) {
      std::ostringstream b;
      b << std::fixed << std::setprecision(4);
      if (r.bleu[m]) b << *r.bleu[m];
      else b << "n/a";
      line(c.names[m], r.predictions[m], b.str());
    }
    os << '\n';
  }
  os << "Mean BLEU:";
  for (std::size_t m = 0; m < c.names.size(); ++m) {
    os << ' ' << c.names[m] << '=' << std::fixed << std::setprecision(4) << c.mean_bleu[m];
  }
  os << '\n';
  return os.str();
}

}  // namespace vocalnmt::evaluation
