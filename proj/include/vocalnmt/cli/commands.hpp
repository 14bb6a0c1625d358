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
#include <atomic>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "json.hpp"
#include "vocalnmt/audio/manifest.hpp"
#include "vocalnmt/audio/wav.hpp"
#include "vocalnmt/behavior/analysis.hpp"
#include "vocalnmt/behavior/export.hpp"
#include "vocalnmt/cli/config.hpp"
#include "vocalnmt/corpus/parallel.hpp"
#include "vocalnmt/corpus/synthetic.hpp"
#include "vocalnmt/corpus/vocabulary.hpp"
#include "vocalnmt/evaluation/bleu.hpp"
#include "vocalnmt/evaluation/report.hpp"
#include "vocalnmt/format.hpp"
#include "vocalnmt/nmt/checkpoint.hpp"
#include "vocalnmt/nmt/decode.hpp"
#include "vocalnmt/nmt/train.hpp"
#include "vocalnmt/sentiment/classify.hpp"
#include "vocalnmt/sentiment/lexicon.hpp"
#include "vocalnmt/sentiment/transcript.hpp"
#include "vocalnmt/sentiment/vader.hpp"

namespace vocalnmt::cli {

namespace fs = std::filesystem;

enum ExitCode : int { kExitOk = 0, kExitFatal = 1, kExitPartial = 2 };

/// Shared state of one invocation.
struct Context {
  RunConfig config;
  fs::path out_dir = ".";
  std::size_t jobs = 1;
  std::ostream* out = &std::cout;
  std::ostream* err = &std::cerr;
};

namespace detail {

inline void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorKind::IoError, "cannot create " + dir.string() + ": " + ec.message());
}

inline void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorKind::IoError, "cannot write " + path.string());
  body(f);
  if (!f) fail(ErrorKind::IoError, "write failed for " + path.string());
}

inline void write_json(const fs::path& path, const nlohmann::ordered_json& j) {
  write_file(path, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
}

inline void write_metadata(const Context& ctx, const std::string& command) {
  write_json(ctx.out_dir / "metadata.json", metadata(ctx.config, command));
}

inline std::string pick(const std::string& flag, const std::string& configured) {
  return flag.empty() ? configured : flag;
}

/// Runs a command body, mapping any failure to exit code 1.
inline int guarded(const Context& ctx, const std::function<int()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    *ctx.err << "error: " << e.what() << '\n';
  } catch (const nlohmann::json::exception& e) {
    *ctx.err << "error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    *ctx.err << "error: " << e.what() << '\n';
  }
  return kExitFatal;
}

inline sentiment::Lexicon load_lexicon_for(const Context& ctx, const std::string& flag) {
  const auto path = pick(flag, ctx.config.paths.lexicon);
  return sentiment::load_lexicon(path.empty() ? default_lexicon_path() : fs::path(path));
}

}  // namespace detail

// ---------------------------------------------------------------- analyze

struct AnalyzeOptions {
  std::string manifest;
  std::string audio_dir;
  std::string transcripts_dir;
  std::string lexicon;
  std::string group_by;
};

inline int cmd_analyze(Context& ctx, const AnalyzeOptions& opt) {
  return detail::guarded(ctx, [&]() -> int {
    auto& cfg = ctx.config;
    const auto manifest_path = detail::pick(opt.manifest, cfg.paths.manifest);
    if (manifest_path.empty()) fail(ErrorKind::InvalidConfig, "no manifest given");
    if (!opt.group_by.empty()) cfg.group_by = opt.group_by;
    if (cfg.group_by != "gender" && cfg.group_by != "sentence_id") {
      fail(ErrorKind::InvalidConfig, "group_by must be 'gender' or 'sentence_id'");
    }
    const auto records = audio::load_manifest(manifest_path);
    if (records.empty()) fail(ErrorKind::EmptyCohort, "manifest " + manifest_path + " lists no clips");
    const auto lexicon = detail::load_lexicon_for(ctx, opt.lexicon);

    const fs::path base = fs::path(manifest_path).parent_path();
    const auto audio_dir_s = detail::pick(opt.audio_dir, cfg.paths.audio_dir);
    const auto transcripts_dir_s = detail::pick(opt.transcripts_dir, cfg.paths.transcripts_dir);
    const fs::path audio_dir = audio_dir_s.empty() ? base : fs::path(audio_dir_s);
    const fs::path transcripts_dir = transcripts_dir_s.empty() ? base : fs::path(transcripts_dir_s);
    const sentiment::FileTranscriptProvider transcripts(transcripts_dir);

    using Outcome = std::variant<behavior::SessionAnalysis, std::string>;
    std::vector<Outcome> outcomes(records.size());
    auto work = [&](std::size_t i) {
      const auto& rec = records[i];
      try {
        fs::path audio_path(rec.audio_path);
        if (audio_path.is_relative()) audio_path = audio_dir / audio_path;
        const auto clip = audio::load_wav(audio_path);
        const auto text = sentiment::get_transcript(rec, transcripts);
        outcomes[i] = behavior::analyze_session(rec, clip, text, lexicon, cfg.analysis);
      } catch (const std::exception& e) {
        outcomes[i] = std::string(e.what());
      }
    };
    const std::size_t workers = std::max<std::size_t>(1, std::min(ctx.jobs, records.size()));
    if (workers == 1) {
      for (std::size_t i = 0; i < records.size(); ++i) work(i);
    } else {
      std::atomic<std::size_t> next{0};
      std::vector<std::thread> pool;
      for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
          for (std::size_t i; (i = next.fetch_add(1)) < records.size();) work(i);
        });
      }
      for (auto& t : pool) t.join();
    }

    // deterministic order by clip_id
    std::vector<std::size_t> order(records.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return records[a].clip_id < records[b].clip_id; });

    std::vector<behavior::SessionAnalysis> ok;
    auto failed = nlohmann::ordered_json::array();
    detail::ensure_dir(ctx.out_dir / "clips");
    for (auto i : order) {
      if (auto* a = std::get_if<behavior::SessionAnalysis>(&outcomes[i])) {
        detail::write_json(ctx.out_dir / "clips" / (records[i].clip_id + ".json"), behavior::to_json(*a));
        ok.push_back(*a);
      } else {
        const auto& msg = std::get<std::string>(outcomes[i]);
        *ctx.err << "warning: clip '" << records[i].clip_id << "' failed: " << msg << '\n';
        failed.push_back({{"clip_id", records[i].clip_id}, {"error", msg}});
      }
    }
    if (ok.empty()) fail(ErrorKind::EmptyCohort, "every clip failed");

    const auto by = cfg.group_by == "gender" ? behavior::GroupBy::gender : behavior::GroupBy::sentence_id;
    const auto summary = behavior::cohort_summary(ok, by);
    detail::write_file(ctx.out_dir / "sentiment_classes.csv",
                       [&](std::ostream& os) { behavior::write_class_histogram_csv(os, summary); });
    detail::write_file(ctx.out_dir / "intensity_by_group.csv",
                       [&](std::ostream& os) { behavior::write_group_means_csv(os, summary); });
    detail::write_file(ctx.out_dir / "sentiment_vs_intensity.csv",
                       [&](std::ostream& os) { behavior::write_comparison_csv(os, ok); });
    auto sj = behavior::to_json(summary);
    sj["group_by"] = cfg.group_by;
    sj["failed"] = failed;
    detail::write_json(ctx.out_dir / "cohort_summary.json", sj);
    detail::write_metadata(ctx, "analyze");

    *ctx.out << "analyzed " << ok.size() << " of " << records.size() << " clips";
    if (summary.pearson_r) *ctx.out << ", pearson_r=" << fmt_real(*summary.pearson_r);
    *ctx.out << '\n';
    return failed.empty() ? kExitOk : kExitPartial;
  });
}

// ----------------------------------------------------------------- corpus

struct CorpusPaths {
  std::string source;
  std::string target;
};

namespace detail {

inline corpus::ParallelCorpus load_corpus(const Context& ctx, const CorpusPaths& p) {
  const auto src = pick(p.source, ctx.config.paths.source);
  const auto tgt = pick(p.target, ctx.config.paths.target);
  if (src.empty() || tgt.empty()) fail(ErrorKind::InvalidConfig, "both --source and --target are required");
  return corpus::load_parallel(src, tgt);
}

}  // namespace detail

inline int cmd_corpus_stats(Context& ctx, const CorpusPaths& paths, std::size_t top_k = 10) {
  return detail::guarded(ctx, [&]() -> int {
    const auto c = detail::load_corpus(ctx, paths);
    const auto s = corpus::corpus_stats(c, top_k);
    auto& os = *ctx.out;
    os << "sentence_pairs " << s.stats.sentence_pairs << '\n'
       << "words_source " << s.stats.words_src << '\n'
       << "words_target " << s.stats.words_tgt << '\n'
       << "unique_source " << s.stats.unique_src << '\n'
       << "unique_target " << s.stats.unique_tgt << '\n';
    os << "top_source";
    for (const auto& w : s.top_src) os << ' ' << w.word << ':' << w.count;
    os << "\ntop_target";
    for (const auto& w : s.top_tgt) os << ' ' << w.word << ':' << w.count;
    os << '\n';
    return kExitOk;
  });
}

struct SubsetOptions {
  std::size_t max_vocab_src = 0;
  std::size_t max_vocab_tgt = 0;
  std::size_t max_len = 0;
};

inline int cmd_corpus_subset(Context& ctx, const CorpusPaths& paths, const SubsetOptions& opt) {
  return detail::guarded(ctx, [&]() -> int {
    const auto c = detail::load_corpus(ctx, paths);
    const auto sub = corpus::subset_corpus(c, opt.max_vocab_src, opt.max_vocab_tgt, opt.max_len);
    if (sub.size() == 0) *ctx.err << "warning: no sentence pair satisfies the limits\n";
    detail::ensure_dir(ctx.out_dir);
    corpus::write_parallel(sub, ctx.out_dir / "source.txt", ctx.out_dir / "target.txt");
    detail::write_metadata(ctx, "corpus subset");
    *ctx.out << "kept " << sub.size() << " of " << c.size() << " pairs\n";
    return kExitOk;
  });
}

inline corpus::ParallelCorpus synthetic_from(const RunConfig& cfg) {
  corpus::SyntheticOptions o;
  o.zipf_exponent = cfg.corpus.zipf_exponent;
  return corpus::generate_synthetic(cfg.corpus.pairs, cfg.corpus.vocab_src, cfg.corpus.vocab_tgt, cfg.corpus.max_len,
                                    cfg.seed, o);
}

inline int cmd_corpus_synth(Context& ctx) {
  return detail::guarded(ctx, [&]() -> int {
    const auto c = synthetic_from(ctx.config);
    detail::ensure_dir(ctx.out_dir);
    corpus::write_parallel(c, ctx.out_dir / "source.txt", ctx.out_dir / "target.txt");
    detail::write_metadata(ctx, "corpus synth");
    *ctx.out << "wrote " << c.size() << " pairs\n";
    return kExitOk;
  });
}

// -------------------------------------------------------------------- nmt

/// Training corpus: the configured files, or the seeded synthetic corpus
/// when none are given.
inline corpus::ParallelCorpus training_corpus(const RunConfig& cfg) {
  if (!cfg.paths.source.empty() || !cfg.paths.target.empty()) return corpus::load_parallel(cfg.paths.source, cfg.paths.target);
  return synthetic_from(cfg);
}

inline corpus::DatasetOptions dataset_options(const RunConfig& cfg) {
  corpus::DatasetOptions o;
  if (cfg.corpus.pad_length > 0) o.pad_length = cfg.corpus.pad_length;
  return o;
}

struct TrainOptions {
  std::vector<std::string> models;  // kinds; empty means the configured one
  bool checkpoint_every_epoch = false;
  bool write_timing = false;
};

inline int cmd_nmt_train(Context& ctx, const TrainOptions& opt) {
  return detail::guarded(ctx, [&]() -> int {
    auto& cfg = ctx.config;
    nmt::validate(cfg.train);
    std::vector<nmt::ModelKind> kinds;
    for (const auto& k : opt.models.empty() ? std::vector<std::string>{cfg.model.kind} : opt.models) {
      if (k == "both") {
        kinds.push_back(nmt::ModelKind::simple_gru);
        kinds.push_back(nmt::ModelKind::embedded_gru);
      } else {
        kinds.push_back(nmt::parse_model_kind(k));
      }
    }
    const auto data = corpus::make_dataset(training_corpus(cfg), dataset_options(cfg));
    const auto parts = corpus::split(data, cfg.corpus.split_ratio, cfg.seed);
    detail::ensure_dir(ctx.out_dir);
    for (auto kind : kinds) {
      const auto name = nmt::to_string(kind);
      const auto spec = nmt::spec_for(kind, data, cfg.model.hidden, cfg.model.embed_dim);
      auto model = nmt::build_model<float>(spec, cfg.seed);
      auto make_ck = [&](const nmt::Model<float>& m, std::size_t epoch) {
        return nmt::Checkpoint{m, cfg.seed, epoch, data.source_vocab, data.target_vocab};
      };
      nmt::EpochCallback<float> on_epoch = [&](const nmt::Model<float>& m, const nmt::EpochMetrics& e) {
        *ctx.err << name << " epoch " << e.epoch << ": loss " << fmt_real(e.train_loss) << ", val_acc_masked "
                 << fmt_real(e.val_acc_masked) << '\n';
        if (opt.checkpoint_every_epoch) {
          nmt::save_checkpoint(make_ck(m, e.epoch), ctx.out_dir / (name + "_epoch" + std::to_string(e.epoch) + ".ckpt"));
        }
      };
      const auto report = nmt::train(model, parts, cfg.train, on_epoch);
      detail::write_file(ctx.out_dir / (name + "_report.csv"),
                         [&](std::ostream& os) { nmt::write_report_csv(os, report); });
      if (opt.write_timing) {
        detail::write_file(ctx.out_dir / (name + "_timing.csv"),
                           [&](std::ostream& os) { nmt::write_timing_csv(os, report); });
      }
      nmt::save_checkpoint(make_ck(model, cfg.train.epochs), ctx.out_dir / (name + ".ckpt"));
      const auto& f = report.final();
      *ctx.out << name << ": params " << nmt::param_count(model) << ", val_acc_padded " << fmt_real(f.val_acc_padded)
               << ", val_acc_masked " << fmt_real(f.val_acc_masked) << '\n';
    }
    detail::write_metadata(ctx, "nmt train");
    return kExitOk;
  });
}

/// Source sentence -> target text through a checkpoint's vocabularies.
inline std::string translate(const nmt::Checkpoint& ck, std::string_view sentence) {
  if (!ck.source_vocab || !ck.target_vocab) fail(ErrorKind::InvalidConfig, "checkpoint carries no vocabularies");
  const auto ids = corpus::tokenize(corpus::preprocess(sentence), *ck.source_vocab);
  const auto padded = corpus::pad(ids, ck.model.spec().seq_len, true);
  const auto pred = nmt::predict(ck.model, std::span<const corpus::TokenId>(padded.data));
  return nmt::logits_to_text(std::span<const corpus::TokenId>(pred), *ck.target_vocab);
}

inline int cmd_nmt_translate(Context& ctx, const std::string& checkpoint, const std::vector<std::string>& sentences) {
  return detail::guarded(ctx, [&]() -> int {
    if (checkpoint.empty()) fail(ErrorKind::InvalidConfig, "no checkpoint given");
    const auto ck = nmt::load_checkpoint(checkpoint);
    for (const auto& s : sentences) *ctx.out << translate(ck, s) << '\n';
    return kExitOk;
  });
}

/// Held-out pairs: the configured files in full, or the validation part of
/// the synthetic corpus.
inline corpus::ParallelCorpus evaluation_corpus(const RunConfig& cfg) {
  if (!cfg.paths.source.empty() || !cfg.paths.target.empty()) return corpus::load_parallel(cfg.paths.source, cfg.paths.target);
  const auto full = synthetic_from(cfg);
  const auto idx = corpus::split_indices(full.size(), cfg.corpus.split_ratio, cfg.seed);
  corpus::ParallelCorpus out;
  for (auto i : idx.validation) out.pairs.push_back(full.pairs[i]);
  return out;
}

inline int cmd_nmt_evaluate(Context& ctx, const std::vector<std::string>& checkpoints) {
  return detail::guarded(ctx, [&]() -> int {
    if (checkpoints.empty()) fail(ErrorKind::InvalidConfig, "no checkpoint given");
    std::vector<nmt::Checkpoint> cks;
    for (const auto& p : checkpoints) cks.push_back(nmt::load_checkpoint(p));
    const auto pairs = evaluation_corpus(ctx.config);
    detail::ensure_dir(ctx.out_dir);
    std::vector<std::pair<std::string, evaluation::EvalReport>> reports;
    for (std::size_t i = 0; i < cks.size(); ++i) {
      const auto& ck = cks[i];
      if (!ck.source_vocab || !ck.target_vocab) fail(ErrorKind::InvalidConfig, checkpoints[i] + " carries no vocabularies");
      const auto test = corpus::encode_with(pairs, *ck.source_vocab, *ck.target_vocab, ck.model.spec().seq_len);
      auto rep = evaluation::evaluate_model(ck.model, test, ctx.config.bleu);
      std::string name = fs::path(checkpoints[i]).stem().string();
      for (const auto& [n, r] : reports) {
        if (n == name) name += "_" + std::to_string(i);
      }
      detail::write_file(ctx.out_dir / ("eval_" + name + ".csv"), [&](std::ostream& os) { evaluation::write_eval_csv(os, rep); });
      detail::write_json(ctx.out_dir / ("eval_" + name + ".json"), evaluation::to_json(rep));
      *ctx.out << name << ": mean_bleu " << fmt_real(rep.mean_bleu) << ", acc_padded " << fmt_real(rep.acc_padded)
               << ", acc_masked " << fmt_real(rep.acc_masked) << ", empty_hypotheses " << rep.empty_hypotheses << '\n';
      reports.emplace_back(name, std::move(rep));
    }
    if (reports.size() >= 2) {
      const auto cmp = evaluation::compare_models(reports);
      detail::write_file(ctx.out_dir / "comparison.csv", [&](std::ostream& os) { evaluation::write_comparison_csv(os, cmp); });
      detail::write_file(ctx.out_dir / "comparison.txt", [&](std::ostream& os) { os << evaluation::render_comparison(cmp); });
    }
    detail::write_metadata(ctx, "nmt evaluate");
    return kExitOk;
  });
}

// ------------------------------------------------------ sentiment / bleu

inline int cmd_sentiment(Context& ctx, const std::string& text, const std::string& lexicon_path = {}) {
  return detail::guarded(ctx, [&]() -> int {
    const auto lex = detail::load_lexicon_for(ctx, lexicon_path);
    const auto s = sentiment::polarity_scores(text, lex, ctx.config.analysis.sentiment);
    nlohmann::ordered_json j{{"neg", s.neg},
                             {"neu", s.neu},
                             {"pos", s.pos},
                             {"compound", s.compound},
                             {"class", std::string(sentiment::to_string(sentiment::classify_sentiment(s.compound)))}};
    *ctx.out << j.dump() << '\n';
    return kExitOk;
  });
}

inline int cmd_bleu(Context& ctx, const std::vector<std::string>& references, const std::string& hypothesis) {
  return detail::guarded(ctx, [&]() -> int {
    std::vector<evaluation::Tokens> refs;
    for (const auto& r : references) refs.push_back(evaluation::bleu_tokens(r));
    const auto s = evaluation::sentence_bleu(refs, evaluation::bleu_tokens(hypothesis), ctx.config.bleu);
    *ctx.out << evaluation::to_json(s).dump() << '\n';
    return kExitOk;
  });
}

}  // namespace vocalnmt::cli
