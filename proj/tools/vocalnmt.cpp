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

// Command-line front end. Every subcommand delegates to vocalnmt::cli so
// the same code paths are exercised by the test suite.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vocalnmt/cli/commands.hpp"

namespace {

using namespace vocalnmt;

int run(int argc, char** argv) {
  CLI::App app{"Speech behaviour analysis and GRU translation toolkit", "vocalnmt"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(kVersion));

  std::string config_path;
  std::uint64_t seed = cli::kDefaultSeed;
  std::size_t jobs = 1;
  std::string out_dir = ".";
  app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  auto* seed_opt = app.add_option("--seed", seed, "Seed for every random choice (default 42)");
  app.add_option("--jobs", jobs, "Worker threads for per-clip analysis")->check(CLI::PositiveNumber);
  app.add_option("--out", out_dir, "Output directory");

  // analyze
  cli::AnalyzeOptions analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Intensity and sentiment per clip, cohort tables");
  analyze_cmd->add_option("--manifest", analyze.manifest, "Speaker manifest CSV");
  analyze_cmd->add_option("--audio-dir", analyze.audio_dir, "Base directory for relative audio paths");
  analyze_cmd->add_option("--transcripts-dir", analyze.transcripts_dir, "Base directory for transcripts");
  analyze_cmd->add_option("--lexicon", analyze.lexicon, "Sentiment lexicon (defaults to the bundled one)");
  analyze_cmd->add_option("--group-by", analyze.group_by, "gender or sentence_id")
      ->check(CLI::IsMember({"gender", "sentence_id"}));

  // corpus
  auto* corpus_cmd = app.add_subcommand("corpus", "Parallel corpus utilities");
  corpus_cmd->require_subcommand(1);
  cli::CorpusPaths corpus_paths;
  std::size_t top_k = 10;
  auto* stats_cmd = corpus_cmd->add_subcommand("stats", "Word counts and most frequent words");
  stats_cmd->add_option("--source", corpus_paths.source, "Source-language file, one sentence per line");
  stats_cmd->add_option("--target", corpus_paths.target, "Target-language file, line-aligned");
  stats_cmd->add_option("--top", top_k, "How many frequent words to list");
  cli::SubsetOptions subset;
  auto* subset_cmd = corpus_cmd->add_subcommand("subset", "Keep pairs inside vocabulary and length limits");
  subset_cmd->add_option("--source", corpus_paths.source, "Source-language file");
  subset_cmd->add_option("--target", corpus_paths.target, "Target-language file");
  subset_cmd->add_option("--max-vocab-src", subset.max_vocab_src, "Top-k source words allowed")->required();
  subset_cmd->add_option("--max-vocab-tgt", subset.max_vocab_tgt, "Top-k target words allowed")->required();
  subset_cmd->add_option("--max-len", subset.max_len, "Longest allowed sentence in tokens")->required();
  auto* synth_cmd = corpus_cmd->add_subcommand("synth", "Write a seeded synthetic corpus");
  std::optional<std::size_t> pairs, vocab_src, vocab_tgt, max_len;
  std::optional<double> zipf;
  synth_cmd->add_option("--pairs", pairs, "Number of sentence pairs");
  synth_cmd->add_option("--vocab-src", vocab_src, "Source vocabulary budget");
  synth_cmd->add_option("--vocab-tgt", vocab_tgt, "Target vocabulary budget");
  synth_cmd->add_option("--max-len", max_len, "Longest sentence in tokens");
  synth_cmd->add_option("--zipf", zipf, "Rank-frequency exponent for slot words");

  // nmt
  auto* nmt_cmd = app.add_subcommand("nmt", "Train, run and evaluate the GRU translators");
  nmt_cmd->require_subcommand(1);
  cli::TrainOptions train;
  std::optional<std::size_t> epochs, batch_size;
  std::optional<double> lr;
  std::string source, target;
  auto* train_cmd = nmt_cmd->add_subcommand("train", "Train and write per-epoch reports and checkpoints");
  train_cmd->add_option("--model", train.models, "simple_gru, embedded_gru or both (repeatable)");
  train_cmd->add_option("--source", source, "Source file (synthetic corpus when omitted)");
  train_cmd->add_option("--target", target, "Target file");
  train_cmd->add_option("--epochs", epochs, "Epoch count");
  train_cmd->add_option("--batch-size", batch_size, "Mini-batch size");
  train_cmd->add_option("--lr", lr, "Adam learning rate");
  train_cmd->add_flag("--checkpoint-every-epoch", train.checkpoint_every_epoch, "Write a checkpoint after each epoch");
  train_cmd->add_flag("--timing", train.write_timing, "Also write per-epoch wall times");
  std::string checkpoint;
  std::vector<std::string> texts;
  auto* translate_cmd = nmt_cmd->add_subcommand("translate", "Translate sentences with a checkpoint");
  translate_cmd->add_option("--checkpoint", checkpoint, "Checkpoint file")->required();
  translate_cmd->add_option("--text", texts, "Sentence to translate (repeatable)")->required();
  std::vector<std::string> checkpoints;
  auto* evaluate_cmd = nmt_cmd->add_subcommand("evaluate", "BLEU and accuracy on held-out pairs");
  evaluate_cmd->add_option("--checkpoint", checkpoints, "Checkpoint file (repeat to compare)")->required();
  evaluate_cmd->add_option("--source", source, "Held-out source file (synthetic validation split when omitted)");
  evaluate_cmd->add_option("--target", target, "Held-out target file");

  // sentiment / bleu
  std::string text, lexicon;
  auto* sentiment_cmd = app.add_subcommand("sentiment", "Score one sentence");
  sentiment_cmd->add_option("--text", text, "Sentence to score")->required();
  sentiment_cmd->add_option("--lexicon", lexicon, "Sentiment lexicon");
  std::vector<std::string> refs;
  std::string hyp;
  std::optional<std::size_t> max_n;
  std::string smoothing;
  auto* bleu_cmd = app.add_subcommand("bleu", "Sentence BLEU of a hypothesis");
  bleu_cmd->add_option("--ref", refs, "Reference sentence (repeatable)")->required();
  bleu_cmd->add_option("--hyp", hyp, "Hypothesis sentence")->required();
  bleu_cmd->add_option("--max-n", max_n, "Largest n-gram order");
  bleu_cmd->add_option("--smoothing", smoothing, "none, epsilon or add_one_counts")
      ->check(CLI::IsMember({"none", "epsilon", "add_one_counts"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kExitFatal;
  }

  cli::Context ctx;
  try {
    if (!config_path.empty()) ctx.config = cli::load_run_config(config_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitFatal;
  }
  if (*seed_opt) {
    ctx.config.seed = seed;
    ctx.config.train.seed = seed;
  }
  ctx.jobs = jobs;
  ctx.out_dir = out_dir;
  auto& cfg = ctx.config;

  if (*analyze_cmd) return cli::cmd_analyze(ctx, analyze);
  if (*stats_cmd) return cli::cmd_corpus_stats(ctx, corpus_paths, top_k);
  if (*subset_cmd) return cli::cmd_corpus_subset(ctx, corpus_paths, subset);
  if (*synth_cmd) {
    if (pairs) cfg.corpus.pairs = *pairs;
    if (vocab_src) cfg.corpus.vocab_src = *vocab_src;
    if (vocab_tgt) cfg.corpus.vocab_tgt = *vocab_tgt;
    if (max_len) cfg.corpus.max_len = *max_len;
    if (zipf) cfg.corpus.zipf_exponent = *zipf;
    return cli::cmd_corpus_synth(ctx);
  }
  if (!source.empty()) cfg.paths.source = source;
  if (!target.empty()) cfg.paths.target = target;
  if (*train_cmd) {
    if (epochs) cfg.train.epochs = *epochs;
    if (batch_size) cfg.train.batch_size = *batch_size;
    if (lr) cfg.train.lr = *lr;
    return cli::cmd_nmt_train(ctx, train);
  }
  if (*translate_cmd) return cli::cmd_nmt_translate(ctx, checkpoint, texts);
  if (*evaluate_cmd) return cli::cmd_nmt_evaluate(ctx, checkpoints);
  if (*sentiment_cmd) return cli::cmd_sentiment(ctx, text, lexicon);
  if (*bleu_cmd) {
    if (max_n) cfg.bleu.max_n = *max_n;
    if (!smoothing.empty()) cfg.bleu.smoothing = evaluation::parse_smoothing(smoothing);
    return cli::cmd_bleu(ctx, refs, hyp);
  }
  return cli::kExitFatal;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
