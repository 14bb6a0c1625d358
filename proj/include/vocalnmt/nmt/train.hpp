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

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <ostream>
#include <span>
#include <type_traits>
#include <vector>

#include "vocalnmt/format.hpp"
#include "vocalnmt/neural/adam.hpp"
#include "vocalnmt/nmt/decode.hpp"
#include "vocalnmt/nmt/model.hpp"

namespace vocalnmt::nmt {

struct TrainConfig {
  std::size_t epochs = 10;
  std::size_t batch_size = 1024;
  double lr = 0.001;
  std::uint64_t seed = 42;
  bool shuffle = true;
};

inline void validate(const TrainConfig& c) {
  if (c.epochs == 0) fail(ErrorKind::InvalidConfig, "epochs must be at least 1");
  if (c.batch_size == 0) fail(ErrorKind::InvalidConfig, "batch_size must be at least 1");
  if (!(c.lr > 0.0) || !std::isfinite(c.lr)) fail(ErrorKind::InvalidConfig, "lr must be positive and finite");
}

struct EpochMetrics {
  std::size_t epoch = 0;  // 1-based
  double train_loss = 0;
  double train_acc_padded = 0;
  double train_acc_masked = 0;
  double val_loss = 0;
  double val_acc_padded = 0;
  double val_acc_masked = 0;
  double wall_time_s = 0;
};

struct TrainReport {
  std::vector<EpochMetrics> epochs;

  const EpochMetrics& final() const { return epochs.back(); }
};

/// Per-epoch metrics as CSV. Wall time is left out so that reruns are
/// byte-identical.
inline void write_report_csv(std::ostream& out, const TrainReport& r) {
  out << "epoch,train_loss,train_acc_padded,train_acc_masked,val_loss,val_acc_padded,val_acc_masked\n";
  for (const auto& e : r.epochs) {
    out << e.epoch << ',' << fmt_real(e.train_loss) << ',' << fmt_real(e.train_acc_padded) << ','
        << fmt_real(e.train_acc_masked) << ',' << fmt_real(e.val_loss) << ',' << fmt_real(e.val_acc_padded) << ','
        << fmt_real(e.val_acc_masked) << '\n';
  }
}

inline void write_timing_csv(std::ostream& out, const TrainReport& r) {
  out << "epoch,wall_time_s\n";
  for (const auto& e : r.epochs) out << e.epoch << ',' << fmt_real(e.wall_time_s) << '\n';
}

struct EvalMetrics {
  double loss = 0;
  double acc_padded = 0;
  double acc_masked = 0;
};

/// Mean loss and both accuracies over a dataset, in chunks.
template <typename T>
EvalMetrics evaluate_loss(const Model<T>& model, const corpus::TokenizedDataset& data, std::size_t chunk = 1024) {
  const std::size_t t = model.spec().seq_len;
  if (data.source_ids.cols != t || data.target_ids.cols != t) {
    fail(ErrorKind::ShapeMismatch, "dataset width " + std::to_string(data.source_ids.cols) + " != seq_len " + std::to_string(t));
  }
  EvalMetrics m;
  if (data.size() == 0) return m;
  double loss_sum = 0;
  std::size_t hit = 0, hit_masked = 0, non_pad = 0;
  for (std::size_t start = 0; start < data.size(); start += chunk) {
    const std::size_t b = std::min(chunk, data.size() - start);
    const std::span<const TokenId> src(data.source_ids.data.data() + start * t, b * t);
    const std::span<const TokenId> tgt(data.target_ids.data.data() + start * t, b * t);
    const auto fp = model.forward(src, b);
    loss_sum += static_cast<double>(neural::sparse_ce_loss(fp.probs, tgt).loss) * static_cast<double>(b);
    const auto pred = argmax_rows(fp.probs);
    for (std::size_t i = 0; i < pred.size(); ++i) {
      const bool eq = pred[i] == tgt[i];
      hit += eq;
      if (tgt[i] != corpus::kPadId) {
        ++non_pad;
        hit_masked += eq;
      }
    }
  }
  const double n = static_cast<double>(data.size());
  m.loss = loss_sum / n;
  m.acc_padded = static_cast<double>(hit) / (n * static_cast<double>(t));
  m.acc_masked = non_pad == 0 ? 1.0 : static_cast<double>(hit_masked) / static_cast<double>(non_pad);
  return m;
}

/// Called after each epoch with the metrics just appended.
template <typename T>
using EpochCallback = std::function<void(const Model<T>&, const EpochMetrics&)>;

/// Mini-batch Adam on the sparse cross-entropy. Training metrics are the
/// running values over the epoch's batches (computed before each update);
/// validation metrics are computed after the epoch.
template <typename T>
TrainReport train(Model<T>& model, const corpus::TokenizedDataset& train_set,
                  const corpus::TokenizedDataset& val_set, const TrainConfig& cfg,
                  const std::type_identity_t<EpochCallback<T>>& on_epoch = {}) {
  validate(cfg);
  const std::size_t t = model.spec().seq_len;
  if (train_set.source_ids.cols != t || train_set.target_ids.cols != t) {
    fail(ErrorKind::ShapeMismatch,
         "training data width " + std::to_string(train_set.source_ids.cols) + " != seq_len " + std::to_string(t));
  }
  if (train_set.size() == 0) fail(ErrorKind::InvalidConfig, "empty training set");

  auto params = model.parameters();
  std::vector<const Tensor<T>*> cparams(params.begin(), params.end());
  neural::AdamState<T> adam(cparams, neural::AdamConfig{cfg.lr});
  Rng rng(cfg.seed);
  std::vector<std::size_t> order(train_set.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  TrainReport report;
  std::vector<TokenId> src, tgt;
  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    const auto started = std::chrono::steady_clock::now();
    if (cfg.shuffle) rng.shuffle(order);
    double loss_sum = 0;
    std::size_t hit = 0, hit_masked = 0, non_pad = 0;
    std::size_t batch_index = 0;
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size, ++batch_index) {
      const std::size_t b = std::min(cfg.batch_size, order.size() - start);
      src.clear();
      tgt.clear();
      for (std::size_t i = start; i < start + b; ++i) {
        const auto s = train_set.source_ids.row(order[i]);
        const auto g = train_set.target_ids.row(order[i]);
        src.insert(src.end(), s.begin(), s.end());
        tgt.insert(tgt.end(), g.begin(), g.end());
      }
      auto res = model.loss_and_grads(src, tgt, b);
      bool finite = std::isfinite(res.loss);
      for (std::size_t k = 0; finite && k < res.grads.size(); ++k) {
        for (T v : res.grads[k].data) {
          if (!std::isfinite(v)) {
            finite = false;
            break;
          }
        }
      }
      if (!finite) {
        fail(ErrorKind::NonFiniteLoss,
             "non-finite loss or gradient at epoch " + std::to_string(epoch) + ", batch " + std::to_string(batch_index));
      }
      loss_sum += static_cast<double>(res.loss) * static_cast<double>(b);
      const auto pred = argmax_rows(res.probs);
      for (std::size_t i = 0; i < pred.size(); ++i) {
        const bool eq = pred[i] == tgt[i];
        hit += eq;
        if (tgt[i] != corpus::kPadId) {
          ++non_pad;
          hit_masked += eq;
        }
      }
      std::vector<const Tensor<T>*> grads;
      for (const auto& g : res.grads) grads.push_back(&g);
      neural::adam_step<T>(params, grads, adam);
    }

    EpochMetrics em;
    em.epoch = epoch;
    const double n = static_cast<double>(train_set.size());
    em.train_loss = loss_sum / n;
    em.train_acc_padded = static_cast<double>(hit) / (n * static_cast<double>(t));
    em.train_acc_masked = non_pad == 0 ? 1.0 : static_cast<double>(hit_masked) / static_cast<double>(non_pad);
    if (val_set.size() > 0) {
      const auto vm = evaluate_loss(model, val_set, cfg.batch_size);
      em.val_loss = vm.loss;
      em.val_acc_padded = vm.acc_padded;
      em.val_acc_masked = vm.acc_masked;
    }
    em.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    report.epochs.push_back(em);
    if (on_epoch) on_epoch(model, em);
  }
  return report;
}

template <typename T>
TrainReport train(Model<T>& model, const corpus::DatasetSplit& data, const TrainConfig& cfg,
                  const std::type_identity_t<EpochCallback<T>>& on_epoch = {}) {
  return train(model, data.train, data.validation, cfg, on_epoch);
}

}  // namespace vocalnmt::nmt
