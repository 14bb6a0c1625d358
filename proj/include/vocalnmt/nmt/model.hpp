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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "vocalnmt/corpus/vocabulary.hpp"
#include "vocalnmt/neural/dense.hpp"
#include "vocalnmt/neural/embedding.hpp"
#include "vocalnmt/neural/gru.hpp"

namespace vocalnmt::nmt {

using corpus::TokenId;
using neural::Tensor;

enum class ModelKind { simple_gru, embedded_gru };

inline std::string to_string(ModelKind k) { return k == ModelKind::simple_gru ? "simple_gru" : "embedded_gru"; }

inline ModelKind parse_model_kind(const std::string& s) {
  if (s == "simple_gru" || s == "simple") return ModelKind::simple_gru;
  if (s == "embedded_gru" || s == "embedded") return ModelKind::embedded_gru;
  fail(ErrorKind::InvalidSpec, "unknown model kind '" + s + "'");
}

struct ModelSpec {
  ModelKind kind = ModelKind::simple_gru;
  std::size_t hidden = 64;
  std::size_t embed_dim = 64;          // embedded only
  std::size_t seq_len = 0;             // T
  std::size_t target_vocab_size = 0;   // output width V
  std::size_t source_vocab_size = 0;   // embedded only

  bool operator==(const ModelSpec&) const = default;
};

inline void validate(const ModelSpec& s) {
  if (s.hidden == 0) fail(ErrorKind::InvalidSpec, "hidden must be positive");
  if (s.seq_len == 0) fail(ErrorKind::InvalidSpec, "seq_len must be positive");
  if (s.target_vocab_size == 0) fail(ErrorKind::InvalidSpec, "target_vocab_size must be positive");
  if (s.kind == ModelKind::embedded_gru && (s.embed_dim == 0 || s.source_vocab_size == 0)) {
    fail(ErrorKind::InvalidSpec, "embedded model needs positive embed_dim and source_vocab_size");
  }
}

inline nlohmann::ordered_json to_json(const ModelSpec& s) {
  nlohmann::ordered_json j{{"kind", to_string(s.kind)}, {"hidden", s.hidden}, {"seq_len", s.seq_len},
                           {"target_vocab_size", s.target_vocab_size}};
  if (s.kind == ModelKind::embedded_gru) {
    j["embed_dim"] = s.embed_dim;
    j["source_vocab_size"] = s.source_vocab_size;
  }
  return j;
}

inline ModelSpec model_spec_from_json(const nlohmann::json& j) {
  ModelSpec s;
  s.kind = parse_model_kind(j.at("kind").get<std::string>());
  s.hidden = j.at("hidden").get<std::size_t>();
  s.seq_len = j.at("seq_len").get<std::size_t>();
  s.target_vocab_size = j.at("target_vocab_size").get<std::size_t>();
  if (s.kind == ModelKind::embedded_gru) {
    s.embed_dim = j.at("embed_dim").get<std::size_t>();
    s.source_vocab_size = j.at("source_vocab_size").get<std::size_t>();
  }
  return s;
}

/// One row of a layer summary.
struct LayerInfo {
  std::string name;
  std::vector<std::size_t> output_shape;  // without the batch axis
  std::size_t params = 0;
};

template <typename T>
struct ForwardPass {
  std::size_t batch = 0;
  Tensor<T> gru_input;   // [B x T x m]
  neural::GruCache<T> gru_cache;
  Tensor<T> hidden;      // [B x T x n]
  Tensor<T> probs;       // [B x T x V]
};

/// The two per-timestep sequence labelers. A default-constructed model has
/// no layers.
template <typename T>
class Model {
 public:
  Model() = default;

  static Model build(const ModelSpec& spec, std::uint64_t seed) {
    validate(spec);
    Model m;
    m.spec_ = spec;
    Rng rng(seed);
    std::size_t gru_in = 1;
    if (spec.kind == ModelKind::embedded_gru) {
      m.embedding_ = neural::EmbeddingParams<T>::init(spec.source_vocab_size, spec.embed_dim, rng);
      gru_in = spec.embed_dim;
    }
    m.gru_ = neural::GruParams<T>::init(gru_in, spec.hidden, rng);
    m.dense_ = neural::DenseParams<T>::init(spec.hidden, spec.target_vocab_size, rng);
    return m;
  }

  /// Same layout with every value zero; used for gradients and loading.
  static Model zeros_like(const ModelSpec& spec) {
    validate(spec);
    Model m;
    m.spec_ = spec;
    std::size_t gru_in = 1;
    if (spec.kind == ModelKind::embedded_gru) {
      m.embedding_ = neural::EmbeddingParams<T>{Tensor<T>({spec.source_vocab_size, spec.embed_dim})};
      gru_in = spec.embed_dim;
    }
    m.gru_ = neural::GruParams<T>::zeros(gru_in, spec.hidden);
    m.dense_ = neural::DenseParams<T>::zeros(spec.hidden, spec.target_vocab_size);
    return m;
  }

  bool empty() const { return !gru_.has_value(); }
  const ModelSpec& spec() const { return spec_; }

  /// Tensors in fixed order: embedding table (if any), the nine GRU tensors
  /// (W_z W_r W_h U_z U_r U_h b_z b_r b_h), dense W and b.
  std::vector<Tensor<T>*> parameters() {
    std::vector<Tensor<T>*> out;
    if (embedding_) out.push_back(&embedding_->table);
    if (gru_) {
      for (auto* t : gru_->tensors()) out.push_back(t);
    }
    if (dense_) {
      out.push_back(&dense_->W);
      out.push_back(&dense_->b);
    }
    return out;
  }

  std::vector<const Tensor<T>*> parameters() const {
    auto p = const_cast<Model*>(this)->parameters();
    return {p.begin(), p.end()};
  }

  std::vector<std::string> parameter_names() const {
    std::vector<std::string> names;
    if (embedding_) names.push_back("embedding/table");
    if (gru_) {
      for (const char* n : {"W_z", "W_r", "W_h", "U_z", "U_r", "U_h", "b_z", "b_r", "b_h"}) {
        names.push_back(std::string("gru/") + n);
      }
    }
    if (dense_) {
      names.push_back("dense/W");
      names.push_back("dense/b");
    }
    return names;
  }

  std::vector<LayerInfo> layers() const {
    std::vector<LayerInfo> out;
    if (empty()) return out;
    const std::size_t t = spec_.seq_len;
    if (embedding_) {
      out.push_back({"embedding_1", {t, spec_.embed_dim}, embedding_->param_count()});
    } else {
      out.push_back({"input_1", {t, 1}, 0});
    }
    out.push_back({"gru_1", {t, spec_.hidden}, gru_->param_count()});
    out.push_back({"time_distributed_1", {t, spec_.target_vocab_size}, dense_->param_count()});
    return out;
  }

  const neural::GruParams<T>& gru() const { return *gru_; }
  neural::GruParams<T>& gru() { return *gru_; }
  const neural::DenseParams<T>& dense() const { return *dense_; }
  neural::DenseParams<T>& dense() { return *dense_; }
  const std::optional<neural::EmbeddingParams<T>>& embedding() const { return embedding_; }

  /// Probabilities for `batch` rows of seq_len source ids each.
  ForwardPass<T> forward(std::span<const TokenId> source_ids, std::size_t batch) const {
    if (empty()) fail(ErrorKind::InvalidSpec, "forward on an empty model");
    const std::size_t t = spec_.seq_len;
    if (source_ids.size() != batch * t) {
      fail(ErrorKind::ShapeMismatch, std::to_string(source_ids.size()) + " source ids for " + std::to_string(batch) +
                                         " rows of length " + std::to_string(t));
    }
    ForwardPass<T> fp;
    fp.batch = batch;
    if (embedding_) {
      fp.gru_input = neural::embedding_forward(source_ids, *embedding_);
      fp.gru_input.shape = {batch, t, spec_.embed_dim};
    } else {
      fp.gru_input = Tensor<T>({batch, t, 1});
      for (std::size_t i = 0; i < source_ids.size(); ++i) fp.gru_input.data[i] = static_cast<T>(source_ids[i]);
    }
    fp.hidden = neural::gru_forward(fp.gru_input, *gru_, fp.gru_cache);
    fp.probs = neural::dense_softmax_forward(fp.hidden, *dense_);
    return fp;
  }

  /// Gradients for every parameter in parameters() order, given dL/dlogits.
  std::vector<Tensor<T>> backward(const ForwardPass<T>& fp, std::span<const TokenId> source_ids,
                                  const Tensor<T>& grad_logits) const {
    auto dg = neural::dense_backward(fp.hidden, *dense_, grad_logits);
    auto gg = neural::gru_backward(fp.gru_cache, *gru_, dg.inputs);
    std::vector<Tensor<T>> grads;
    if (embedding_) {
      Tensor<T> table({spec_.source_vocab_size, spec_.embed_dim});
      gg.inputs.shape = {source_ids.size(), spec_.embed_dim};
      neural::embedding_backward(source_ids, gg.inputs, table);
      grads.push_back(std::move(table));
    }
    for (auto* t : gg.params.tensors()) grads.push_back(std::move(*t));
    grads.push_back(std::move(dg.params.W));
    grads.push_back(std::move(dg.params.b));
    return grads;
  }

  struct LossAndGrads {
    T loss = 0;
    std::vector<Tensor<T>> grads;
    Tensor<T> probs;
  };

  LossAndGrads loss_and_grads(std::span<const TokenId> source_ids, std::span<const TokenId> target_ids,
                              std::size_t batch) const {
    auto fp = forward(source_ids, batch);
    auto lr = neural::sparse_ce_loss(fp.probs, target_ids);
    LossAndGrads out;
    out.loss = lr.loss;
    out.grads = backward(fp, source_ids, lr.grad_logits);
    out.probs = std::move(fp.probs);
    return out;
  }

  T loss(std::span<const TokenId> source_ids, std::span<const TokenId> target_ids, std::size_t batch) const {
    return neural::sparse_ce_loss(forward(source_ids, batch).probs, target_ids).loss;
  }

  template <typename U>
  Model<U> cast() const {
    Model<U> m = Model<U>::zeros_like(spec_);
    auto dst = m.parameters();
    auto src = parameters();
    for (std::size_t i = 0; i < src.size(); ++i) *dst[i] = src[i]->template cast<U>();
    return m;
  }

  bool operator==(const Model& o) const {
    if (spec_ != o.spec_ || empty() != o.empty()) return false;
    auto a = parameters();
    auto b = o.parameters();
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!(*a[i] == *b[i])) return false;
    }
    return true;
  }

 private:
  ModelSpec spec_;
  std::optional<neural::EmbeddingParams<T>> embedding_;
  std::optional<neural::GruParams<T>> gru_;
  std::optional<neural::DenseParams<T>> dense_;
};

template <typename T>
Model<T> build_model(const ModelSpec& spec, std::uint64_t seed) {
  return Model<T>::build(spec, seed);
}

/// Sum of all parameter tensor sizes; 0 for an empty model.
template <typename T>
std::size_t param_count(const Model<T>& model) {
  std::size_t n = 0;
  for (const auto* t : model.parameters()) n += t->size();
  return n;
}

/// Spec sized from a tokenized dataset: widths cover every id including
/// pad and unk.
inline ModelSpec spec_for(ModelKind kind, const corpus::TokenizedDataset& data, std::size_t hidden = 64,
                          std::size_t embed_dim = 64) {
  ModelSpec s;
  s.kind = kind;
  s.hidden = hidden;
  s.embed_dim = embed_dim;
  s.seq_len = data.pad_length;
  s.target_vocab_size = data.target_vocab.id_bound();
  s.source_vocab_size = kind == ModelKind::embedded_gru ? data.source_vocab.id_bound() : 0;
  return s;
}

}  // namespace vocalnmt::nmt
