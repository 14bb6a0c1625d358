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
#include <span>

#include "vocalnmt/neural/tensor.hpp"

namespace vocalnmt::neural {

template <typename T>
struct EmbeddingParams {
  Tensor<T> table;  // [vocab_size x embed_dim]

  std::size_t vocab_size() const { return table.shape.at(0); }
  std::size_t embed_dim() const { return table.shape.at(1); }
  std::size_t param_count() const { return table.size(); }

  static EmbeddingParams init(std::size_t vocab_size, std::size_t embed_dim, Rng& rng) {
    EmbeddingParams p{Tensor<T>({vocab_size, embed_dim})};
    glorot_uniform(p.table, vocab_size, embed_dim, rng);
    return p;
  }
};

/// Gathers one table row per id: output [ids.size() x embed_dim].
template <typename T>
Tensor<T> embedding_forward(std::span<const std::int32_t> ids, const EmbeddingParams<T>& params) {
  const std::size_t d = params.embed_dim();
  const std::size_t v = params.vocab_size();
  Tensor<T> out({ids.size(), d});
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const auto id = ids[i];
    if (id < 0 || static_cast<std::size_t>(id) >= v) {
      fail(ErrorKind::IndexOutOfRange, "embedding id " + std::to_string(id) + " outside [0, " + std::to_string(v) + ")");
    }
    std::copy_n(params.table.data.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(id) * d), d,
                out.data.begin() + static_cast<std::ptrdiff_t>(i * d));
  }
  return out;
}

/// Scatter-adds upstream rows into the rows that were gathered.
template <typename T>
void embedding_backward(std::span<const std::int32_t> ids, const Tensor<T>& grad_out, Tensor<T>& grad_table) {
  const std::size_t d = grad_table.shape.at(1);
  require_shape(grad_out, {ids.size(), d}, "embedding upstream gradient");
  for (std::size_t i = 0; i < ids.size(); ++i) {
    T* row = grad_table.data.data() + static_cast<std::size_t>(ids[i]) * d;
    const T* g = grad_out.data.data() + i * d;
    for (std::size_t j = 0; j < d; ++j) row[j] += g[j];
  }
}

}  // namespace vocalnmt::neural
