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
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "vocalnmt/neural/tensor.hpp"

namespace vocalnmt::neural {

/// Affine map applied independently at every leading position.
template <typename T>
struct DenseParams {
  Tensor<T> W;  // [in x out]
  Tensor<T> b;  // [out]

  std::size_t in() const { return W.shape.at(0); }
  std::size_t out() const { return W.shape.at(1); }
  std::size_t param_count() const { return W.size() + b.size(); }

  static DenseParams zeros(std::size_t in, std::size_t out) { return {Tensor<T>({in, out}), Tensor<T>({out})}; }

  static DenseParams init(std::size_t in, std::size_t out, Rng& rng) {
    auto p = zeros(in, out);
    glorot_uniform(p.W, in, out, rng);
    return p;
  }
};

inline std::size_t dense_param_count(std::size_t in, std::size_t out) { return in * out + out; }

/// Row-wise softmax of [rows x cols] values, in place.
template <typename T>
void softmax_rows(T* v, std::size_t rows, std::size_t cols) {
  for (std::size_t i = 0; i < rows; ++i) {
    T* row = v + i * cols;
    const T mx = *std::max_element(row, row + cols);
    T sum = 0;
    for (std::size_t j = 0; j < cols; ++j) {
      row[j] = std::exp(row[j] - mx);
      sum += row[j];
    }
    const T inv = T(1) / sum;
    for (std::size_t j = 0; j < cols; ++j) row[j] *= inv;
  }
}

template <typename T>
std::vector<T> softmax(std::span<const T> logits) {
  std::vector<T> out(logits.begin(), logits.end());
  softmax_rows(out.data(), 1, out.size());
  return out;
}

/// logits = h W + b over the last axis of h; the leading shape is kept.
template <typename T>
Tensor<T> dense_forward(const Tensor<T>& h, const DenseParams<T>& p) {
  if (h.shape.empty() || h.shape.back() != p.in()) {
    fail(ErrorKind::ShapeMismatch, "dense input " + shape_string(h.shape) + " does not end in " + std::to_string(p.in()));
  }
  require_shape(p.b, {p.out()}, "dense bias");
  auto shape = h.shape;
  shape.back() = p.out();
  Tensor<T> out(shape);
  const std::size_t rows = h.size() / p.in();
  for (std::size_t i = 0; i < rows; ++i) std::copy(p.b.data.begin(), p.b.data.end(), out.data.begin() + static_cast<std::ptrdiff_t>(i * p.out()));
  matmul_acc(h.data.data(), p.W.data.data(), out.data.data(), rows, p.in(), p.out());
  return out;
}

/// Probabilities with the same shape as the logits.
template <typename T>
Tensor<T> dense_softmax_forward(const Tensor<T>& h, const DenseParams<T>& p) {
  auto probs = dense_forward(h, p);
  softmax_rows(probs.data.data(), probs.size() / p.out(), p.out());
  return probs;
}

template <typename T>
struct DenseGrads {
  DenseParams<T> params;
  Tensor<T> inputs;
};

/// Backward of the affine map given dL/dlogits.
template <typename T>
DenseGrads<T> dense_backward(const Tensor<T>& h, const DenseParams<T>& p, const Tensor<T>& grad_logits) {
  auto expected = h.shape;
  if (!expected.empty()) expected.back() = p.out();
  require_shape(grad_logits, expected, "dense upstream gradient");
  const std::size_t rows = h.size() / p.in();
  DenseGrads<T> g{DenseParams<T>::zeros(p.in(), p.out()), Tensor<T>(h.shape)};
  matmul_at_acc(h.data.data(), grad_logits.data.data(), g.params.W.data.data(), rows, p.in(), p.out());
  for (std::size_t i = 0; i < rows; ++i) {
    const T* gl = grad_logits.data.data() + i * p.out();
    for (std::size_t j = 0; j < p.out(); ++j) g.params.b.data[j] += gl[j];
  }
  const auto Wt = transpose(p.W.data.data(), p.in(), p.out());
  matmul_acc(grad_logits.data.data(), Wt.data(), g.inputs.data.data(), rows, p.out(), p.in());
  return g;
}

template <typename T>
struct LossResult {
  T loss = 0;
  Tensor<T> grad_logits;  // softmax and cross-entropy combined
};

/// Mean of -log p[target] over every position, pads included. The gradient
/// is with respect to the logits that produced `probs`.
template <typename T>
LossResult<T> sparse_ce_loss(const Tensor<T>& probs, std::span<const std::int32_t> targets) {
  if (probs.shape.empty()) fail(ErrorKind::ShapeMismatch, "empty probability tensor");
  const std::size_t v = probs.shape.back();
  const std::size_t count = probs.size() / v;
  if (targets.size() != count) {
    fail(ErrorKind::ShapeMismatch, std::to_string(targets.size()) + " targets for " + std::to_string(count) + " positions");
  }
  LossResult<T> res{T(0), probs};
  if (count == 0) return res;
  const T inv = T(1) / static_cast<T>(count);
  double total = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const auto t = targets[i];
    if (t < 0 || static_cast<std::size_t>(t) >= v) {
      fail(ErrorKind::IndexOutOfRange, "target id " + std::to_string(t) + " outside [0, " + std::to_string(v) + ")");
    }
    const T pt = probs.data[i * v + static_cast<std::size_t>(t)];
    total -= std::log(std::max<double>(pt, std::numeric_limits<T>::min()));
    T* g = res.grad_logits.data.data() + i * v;
    g[t] -= T(1);
    for (std::size_t j = 0; j < v; ++j) g[j] *= inv;
  }
  res.loss = static_cast<T>(total / static_cast<double>(count));
  return res;
}

}  // namespace vocalnmt::neural
