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

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "vocalnmt/neural/tensor.hpp"

namespace vocalnmt::neural {

struct AdamConfig {
  double lr = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// Moment estimates mirroring a fixed list of parameter tensors.
template <typename T>
struct AdamState {
  AdamConfig config;
  std::vector<Tensor<T>> m;
  std::vector<Tensor<T>> v;
  std::uint64_t t = 0;

  AdamState() = default;
  AdamState(std::span<const Tensor<T>* const> params, AdamConfig cfg = {}) : config(cfg) {
    for (const auto* p : params) {
      m.emplace_back(p->shape);
      v.emplace_back(p->shape);
    }
  }
};

/// One bias-corrected update: p -= lr * m_hat / (sqrt(v_hat) + eps).
template <typename T>
void adam_step(std::span<Tensor<T>* const> params, std::span<const Tensor<T>* const> grads, AdamState<T>& state) {
  if (params.size() != grads.size() || params.size() != state.m.size()) {
    fail(ErrorKind::ShapeMismatch, "adam: " + std::to_string(params.size()) + " params, " +
                                       std::to_string(grads.size()) + " grads, " + std::to_string(state.m.size()) +
                                       " moments");
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    require_shape(*grads[i], params[i]->shape, "adam gradient");
    require_shape(state.m[i], params[i]->shape, "adam moment");
  }
  ++state.t;
  const auto& c = state.config;
  const double bc1 = 1.0 - std::pow(c.beta1, static_cast<double>(state.t));
  const double bc2 = 1.0 - std::pow(c.beta2, static_cast<double>(state.t));
  const T b1 = static_cast<T>(c.beta1), b2 = static_cast<T>(c.beta2);
  const T step = static_cast<T>(c.lr / bc1);
  const T inv_bc2 = static_cast<T>(1.0 / bc2);
  const T eps = static_cast<T>(c.epsilon);
  for (std::size_t i = 0; i < params.size(); ++i) {
    T* p = params[i]->data.data();
    const T* g = grads[i]->data.data();
    T* m = state.m[i].data.data();
    T* v = state.v[i].data.data();
    for (std::size_t j = 0, n = params[i]->size(); j < n; ++j) {
      m[j] = b1 * m[j] + (T(1) - b1) * g[j];
      v[j] = b2 * v[j] + (T(1) - b2) * g[j] * g[j];
      p[j] -= step * m[j] / (std::sqrt(v[j] * inv_bc2) + eps);
    }
  }
}

}  // namespace vocalnmt::neural
