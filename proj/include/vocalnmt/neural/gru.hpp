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

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "vocalnmt/neural/tensor.hpp"

namespace vocalnmt::neural {

/// Single-bias GRU cell weights. Gate order everywhere is z, r, h.
template <typename T>
struct GruParams {
  Tensor<T> W_z, W_r, W_h;  // [input_dim x hidden]
  Tensor<T> U_z, U_r, U_h;  // [hidden x hidden]
  Tensor<T> b_z, b_r, b_h;  // [hidden]

  std::size_t input_dim() const { return W_z.shape.at(0); }
  std::size_t hidden() const { return W_z.shape.at(1); }

  static GruParams zeros(std::size_t input_dim, std::size_t hidden) {
    GruParams p;
    for (auto* w : {&p.W_z, &p.W_r, &p.W_h}) *w = Tensor<T>({input_dim, hidden});
    for (auto* u : {&p.U_z, &p.U_r, &p.U_h}) *u = Tensor<T>({hidden, hidden});
    for (auto* b : {&p.b_z, &p.b_r, &p.b_h}) *b = Tensor<T>({hidden});
    return p;
  }

  /// Glorot-uniform kernels, zero biases.
  static GruParams init(std::size_t input_dim, std::size_t hidden, Rng& rng) {
    auto p = zeros(input_dim, hidden);
    for (auto* w : {&p.W_z, &p.W_r, &p.W_h}) glorot_uniform(*w, input_dim, hidden, rng);
    for (auto* u : {&p.U_z, &p.U_r, &p.U_h}) glorot_uniform(*u, hidden, hidden, rng);
    return p;
  }

  std::array<Tensor<T>*, 9> tensors() { return {&W_z, &W_r, &W_h, &U_z, &U_r, &U_h, &b_z, &b_r, &b_h}; }
  std::array<const Tensor<T>*, 9> tensors() const {
    return {&W_z, &W_r, &W_h, &U_z, &U_r, &U_h, &b_z, &b_r, &b_h};
  }

  std::size_t param_count() const {
    std::size_t n = 0;
    for (const auto* t : tensors()) n += t->size();
    return n;
  }
};

inline std::size_t gru_param_count(std::size_t input_dim, std::size_t hidden) {
  return 3 * ((input_dim + hidden) * hidden + hidden);
}

/// Activations kept for the backward pass. Stored time-major so each step
/// is one contiguous [batch x hidden] block.
template <typename T>
struct GruCache {
  std::size_t batch = 0, steps = 0, input_dim = 0, hidden = 0;
  std::vector<T> x;   // [T x B x m]
  std::vector<T> h;   // [(T+1) x B x n], slot 0 is h0
  std::vector<T> z;   // [T x B x n]
  std::vector<T> r;   // [T x B x n]
  std::vector<T> hc;  // [T x B x n], candidate state
};

template <typename T>
struct GruGrads {
  GruParams<T> params;
  Tensor<T> inputs;  // [B x T x m]
  Tensor<T> h0;      // [B x n]
};

namespace detail {

/// [B x T x d] <-> [T x B x d] reorders.
template <typename T>
void to_time_major(const T* src, T* dst, std::size_t b, std::size_t t, std::size_t d) {
  for (std::size_t i = 0; i < b; ++i) {
    for (std::size_t s = 0; s < t; ++s) std::copy_n(src + (i * t + s) * d, d, dst + (s * b + i) * d);
  }
}

template <typename T>
void to_batch_major(const T* src, T* dst, std::size_t b, std::size_t t, std::size_t d) {
  for (std::size_t s = 0; s < t; ++s) {
    for (std::size_t i = 0; i < b; ++i) std::copy_n(src + (s * b + i) * d, d, dst + (i * t + s) * d);
  }
}

template <typename T>
void add_bias_rows(T* out, const T* bias, std::size_t rows, std::size_t n) {
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i * n + j] += bias[j];
  }
}

template <typename T>
void sum_rows_into(const T* a, T* out, std::size_t rows, std::size_t n) {
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[j] += a[i * n + j];
  }
}

}  // namespace detail

/// Runs the cell over x [B x T x m] from h0 [B x n] (empty means zeros).
/// Returns the hidden sequence [B x T x n].
template <typename T>
Tensor<T> gru_forward(const Tensor<T>& x, const GruParams<T>& p, GruCache<T>& cache, const Tensor<T>* h0 = nullptr) {
  const std::size_t m = p.input_dim(), n = p.hidden();
  if (x.shape.size() != 3 || x.shape[2] != m) {
    fail(ErrorKind::ShapeMismatch, "gru input " + shape_string(x.shape) + " does not end in input_dim " + std::to_string(m));
  }
  require_shape(p.U_z, {n, n}, "U_z");
  require_shape(p.U_r, {n, n}, "U_r");
  require_shape(p.U_h, {n, n}, "U_h");
  require_shape(p.W_r, {m, n}, "W_r");
  require_shape(p.W_h, {m, n}, "W_h");
  for (const auto* b : {&p.b_z, &p.b_r, &p.b_h}) require_shape(*b, {n}, "gru bias");
  const std::size_t B = x.shape[0], S = x.shape[1];
  if (h0) require_shape(*h0, {B, n}, "h0");

  cache.batch = B;
  cache.steps = S;
  cache.input_dim = m;
  cache.hidden = n;
  cache.x.resize(S * B * m);
  detail::to_time_major(x.data.data(), cache.x.data(), B, S, m);
  cache.h.assign((S + 1) * B * n, T(0));
  if (h0) std::copy(h0->data.begin(), h0->data.end(), cache.h.begin());

  // input projections for every step at once
  const std::size_t rows = S * B;
  cache.z.assign(rows * n, T(0));
  cache.r.assign(rows * n, T(0));
  cache.hc.assign(rows * n, T(0));
  matmul_acc(cache.x.data(), p.W_z.data.data(), cache.z.data(), rows, m, n);
  matmul_acc(cache.x.data(), p.W_r.data.data(), cache.r.data(), rows, m, n);
  matmul_acc(cache.x.data(), p.W_h.data.data(), cache.hc.data(), rows, m, n);
  detail::add_bias_rows(cache.z.data(), p.b_z.data.data(), rows, n);
  detail::add_bias_rows(cache.r.data(), p.b_r.data.data(), rows, n);
  detail::add_bias_rows(cache.hc.data(), p.b_h.data.data(), rows, n);

  std::vector<T> rh(B * n);
  const std::size_t blk = B * n;
  for (std::size_t s = 0; s < S; ++s) {
    const T* hp = cache.h.data() + s * blk;
    T* z = cache.z.data() + s * blk;
    T* r = cache.r.data() + s * blk;
    T* hc = cache.hc.data() + s * blk;
    T* h = cache.h.data() + (s + 1) * blk;
    matmul_acc(hp, p.U_z.data.data(), z, B, n, n);
    matmul_acc(hp, p.U_r.data.data(), r, B, n, n);
    for (std::size_t i = 0; i < blk; ++i) {
      z[i] = sigmoid(z[i]);
      r[i] = sigmoid(r[i]);
      rh[i] = r[i] * hp[i];
    }
    matmul_acc(rh.data(), p.U_h.data.data(), hc, B, n, n);
    for (std::size_t i = 0; i < blk; ++i) {
      hc[i] = std::tanh(hc[i]);
      h[i] = (T(1) - z[i]) * hp[i] + z[i] * hc[i];
    }
  }

  Tensor<T> out({B, S, n});
  detail::to_batch_major(cache.h.data() + blk, out.data.data(), B, S, n);
  return out;
}

template <typename T>
Tensor<T> gru_forward(const Tensor<T>& x, const GruParams<T>& p, const Tensor<T>* h0 = nullptr) {
  GruCache<T> cache;
  return gru_forward(x, p, cache, h0);
}

/// Backpropagation through time. grad_h_seq is dL/dh_t for every step,
/// [B x T x n].
template <typename T>
GruGrads<T> gru_backward(const GruCache<T>& cache, const GruParams<T>& p, const Tensor<T>& grad_h_seq) {
  const std::size_t B = cache.batch, S = cache.steps, m = cache.input_dim, n = cache.hidden;
  require_shape(grad_h_seq, {B, S, n}, "gru upstream gradient");
  if (p.input_dim() != m || p.hidden() != n) fail(ErrorKind::ShapeMismatch, "gru cache does not match parameters");

  const std::size_t blk = B * n, rows = S * B;
  std::vector<T> dh_seq(rows * n);
  detail::to_time_major(grad_h_seq.data.data(), dh_seq.data(), B, S, n);

  // pre-activation gradients per step, time-major
  std::vector<T> da_z(rows * n), da_r(rows * n), da_h(rows * n);
  const auto Uz_t = transpose(p.U_z.data.data(), n, n);
  const auto Ur_t = transpose(p.U_r.data.data(), n, n);
  const auto Uh_t = transpose(p.U_h.data.data(), n, n);

  GruGrads<T> g;
  g.params = GruParams<T>::zeros(m, n);
  std::vector<T> dh(blk, T(0)), dhp(blk), drh(blk), rh(blk);
  for (std::size_t s = S; s-- > 0;) {
    const T* hp = cache.h.data() + s * blk;
    const T* z = cache.z.data() + s * blk;
    const T* r = cache.r.data() + s * blk;
    const T* hc = cache.hc.data() + s * blk;
    T* az = da_z.data() + s * blk;
    T* ar = da_r.data() + s * blk;
    T* ah = da_h.data() + s * blk;
    const T* up = dh_seq.data() + s * blk;

    for (std::size_t i = 0; i < blk; ++i) {
      const T d = dh[i] + up[i];
      az[i] = d * (hc[i] - hp[i]) * z[i] * (T(1) - z[i]);
      ah[i] = d * z[i] * (T(1) - hc[i] * hc[i]);
      dhp[i] = d * (T(1) - z[i]);
      rh[i] = r[i] * hp[i];
    }
    std::fill(drh.begin(), drh.end(), T(0));
    matmul_acc(ah, Uh_t.data(), drh.data(), B, n, n);
    for (std::size_t i = 0; i < blk; ++i) {
      ar[i] = drh[i] * hp[i] * r[i] * (T(1) - r[i]);
      dhp[i] += drh[i] * r[i];
    }
    matmul_at_acc(rh.data(), ah, g.params.U_h.data.data(), B, n, n);
    matmul_at_acc(hp, az, g.params.U_z.data.data(), B, n, n);
    matmul_at_acc(hp, ar, g.params.U_r.data.data(), B, n, n);
    matmul_acc(az, Uz_t.data(), dhp.data(), B, n, n);
    matmul_acc(ar, Ur_t.data(), dhp.data(), B, n, n);
    dh.swap(dhp);
  }

  matmul_at_acc(cache.x.data(), da_z.data(), g.params.W_z.data.data(), rows, m, n);
  matmul_at_acc(cache.x.data(), da_r.data(), g.params.W_r.data.data(), rows, m, n);
  matmul_at_acc(cache.x.data(), da_h.data(), g.params.W_h.data.data(), rows, m, n);
  detail::sum_rows_into(da_z.data(), g.params.b_z.data.data(), rows, n);
  detail::sum_rows_into(da_r.data(), g.params.b_r.data.data(), rows, n);
  detail::sum_rows_into(da_h.data(), g.params.b_h.data.data(), rows, n);

  std::vector<T> dx(rows * m, T(0));
  const auto Wz_t = transpose(p.W_z.data.data(), m, n);
  const auto Wr_t = transpose(p.W_r.data.data(), m, n);
  const auto Wh_t = transpose(p.W_h.data.data(), m, n);
  matmul_acc(da_z.data(), Wz_t.data(), dx.data(), rows, n, m);
  matmul_acc(da_r.data(), Wr_t.data(), dx.data(), rows, n, m);
  matmul_acc(da_h.data(), Wh_t.data(), dx.data(), rows, n, m);
  g.inputs = Tensor<T>({B, S, m});
  detail::to_batch_major(dx.data(), g.inputs.data.data(), B, S, m);
  g.h0 = Tensor<T>({B, n});
  std::copy(dh.begin(), dh.end(), g.h0.data.begin());
  return g;
}

}  // namespace vocalnmt::neural
