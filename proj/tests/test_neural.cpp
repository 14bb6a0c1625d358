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

#include <cmath>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "support.hpp"
#include "vocalnmt/neural/adam.hpp"
#include "vocalnmt/neural/dense.hpp"
#include "vocalnmt/neural/embedding.hpp"
#include "vocalnmt/neural/grad_check.hpp"
#include "vocalnmt/neural/gru.hpp"
#include "vocalnmt/neural/tensor.hpp"
#include "vocalnmt/rng.hpp"

using namespace vocalnmt;
using namespace vocalnmt::neural;
using Td = Tensor<double>;

namespace {

Td random_tensor(std::vector<std::size_t> shape, Rng& rng, double scale = 1.0) {
  Td t(std::move(shape));
  for (auto& v : t.data) v = rng.uniform(-scale, scale);
  return t;
}

double sig(double x) { return 1.0 / (1.0 + std::exp(-x)); }

/// Fixed random projection of the outputs so the scalar loss touches every
/// element with a distinct weight.
struct Projection {
  Td weights;
  double apply(const Td& out) const {
    double s = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) s += weights.data[i] * out.data[i];
    return s;
  }
};

}  // namespace

TEST(Gru, ZeroParamsStayAtZero) {
  const auto p = GruParams<double>::zeros(3, 4);
  Rng rng(1);
  const auto h = gru_forward(random_tensor({2, 5, 3}, rng), p);
  for (double v : h.data) EXPECT_EQ(v, 0.0);
}

TEST(Gru, ScalarHandCase) {
  auto p = GruParams<double>::zeros(1, 1);
  for (auto* t : p.tensors()) t->data[0] = 0.5;
  Td x({1, 1, 1}, 1.0);
  // h0 = 0: z = r = sig(1), candidate tanh(1)
  const double z = sig(1.0);
  EXPECT_NEAR(gru_forward(x, p).data[0], z * std::tanh(1.0), 1e-12);

  // h0 = 0.4: every term of the four formulas contributes
  Td h0({1, 1}, 0.4);
  const double zz = sig(0.5 + 0.4 * 0.5 + 0.5);
  const double rr = sig(0.5 + 0.4 * 0.5 + 0.5);
  const double hc = std::tanh(0.5 + (rr * 0.4) * 0.5 + 0.5);
  const double h1 = (1.0 - zz) * 0.4 + zz * hc;
  EXPECT_NEAR(gru_forward(x, p, &h0).data[0], h1, 1e-12);
}

TEST(Gru, TwoStepHandCase) {
  auto p = GruParams<double>::zeros(1, 1);
  p.W_z.data[0] = 0.3;
  p.W_r.data[0] = -0.2;
  p.W_h.data[0] = 0.7;
  p.U_z.data[0] = 0.1;
  p.U_r.data[0] = 0.4;
  p.U_h.data[0] = -0.6;
  p.b_z.data[0] = 0.05;
  p.b_r.data[0] = -0.1;
  p.b_h.data[0] = 0.2;
  Td x({1, 2, 1});
  x.data = {1.5, -0.5};
  double h = 0.0;
  std::vector<double> want;
  for (double xt : x.data) {
    const double z = sig(xt * 0.3 + h * 0.1 + 0.05);
    const double r = sig(xt * -0.2 + h * 0.4 - 0.1);
    const double c = std::tanh(xt * 0.7 + (r * h) * -0.6 + 0.2);
    h = (1 - z) * h + z * c;
    want.push_back(h);
  }
  const auto got = gru_forward(x, p);
  EXPECT_NEAR(got.data[0], want[0], 1e-12);
  EXPECT_NEAR(got.data[1], want[1], 1e-12);
}

TEST(Gru, ParameterCountFormula) {
  EXPECT_EQ(gru_param_count(1, 64), 12672u);
  EXPECT_EQ(gru_param_count(64, 64), 24768u);
  for (std::size_t m : {1u, 3u, 64u}) {
    for (std::size_t n : {1u, 8u, 64u}) {
      EXPECT_EQ(gru_param_count(m, n), 3 * ((m + n) * n + n));
      EXPECT_EQ(GruParams<double>::zeros(m, n).param_count(), gru_param_count(m, n));
    }
  }
}

TEST(Gru, ShapeMismatch) {
  const auto p = GruParams<double>::zeros(3, 4);
  EXPECT_ERROR_KIND(gru_forward(Td({2, 5, 2}), p), ErrorKind::ShapeMismatch);
  Td bad_h0({2, 3});
  EXPECT_ERROR_KIND(gru_forward(Td({2, 5, 3}), p, &bad_h0), ErrorKind::ShapeMismatch);
}

TEST(Gru, ZeroUpstreamGradientGivesZeroGradients) {
  Rng rng(2);
  const auto p = GruParams<double>::init(3, 4, rng);
  GruCache<double> cache;
  gru_forward(random_tensor({2, 5, 3}, rng), p, cache);
  const auto g = gru_backward(cache, p, Td({2, 5, 4}));
  for (const auto* t : g.params.tensors()) {
    for (double v : t->data) EXPECT_EQ(v, 0.0);
  }
  for (double v : g.inputs.data) EXPECT_EQ(v, 0.0);
}

TEST(Gru, BackwardMatchesFiniteDifferences) {
  Rng rng(3);
  auto p = GruParams<double>::init(3, 4, rng);
  for (auto* b : {&p.b_z, &p.b_r, &p.b_h}) *b = random_tensor(b->shape, rng, 0.5);
  Td x = random_tensor({2, 5, 3}, rng);
  Td h0 = random_tensor({2, 4}, rng, 0.5);
  const Projection proj{random_tensor({2, 5, 4}, rng)};

  GruCache<double> cache;
  gru_forward(x, p, cache, &h0);
  const auto g = gru_backward(cache, p, proj.weights);

  auto loss = [&] { return proj.apply(gru_forward(x, p, &h0)); };
  std::vector<Td*> params;
  std::vector<const Td*> grads;
  for (auto* t : p.tensors()) params.push_back(t);
  for (const auto* t : g.params.tensors()) grads.push_back(t);
  params.push_back(&x);
  grads.push_back(&g.inputs);
  params.push_back(&h0);
  grads.push_back(&g.h0);
  const auto res = grad_check(params, grads, loss);
  EXPECT_TRUE(res.passed()) << res.max_relative_error << " tensor " << res.worst_tensor;
  EXPECT_EQ(res.checked, p.param_count() + x.size() + h0.size());
}

TEST(Gru, ForwardIsDeterministic) {
  Rng rng(4);
  const auto p = GruParams<float>::init(2, 6, rng);
  Tensor<float> x({3, 4, 2});
  for (auto& v : x.data) v = static_cast<float>(rng.uniform(-1, 1));
  EXPECT_EQ(gru_forward(x, p).data, gru_forward(x, p).data);
}

TEST(Embedding, GatherAndCount) {
  Rng rng(5);
  const auto e = EmbeddingParams<double>::init(7, 3, rng);
  const std::vector<std::int32_t> ids{0, 6, 0};
  const auto out = embedding_forward<double>(ids, e);
  ASSERT_EQ(out.shape, (std::vector<std::size_t>{3, 3}));
  for (std::size_t j = 0; j < 3; ++j) {
    EXPECT_EQ(out.at(0, j), e.table.at(0, j));
    EXPECT_EQ(out.at(1, j), e.table.at(6, j));
  }
  EXPECT_EQ(EmbeddingParams<double>{Td({350, 64})}.param_count(), 22400u);
}

TEST(Embedding, RepeatedIdSumsGradients) {
  const std::vector<std::int32_t> ids{2, 1, 2};
  Td grad_out({3, 2});
  grad_out.data = {1.0, 2.0, 10.0, 20.0, 0.5, -4.0};
  Td table({4, 2});
  embedding_backward<double>(ids, grad_out, table);
  EXPECT_DOUBLE_EQ(table.at(2, 0), 1.5);
  EXPECT_DOUBLE_EQ(table.at(2, 1), -2.0);
  EXPECT_DOUBLE_EQ(table.at(1, 0), 10.0);
  EXPECT_DOUBLE_EQ(table.at(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(table.at(3, 1), 0.0);
}

TEST(Embedding, OutOfRangeId) {
  Rng rng(6);
  const auto e = EmbeddingParams<double>::init(4, 2, rng);
  EXPECT_ERROR_KIND(embedding_forward<double>(std::vector<std::int32_t>{4}, e), ErrorKind::IndexOutOfRange);
  EXPECT_ERROR_KIND(embedding_forward<double>(std::vector<std::int32_t>{-1}, e), ErrorKind::IndexOutOfRange);
}

TEST(Softmax, ClosedForm) {
  const std::vector<double> logits{1.0, 2.0, 3.0};
  const auto p = softmax<double>(logits);
  EXPECT_NEAR(p[0], 0.09003, 5e-6);
  EXPECT_NEAR(p[1], 0.24473, 5e-6);
  EXPECT_NEAR(p[2], 0.66524, 5e-6);
  const auto u = softmax<double>(std::vector<double>{4.0, 4.0, 4.0, 4.0});
  for (double v : u) EXPECT_DOUBLE_EQ(v, 0.25);
}

TEST(Softmax, RowsSumToOneAndShiftInvariant) {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> x(9);
    for (auto& v : x) v = rng.uniform(-30, 30);
    const auto p = softmax<double>(x);
    EXPECT_NEAR(std::accumulate(p.begin(), p.end(), 0.0), 1.0, 1e-6);
    const double c = rng.uniform(-500, 500);
    std::vector<double> shifted(x);
    for (auto& v : shifted) v += c;
    const auto q = softmax<double>(shifted);
    for (std::size_t i = 0; i < p.size(); ++i) EXPECT_NEAR(p[i], q[i], 1e-6);
  }
  // large logits must not overflow
  const auto big = softmax<double>(std::vector<double>{1000.0, 1001.0});
  EXPECT_NEAR(big[1], 1.0 / (1.0 + std::exp(-1.0)), 1e-12);
}

TEST(Dense, ParamCountAndShapes) {
  EXPECT_EQ(dense_param_count(64, 350), 22750u);
  Rng rng(8);
  const auto d = DenseParams<double>::init(4, 6, rng);
  const auto out = dense_softmax_forward(random_tensor({2, 3, 4}, rng), d);
  EXPECT_EQ(out.shape, (std::vector<std::size_t>{2, 3, 6}));
  EXPECT_ERROR_KIND(dense_forward(Td({2, 5}), d), ErrorKind::ShapeMismatch);
}

TEST(Dense, BackwardMatchesFiniteDifferences) {
  Rng rng(9);
  auto d = DenseParams<double>::init(4, 5, rng);
  d.b = random_tensor({5}, rng);
  Td h = random_tensor({3, 4}, rng);
  const Projection proj{random_tensor({3, 5}, rng)};
  const auto g = dense_backward(h, d, proj.weights);
  auto loss = [&] { return proj.apply(dense_forward(h, d)); };
  std::vector<Td*> params{&d.W, &d.b, &h};
  std::vector<const Td*> grads{&g.params.W, &g.params.b, &g.inputs};
  const auto res = grad_check(params, grads, loss);
  // affine in every input: finite differences are exact up to rounding
  EXPECT_LT(res.max_relative_error, 1e-8);
}

TEST(SparseCe, ClosedFormValues) {
  Td uniform({1, 2, 4}, 0.25);
  const std::vector<std::int32_t> t{0, 3};
  EXPECT_NEAR(sparse_ce_loss(uniform, t).loss, std::log(4.0), 1e-12);
  EXPECT_NEAR(std::log(4.0), 1.3863, 5e-5);

  Td onehot({2, 3});
  onehot.data = {0, 1, 0, 0, 0, 1};
  EXPECT_NEAR(sparse_ce_loss(onehot, std::vector<std::int32_t>{1, 2}).loss, 0.0, 1e-12);
}

TEST(SparseCe, GradientIsProbsMinusOneHotOverCount) {
  Td p({2, 3});
  p.data = {0.2, 0.5, 0.3, 0.1, 0.1, 0.8};
  const auto r = sparse_ce_loss(p, std::vector<std::int32_t>{1, 0});
  const std::vector<double> want{0.1, -0.25, 0.15, -0.45, 0.05, 0.4};
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(r.grad_logits.data[i], want[i], 1e-12);
}

TEST(SparseCe, LogitGradientMatchesFiniteDifferences) {
  Rng rng(10);
  Td logits = random_tensor({2, 3, 5}, rng, 2.0);
  const std::vector<std::int32_t> targets{0, 4, 2, 2, 1, 0};
  auto probs_of = [&] {
    Td p = logits;
    softmax_rows(p.data.data(), 6, 5);
    return p;
  };
  const auto r = sparse_ce_loss(probs_of(), targets);
  auto loss = [&] { return sparse_ce_loss(probs_of(), targets).loss; };
  std::vector<Td*> params{&logits};
  std::vector<const Td*> grads{&r.grad_logits};
  EXPECT_TRUE(grad_check(params, grads, loss).passed());
}

TEST(SparseCe, Errors) {
  Td p({2, 3}, 1.0 / 3.0);
  EXPECT_ERROR_KIND(sparse_ce_loss(p, std::vector<std::int32_t>{0}), ErrorKind::ShapeMismatch);
  EXPECT_ERROR_KIND(sparse_ce_loss(p, std::vector<std::int32_t>{0, 3}), ErrorKind::IndexOutOfRange);
}

TEST(Adam, FirstStepIsMinusLearningRate) {
  Td p({1}, 0.0), g({1}, 1.0);
  std::vector<Td*> ps{&p};
  std::vector<const Td*> gs{&g};
  AdamState<double> st(std::span<const Td* const>(std::vector<const Td*>{&p}));
  adam_step<double>(ps, gs, st);
  EXPECT_EQ(st.t, 1u);
  EXPECT_NEAR(p.data[0], -0.001 / (1.0 + 1e-8), 1e-15);
}

TEST(Adam, ZeroGradientIsIdentity) {
  Rng rng(11);
  Td p = random_tensor({3, 4}, rng), g({3, 4});
  const Td before = p;
  std::vector<Td*> ps{&p};
  std::vector<const Td*> gs{&g};
  AdamState<double> st(std::span<const Td* const>(std::vector<const Td*>{&p}));
  adam_step<double>(ps, gs, st);
  adam_step<double>(ps, gs, st);
  EXPECT_EQ(p.data, before.data);
  EXPECT_EQ(st.t, 2u);
}

TEST(Adam, ScalarSimulation) {
  // independent scalar reimplementation of the bias-corrected update
  Td p({2}), g({2});
  p.data = {0.5, -0.5};
  std::vector<Td*> ps{&p};
  std::vector<const Td*> gs{&g};
  AdamState<double> st(std::span<const Td* const>(std::vector<const Td*>{&p}));
  double q[2] = {0.5, -0.5}, m[2] = {0, 0}, v[2] = {0, 0};
  const double grads[3][2] = {{0.3, -2.0}, {0.3, -2.0}, {-0.1, 0.5}};
  for (int step = 0; step < 3; ++step) {
    g.data = {grads[step][0], grads[step][1]};
    adam_step<double>(ps, gs, st);
    for (int i = 0; i < 2; ++i) {
      m[i] = 0.9 * m[i] + 0.1 * grads[step][i];
      v[i] = 0.999 * v[i] + 0.001 * grads[step][i] * grads[step][i];
      const double mh = m[i] / (1 - std::pow(0.9, step + 1));
      const double vh = v[i] / (1 - std::pow(0.999, step + 1));
      q[i] -= 0.001 * mh / (std::sqrt(vh) + 1e-8);
      EXPECT_NEAR(p.data[static_cast<std::size_t>(i)], q[i], 1e-12);
    }
    if (step == 1) {
      EXPECT_LT(p.data[0], 0.5 - 0.0019);  // moved twice against +g
      EXPECT_GT(p.data[1], -0.5 + 0.0019);
    }
  }
}

TEST(Adam, ShapeMismatch) {
  Td p({2}), g({3});
  std::vector<Td*> ps{&p};
  std::vector<const Td*> gs{&g};
  AdamState<double> st(std::span<const Td* const>(std::vector<const Td*>{&p}));
  EXPECT_ERROR_KIND(adam_step<double>(ps, gs, st), ErrorKind::ShapeMismatch);
}

TEST(GradCheck, DetectsSignFlippedBackward) {
  Rng rng(12);
  auto p = GruParams<double>::init(2, 3, rng);
  Td x = random_tensor({1, 4, 2}, rng);
  const Projection proj{random_tensor({1, 4, 3}, rng)};
  GruCache<double> cache;
  gru_forward(x, p, cache);
  auto g = gru_backward(cache, p, proj.weights);
  for (auto& v : g.params.U_h.data) v = -v;  // corrupted
  auto loss = [&] { return proj.apply(gru_forward(x, p)); };
  std::vector<Td*> params;
  std::vector<const Td*> grads;
  for (auto* t : p.tensors()) params.push_back(t);
  for (const auto* t : g.params.tensors()) grads.push_back(t);
  const auto res = grad_check(params, grads, loss);
  EXPECT_GT(res.max_relative_error, 0.1);
  EXPECT_FALSE(res.passed());
  EXPECT_EQ(res.worst_tensor, 5u);  // U_h
}

TEST(GradCheck, SubsamplesLargeModels) {
  Td w({150, 100});
  Rng rng(13);
  // away from zero: the loss is large, so tiny gradients drown in rounding
  for (auto& v : w.data) v = rng.uniform(0.5, 1.5);
  Td grad = w;
  for (auto& v : grad.data) v *= 2.0;
  auto loss = [&] {
    double s = 0.0;
    for (double v : w.data) s += v * v;
    return s;
  };
  std::vector<Td*> params{&w};
  std::vector<const Td*> grads{&grad};
  const auto res = grad_check(params, grads, loss);
  EXPECT_EQ(res.checked, 10000u);
  EXPECT_TRUE(res.passed());
}

TEST(Tensor, NonFiniteDetected) {
  const std::vector<double> v{1.0, std::nan("")};
  EXPECT_ERROR_KIND(require_finite<double>(v, "probe"), ErrorKind::NonFinite);
}

TEST(Init, GlorotBoundsAndSeeding) {
  Rng a(99), b(99);
  const auto p = GruParams<double>::init(5, 7, a);
  const auto q = GruParams<double>::init(5, 7, b);
  EXPECT_EQ(p.W_z.data, q.W_z.data);
  const double lim_w = std::sqrt(6.0 / 12.0), lim_u = std::sqrt(6.0 / 14.0);
  for (double v : p.W_h.data) EXPECT_LE(std::abs(v), lim_w);
  for (double v : p.U_r.data) EXPECT_LE(std::abs(v), lim_u);
  for (double v : p.b_z.data) EXPECT_EQ(v, 0.0);
}
