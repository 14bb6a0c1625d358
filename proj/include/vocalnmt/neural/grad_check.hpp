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
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "vocalnmt/neural/tensor.hpp"

namespace vocalnmt::neural {

struct GradCheckOptions {
  double epsilon = 1e-5;
  /// Above this many parameters a seeded subsample is checked.
  std::size_t max_checked = 10000;
  std::uint64_t seed = 42;
  /// Floor on the relative-error denominator so that two near-zero
  /// gradients do not register as a mismatch.
  double denominator_floor = 1e-6;
};

struct GradCheckResult {
  double max_relative_error = 0.0;
  std::size_t checked = 0;
  std::size_t worst_tensor = 0;
  std::size_t worst_index = 0;
  double worst_analytic = 0.0;
  double worst_numeric = 0.0;

  bool passed(double tolerance = 1e-4) const { return max_relative_error < tolerance; }
};

inline double relative_error(double a, double n, double floor) {
  return std::abs(a - n) / std::max({std::abs(a), std::abs(n), floor});
}

/// Central finite differences of `loss` against `analytic`, one entry per
/// tensor in `params` (matching shapes). Parameters are restored afterwards.
inline GradCheckResult grad_check(std::span<Tensor<double>* const> params,
                                  std::span<const Tensor<double>* const> analytic,
                                  const std::function<double()>& loss, const GradCheckOptions& opts = {}) {
  if (params.size() != analytic.size()) fail(ErrorKind::ShapeMismatch, "grad_check: tensor lists differ in length");
  std::vector<std::pair<std::size_t, std::size_t>> coords;
  for (std::size_t t = 0; t < params.size(); ++t) {
    require_shape(*analytic[t], params[t]->shape, "analytic gradient");
    for (std::size_t i = 0; i < params[t]->size(); ++i) coords.emplace_back(t, i);
  }
  if (coords.size() > opts.max_checked) {
    Rng rng(opts.seed);
    rng.shuffle(coords);
    coords.resize(opts.max_checked);
    std::sort(coords.begin(), coords.end());
  }

  GradCheckResult res;
  for (const auto& [t, i] : coords) {
    double& p = params[t]->data[i];
    const double saved = p;
    p = saved + opts.epsilon;
    const double up = loss();
    p = saved - opts.epsilon;
    const double down = loss();
    p = saved;
    const double numeric = (up - down) / (2.0 * opts.epsilon);
    const double a = analytic[t]->data[i];
    const double err = relative_error(a, numeric, opts.denominator_floor);
    ++res.checked;
    if (err > res.max_relative_error || res.checked == 1) {
      res.max_relative_error = std::max(res.max_relative_error, err);
      res.worst_tensor = t;
      res.worst_index = i;
      res.worst_analytic = a;
      res.worst_numeric = numeric;
    }
  }
  return res;
}

}  // namespace vocalnmt::neural
