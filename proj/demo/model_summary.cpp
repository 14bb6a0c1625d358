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

// Prints a layer table for both translator variants at the default sizes.

#include <iomanip>
#include <iostream>

#include "vocalnmt/nmt/model.hpp"

namespace {

void summary(const vocalnmt::nmt::Model<float>& m) {
  std::cout << vocalnmt::nmt::to_string(m.spec().kind) << '\n';
  std::cout << std::left << std::setw(22) << "layer" << std::setw(18) << "output" << "params\n";
  for (const auto& l : m.layers()) {
    std::string shape = "(None";
    for (auto d : l.output_shape) shape += ", " + std::to_string(d);
    shape += ")";
    std::cout << std::setw(22) << l.name << std::setw(18) << shape << l.params << '\n';
  }
  std::cout << "total " << vocalnmt::nmt::param_count(m) << "\n\n";
}

}  // namespace

int main() {
  using namespace vocalnmt::nmt;
  ModelSpec s;
  s.seq_len = 21;
  s.source_vocab_size = 350;
  s.target_vocab_size = 350;
  s.kind = ModelKind::simple_gru;
  summary(build_model<float>(s, 42));
  s.kind = ModelKind::embedded_gru;
  summary(build_model<float>(s, 42));
}
