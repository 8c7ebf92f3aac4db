// Copyright 2026 The gmpe-ann Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <span>

#include "gmpe_ann/network.hpp"

namespace gmpe_ann::detail {

// Network output over a flat parameter vector (see ParameterLayout). When
// `gradient` is non-empty it receives d(output)/d(parameter).
inline double evaluate(std::span<const double> params,
                       const ParameterLayout& layout,
                       const std::array<double, 3>& x,
                       std::span<double> gradient = {}) {
  double out = params[layout.output_bias()];
  const bool want_gradient = !gradient.empty();
  for (std::size_t i = 0; i < layout.hidden_count; ++i) {
    const double f = params[layout.input_weight(i, 0)] * x[0] +
                     params[layout.input_weight(i, 1)] * x[1] +
                     params[layout.input_weight(i, 2)] * x[2] +
                     params[layout.hidden_bias(i)];
    const double y = log_sigmoid(f);
    const double v = params[layout.output_weight(i)];
    out += v * y;
    if (want_gradient) {
      const double dy = v * y * (1.0 - y);
      for (std::size_t j = 0; j < 3; ++j) {
        gradient[layout.input_weight(i, j)] = dy * x[j];
      }
      gradient[layout.hidden_bias(i)] = dy;
      gradient[layout.output_weight(i)] = y;
    }
  }
  if (want_gradient) gradient[layout.output_bias()] = 1.0;
  return out;
}

}  // namespace gmpe_ann::detail
