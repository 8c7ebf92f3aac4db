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

#include "gmpe_ann/network.hpp"

namespace gmpe_ann {

namespace {

// One row per hidden neuron: w_1i (Mw), w_2i (Vs30), w_3i (RJB), b_i, v_i.
struct PublishedRow {
  double w1, w2, w3, bias, v;
};

constexpr PublishedRow kPgaRows[] = {
    {-93.7502, -0.1658, -4.7160, 68.6111, -0.1037},
    {4.9023, -0.6769, -2.7333, -2.6134, 1.1886},
    {-1.3182, 0.9545, -43.7438, -1.4151, 6.5491},
    {21.7529, 2.5431, -6.6562, -9.8652, 0.1886},
};
constexpr double kPgaOutputBias = -0.6149;

constexpr PublishedRow kPgvRows[] = {
    {1.7409, -0.4457, 45.7174, 1.1633, -15.1236},
    {-2.0083, 0.0730, 0.2576, 0.3429, -12.4700},
    {-0.9230, 0.6639, 10.4003, -1.7592, -2.6548},
    {-2.3723, -0.5214, 18.8468, -2.6345, 1.6283},
};
constexpr double kPgvOutputBias = 18.0142;

}  // namespace

NetworkModel published_model(Target target) {
  const auto& rows = target == Target::kPga ? kPgaRows : kPgvRows;
  std::vector<std::array<double, 3>> w;
  std::vector<double> b;
  std::vector<double> v;
  for (const PublishedRow& row : rows) {
    w.push_back({row.w1, row.w2, row.w3});
    b.push_back(row.bias);
    v.push_back(row.v);
  }
  return NetworkModel(
      target, std::move(w), std::move(b), std::move(v),
      target == Target::kPga ? kPgaOutputBias : kPgvOutputBias,
      Normalization::published(target));
}

}  // namespace gmpe_ann
