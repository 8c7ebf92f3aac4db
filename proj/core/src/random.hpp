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

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace gmpe_ann::detail {

// The std distributions are implementation-defined, so draws are derived
// from raw mt19937_64 output to keep seeded results identical across
// standard libraries.

inline double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& gen, double lo, double hi) {
  return lo + (hi - lo) * uniform01(gen);
}

// Unbiased integer in [0, bound) by rejection.
inline std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t draw;
  do {
    draw = gen();
  } while (draw >= limit);
  return draw % bound;
}

template <typename T>
void shuffle(std::span<T> items, std::mt19937_64& gen) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = uniform_below(gen, i);
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace gmpe_ann::detail
