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

#include <filesystem>
#include <string>
#include <string_view>

#include "gmpe_ann/analysis.hpp"
#include "gmpe_ann/error.hpp"
#include "gmpe_ann/network.hpp"
#include "gmpe_ann/trainer.hpp"

namespace gmpe_ann {

inline constexpr int kModelFormatVersion = 1;

/// The model file declares a format version this reader does not support.
class UnsupportedVersionError : public DataError {
 public:
  using DataError::DataError;
};

/// JSON model document:
///
///   {"format_version": 1, "target": "PGA", "hidden_count": 4,
///    "input_hidden_weights": [[w_1i, w_2i, w_3i], ...],
///    "hidden_biases": [...], "hidden_output_weights": [...],
///    "output_bias": b,
///    "normalization": {"mag_div": .., "vs30_div": .., "rjb_div": ..,
///                      "log_out_div": ..}}
///
/// Numbers are written in shortest round-trip form, so reading a written
/// model reproduces every parameter bit for bit.
std::string model_to_string(const NetworkModel& model);
NetworkModel model_from_string(std::string_view text);

void write_model(const std::filesystem::path& path, const NetworkModel& model);
NetworkModel read_model(const std::filesystem::path& path);

std::string report_to_string(const TrainingReport& report);
std::string sweep_to_string(const SweepResult& sweep);

}  // namespace gmpe_ann
