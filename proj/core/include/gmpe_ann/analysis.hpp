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
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "gmpe_ann/network.hpp"
#include "gmpe_ann/record.hpp"

namespace gmpe_ann {

/// Relative contribution of (Mw, Vs30, RJB) to the network output.
struct ImportanceVector {
  double magnitude = 0.0;
  double vs30 = 0.0;
  double rjb = 0.0;

  std::array<double, 3> as_array() const { return {magnitude, vs30, rjb}; }
};

inline constexpr std::array<const char*, 3> kInputNames = {"mw", "vs30", "rjb"};

/// Garson's partition of absolute connection weights. For each input j,
/// Q_j = sum_i |w_ji| / sum_k |w_ki| * |v_i|, normalized to sum to one.
/// Biases do not enter. Throws NumericalError when a hidden neuron has all
/// input weights zero or every output weight is zero.
ImportanceVector garson_importance(const NetworkModel& model);

/// Predictions supplied by the catalog's baseline columns instead of a
/// network.
struct BaselinePredictor {};

using Predictor = std::variant<const NetworkModel*, BaselinePredictor>;

struct ResidualRow {
  std::size_t record_index = 0;
  std::string event_id;
  std::string station_id;
  double magnitude = 0.0;
  double vs30 = 0.0;
  double rjb = 0.0;
  double observed = 0.0;
  double predicted = 0.0;
  /// ln(observed / predicted); positive means under-prediction.
  double residual = 0.0;
};

struct ResidualSet {
  Target target = Target::kPga;
  std::vector<ResidualRow> rows;
  /// Records skipped because the baseline column was empty.
  std::size_t missing_baseline = 0;
};

/// Computes ln(observed/predicted) for every record. Throws DataError naming
/// the record when a prediction is not strictly positive, DomainError when
/// a network input is invalid.
ResidualSet residuals(std::span<const GroundMotionRecord> records,
                      const Predictor& predictor, Target target);

enum class GroupBy { kRjb, kVs30 };

std::string_view to_string(GroupBy group);

/// z for a two-sided 90% normal interval.
inline constexpr double kZ90 = 1.645;

struct ResidualBin {
  double lower = 0.0;
  double upper = 0.0;
  std::size_t count = 0;
  /// Absent for empty bins.
  std::optional<double> mean;
  /// 90% interval of the mean; absent when count < 2.
  std::optional<double> ci_lower;
  std::optional<double> ci_upper;
};

struct BinnedResiduals {
  GroupBy group_by = GroupBy::kRjb;
  std::vector<ResidualBin> bins;
  /// Records whose grouping value fell below the first or above the last
  /// edge. Bin counts plus these two equal the residual count.
  std::size_t below_range = 0;
  std::size_t above_range = 0;
  std::vector<std::string> warnings;
};

/// Bins are [edge_k, edge_k+1) with the last bin closed on the right. Means
/// are summed in sorted order so the result does not depend on record order.
/// Throws DataError unless edges are finite, strictly increasing, >= 2.
BinnedResiduals bin_residuals(const ResidualSet& table, GroupBy group_by,
                              std::span<const double> edges);

std::vector<double> default_edges(GroupBy group_by);

struct CurvePoint {
  double rjb = 0.0;
  double value = 0.0;
  double log_value = 0.0;
};

/// Forward evaluations along a distance grid at fixed Mw and Vs30. Throws
/// DataError unless the grid is non-empty and strictly increasing.
std::vector<CurvePoint> attenuation_curve(const NetworkModel& model,
                                          double magnitude, double vs30,
                                          std::span<const double> rjb_grid);

/// Fixed 4-500 km grid used when no grid is given.
std::vector<double> default_rjb_grid();

}  // namespace gmpe_ann
