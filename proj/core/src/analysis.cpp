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

#include "gmpe_ann/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gmpe_ann/error.hpp"

namespace gmpe_ann {

ImportanceVector garson_importance(const NetworkModel& model) {
  std::array<double, 3> q{};
  const auto& w = model.input_hidden_weights();
  const auto& v = model.hidden_output_weights();
  for (std::size_t i = 0; i < model.hidden_count(); ++i) {
    const double row = std::abs(w[i][0]) + std::abs(w[i][1]) + std::abs(w[i][2]);
    if (row == 0.0) {
      throw NumericalError("hidden neuron " + std::to_string(i + 1) +
                           " has all-zero input weights");
    }
    for (std::size_t j = 0; j < 3; ++j) {
      q[j] += std::abs(w[i][j]) / row * std::abs(v[i]);
    }
  }
  const double total = q[0] + q[1] + q[2];
  if (total == 0.0) {
    throw NumericalError("all hidden-output weights are zero");
  }
  return {q[0] / total, q[1] / total, q[2] / total};
}

ResidualSet residuals(std::span<const GroundMotionRecord> records,
                      const Predictor& predictor, Target target) {
  ResidualSet out;
  out.target = target;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const GroundMotionRecord& r = records[i];
    double predicted;
    if (const auto* model = std::get_if<const NetworkModel*>(&predictor)) {
      predicted = forward(**model, r.scenario()).value;
    } else {
      const auto baseline = r.baseline(target);
      if (!baseline) {
        ++out.missing_baseline;
        continue;
      }
      predicted = *baseline;
    }
    if (!(predicted > 0.0) || !std::isfinite(predicted)) {
      std::ostringstream os;
      os << "record " << i << " (event " << r.event_id << ", station "
         << r.station_id << "): predicted value " << predicted
         << " is not positive";
      throw DataError(os.str());
    }
    const double observed = r.observed(target);
    out.rows.push_back({i, r.event_id, r.station_id, r.magnitude, r.vs30, r.rjb,
                        observed, predicted, std::log(observed / predicted)});
  }
  return out;
}

std::string_view to_string(GroupBy group) {
  return group == GroupBy::kRjb ? "rjb" : "vs30";
}

BinnedResiduals bin_residuals(const ResidualSet& table, GroupBy group_by,
                              std::span<const double> edges) {
  if (edges.size() < 2) throw DataError("bin edges need at least two values");
  for (std::size_t k = 0; k < edges.size(); ++k) {
    if (!std::isfinite(edges[k]) || (k > 0 && !(edges[k] > edges[k - 1]))) {
      throw DataError("bin edges must be finite and strictly increasing");
    }
  }

  BinnedResiduals out;
  out.group_by = group_by;
  std::vector<std::vector<double>> members(edges.size() - 1);
  for (const ResidualRow& row : table.rows) {
    const double x = group_by == GroupBy::kRjb ? row.rjb : row.vs30;
    if (x < edges.front()) {
      ++out.below_range;
    } else if (x > edges.back()) {
      ++out.above_range;
    } else {
      const auto it = std::upper_bound(edges.begin(), edges.end(), x);
      const auto bin = std::min<std::size_t>(
          static_cast<std::size_t>(it - edges.begin()) - 1, members.size() - 1);
      members[bin].push_back(row.residual);
    }
  }

  bool any = false;
  for (std::size_t k = 0; k < members.size(); ++k) {
    auto& values = members[k];
    std::sort(values.begin(), values.end());
    ResidualBin bin{edges[k], edges[k + 1], values.size(), {}, {}, {}};
    if (!values.empty()) {
      any = true;
      // Shifted by the smallest value so equal residuals give an exact mean.
      const double shift = values.front();
      double sum = 0.0;
      for (double v : values) sum += v - shift;
      const double n = static_cast<double>(values.size());
      const double mean = shift + sum / n;
      bin.mean = mean;
      if (values.size() >= 2) {
        double ss = 0.0;
        for (double v : values) ss += (v - mean) * (v - mean);
        const double half = kZ90 * std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
        bin.ci_lower = mean - half;
        bin.ci_upper = mean + half;
      }
    }
    out.bins.push_back(bin);
  }
  if (!any) out.warnings.push_back("no residuals fell inside any bin");
  if (out.below_range + out.above_range > 0) {
    out.warnings.push_back(
        std::to_string(out.below_range + out.above_range) +
        " residuals fell outside the bin edges");
  }
  return out;
}

std::vector<double> default_edges(GroupBy group_by) {
  if (group_by == GroupBy::kRjb) return {4, 8, 16, 31, 63, 125, 250, 500};
  return {150, 300, 450, 600, 760, 1100, 1800};
}

std::vector<CurvePoint> attenuation_curve(const NetworkModel& model,
                                          double magnitude, double vs30,
                                          std::span<const double> rjb_grid) {
  if (rjb_grid.empty()) throw DataError("distance grid is empty");
  for (std::size_t k = 1; k < rjb_grid.size(); ++k) {
    if (!(rjb_grid[k] > rjb_grid[k - 1])) {
      throw DataError("distance grid must be strictly increasing");
    }
  }
  std::vector<CurvePoint> curve;
  curve.reserve(rjb_grid.size());
  for (double rjb : rjb_grid) {
    const Prediction p = forward(model, {magnitude, vs30, rjb});
    curve.push_back({rjb, p.value, p.log_value});
  }
  return curve;
}

std::vector<double> default_rjb_grid() {
  return {4,  5,  6,   8,   10,  12,  15,  20,  25,  30,  40,
          50, 60, 80, 100, 120, 150, 200, 250, 300, 400, 500};
}

}  // namespace gmpe_ann
