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

#include <optional>
#include <string>
#include <vector>

#include "gmpe_ann/network.hpp"

namespace gmpe_ann {

/// One catalog row: a single station recording of a single event.
struct GroundMotionRecord {
  std::string event_id;
  std::string station_id;
  double magnitude = 0.0;  // Mw
  double vs30 = 0.0;       // m/s
  double rjb = 0.0;        // km
  double pga = 0.0;        // cm/s^2
  double pgv = 0.0;        // cm/s
  std::optional<double> baseline_pga;
  std::optional<double> baseline_pgv;

  Scenario scenario() const { return {magnitude, vs30, rjb}; }

  double observed(Target target) const {
    return target == Target::kPga ? pga : pgv;
  }

  std::optional<double> baseline(Target target) const {
    return target == Target::kPga ? baseline_pga : baseline_pgv;
  }

  bool operator==(const GroundMotionRecord&) const = default;
};

/// Problems that make a record unusable (non-finite magnitude, non-positive
/// vs30/rjb/pga/pgv, non-positive baseline). Empty means valid.
std::vector<std::string> validation_errors(const GroundMotionRecord& record);

/// True when magnitude or distance falls outside the calibrated range.
bool is_out_of_domain(const GroundMotionRecord& record);

}  // namespace gmpe_ann
