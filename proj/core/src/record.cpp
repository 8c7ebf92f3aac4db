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

#include "gmpe_ann/record.hpp"

#include <cmath>

namespace gmpe_ann {

namespace {

void check_positive(std::vector<std::string>& errors, const char* name,
                    double value) {
  if (!std::isfinite(value)) {
    errors.push_back(std::string(name) + " is not finite");
  } else if (value <= 0.0) {
    errors.push_back(std::string(name) + " must be positive");
  }
}

}  // namespace

std::vector<std::string> validation_errors(const GroundMotionRecord& record) {
  std::vector<std::string> errors;
  if (!std::isfinite(record.magnitude)) {
    errors.push_back("mw is not finite");
  }
  check_positive(errors, "vs30_mps", record.vs30);
  check_positive(errors, "rjb_km", record.rjb);
  check_positive(errors, "pga_cmps2", record.pga);
  check_positive(errors, "pgv_cmps", record.pgv);
  if (record.baseline_pga) {
    check_positive(errors, "baseline_pga_cmps2", *record.baseline_pga);
  }
  if (record.baseline_pgv) {
    check_positive(errors, "baseline_pgv_cmps", *record.baseline_pgv);
  }
  return errors;
}

bool is_out_of_domain(const GroundMotionRecord& record) {
  return !domain_warnings(record.scenario()).empty();
}

}  // namespace gmpe_ann
