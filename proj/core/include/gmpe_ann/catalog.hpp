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
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "gmpe_ann/error.hpp"
#include "gmpe_ann/record.hpp"

namespace gmpe_ann {

/// Column names of the catalog interchange format.
namespace columns {
inline constexpr const char* kEventId = "event_id";
inline constexpr const char* kStationId = "station_id";
inline constexpr const char* kMagnitude = "mw";
inline constexpr const char* kVs30 = "vs30_mps";
inline constexpr const char* kRjb = "rjb_km";
inline constexpr const char* kPga = "pga_cmps2";
inline constexpr const char* kPgv = "pgv_cmps";
inline constexpr const char* kBaselinePga = "baseline_pga_cmps2";
inline constexpr const char* kBaselinePgv = "baseline_pgv_cmps";
}  // namespace columns

/// The header lacks one or more required columns.
class CatalogSchemaError : public DataError {
 public:
  explicit CatalogSchemaError(std::vector<std::string> missing);

  const std::vector<std::string>& missing() const noexcept { return missing_; }

 private:
  std::vector<std::string> missing_;
};

struct RowError {
  std::size_t line = 0;  // 1-based, header is line 1
  std::string message;
};

struct CatalogReadOptions {
  /// Any row error fails the whole read.
  bool strict = false;
};

struct Catalog {
  std::vector<GroundMotionRecord> records;
  /// Source line of each record.
  std::vector<std::size_t> lines;
  std::vector<RowError> errors;
  /// Records outside the calibrated magnitude/distance range (kept).
  std::size_t out_of_domain = 0;
  bool has_baseline_pga = false;
  bool has_baseline_pgv = false;
};

/// Reads a comma-delimited catalog with a header row. Columns may appear in
/// any order; unknown columns are ignored; empty baseline cells mean
/// "missing". Rows that fail to parse or violate record invariants are
/// reported in `errors` and skipped, or raise DataError in strict mode.
/// A header missing required columns raises CatalogSchemaError.
Catalog read_catalog(const std::filesystem::path& path,
                     const CatalogReadOptions& options = {});
Catalog parse_catalog(std::istream& in, const CatalogReadOptions& options = {});

void write_catalog(std::ostream& out,
                   std::span<const GroundMotionRecord> records);
void write_catalog(const std::filesystem::path& path,
                   std::span<const GroundMotionRecord> records);

/// Shortest decimal string that parses back to the same double.
std::string format_number(double value);

/// Splits one delimited line, honouring double-quoted fields.
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace gmpe_ann
