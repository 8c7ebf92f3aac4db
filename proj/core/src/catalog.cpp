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

#include "gmpe_ann/catalog.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace gmpe_ann {

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += ", ";
    out += item;
  }
  return out;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<double> parse_double(const std::string& text) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  if (begin != end && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

std::string quote_if_needed(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

CatalogSchemaError::CatalogSchemaError(std::vector<std::string> missing)
    : DataError("catalog is missing required columns: " + join(missing)),
      missing_(std::move(missing)) {}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        current += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        current += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(trim(current));
      current.clear();
    } else {
      current += c;
    }
  }
  fields.push_back(trim(current));
  return fields;
}

Catalog parse_catalog(std::istream& in, const CatalogReadOptions& options) {
  Catalog catalog;
  std::string line;
  std::size_t line_no = 0;

  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (!trim(line).empty()) {
      header = split_csv_line(line);
      break;
    }
  }
  if (header.empty()) throw DataError("catalog has no header row");

  std::map<std::string, std::size_t> index;
  for (std::size_t k = 0; k < header.size(); ++k) index.emplace(header[k], k);

  const char* required[] = {columns::kEventId, columns::kStationId,
                            columns::kMagnitude, columns::kVs30,
                            columns::kRjb, columns::kPga, columns::kPgv};
  std::vector<std::string> missing;
  for (const char* name : required) {
    if (!index.contains(name)) missing.emplace_back(name);
  }
  if (!missing.empty()) throw CatalogSchemaError(std::move(missing));

  const auto optional_column = [&](const char* name) -> std::optional<std::size_t> {
    const auto it = index.find(name);
    if (it == index.end()) return std::nullopt;
    return it->second;
  };
  const auto baseline_pga_col = optional_column(columns::kBaselinePga);
  const auto baseline_pgv_col = optional_column(columns::kBaselinePgv);
  catalog.has_baseline_pga = baseline_pga_col.has_value();
  catalog.has_baseline_pgv = baseline_pgv_col.has_value();

  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(line);
    std::vector<std::string> problems;
    GroundMotionRecord record;

    if (fields.size() != header.size()) {
      problems.push_back("expected " + std::to_string(header.size()) +
                         " fields, found " + std::to_string(fields.size()));
    } else {
      const auto number = [&](const char* name) {
        const std::string& cell = fields[index.at(name)];
        const auto value = parse_double(cell);
        if (!value) {
          problems.push_back(std::string(name) + ": '" + cell +
                             "' is not a finite number");
          return std::nan("");
        }
        return *value;
      };
      const auto optional_number =
          [&](std::optional<std::size_t> col,
              const char* name) -> std::optional<double> {
        if (!col || fields[*col].empty()) return std::nullopt;
        const auto value = parse_double(fields[*col]);
        if (!value) {
          problems.push_back(std::string(name) + ": '" + fields[*col] +
                             "' is not a finite number");
        }
        return value;
      };
      record.event_id = fields[index.at(columns::kEventId)];
      record.station_id = fields[index.at(columns::kStationId)];
      record.magnitude = number(columns::kMagnitude);
      record.vs30 = number(columns::kVs30);
      record.rjb = number(columns::kRjb);
      record.pga = number(columns::kPga);
      record.pgv = number(columns::kPgv);
      record.baseline_pga = optional_number(baseline_pga_col, columns::kBaselinePga);
      record.baseline_pgv = optional_number(baseline_pgv_col, columns::kBaselinePgv);
      if (problems.empty()) problems = validation_errors(record);
    }

    if (!problems.empty()) {
      RowError error{line_no, join(problems)};
      if (options.strict) {
        throw DataError("line " + std::to_string(line_no) + ": " + error.message);
      }
      catalog.errors.push_back(std::move(error));
      continue;
    }
    if (is_out_of_domain(record)) ++catalog.out_of_domain;
    catalog.records.push_back(std::move(record));
    catalog.lines.push_back(line_no);
  }
  return catalog;
}

Catalog read_catalog(const std::filesystem::path& path,
                     const CatalogReadOptions& options) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open catalog " + path.string());
  return parse_catalog(in, options);
}

std::string format_number(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc()) throw DataError("cannot format number");
  return {buffer, ptr};
}

void write_catalog(std::ostream& out,
                   std::span<const GroundMotionRecord> records) {
  bool baseline_pga = false;
  bool baseline_pgv = false;
  for (const auto& r : records) {
    baseline_pga = baseline_pga || r.baseline_pga.has_value();
    baseline_pgv = baseline_pgv || r.baseline_pgv.has_value();
  }
  out << columns::kEventId << ',' << columns::kStationId << ','
      << columns::kMagnitude << ',' << columns::kVs30 << ',' << columns::kRjb
      << ',' << columns::kPga << ',' << columns::kPgv;
  if (baseline_pga) out << ',' << columns::kBaselinePga;
  if (baseline_pgv) out << ',' << columns::kBaselinePgv;
  out << '\n';
  for (const auto& r : records) {
    out << quote_if_needed(r.event_id) << ',' << quote_if_needed(r.station_id)
        << ',' << format_number(r.magnitude) << ',' << format_number(r.vs30)
        << ',' << format_number(r.rjb) << ',' << format_number(r.pga) << ','
        << format_number(r.pgv);
    if (baseline_pga) {
      out << ',' << (r.baseline_pga ? format_number(*r.baseline_pga) : "");
    }
    if (baseline_pgv) {
      out << ',' << (r.baseline_pgv ? format_number(*r.baseline_pgv) : "");
    }
    out << '\n';
  }
}

void write_catalog(const std::filesystem::path& path,
                   std::span<const GroundMotionRecord> records) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write catalog " + path.string());
  write_catalog(out, records);
}

}  // namespace gmpe_ann
