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

#include "gmpe_ann/model_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace gmpe_ann {

using nlohmann::json;

namespace {

json normalization_json(const Normalization& n) {
  return {{"mag_div", n.mag_div},
          {"vs30_div", n.vs30_div},
          {"rjb_div", n.rjb_div},
          {"log_out_div", n.log_out_div}};
}

json model_json(const NetworkModel& model) {
  json w = json::array();
  for (const auto& row : model.input_hidden_weights()) {
    w.push_back({row[0], row[1], row[2]});
  }
  return {{"format_version", kModelFormatVersion},
          {"target", std::string(to_string(model.target()))},
          {"hidden_count", model.hidden_count()},
          {"input_hidden_weights", std::move(w)},
          {"hidden_biases", model.hidden_biases()},
          {"hidden_output_weights", model.hidden_output_weights()},
          {"output_bias", model.output_bias()},
          {"normalization", normalization_json(model.normalization())}};
}

const json& field(const json& object, const char* name) {
  const auto it = object.find(name);
  if (it == object.end()) {
    throw DataError(std::string("model file is missing field '") + name + "'");
  }
  return *it;
}

double number(const json& value, const std::string& name) {
  if (!value.is_number()) {
    throw DataError("model field '" + name + "' must be a finite number");
  }
  const double x = value.get<double>();
  if (!std::isfinite(x)) {
    throw DataError("model field '" + name + "' must be a finite number");
  }
  return x;
}

std::vector<double> number_array(const json& value, const std::string& name,
                                 std::size_t expected) {
  if (!value.is_array()) {
    throw DataError("model field '" + name + "' must be an array");
  }
  if (value.size() != expected) {
    throw DataError("model field '" + name + "' has " +
                    std::to_string(value.size()) + " entries, expected " +
                    std::to_string(expected));
  }
  std::vector<double> out;
  for (std::size_t k = 0; k < value.size(); ++k) {
    out.push_back(number(value[k], name + "[" + std::to_string(k) + "]"));
  }
  return out;
}

int format_version(const json& value) {
  if (value.is_number_integer()) return value.get<int>();
  if (value.is_string()) {
    const std::string s = value.get<std::string>();
    try {
      std::size_t used = 0;
      const int v = std::stoi(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
  }
  throw DataError("model field 'format_version' is not an integer");
}

json optional_json(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

json report_json(const TrainingReport& report) {
  json split = json::array();
  for (Subset s : report.split) split.push_back(std::string(to_string(s)));
  return {{"target", std::string(to_string(report.target))},
          {"stop_reason", std::string(to_string(report.stop_reason))},
          {"stop_detail", report.stop_detail},
          {"accepted_steps", report.lambda.size()},
          {"best_iteration", report.best_iteration},
          {"r_train", optional_json(report.r_train)},
          {"r_validation", optional_json(report.r_validation)},
          {"r_test", optional_json(report.r_test)},
          {"train_loss", report.train_loss},
          {"validation_loss", report.validation_loss},
          {"lambda", report.lambda},
          {"split", std::move(split)},
          {"model", model_json(report.model)}};
}

}  // namespace

std::string model_to_string(const NetworkModel& model) {
  return model_json(model).dump(2) + "\n";
}

NetworkModel model_from_string(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("model file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw DataError("model file must hold a JSON object");

  const int version = format_version(field(doc, "format_version"));
  if (version != kModelFormatVersion) {
    throw UnsupportedVersionError(
        "unsupported model format_version " + std::to_string(version) +
        " (this reader supports " + std::to_string(kModelFormatVersion) + ")");
  }

  const json& target_field = field(doc, "target");
  const auto target = target_field.is_string()
                          ? parse_target(target_field.get<std::string>())
                          : std::nullopt;
  if (!target) throw DataError("model field 'target' must be \"PGA\" or \"PGV\"");

  const json& h_field = field(doc, "hidden_count");
  if (!h_field.is_number_integer() || h_field.get<long long>() < 1) {
    throw DataError("model field 'hidden_count' must be a positive integer");
  }
  const auto h = h_field.get<std::size_t>();

  const json& w_field = field(doc, "input_hidden_weights");
  if (!w_field.is_array() || w_field.size() != h) {
    throw DataError("model field 'input_hidden_weights' must have hidden_count = " +
                    std::to_string(h) + " rows, found " +
                    std::to_string(w_field.is_array() ? w_field.size() : 0));
  }
  std::vector<std::array<double, 3>> w;
  for (std::size_t i = 0; i < h; ++i) {
    const auto row = number_array(
        w_field[i], "input_hidden_weights[" + std::to_string(i) + "]", 3);
    w.push_back({row[0], row[1], row[2]});
  }

  const json& n_field = field(doc, "normalization");
  if (!n_field.is_object()) {
    throw DataError("model field 'normalization' must be an object");
  }
  const Normalization norm{
      number(field(n_field, "mag_div"), "normalization.mag_div"),
      number(field(n_field, "vs30_div"), "normalization.vs30_div"),
      number(field(n_field, "rjb_div"), "normalization.rjb_div"),
      number(field(n_field, "log_out_div"), "normalization.log_out_div")};

  return NetworkModel(
      *target, std::move(w),
      number_array(field(doc, "hidden_biases"), "hidden_biases", h),
      number_array(field(doc, "hidden_output_weights"), "hidden_output_weights", h),
      number(field(doc, "output_bias"), "output_bias"), norm);
}

void write_model(const std::filesystem::path& path, const NetworkModel& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write model file " + path.string());
  out << model_to_string(model);
  if (!out) throw DataError("failed writing model file " + path.string());
}

NetworkModel read_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open model file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return model_from_string(buffer.str());
}

std::string report_to_string(const TrainingReport& report) {
  return report_json(report).dump(2) + "\n";
}

std::string sweep_to_string(const SweepResult& sweep) {
  json rows = json::array();
  for (const SweepRow& row : sweep.rows) {
    rows.push_back(
        {{"hidden_count", row.hidden_count},
         {"r2_train", optional_json(row.r2_train)},
         {"r2_test", optional_json(row.r2_test)},
         {"stop_reason", row.stop_reason
                             ? json(std::string(to_string(*row.stop_reason)))
                             : json(nullptr)},
         {"accepted_steps", row.iterations},
         {"error", row.error.empty() ? json(nullptr) : json(row.error)}});
  }
  return json{{"margin", sweep.margin},
              {"selected_hidden_count", sweep.selected_hidden_count},
              {"rows", std::move(rows)},
              {"selected", report_json(sweep.selected)}}
             .dump(2) +
         "\n";
}

}  // namespace gmpe_ann
