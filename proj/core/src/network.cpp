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

#include <cctype>
#include <cmath>
#include <sstream>

#include "gmpe_ann/error.hpp"

namespace gmpe_ann {

std::string_view to_string(Target target) {
  return target == Target::kPga ? "PGA" : "PGV";
}

std::optional<Target> parse_target(std::string_view text) {
  std::string lower;
  for (char c : text) {
    lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (lower == "pga") return Target::kPga;
  if (lower == "pgv") return Target::kPgv;
  return std::nullopt;
}

std::string_view output_units(Target target) {
  return target == Target::kPga ? "cm/s^2" : "cm/s";
}

std::vector<std::string> domain_warnings(const Scenario& scenario) {
  std::vector<std::string> warnings;
  if (!(scenario.magnitude >= kMinMagnitude &&
        scenario.magnitude <= kMaxMagnitude)) {
    std::ostringstream os;
    os << "magnitude " << scenario.magnitude << " outside calibrated range ["
       << kMinMagnitude << ", " << kMaxMagnitude << "]";
    warnings.push_back(os.str());
  }
  if (!(scenario.rjb >= kMinRjbKm && scenario.rjb <= kMaxRjbKm)) {
    std::ostringstream os;
    os << "rjb " << scenario.rjb << " km outside calibrated range ["
       << kMinRjbKm << ", " << kMaxRjbKm << "] km";
    warnings.push_back(os.str());
  }
  return warnings;
}

Normalization Normalization::published(Target target) {
  return {6.0, 1792.0, 522.0, target == Target::kPga ? 6.1 : 2.5};
}

void Normalization::validate() const {
  const std::pair<const char*, double> divisors[] = {
      {"mag_div", mag_div},
      {"vs30_div", vs30_div},
      {"rjb_div", rjb_div},
      {"log_out_div", log_out_div}};
  for (const auto& [name, value] : divisors) {
    if (!std::isfinite(value) || value <= 0.0) {
      throw DataError(std::string("normalization divisor ") + name +
                      " must be finite and positive");
    }
  }
}

NetworkModel::NetworkModel(
    Target target, std::vector<std::array<double, 3>> input_hidden_weights,
    std::vector<double> hidden_biases,
    std::vector<double> hidden_output_weights, double output_bias,
    Normalization normalization)
    : target_(target),
      input_hidden_weights_(std::move(input_hidden_weights)),
      hidden_biases_(std::move(hidden_biases)),
      hidden_output_weights_(std::move(hidden_output_weights)),
      output_bias_(output_bias),
      normalization_(normalization) {
  const std::size_t h = hidden_biases_.size();
  if (h < kMinHidden || h > kMaxHidden) {
    throw DataError("hidden_count must be in [1, 10], got " +
                    std::to_string(h));
  }
  if (input_hidden_weights_.size() != h) {
    throw DataError("input_hidden_weights has " +
                    std::to_string(input_hidden_weights_.size()) +
                    " rows, expected hidden_count = " + std::to_string(h));
  }
  if (hidden_output_weights_.size() != h) {
    throw DataError("hidden_output_weights has " +
                    std::to_string(hidden_output_weights_.size()) +
                    " entries, expected hidden_count = " + std::to_string(h));
  }
  for (double p : parameters()) {
    if (!std::isfinite(p)) throw DataError("network weights must be finite");
  }
  normalization_.validate();
}

NetworkModel NetworkModel::from_parameters(Target target,
                                           std::size_t hidden_count,
                                           std::span<const double> parameters,
                                           const Normalization& normalization) {
  const ParameterLayout layout{hidden_count};
  if (parameters.size() != layout.size()) {
    throw DataError("parameter vector has " +
                    std::to_string(parameters.size()) + " entries, expected " +
                    std::to_string(layout.size()));
  }
  std::vector<std::array<double, 3>> w(hidden_count);
  std::vector<double> b(hidden_count);
  std::vector<double> v(hidden_count);
  for (std::size_t i = 0; i < hidden_count; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      w[i][j] = parameters[layout.input_weight(i, j)];
    }
    b[i] = parameters[layout.hidden_bias(i)];
    v[i] = parameters[layout.output_weight(i)];
  }
  return NetworkModel(target, std::move(w), std::move(b), std::move(v),
                      parameters[layout.output_bias()], normalization);
}

std::vector<double> NetworkModel::parameters() const {
  const ParameterLayout l = layout();
  std::vector<double> p(l.size());
  for (std::size_t i = 0; i < hidden_count(); ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      p[l.input_weight(i, j)] = input_hidden_weights_[i][j];
    }
    p[l.hidden_bias(i)] = hidden_biases_[i];
    p[l.output_weight(i)] = hidden_output_weights_[i];
  }
  p[l.output_bias()] = output_bias_;
  return p;
}

double log_sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

namespace {

void require_finite(const char* field, double value) {
  if (!std::isfinite(value)) {
    throw DomainError(field, std::string(field) + " must be finite");
  }
}

void require_positive(const char* field, double value) {
  require_finite(field, value);
  if (value <= 0.0) {
    throw DomainError(field, std::string(field) + " must be positive");
  }
}

double hidden_input(const std::array<double, 3>& w, double bias,
                    const std::array<double, 3>& x) {
  return w[0] * x[0] + w[1] * x[1] + w[2] * x[2] + bias;
}

}  // namespace

double forward_normalized_log(const NetworkModel& model,
                              const std::array<double, 3>& normalized_inputs) {
  const auto& w = model.input_hidden_weights();
  const auto& b = model.hidden_biases();
  const auto& v = model.hidden_output_weights();
  double out = model.output_bias();
  for (std::size_t i = 0; i < model.hidden_count(); ++i) {
    out += v[i] * log_sigmoid(hidden_input(w[i], b[i], normalized_inputs));
  }
  return out;
}

Prediction forward(const NetworkModel& model, const Scenario& scenario) {
  require_finite("magnitude", scenario.magnitude);
  require_positive("vs30", scenario.vs30);
  require_positive("rjb", scenario.rjb);

  const auto x = model.normalization().normalize(scenario);
  const auto& w = model.input_hidden_weights();
  const auto& b = model.hidden_biases();
  const auto& v = model.hidden_output_weights();

  Prediction p;
  p.hidden_activations.resize(model.hidden_count());
  p.normalized_log = model.output_bias();
  for (std::size_t i = 0; i < model.hidden_count(); ++i) {
    const double y = log_sigmoid(hidden_input(w[i], b[i], x));
    p.hidden_activations[i] = y;
    p.normalized_log += v[i] * y;
  }
  p.log_value = p.normalized_log * model.normalization().log_out_div;
  p.value = std::exp(p.log_value);
  return p;
}

}  // namespace gmpe_ann
