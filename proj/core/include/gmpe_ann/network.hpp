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
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gmpe_ann {

/// Ground-motion intensity measure a network predicts.
enum class Target { kPga, kPgv };

std::string_view to_string(Target target);

/// Parses "pga"/"PGA"/"pgv"/"PGV".
std::optional<Target> parse_target(std::string_view text);

/// Natural units of the predicted value: "cm/s^2" for PGA, "cm/s" for PGV.
std::string_view output_units(Target target);

/// The earthquake/site triple a network is evaluated at.
struct Scenario {
  double magnitude = 0.0;  // Mw
  double vs30 = 0.0;       // m/s
  double rjb = 0.0;        // km
};

/// Magnitude and distance limits of the data the published networks were
/// fitted to. Predictions outside them are returned with a warning.
inline constexpr double kMinMagnitude = 3.0;
inline constexpr double kMaxMagnitude = 5.8;
inline constexpr double kMinRjbKm = 4.0;
inline constexpr double kMaxRjbKm = 500.0;

/// Human-readable warnings for a scenario outside the calibrated magnitude or
/// distance range. Empty when in domain.
std::vector<std::string> domain_warnings(const Scenario& scenario);

/// Fixed divisors applied to the raw inputs and to ln(IM).
struct Normalization {
  double mag_div = 1.0;
  double vs30_div = 1.0;
  double rjb_div = 1.0;
  double log_out_div = 1.0;

  /// Divisors of the published networks: Mw/6, Vs30/1792, RJB/522 and
  /// ln(PGA)/6.1 or ln(PGV)/2.5.
  static Normalization published(Target target);

  /// Throws DataError unless every divisor is finite and strictly positive.
  void validate() const;

  std::array<double, 3> normalize(const Scenario& scenario) const {
    return {scenario.magnitude / mag_div, scenario.vs30 / vs30_div,
            scenario.rjb / rjb_div};
  }

  bool operator==(const Normalization&) const = default;
};

/// Index map of the flat parameter vector used by training and the Jacobian:
/// [input-hidden weights (hidden-major, 3 per neuron) | hidden biases |
///  hidden-output weights | output bias], 5H+1 entries in total.
struct ParameterLayout {
  std::size_t hidden_count;

  std::size_t size() const { return 5 * hidden_count + 1; }
  std::size_t input_weight(std::size_t neuron, std::size_t input) const {
    return 3 * neuron + input;
  }
  std::size_t hidden_bias(std::size_t neuron) const {
    return 3 * hidden_count + neuron;
  }
  std::size_t output_weight(std::size_t neuron) const {
    return 4 * hidden_count + neuron;
  }
  std::size_t output_bias() const { return 5 * hidden_count; }
};

/// A 3-H-1 feedforward network with log-sigmoid hidden units and a linear
/// output unit predicting ln(IM) / log_out_div. Immutable once built.
class NetworkModel {
 public:
  static constexpr std::size_t kMinHidden = 1;
  static constexpr std::size_t kMaxHidden = 10;

  /// Validates shape and finiteness; throws DataError on violation.
  NetworkModel(Target target,
               std::vector<std::array<double, 3>> input_hidden_weights,
               std::vector<double> hidden_biases,
               std::vector<double> hidden_output_weights, double output_bias,
               Normalization normalization);

  /// Rebuilds a model from a flat parameter vector laid out per
  /// ParameterLayout.
  static NetworkModel from_parameters(Target target, std::size_t hidden_count,
                                      std::span<const double> parameters,
                                      const Normalization& normalization);

  Target target() const { return target_; }
  std::size_t hidden_count() const { return hidden_biases_.size(); }
  ParameterLayout layout() const { return {hidden_count()}; }

  /// Row i holds the weights from (Mw, Vs30, RJB) into hidden neuron i.
  const std::vector<std::array<double, 3>>& input_hidden_weights() const {
    return input_hidden_weights_;
  }
  const std::vector<double>& hidden_biases() const { return hidden_biases_; }
  const std::vector<double>& hidden_output_weights() const {
    return hidden_output_weights_;
  }
  double output_bias() const { return output_bias_; }
  const Normalization& normalization() const { return normalization_; }

  std::vector<double> parameters() const;

  bool operator==(const NetworkModel&) const = default;

 private:
  Target target_;
  std::vector<std::array<double, 3>> input_hidden_weights_;
  std::vector<double> hidden_biases_;
  std::vector<double> hidden_output_weights_;
  double output_bias_;
  Normalization normalization_;
};

/// Result of one forward evaluation.
struct Prediction {
  double value = 0.0;           // cm/s^2 (PGA) or cm/s (PGV)
  double log_value = 0.0;       // ln(value)
  double normalized_log = 0.0;  // log_value / log_out_div
  std::vector<double> hidden_activations;
};

/// 1 / (1 + e^-x), evaluated without overflow for any finite x.
double log_sigmoid(double x);

/// Evaluates the network. Throws DomainError naming the field when magnitude
/// is non-finite or vs30/rjb are non-finite or non-positive.
Prediction forward(const NetworkModel& model, const Scenario& scenario);

/// Output of the network in normalized-log units only; no allocation, no
/// input validation. Used on hot paths after inputs have been checked.
double forward_normalized_log(const NetworkModel& model,
                              const std::array<double, 3>& normalized_inputs);

/// The published 4-neuron PGA or PGV network.
NetworkModel published_model(Target target);

}  // namespace gmpe_ann
