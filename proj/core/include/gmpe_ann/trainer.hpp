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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gmpe_ann/network.hpp"
#include "gmpe_ann/record.hpp"

namespace gmpe_ann {

/// Proportions of the random train/validation/test partition.
struct SplitSpec {
  double train_fraction = 0.60;
  double validation_fraction = 0.20;
  double test_fraction = 0.20;
  std::uint64_t seed = 0;

  /// Throws DataError unless every fraction is in (0,1) and they sum to 1
  /// within 1e-9.
  void validate() const;
};

enum class Subset { kTrain, kValidation, kTest };

std::string_view to_string(Subset subset);

struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> validation;
  std::vector<std::size_t> test;

  /// Subset of each record, indexed like the catalog.
  std::vector<Subset> assignment(std::size_t record_count) const;
};

inline constexpr std::size_t kMinSplitRecords = 10;

/// Seeded shuffle, then the first round(n*train') go to train, the next
/// round(n*validation) to validation and round(n*test) to test, where the
/// train share absorbs the rounding remainder.
SplitIndices split_catalog(std::size_t record_count, const SplitSpec& spec);

/// How a newly trained model's divisors are chosen.
enum class NormalizationMode {
  kPublished,         // 6, 1792, 522 and 6.1 / 2.5
  kTrainingMaxima,    // derived from training-subset maxima
};

struct TrainConfig {
  std::size_t hidden_count = 4;
  std::size_t max_iterations = 1000;
  double lm_lambda_init = 1e-3;
  double lm_lambda_up = 10.0;
  double lm_lambda_down = 0.1;
  double lm_lambda_max = 1e10;
  double gradient_tol = 1e-10;
  double loss_tol = 1e-12;
  std::size_t patience = 6;
  std::uint64_t init_seed = 0;
  double init_scale = 0.5;
  NormalizationMode normalization = NormalizationMode::kPublished;

  /// Throws DataError on an invalid combination.
  void validate() const;
};

enum class StopReason { kConverged, kEarlyStopped, kMaxIterations };

std::string_view to_string(StopReason reason);

struct TrainingReport {
  Target target = Target::kPga;
  std::vector<Subset> split;
  /// Entry 0 is the initial weights; entry k follows the k-th accepted step.
  std::vector<double> train_loss;
  std::vector<double> validation_loss;
  /// Damping used for each accepted step (one shorter than the loss traces).
  std::vector<double> lambda;
  StopReason stop_reason = StopReason::kMaxIterations;
  std::string stop_detail;
  /// Accepted-step index of the returned weights.
  std::size_t best_iteration = 0;
  /// Correlation on normalized ln(IM); absent when undefined (zero variance).
  std::optional<double> r_train;
  std::optional<double> r_validation;
  std::optional<double> r_test;
  /// Weights with the lowest validation loss. This is what training returns.
  NetworkModel model;
  /// Weights after the last accepted step, kept for diagnostics.
  NetworkModel final_iterate;
};

/// Sum of squared errors of the network's normalized ln(IM) over the given
/// records.
double sum_squared_error(const NetworkModel& model,
                         std::span<const GroundMotionRecord> records,
                         std::span<const std::size_t> indices);

/// Divisors derived from training-subset maxima: each input maximum rounded
/// up to an integer, max |ln(IM)| rounded up to one decimal.
Normalization normalization_from_maxima(
    std::span<const GroundMotionRecord> records,
    std::span<const std::size_t> indices, Target target);

/// Fits a network with Levenberg-Marquardt on the training subset, stopping
/// early once validation loss fails to improve for `patience` consecutive
/// accepted steps. Throws NumericalError on a non-finite loss or a singular
/// damped system, DataError on invalid records or configuration.
TrainingReport train(std::span<const GroundMotionRecord> records,
                     Target target, const TrainConfig& config,
                     const SplitSpec& split);

/// Row-major n x (5H+1) matrix of d(normalized ln IM)/d(parameter), one row
/// per record, columns per ParameterLayout.
struct Jacobian {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  double operator()(std::size_t r, std::size_t c) const {
    return values[r * cols + c];
  }
};

Jacobian jacobian(const NetworkModel& model,
                  std::span<const GroundMotionRecord> records);

/// Damped Gauss-Newton step: solves (J'J + lambda*I) delta = -J'e.
/// Throws NumericalError when the damped system is not positive definite.
std::vector<double> levenberg_marquardt_step(const Jacobian& jac,
                                             std::span<const double> residuals,
                                             double lambda);

/// Pearson correlation coefficient. Throws DataError on length mismatch or
/// fewer than two points, NumericalError when either side has zero variance.
double correlation(std::span<const double> predicted,
                   std::span<const double> observed);

struct SweepRow {
  std::size_t hidden_count = 0;
  std::optional<double> r2_train;
  std::optional<double> r2_test;
  std::optional<StopReason> stop_reason;
  std::size_t iterations = 0;
  /// Set when training this size failed; the sweep continues.
  std::string error;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::size_t selected_hidden_count = 0;
  double margin = 0.01;
  TrainingReport selected;
};

/// Trains one network per hidden size on a shared split and picks the
/// smallest size whose test R^2 lies within `margin` of the best. Sizes are
/// trained concurrently; the result does not depend on scheduling.
SweepResult sweep_hidden_sizes(std::span<const GroundMotionRecord> records,
                               Target target, const TrainConfig& base_config,
                               const SplitSpec& split,
                               std::span<const std::size_t> hidden_sizes,
                               double margin = 0.01);

}  // namespace gmpe_ann
