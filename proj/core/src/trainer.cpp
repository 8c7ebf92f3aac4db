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

#include "gmpe_ann/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "evaluate.hpp"
#include "gmpe_ann/error.hpp"
#include "random.hpp"

namespace gmpe_ann {

std::string_view to_string(Subset subset) {
  switch (subset) {
    case Subset::kTrain:
      return "train";
    case Subset::kValidation:
      return "validation";
    case Subset::kTest:
      return "test";
  }
  return "unknown";
}

std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::kConverged:
      return "converged";
    case StopReason::kEarlyStopped:
      return "early_stopped";
    case StopReason::kMaxIterations:
      return "max_iterations";
  }
  return "unknown";
}

void SplitSpec::validate() const {
  for (double f : {train_fraction, validation_fraction, test_fraction}) {
    if (!(f > 0.0 && f < 1.0)) {
      throw DataError("split fractions must lie in (0, 1)");
    }
  }
  if (std::abs(train_fraction + validation_fraction + test_fraction - 1.0) >
      1e-9) {
    throw DataError("split fractions must sum to 1");
  }
}

std::vector<Subset> SplitIndices::assignment(std::size_t record_count) const {
  std::vector<Subset> out(record_count, Subset::kTrain);
  for (std::size_t i : validation) out[i] = Subset::kValidation;
  for (std::size_t i : test) out[i] = Subset::kTest;
  return out;
}

SplitIndices split_catalog(std::size_t record_count, const SplitSpec& spec) {
  spec.validate();
  if (record_count < kMinSplitRecords) {
    throw DataError("at least " + std::to_string(kMinSplitRecords) +
                    " records are needed to split a catalog, got " +
                    std::to_string(record_count));
  }
  const double n = static_cast<double>(record_count);
  const auto n_val = static_cast<std::size_t>(std::round(n * spec.validation_fraction));
  const auto n_test = static_cast<std::size_t>(std::round(n * spec.test_fraction));
  if (n_val + n_test >= record_count) {
    throw DataError("split leaves no training records");
  }

  std::vector<std::size_t> order(record_count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 gen(spec.seed);
  detail::shuffle(std::span<std::size_t>(order), gen);

  const std::size_t n_train = record_count - n_val - n_test;
  SplitIndices out;
  out.train.assign(order.begin(), order.begin() + n_train);
  out.validation.assign(order.begin() + n_train,
                        order.begin() + n_train + n_val);
  out.test.assign(order.begin() + n_train + n_val, order.end());
  return out;
}

void TrainConfig::validate() const {
  if (hidden_count < NetworkModel::kMinHidden ||
      hidden_count > NetworkModel::kMaxHidden) {
    throw DataError("hidden_count must be in [1, 10]");
  }
  if (!(lm_lambda_init > 0.0)) throw DataError("lm_lambda_init must be positive");
  if (!(lm_lambda_up > 1.0)) throw DataError("lm_lambda_up must exceed 1");
  if (!(lm_lambda_down > 0.0 && lm_lambda_down < 1.0)) {
    throw DataError("lm_lambda_down must lie in (0, 1)");
  }
  if (!(lm_lambda_max >= lm_lambda_init)) {
    throw DataError("lm_lambda_max must be at least lm_lambda_init");
  }
  if (patience < 1) throw DataError("patience must be at least 1");
  if (!(init_scale > 0.0) || !std::isfinite(init_scale)) {
    throw DataError("init_scale must be positive");
  }
  if (!(gradient_tol >= 0.0) || !(loss_tol >= 0.0)) {
    throw DataError("tolerances must be non-negative");
  }
}

double sum_squared_error(const NetworkModel& model,
                         std::span<const GroundMotionRecord> records,
                         std::span<const std::size_t> indices) {
  const Target target = model.target();
  const double div = model.normalization().log_out_div;
  double sse = 0.0;
  for (std::size_t i : indices) {
    const auto& r = records[i];
    const double e =
        forward_normalized_log(model, model.normalization().normalize(r.scenario())) -
        std::log(r.observed(target)) / div;
    sse += e * e;
  }
  return sse;
}

Normalization normalization_from_maxima(
    std::span<const GroundMotionRecord> records,
    std::span<const std::size_t> indices, Target target) {
  if (indices.empty()) throw DataError("no records to derive divisors from");
  double mw = 0.0, vs30 = 0.0, rjb = 0.0, ln_im = 0.0;
  for (std::size_t i : indices) {
    const auto& r = records[i];
    mw = std::max(mw, std::abs(r.magnitude));
    vs30 = std::max(vs30, r.vs30);
    rjb = std::max(rjb, r.rjb);
    ln_im = std::max(ln_im, std::abs(std::log(r.observed(target))));
  }
  const auto up = [](double x) { return std::max(1.0, std::ceil(x)); };
  const double out = std::ceil(ln_im * 10.0) / 10.0;
  return {up(mw), up(vs30), up(rjb), out > 0.0 ? out : 1.0};
}

Jacobian jacobian(const NetworkModel& model,
                  std::span<const GroundMotionRecord> records) {
  const ParameterLayout layout = model.layout();
  const std::vector<double> params = model.parameters();
  Jacobian jac{records.size(), layout.size(),
               std::vector<double>(records.size() * layout.size())};
  for (std::size_t r = 0; r < records.size(); ++r) {
    detail::evaluate(params, layout,
                     model.normalization().normalize(records[r].scenario()),
                     std::span<double>(jac.values).subspan(r * jac.cols, jac.cols));
  }
  return jac;
}

namespace {

using RowMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::VectorXd solve_damped(const Eigen::MatrixXd& normal,
                             const Eigen::VectorXd& gradient, double lambda) {
  Eigen::MatrixXd damped = normal;
  damped.diagonal().array() += lambda;
  Eigen::LLT<Eigen::MatrixXd> llt(damped);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("damped normal equations are not positive definite");
  }
  Eigen::VectorXd delta = llt.solve(-gradient);
  if (!delta.allFinite()) {
    throw NumericalError("damped normal equations produced a non-finite step");
  }
  return delta;
}

// Training-time view of one subset: normalized inputs and targets.
struct SubsetData {
  std::vector<std::size_t> record_index;
  std::vector<std::array<double, 3>> inputs;
  std::vector<double> targets;

  SubsetData(std::span<const GroundMotionRecord> records,
             std::span<const std::size_t> indices, Target target,
             const Normalization& norm)
      : record_index(indices.begin(), indices.end()) {
    for (std::size_t i : indices) {
      inputs.push_back(norm.normalize(records[i].scenario()));
      targets.push_back(std::log(records[i].observed(target)) / norm.log_out_div);
    }
  }

  std::size_t size() const { return targets.size(); }

  double loss(std::span<const double> params,
              const ParameterLayout& layout) const {
    double sse = 0.0;
    for (std::size_t r = 0; r < size(); ++r) {
      const double e = detail::evaluate(params, layout, inputs[r]) - targets[r];
      sse += e * e;
    }
    return sse;
  }

  // Loss at an accepted point must be finite; report the first bad record.
  double checked_loss(std::span<const double> params,
                      const ParameterLayout& layout) const {
    double sse = 0.0;
    for (std::size_t r = 0; r < size(); ++r) {
      const double e = detail::evaluate(params, layout, inputs[r]) - targets[r];
      if (!std::isfinite(e)) {
        throw NumericalError("non-finite loss at record " +
                             std::to_string(record_index[r]));
      }
      sse += e * e;
    }
    return sse;
  }

  std::vector<double> predictions(std::span<const double> params,
                                  const ParameterLayout& layout) const {
    std::vector<double> out(size());
    for (std::size_t r = 0; r < size(); ++r) {
      out[r] = detail::evaluate(params, layout, inputs[r]);
    }
    return out;
  }
};

std::optional<double> subset_correlation(const SubsetData& data,
                                         std::span<const double> params,
                                         const ParameterLayout& layout) {
  if (data.size() < 2) return std::nullopt;
  try {
    return correlation(data.predictions(params, layout), data.targets);
  } catch (const NumericalError&) {
    return std::nullopt;
  }
}

}  // namespace

std::vector<double> levenberg_marquardt_step(const Jacobian& jac,
                                             std::span<const double> residuals,
                                             double lambda) {
  if (residuals.size() != jac.rows) {
    throw DataError("residual count does not match Jacobian rows");
  }
  const Eigen::Map<const RowMatrix> j(jac.values.data(),
                                      static_cast<Eigen::Index>(jac.rows),
                                      static_cast<Eigen::Index>(jac.cols));
  const Eigen::Map<const Eigen::VectorXd> e(
      residuals.data(), static_cast<Eigen::Index>(residuals.size()));
  const Eigen::MatrixXd normal = j.transpose() * j;
  const Eigen::VectorXd gradient = j.transpose() * e;
  const Eigen::VectorXd delta = solve_damped(normal, gradient, lambda);
  return {delta.data(), delta.data() + delta.size()};
}

TrainingReport train(std::span<const GroundMotionRecord> records,
                     Target target, const TrainConfig& config,
                     const SplitSpec& split_spec) {
  config.validate();
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto errors = validation_errors(records[i]);
    if (!errors.empty()) {
      throw DataError("record " + std::to_string(i) + ": " + errors.front());
    }
  }

  const SplitIndices split = split_catalog(records.size(), split_spec);
  const Normalization norm =
      config.normalization == NormalizationMode::kPublished
          ? Normalization::published(target)
          : normalization_from_maxima(records, split.train, target);

  const SubsetData train_set(records, split.train, target, norm);
  const SubsetData val_set(records, split.validation, target, norm);
  const SubsetData test_set(records, split.test, target, norm);

  const ParameterLayout layout{config.hidden_count};
  const std::size_t n_params = layout.size();
  std::vector<double> params(n_params);
  {
    std::mt19937_64 gen(config.init_seed);
    for (double& p : params) {
      p = detail::uniform(gen, -config.init_scale, config.init_scale);
    }
  }

  std::vector<double> train_trace{train_set.checked_loss(params, layout)};
  std::vector<double> val_trace{val_set.checked_loss(params, layout)};
  std::vector<double> lambda_trace;

  double loss = train_trace.back();
  double best_val = val_trace.back();
  std::vector<double> best_params = params;
  std::size_t best_iteration = 0;
  std::size_t checks_without_improvement = 0;
  double lambda = config.lm_lambda_init;

  StopReason stop = StopReason::kMaxIterations;
  std::string stop_detail = "reached max_iterations";

  const auto n_rows = static_cast<Eigen::Index>(train_set.size());
  RowMatrix jac(n_rows, static_cast<Eigen::Index>(n_params));
  Eigen::VectorXd residual(n_rows);
  std::vector<double> trial(n_params);

  for (std::size_t iteration = 0; iteration < config.max_iterations;
       ++iteration) {
    if (loss <= config.loss_tol) {
      stop = StopReason::kConverged;
      stop_detail = "training loss below loss_tol";
      break;
    }

    for (Eigen::Index r = 0; r < n_rows; ++r) {
      const auto ru = static_cast<std::size_t>(r);
      residual[r] = detail::evaluate(params, layout, train_set.inputs[ru],
                                     std::span<double>(jac.row(r).data(), n_params)) -
                    train_set.targets[ru];
    }
    const Eigen::MatrixXd normal = jac.transpose() * jac;
    const Eigen::VectorXd gradient = jac.transpose() * residual;
    if (gradient.lpNorm<Eigen::Infinity>() < config.gradient_tol) {
      stop = StopReason::kConverged;
      stop_detail = "gradient below gradient_tol";
      break;
    }

    bool accepted = false;
    bool damping_exhausted = false;
    while (!accepted) {
      Eigen::VectorXd delta;
      try {
        delta = solve_damped(normal, gradient, lambda);
      } catch (const NumericalError& e) {
        if (lambda >= config.lm_lambda_max) {
          std::ostringstream os;
          os << e.what() << " at iteration " << iteration
             << " with lambda = " << lambda;
          throw NumericalError(os.str());
        }
        lambda = std::min(lambda * config.lm_lambda_up, config.lm_lambda_max);
        continue;
      }
      for (std::size_t k = 0; k < n_params; ++k) {
        trial[k] = params[k] + delta[static_cast<Eigen::Index>(k)];
      }
      const double trial_loss = train_set.loss(trial, layout);
      if (std::isfinite(trial_loss) && trial_loss < loss) {
        lambda_trace.push_back(lambda);
        params.swap(trial);
        loss = trial_loss;
        lambda *= config.lm_lambda_down;
        accepted = true;
      } else if (lambda >= config.lm_lambda_max) {
        damping_exhausted = true;
        break;
      } else {
        lambda = std::min(lambda * config.lm_lambda_up, config.lm_lambda_max);
      }
    }
    if (damping_exhausted) {
      stop = StopReason::kConverged;
      stop_detail = "no descent step up to lm_lambda_max";
      break;
    }

    train_trace.push_back(loss);
    const double val = val_set.checked_loss(params, layout);
    val_trace.push_back(val);
    if (val < best_val) {
      best_val = val;
      best_params = params;
      best_iteration = lambda_trace.size();
      checks_without_improvement = 0;
    } else if (++checks_without_improvement >= config.patience) {
      stop = StopReason::kEarlyStopped;
      stop_detail = "validation loss did not improve for " +
               std::to_string(config.patience) + " consecutive steps";
      break;
    }
  }

  return TrainingReport{
      .target = target,
      .split = split.assignment(records.size()),
      .train_loss = std::move(train_trace),
      .validation_loss = std::move(val_trace),
      .lambda = std::move(lambda_trace),
      .stop_reason = stop,
      .stop_detail = std::move(stop_detail),
      .best_iteration = best_iteration,
      .r_train = subset_correlation(train_set, best_params, layout),
      .r_validation = subset_correlation(val_set, best_params, layout),
      .r_test = subset_correlation(test_set, best_params, layout),
      .model = NetworkModel::from_parameters(target, config.hidden_count,
                                             best_params, norm),
      .final_iterate = NetworkModel::from_parameters(
          target, config.hidden_count, params, norm),
  };
}

double correlation(std::span<const double> predicted,
                   std::span<const double> observed) {
  if (predicted.size() != observed.size()) {
    throw DataError("correlation inputs differ in length");
  }
  if (predicted.size() < 2) {
    throw DataError("correlation needs at least two points");
  }
  const double n = static_cast<double>(predicted.size());
  const double mean_p =
      std::accumulate(predicted.begin(), predicted.end(), 0.0) / n;
  const double mean_o =
      std::accumulate(observed.begin(), observed.end(), 0.0) / n;
  double spp = 0.0, soo = 0.0, spo = 0.0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const double dp = predicted[i] - mean_p;
    const double d_o = observed[i] - mean_o;
    spp += dp * dp;
    soo += d_o * d_o;
    spo += dp * d_o;
  }
  if (!(spp > 0.0) || !(soo > 0.0)) {
    throw NumericalError("correlation undefined for zero-variance input");
  }
  return std::clamp(spo / std::sqrt(spp * soo), -1.0, 1.0);
}

SweepResult sweep_hidden_sizes(std::span<const GroundMotionRecord> records,
                               Target target, const TrainConfig& base_config,
                               const SplitSpec& split,
                               std::span<const std::size_t> hidden_sizes,
                               double margin) {
  if (hidden_sizes.empty()) throw DataError("hidden size range is empty");
  if (!(margin >= 0.0)) throw DataError("sweep margin must be non-negative");

  std::vector<std::future<TrainingReport>> jobs;
  for (std::size_t h : hidden_sizes) {
    TrainConfig config = base_config;
    config.hidden_count = h;
    jobs.push_back(std::async(std::launch::async, [records, target, config,
                                                   split] {
      return train(records, target, config, split);
    }));
  }

  std::vector<SweepRow> rows;
  std::vector<std::optional<TrainingReport>> reports;
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    SweepRow row;
    row.hidden_count = hidden_sizes[k];
    try {
      TrainingReport report = jobs[k].get();
      const auto square = [](std::optional<double> r) -> std::optional<double> {
        if (!r) return std::nullopt;
        return *r * *r;
      };
      row.r2_train = square(report.r_train);
      row.r2_test = square(report.r_test);
      row.stop_reason = report.stop_reason;
      row.iterations = report.lambda.size();
      reports.emplace_back(std::move(report));
    } catch (const Error& e) {
      row.error = e.what();
      reports.emplace_back(std::nullopt);
    }
    rows.push_back(std::move(row));
  }

  double best = -std::numeric_limits<double>::infinity();
  for (const SweepRow& row : rows) {
    if (row.r2_test) best = std::max(best, *row.r2_test);
  }
  if (!std::isfinite(best)) {
    std::string message = "hidden-size sweep failed for every size";
    for (const SweepRow& row : rows) {
      if (!row.error.empty()) {
        message += "; H=" + std::to_string(row.hidden_count) + ": " + row.error;
      }
    }
    throw NumericalError(message);
  }

  std::optional<std::size_t> pick;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k].r2_test && *rows[k].r2_test >= best - margin &&
        (!pick || rows[k].hidden_count < rows[*pick].hidden_count)) {
      pick = k;
    }
  }
  return SweepResult{std::move(rows), hidden_sizes[*pick], margin,
                     std::move(*reports[*pick])};
}

}  // namespace gmpe_ann
