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

#include "cli/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "gmpe_ann/analysis.hpp"
#include "gmpe_ann/catalog.hpp"
#include "gmpe_ann/error.hpp"
#include "gmpe_ann/model_io.hpp"
#include "gmpe_ann/network.hpp"
#include "gmpe_ann/trainer.hpp"

namespace gmpe_ann::cli {

namespace fs = std::filesystem;

namespace {

/// Bad arguments detected after CLI11 parsing.
class UsageError : public Error {
 public:
  using Error::Error;
};

std::shared_ptr<spdlog::logger> make_logger(std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err, true);
  sink->set_pattern("%l: %v");
  auto logger = std::make_shared<spdlog::logger>("gmpe-ann", std::move(sink));
  logger->set_level(spdlog::level::info);
  if (const char* env = std::getenv("GMPE_ANN_LOG")) {
    const std::string level = env;
    if (level == "quiet") {
      logger->set_level(spdlog::level::err);
    } else if (level == "debug") {
      logger->set_level(spdlog::level::debug);
    }
  }
  return logger;
}

struct ModelChoice {
  std::string label;
  NetworkModel model;
};

ModelChoice select_model(const std::string& selector) {
  if (selector == "published-pga") {
    return {selector, published_model(Target::kPga)};
  }
  if (selector == "published-pgv") {
    return {selector, published_model(Target::kPgv)};
  }
  if (selector.rfind("file:", 0) == 0 && selector.size() > 5) {
    return {selector, read_model(selector.substr(5))};
  }
  throw UsageError("--model must be published-pga, published-pgv or file:<path>, got '" +
                   selector + "'");
}

Target target_option(const std::string& text) {
  const auto target = parse_target(text);
  if (!target) throw UsageError("--target must be pga or pgv, got '" + text + "'");
  return *target;
}

/// Display scaling for the intensity values of a model's target.
struct Units {
  double divisor = 1.0;
  std::string label;
  std::string column_suffix;
};

Units units_for(Target target, const std::string& option) {
  if (option == "cmps2" || option.empty()) {
    return target == Target::kPga ? Units{1.0, "cm/s^2", "cmps2"}
                                  : Units{1.0, "cm/s", "cmps"};
  }
  if (option == "g") {
    if (target != Target::kPga) {
      throw UsageError("--units g applies to PGA models only");
    }
    return {kStandardGravity, "g", "g"};
  }
  throw UsageError("--units must be cmps2 or g, got '" + option + "'");
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string fmt_num(double x) { return format_number(x); }

std::string fmt_opt(const std::optional<double>& x) {
  return x ? format_number(*x) : std::string();
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  return out;
}

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DataError("cannot create output directory " + dir.string());
}

void require_distinct(const fs::path& output, const fs::path& input) {
  std::error_code ec;
  if (fs::exists(output, ec) && fs::equivalent(output, input, ec)) {
    throw UsageError("output " + output.string() + " would overwrite input " +
                     input.string());
  }
}

Catalog load_catalog(const std::string& path, bool strict,
                     spdlog::logger& log) {
  Catalog catalog = read_catalog(path, {strict});
  for (const RowError& e : catalog.errors) {
    log.warn("{}:{}: skipped row: {}", path, e.line, e.message);
  }
  if (catalog.out_of_domain > 0) {
    log.warn("{} records lie outside the calibrated range (Mw 3-5.8, RJB 4-500 km)",
             catalog.out_of_domain);
  }
  log.info("read {} records from {}", catalog.records.size(), path);
  return catalog;
}

std::vector<double> parse_number_list(const std::string& text,
                                      const std::string& option) {
  std::vector<double> out;
  for (const std::string& cell : split_csv_line(text)) {
    try {
      std::size_t used = 0;
      const double v = std::stod(cell, &used);
      if (used != cell.size()) throw std::invalid_argument(cell);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError(option + ": '" + cell + "' is not a number");
    }
  }
  return out;
}

// ---------------------------------------------------------------- predict

struct PredictOptions {
  std::string model = "published-pga";
  std::optional<double> mw;
  std::optional<double> vs30;
  std::optional<double> rjb;
  std::string catalog;
  std::string out;
  std::string units = "cmps2";
  bool strict = false;
};

int cmd_predict(const PredictOptions& o, std::ostream& out,
                spdlog::logger& log) {
  const ModelChoice choice = select_model(o.model);
  const NetworkModel& model = choice.model;
  const Units units = units_for(model.target(), o.units);
  const std::string name(to_string(model.target()));

  if (o.catalog.empty()) {
    if (!o.mw || !o.vs30 || !o.rjb) {
      throw UsageError("predict needs --mw, --vs30 and --rjb, or --catalog");
    }
    const Scenario s{*o.mw, *o.vs30, *o.rjb};
    const Prediction p = forward(model, s);
    out << "model     " << choice.label << " (" << name << ", H="
        << model.hidden_count() << ")\n";
    out << "mw        " << fmt_num(s.magnitude) << "\n";
    out << "vs30_mps  " << fmt_num(s.vs30) << "\n";
    out << "rjb_km    " << fmt_num(s.rjb) << "\n";
    out << name << "       " << fmt_num(p.value / units.divisor) << " "
        << units.label << "\n";
    out << "ln(" << name << ")   " << fmt_num(p.log_value) << "\n";
    for (const std::string& w : domain_warnings(s)) {
      out << "warning: " << w << "\n";
    }
    return kOk;
  }

  if (o.mw || o.vs30 || o.rjb) {
    throw UsageError("--catalog cannot be combined with --mw/--vs30/--rjb");
  }
  const Catalog catalog = load_catalog(o.catalog, o.strict, log);
  std::ofstream file;
  std::ostream* sink = &out;
  if (!o.out.empty()) {
    require_distinct(o.out, o.catalog);
    file = open_output(o.out);
    sink = &file;
  }
  const std::string column = "pred_" + lower(name) + "_" + units.column_suffix;
  *sink << "event_id,station_id,mw,vs30_mps,rjb_km,pga_cmps2,pgv_cmps,"
        << column << ",ln_pred_" << lower(name) << ",out_of_domain\n";
  for (const GroundMotionRecord& r : catalog.records) {
    const Prediction p = forward(model, r.scenario());
    *sink << r.event_id << ',' << r.station_id << ',' << fmt_num(r.magnitude)
          << ',' << fmt_num(r.vs30) << ',' << fmt_num(r.rjb) << ','
          << fmt_num(r.pga) << ',' << fmt_num(r.pgv) << ','
          << fmt_num(p.value / units.divisor) << ',' << fmt_num(p.log_value)
          << ',' << (is_out_of_domain(r) ? 1 : 0) << '\n';
  }
  if (!o.out.empty()) {
    log.info("wrote {} predictions to {}", catalog.records.size(), o.out);
  }
  return kOk;
}

// ------------------------------------------------------------ train/sweep

struct TrainOptions {
  std::string catalog;
  std::string out;
  std::string target = "pga";
  std::size_t hidden = 4;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> init_seed;
  std::size_t max_iterations = 1000;
  double lambda_init = 1e-3;
  double lambda_up = 10.0;
  double lambda_down = 0.1;
  double gradient_tol = 1e-10;
  double loss_tol = 1e-12;
  std::size_t patience = 6;
  double init_scale = 0.5;
  double train_frac = 0.6;
  double val_frac = 0.2;
  double test_frac = 0.2;
  std::string normalization = "published";
  bool strict = false;
  // sweep only
  std::size_t h_min = 1;
  std::size_t h_max = 10;
  double margin = 0.01;
};

TrainConfig train_config(const TrainOptions& o) {
  TrainConfig c;
  c.hidden_count = o.hidden;
  c.max_iterations = o.max_iterations;
  c.lm_lambda_init = o.lambda_init;
  c.lm_lambda_up = o.lambda_up;
  c.lm_lambda_down = o.lambda_down;
  c.gradient_tol = o.gradient_tol;
  c.loss_tol = o.loss_tol;
  c.patience = o.patience;
  c.init_seed = o.init_seed.value_or(o.seed);
  c.init_scale = o.init_scale;
  if (o.normalization == "published") {
    c.normalization = NormalizationMode::kPublished;
  } else if (o.normalization == "maxima") {
    c.normalization = NormalizationMode::kTrainingMaxima;
  } else {
    throw UsageError("--normalization must be published or maxima");
  }
  return c;
}

SplitSpec split_spec(const TrainOptions& o) {
  return {o.train_frac, o.val_frac, o.test_frac, o.seed};
}

/// Option values rejected before any data is read.
void check_settings(const TrainConfig& config, const SplitSpec& split) {
  try {
    config.validate();
    split.validate();
  } catch (const DataError& e) {
    throw UsageError(e.what());
  }
}

void write_scatter(const fs::path& path, const TrainingReport& report,
                   std::span<const GroundMotionRecord> records) {
  std::ofstream f = open_output(path);
  const NetworkModel& m = report.model;
  const double div = m.normalization().log_out_div;
  f << "record_index,event_id,station_id,subset,observed,predicted,"
       "observed_normalized_log,predicted_normalized_log\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    const Prediction p = forward(m, r.scenario());
    const double obs = r.observed(m.target());
    f << i << ',' << r.event_id << ',' << r.station_id << ','
      << to_string(report.split[i]) << ',' << fmt_num(obs) << ','
      << fmt_num(p.value) << ',' << fmt_num(std::log(obs) / div) << ','
      << fmt_num(p.normalized_log) << '\n';
  }
}

void write_training_curve(const fs::path& path, const TrainingReport& report) {
  std::ofstream f = open_output(path);
  f << "step,train_sse,validation_sse,lambda\n";
  for (std::size_t k = 0; k < report.train_loss.size(); ++k) {
    f << k << ',' << fmt_num(report.train_loss[k]) << ','
      << fmt_num(report.validation_loss[k]) << ','
      << (k > 0 ? fmt_num(report.lambda[k - 1]) : std::string()) << '\n';
  }
}

void print_report(std::ostream& out, const TrainingReport& r) {
  out << "target          " << to_string(r.target) << "\n";
  out << "hidden_count    " << r.model.hidden_count() << "\n";
  out << "stop_reason     " << to_string(r.stop_reason) << " (" << r.stop_detail
      << ")\n";
  out << "accepted_steps  " << r.lambda.size() << "\n";
  out << "best_iteration  " << r.best_iteration << "\n";
  out << "train_sse       " << fmt_num(r.train_loss[r.best_iteration]) << "\n";
  out << "validation_sse  " << fmt_num(r.validation_loss[r.best_iteration])
      << "\n";
  out << "R_train         " << fmt_opt(r.r_train) << "\n";
  out << "R_validation    " << fmt_opt(r.r_validation) << "\n";
  out << "R_test          " << fmt_opt(r.r_test) << "\n";
}

int cmd_train(const TrainOptions& o, std::ostream& out, spdlog::logger& log) {
  const Target target = target_option(o.target);
  const TrainConfig config = train_config(o);
  check_settings(config, split_spec(o));
  const Catalog catalog = load_catalog(o.catalog, o.strict, log);
  const TrainingReport report =
      train(catalog.records, target, config, split_spec(o));

  const fs::path dir = o.out;
  ensure_directory(dir);
  write_model(dir / "model.json", report.model);
  open_output(dir / "report.json") << report_to_string(report);
  write_scatter(dir / "scatter.csv", report, catalog.records);
  write_training_curve(dir / "training_curve.csv", report);
  print_report(out, report);
  log.info("wrote model and report to {}", dir.string());
  return kOk;
}

int cmd_sweep(const TrainOptions& o, std::ostream& out, spdlog::logger& log) {
  const Target target = target_option(o.target);
  if (o.h_min < 1 || o.h_max < o.h_min) {
    throw UsageError("--h-min/--h-max must satisfy 1 <= h-min <= h-max");
  }
  TrainConfig config = train_config(o);
  std::vector<std::size_t> sizes;
  for (std::size_t h = o.h_min; h <= o.h_max; ++h) sizes.push_back(h);
  config.hidden_count = sizes.front();
  check_settings(config, split_spec(o));
  if (o.h_max > 10) throw UsageError("--h-max must be at most 10");
  const Catalog catalog = load_catalog(o.catalog, o.strict, log);
  const SweepResult sweep = sweep_hidden_sizes(catalog.records, target, config,
                                               split_spec(o), sizes, o.margin);

  const fs::path dir = o.out;
  ensure_directory(dir);
  {
    std::ofstream f = open_output(dir / "sweep.csv");
    f << "hidden_count,r2_train,r2_test,stop_reason,accepted_steps,error\n";
    for (const SweepRow& row : sweep.rows) {
      f << row.hidden_count << ',' << fmt_opt(row.r2_train) << ','
        << fmt_opt(row.r2_test) << ','
        << (row.stop_reason ? std::string(to_string(*row.stop_reason)) : "")
        << ',' << row.iterations << ",\"" << row.error << "\"\n";
    }
  }
  open_output(dir / "sweep.json") << sweep_to_string(sweep);
  write_model(dir / "model.json", sweep.selected.model);
  write_scatter(dir / "scatter.csv", sweep.selected, catalog.records);

  out << std::left << std::setw(8) << "H" << std::setw(24) << "R2_train"
      << std::setw(24) << "R2_test" << "stop\n";
  for (const SweepRow& row : sweep.rows) {
    out << std::setw(8) << row.hidden_count << std::setw(24)
        << fmt_opt(row.r2_train) << std::setw(24) << fmt_opt(row.r2_test)
        << (row.error.empty()
                ? std::string(row.stop_reason ? to_string(*row.stop_reason) : "")
                : "failed: " + row.error)
        << "\n";
  }
  out << "selected H = " << sweep.selected_hidden_count << " (margin "
      << fmt_num(sweep.margin) << ")\n";
  return kOk;
}

// ---------------------------------------------------------------- evaluate

struct EvaluateOptions {
  std::string catalog;
  std::string out;
  std::string model;
  bool baseline = false;
  std::string target;
  std::string rjb_edges;
  std::string vs30_edges;
  bool strict = false;
};

void write_bins(const fs::path& path, const BinnedResiduals& b) {
  std::ofstream f = open_output(path);
  f << "lower,upper,count,mean,ci90_lower,ci90_upper\n";
  for (const ResidualBin& bin : b.bins) {
    f << fmt_num(bin.lower) << ',' << fmt_num(bin.upper) << ',' << bin.count
      << ',' << fmt_opt(bin.mean) << ',' << fmt_opt(bin.ci_lower) << ','
      << fmt_opt(bin.ci_upper) << '\n';
  }
}

void print_bins(std::ostream& out, const BinnedResiduals& b) {
  out << "residuals by " << to_string(b.group_by) << "\n";
  out << std::left << std::setw(20) << "bin" << std::setw(8) << "n"
      << std::setw(24) << "mean" << "90% CI of mean\n";
  for (const ResidualBin& bin : b.bins) {
    std::ostringstream range;
    range << "[" << fmt_num(bin.lower) << ", " << fmt_num(bin.upper) << ")";
    out << std::setw(20) << range.str() << std::setw(8) << bin.count
        << std::setw(24) << fmt_opt(bin.mean);
    if (bin.ci_lower) {
      out << "[" << fmt_num(*bin.ci_lower) << ", " << fmt_num(*bin.ci_upper)
          << "]";
    }
    out << "\n";
  }
}

int cmd_evaluate(const EvaluateOptions& o, std::ostream& out,
                 spdlog::logger& log) {
  std::optional<ModelChoice> choice;
  Target target = Target::kPga;
  if (o.baseline) {
    if (!o.model.empty()) {
      throw UsageError("--baseline and --model are mutually exclusive");
    }
    target = target_option(o.target.empty() ? "pga" : o.target);
  } else {
    const std::string selector =
        !o.model.empty() ? o.model
                         : "published-" + (o.target.empty() ? std::string("pga")
                                                             : lower(o.target));
    choice = select_model(selector);
    target = choice->model.target();
    if (!o.target.empty() && target_option(o.target) != target) {
      throw UsageError("--target does not match the model's target");
    }
  }

  const Catalog catalog = load_catalog(o.catalog, o.strict, log);
  if (o.baseline && !(target == Target::kPga ? catalog.has_baseline_pga
                                             : catalog.has_baseline_pgv)) {
    throw DataError(std::string("catalog has no ") +
                    (target == Target::kPga ? columns::kBaselinePga
                                            : columns::kBaselinePgv) +
                    " column");
  }
  const Predictor predictor = o.baseline
                                  ? Predictor{BaselinePredictor{}}
                                  : Predictor{&choice->model};
  const ResidualSet table = residuals(catalog.records, predictor, target);
  if (table.missing_baseline > 0) {
    log.warn("{} records without a baseline value were excluded",
             table.missing_baseline);
  }

  const auto rjb_edges = o.rjb_edges.empty()
                             ? default_edges(GroupBy::kRjb)
                             : parse_number_list(o.rjb_edges, "--rjb-edges");
  const auto vs30_edges = o.vs30_edges.empty()
                              ? default_edges(GroupBy::kVs30)
                              : parse_number_list(o.vs30_edges, "--vs30-edges");
  const BinnedResiduals by_rjb = bin_residuals(table, GroupBy::kRjb, rjb_edges);
  const BinnedResiduals by_vs30 =
      bin_residuals(table, GroupBy::kVs30, vs30_edges);
  for (const auto* b : {&by_rjb, &by_vs30}) {
    for (const std::string& w : b->warnings) {
      log.warn("{} bins: {}", to_string(b->group_by), w);
    }
  }

  out << "predictor " << (o.baseline ? std::string("baseline") : choice->label)
      << ", target " << to_string(target) << ", " << table.rows.size()
      << " residuals\n";
  print_bins(out, by_rjb);
  print_bins(out, by_vs30);

  if (!o.out.empty()) {
    const fs::path dir = o.out;
    ensure_directory(dir);
    std::ofstream f = open_output(dir / "residuals.csv");
    f << "record_index,event_id,station_id,mw,vs30_mps,rjb_km,observed,"
         "predicted,residual\n";
    for (const ResidualRow& r : table.rows) {
      f << r.record_index << ',' << r.event_id << ',' << r.station_id << ','
        << fmt_num(r.magnitude) << ',' << fmt_num(r.vs30) << ','
        << fmt_num(r.rjb) << ',' << fmt_num(r.observed) << ','
        << fmt_num(r.predicted) << ',' << fmt_num(r.residual) << '\n';
    }
    write_bins(dir / "bins_rjb.csv", by_rjb);
    write_bins(dir / "bins_vs30.csv", by_vs30);
    log.info("wrote residual tables to {}", dir.string());
  }
  return kOk;
}

// ------------------------------------------------------------- sensitivity

int cmd_sensitivity(const std::string& selector, const std::string& out_dir,
                    std::ostream& out, spdlog::logger& log) {
  const ModelChoice choice = select_model(selector);
  const auto importance = garson_importance(choice.model).as_array();
  out << "input  importance\n";
  for (std::size_t j = 0; j < 3; ++j) {
    out << std::left << std::setw(7) << kInputNames[j] << fmt_num(importance[j])
        << "\n";
  }
  if (!out_dir.empty()) {
    ensure_directory(out_dir);
    std::ofstream f = open_output(fs::path(out_dir) / "importance.csv");
    f << "input,importance\n";
    for (std::size_t j = 0; j < 3; ++j) {
      f << kInputNames[j] << ',' << fmt_num(importance[j]) << '\n';
    }
    log.info("wrote importances to {}", out_dir);
  }
  return kOk;
}

// ------------------------------------------------------------------- curve

struct CurveOptions {
  std::string model = "published-pga";
  std::vector<double> mw;
  double vs30 = 760.0;
  std::string rjb;
  std::string catalog;
  double mw_window = 0.25;
  std::string out;
  std::string units = "cmps2";
};

int cmd_curve(const CurveOptions& o, std::ostream& out, spdlog::logger& log) {
  const ModelChoice choice = select_model(o.model);
  const NetworkModel& model = choice.model;
  const Units units = units_for(model.target(), o.units);
  const std::vector<double> magnitudes =
      o.mw.empty() ? std::vector<double>{3.7, 5.3} : o.mw;
  const std::vector<double> grid =
      o.rjb.empty() ? default_rjb_grid() : parse_number_list(o.rjb, "--rjb");
  const std::string name = lower(to_string(model.target()));

  std::ostringstream table;
  table << "mw,vs30_mps,rjb_km," << name << "_" << units.column_suffix
        << ",ln_" << name << "\n";
  out << std::left << std::setw(8) << "mw" << std::setw(10) << "vs30_mps"
      << std::setw(10) << "rjb_km" << to_string(model.target()) << " ("
      << units.label << ")\n";
  for (double mw : magnitudes) {
    for (const CurvePoint& p : attenuation_curve(model, mw, o.vs30, grid)) {
      table << fmt_num(mw) << ',' << fmt_num(o.vs30) << ',' << fmt_num(p.rjb)
            << ',' << fmt_num(p.value / units.divisor) << ','
            << fmt_num(p.log_value) << '\n';
      out << std::setw(8) << fmt_num(mw) << std::setw(10) << fmt_num(o.vs30)
          << std::setw(10) << fmt_num(p.rjb) << fmt_num(p.value / units.divisor)
          << "\n";
    }
  }

  std::optional<Catalog> catalog;
  if (!o.catalog.empty()) catalog = load_catalog(o.catalog, false, log);

  if (!o.out.empty()) {
    const fs::path dir = o.out;
    ensure_directory(dir);
    open_output(dir / "curves.csv") << table.str();
    if (catalog) {
      std::ofstream f = open_output(dir / "observed.csv");
      f << "curve_mw,event_id,station_id,mw,vs30_mps,rjb_km,observed_"
        << units.column_suffix << "\n";
      for (double mw : magnitudes) {
        for (const GroundMotionRecord& r : catalog->records) {
          if (std::abs(r.magnitude - mw) <= o.mw_window) {
            f << fmt_num(mw) << ',' << r.event_id << ',' << r.station_id << ','
              << fmt_num(r.magnitude) << ',' << fmt_num(r.vs30) << ','
              << fmt_num(r.rjb) << ','
              << fmt_num(r.observed(model.target()) / units.divisor) << '\n';
          }
        }
      }
    }
    log.info("wrote curve tables to {}", dir.string());
  }
  return kOk;
}

void add_train_options(CLI::App* cmd, TrainOptions& o) {
  cmd->add_option("--catalog", o.catalog, "Input catalog (CSV)")->required();
  cmd->add_option("--out", o.out, "Output directory")->required();
  cmd->add_option("--target", o.target, "pga or pgv")->capture_default_str();
  cmd->add_option("--seed", o.seed, "Split seed (also the init seed unless --init-seed)")
      ->capture_default_str();
  cmd->add_option("--init-seed", o.init_seed, "Weight initialization seed");
  cmd->add_option("--max-iterations", o.max_iterations)->capture_default_str();
  cmd->add_option("--lambda-init", o.lambda_init)->capture_default_str();
  cmd->add_option("--lambda-up", o.lambda_up)->capture_default_str();
  cmd->add_option("--lambda-down", o.lambda_down)->capture_default_str();
  cmd->add_option("--gradient-tol", o.gradient_tol)->capture_default_str();
  cmd->add_option("--loss-tol", o.loss_tol)->capture_default_str();
  cmd->add_option("--patience", o.patience)->capture_default_str();
  cmd->add_option("--init-scale", o.init_scale)->capture_default_str();
  cmd->add_option("--train-frac", o.train_frac)->capture_default_str();
  cmd->add_option("--val-frac", o.val_frac)->capture_default_str();
  cmd->add_option("--test-frac", o.test_frac)->capture_default_str();
  cmd->add_option("--normalization", o.normalization, "published or maxima")
      ->capture_default_str();
  cmd->add_flag("--strict", o.strict, "Fail on any bad catalog row");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  auto log = make_logger(err);

  CLI::App app{"Neural-network ground-motion prediction for PGA and PGV",
               "gmpe-ann"};
  app.require_subcommand(1);

  PredictOptions predict_opts;
  auto* predict = app.add_subcommand("predict", "Predict PGA or PGV");
  predict->add_option("--model", predict_opts.model,
                      "published-pga, published-pgv or file:<path>")
      ->capture_default_str();
  auto* mw_opt = predict->add_option("--mw", predict_opts.mw, "Moment magnitude");
  auto* vs30_opt = predict->add_option("--vs30", predict_opts.vs30, "Vs30 (m/s)");
  auto* rjb_opt = predict->add_option("--rjb", predict_opts.rjb,
                                      "Joyner-Boore distance (km)");
  auto* catalog_opt = predict->add_option("--catalog", predict_opts.catalog,
                                          "Catalog for batch prediction");
  predict->add_option("--out", predict_opts.out, "Batch output file");
  predict->add_option("--units", predict_opts.units, "cmps2 or g")
      ->capture_default_str();
  predict->add_flag("--strict", predict_opts.strict);
  catalog_opt->excludes(mw_opt)->excludes(vs30_opt)->excludes(rjb_opt);

  TrainOptions train_opts;
  auto* train_cmd = app.add_subcommand("train", "Train a network with Levenberg-Marquardt");
  add_train_options(train_cmd, train_opts);
  train_cmd->add_option("--hidden", train_opts.hidden, "Hidden neurons (1-10)")
      ->capture_default_str();

  TrainOptions sweep_opts;
  auto* sweep_cmd = app.add_subcommand("sweep", "Train over a range of hidden sizes");
  add_train_options(sweep_cmd, sweep_opts);
  sweep_cmd->add_option("--h-min", sweep_opts.h_min)->capture_default_str();
  sweep_cmd->add_option("--h-max", sweep_opts.h_max)->capture_default_str();
  sweep_cmd->add_option("--margin", sweep_opts.margin,
                        "Allowed test R^2 shortfall from the best")
      ->capture_default_str();

  EvaluateOptions eval_opts;
  auto* evaluate = app.add_subcommand("evaluate", "Residual analysis");
  evaluate->add_option("--catalog", eval_opts.catalog)->required();
  auto* eval_model = evaluate->add_option("--model", eval_opts.model,
                                          "published-pga, published-pgv or file:<path>");
  auto* eval_baseline = evaluate->add_flag(
      "--baseline", eval_opts.baseline, "Use the catalog's baseline columns");
  eval_baseline->excludes(eval_model);
  evaluate->add_option("--target", eval_opts.target, "pga or pgv");
  evaluate->add_option("--out", eval_opts.out, "Output directory");
  evaluate->add_option("--rjb-edges", eval_opts.rjb_edges,
                       "Comma-separated RJB bin edges (km)");
  evaluate->add_option("--vs30-edges", eval_opts.vs30_edges,
                       "Comma-separated Vs30 bin edges (m/s)");
  evaluate->add_flag("--strict", eval_opts.strict);

  std::string sens_model = "published-pga";
  std::string sens_out;
  auto* sensitivity = app.add_subcommand("sensitivity", "Garson input importance");
  sensitivity->add_option("--model", sens_model)->capture_default_str();
  sensitivity->add_option("--out", sens_out, "Output directory");

  CurveOptions curve_opts;
  auto* curve = app.add_subcommand("curve", "Attenuation curves against distance");
  curve->add_option("--model", curve_opts.model)->capture_default_str();
  curve->add_option("--mw", curve_opts.mw, "Magnitude(s); default 3.7 and 5.3");
  curve->add_option("--vs30", curve_opts.vs30)->capture_default_str();
  curve->add_option("--rjb", curve_opts.rjb, "Comma-separated RJB grid (km)");
  curve->add_option("--catalog", curve_opts.catalog,
                    "Catalog for the observed-data overlay");
  curve->add_option("--mw-window", curve_opts.mw_window,
                    "Overlay magnitude half-width")
      ->capture_default_str();
  curve->add_option("--out", curve_opts.out, "Output directory");
  curve->add_option("--units", curve_opts.units, "cmps2 or g")
      ->capture_default_str();

  std::vector<const char*> argv{"gmpe-ann"};
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kUsage;
  }

  try {
    if (predict->parsed()) return cmd_predict(predict_opts, out, *log);
    if (train_cmd->parsed()) return cmd_train(train_opts, out, *log);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep_opts, out, *log);
    if (evaluate->parsed()) return cmd_evaluate(eval_opts, out, *log);
    if (sensitivity->parsed()) {
      return cmd_sensitivity(sens_model, sens_out, out, *log);
    }
    if (curve->parsed()) return cmd_curve(curve_opts, out, *log);
  } catch (const UsageError& e) {
    log->error("{}", e.what());
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kUsage;
  } catch (const DomainError& e) {
    log->error("{}", e.what());
    return kUsage;
  } catch (const DataError& e) {
    log->error("{}", e.what());
    return kDataError;
  } catch (const NumericalError& e) {
    log->error("{}", e.what());
    return kNumerical;
  }
  return kUsage;
}

}  // namespace gmpe_ann::cli
