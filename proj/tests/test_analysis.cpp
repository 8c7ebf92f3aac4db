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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "gmpe_ann/analysis.hpp"
#include "gmpe_ann/error.hpp"
#include "oracle_values.hpp"
#include "test_support.hpp"

namespace gmpe_ann {
namespace {

GroundMotionRecord record(double vs30, double rjb, double pga, double pgv = 1.0) {
  return {"e", "s", 4.0, vs30, rjb, pga, pgv, std::nullopt, std::nullopt};
}

ResidualSet residual_set(const std::vector<std::pair<double, double>>& rjb_residual) {
  ResidualSet set;
  for (std::size_t i = 0; i < rjb_residual.size(); ++i) {
    ResidualRow row;
    row.record_index = i;
    row.rjb = rjb_residual[i].first;
    row.vs30 = 500.0;
    row.residual = rjb_residual[i].second;
    set.rows.push_back(row);
  }
  return set;
}

TEST(Garson, EqualMagnitudesGiveEqualShares) {
  const NetworkModel m(Target::kPga, {{2, -2, 2}, {-0.5, 0.5, 0.5}}, {1, 2}, {3, -7},
                       0.0, Normalization::published(Target::kPga));
  const auto g = garson_importance(m).as_array();
  for (double x : g) EXPECT_NEAR(x, 1.0 / 3.0, 1e-15);
}

TEST(Garson, PublishedModelsMatchHandComputation) {
  const auto pga = garson_importance(published_model(Target::kPga)).as_array();
  const auto pgv = garson_importance(published_model(Target::kPgv)).as_array();
  for (std::size_t j = 0; j < 3; ++j) {
    EXPECT_NEAR(pga[j], oracle::kGarsonPga[j], 1e-10);
    EXPECT_NEAR(pgv[j], oracle::kGarsonPgv[j], 1e-10);
  }
  EXPECT_NEAR(pga[0] + pga[1] + pga[2], 1.0, 1e-12);
  EXPECT_NEAR(pgv[0] + pgv[1] + pgv[2], 1.0, 1e-12);
}

TEST(Garson, PgvRanksDistanceFirst) {
  const auto g = garson_importance(published_model(Target::kPgv));
  EXPECT_GT(g.rjb, g.magnitude);
  EXPECT_GT(g.rjb, g.vs30);
}

TEST(Garson, ZeroInputRowIsAnError) {
  const NetworkModel m(Target::kPga, {{1, 2, 3}, {0, 0, 0}}, {0, 0}, {1, 1}, 0.0,
                       Normalization::published(Target::kPga));
  EXPECT_THROW(garson_importance(m), NumericalError);
}

TEST(GarsonProperty, SumsToOneAndIgnoresSigns) {
  std::mt19937_64 gen(31);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t hidden = 1 + trial % 10;
    const NetworkModel m = testing::random_model(gen, hidden, 10.0);
    const auto g = garson_importance(m).as_array();
    EXPECT_NEAR(g[0] + g[1] + g[2], 1.0, 1e-12);
    for (double x : g) EXPECT_GE(x, 0.0);

    // Negate a random subset of weights.
    auto p = m.parameters();
    for (double& x : p) {
      if (gen() & 1) x = -x;
    }
    const auto flipped = garson_importance(NetworkModel::from_parameters(
                                               m.target(), hidden, p, m.normalization()))
                             .as_array();
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(flipped[j], g[j]);
  }
}

TEST(GarsonProperty, InvariantToScalingOneNeuronsInputRow) {
  std::mt19937_64 gen(32);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t hidden = 1 + trial % 10;
    const NetworkModel m = testing::random_model(gen, hidden, 10.0);
    auto w = m.input_hidden_weights();
    const std::size_t neuron = gen() % hidden;
    const double c = 0.125 * static_cast<double>(1 + gen() % 64);
    for (double& x : w[neuron]) x *= c;
    const NetworkModel scaled(m.target(), w, m.hidden_biases(), m.hidden_output_weights(),
                              m.output_bias(), m.normalization());
    const auto a = garson_importance(m).as_array();
    const auto b = garson_importance(scaled).as_array();
    for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(a[j], b[j], 1e-12);
  }
}

TEST(Residuals, IdentityPredictorGivesZero) {
  std::vector<GroundMotionRecord> records = {record(760, 20, 12.5), record(300, 8, 0.4)};
  for (auto& r : records) r.baseline_pga = r.pga;
  const ResidualSet set = residuals(records, BaselinePredictor{}, Target::kPga);
  ASSERT_EQ(set.rows.size(), 2u);
  for (const auto& row : set.rows) EXPECT_EQ(row.residual, 0.0);
}

TEST(Residuals, FactorOfEGivesOne) {
  std::vector<GroundMotionRecord> records;
  for (double p : {0.01, 1.0, 3.7, 250.0}) {
    auto r = record(760, 20, 1.0, p * std::numbers::e);
    r.baseline_pgv = p;
    records.push_back(r);
  }
  const ResidualSet set = residuals(records, BaselinePredictor{}, Target::kPgv);
  for (const auto& row : set.rows) EXPECT_NEAR(row.residual, 1.0, 1e-15);
}

TEST(Residuals, SelfGeneratedCatalogIsExact) {
  const NetworkModel m = published_model(Target::kPga);
  const auto records = testing::synthetic_catalog(m, 300, 0.0, 77);
  const ResidualSet set = residuals(records, &m, Target::kPga);
  ASSERT_EQ(set.rows.size(), records.size());
  for (const auto& row : set.rows) EXPECT_NEAR(row.residual, 0.0, 1e-12);
}

TEST(Residuals, MissingBaselineExcludedAndCounted) {
  std::vector<GroundMotionRecord> records = {record(760, 20, 10), record(760, 30, 10),
                                             record(760, 40, 10)};
  records[1].baseline_pga = 5.0;
  const ResidualSet set = residuals(records, BaselinePredictor{}, Target::kPga);
  EXPECT_EQ(set.rows.size(), 1u);
  EXPECT_EQ(set.missing_baseline, 2u);
  EXPECT_EQ(set.rows[0].record_index, 1u);
  EXPECT_NEAR(set.rows[0].residual, std::log(2.0), 1e-15);
}

TEST(Residuals, NonPositivePredictionNamesRecord) {
  std::vector<GroundMotionRecord> records = {record(760, 20, 10), record(760, 30, 10)};
  records[0].baseline_pga = 1.0;
  records[1].baseline_pga = 0.0;
  records[1].event_id = "ev42";
  try {
    residuals(records, BaselinePredictor{}, Target::kPga);
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("ev42"), std::string::npos);
  }
}

TEST(ResidualsProperty, SwappingObservedAndPredictedNegates) {
  std::mt19937_64 gen(41);
  std::vector<GroundMotionRecord> records, swapped;
  for (int i = 0; i < 100; ++i) {
    const double a = std::exp(testing::uniform(gen, -5, 5));
    const double b = std::exp(testing::uniform(gen, -5, 5));
    auto r = record(500, 50, a);
    r.baseline_pga = b;
    records.push_back(r);
    r.pga = b;
    r.baseline_pga = a;
    swapped.push_back(r);
  }
  const auto x = residuals(records, BaselinePredictor{}, Target::kPga);
  const auto y = residuals(swapped, BaselinePredictor{}, Target::kPga);
  for (std::size_t i = 0; i < x.rows.size(); ++i) {
    EXPECT_NEAR(x.rows[i].residual, -y.rows[i].residual, 1e-14);
  }
}

TEST(BinResiduals, SingleBinEqualsGlobalMean) {
  const auto set = residual_set({{5, 0.5}, {50, -0.25}, {400, 1.0}, {100, 0.1}});
  const double edges[] = {4, 500};
  const auto b = bin_residuals(set, GroupBy::kRjb, edges);
  ASSERT_EQ(b.bins.size(), 1u);
  EXPECT_EQ(b.bins[0].count, 4u);
  EXPECT_NEAR(*b.bins[0].mean, (0.5 - 0.25 + 1.0 + 0.1) / 4.0, 1e-15);
  // mean +- 1.645 s / sqrt(n)
  const double mean = *b.bins[0].mean;
  double ss = 0;
  for (double r : {0.5, -0.25, 1.0, 0.1}) ss += (r - mean) * (r - mean);
  const double half = 1.645 * std::sqrt(ss / 3.0) / 2.0;
  EXPECT_NEAR(*b.bins[0].ci_lower, mean - half, 1e-14);
  EXPECT_NEAR(*b.bins[0].ci_upper, mean + half, 1e-14);
}

TEST(BinResiduals, SingletonBinHasNoInterval) {
  const auto set = residual_set({{5, 0.5}, {50, -0.25}, {60, 0.3}});
  const double edges[] = {4, 10, 100};
  const auto b = bin_residuals(set, GroupBy::kRjb, edges);
  EXPECT_EQ(b.bins[0].count, 1u);
  EXPECT_EQ(*b.bins[0].mean, 0.5);
  EXPECT_FALSE(b.bins[0].ci_lower.has_value());
  EXPECT_TRUE(b.bins[1].ci_lower.has_value());
}

TEST(BinResiduals, ConstantResidualsGiveZeroWidth) {
  const double c = 0.1;
  const auto set = residual_set({{5, c}, {6, c}, {7, c}, {50, c}, {51, c}, {300, c}});
  const auto edges = default_edges(GroupBy::kRjb);
  const auto b = bin_residuals(set, GroupBy::kRjb, edges);
  for (const auto& bin : b.bins) {
    if (bin.count == 0) continue;
    EXPECT_EQ(*bin.mean, c);
    if (bin.count >= 2) {
      EXPECT_EQ(*bin.ci_lower, c);
      EXPECT_EQ(*bin.ci_upper, c);
    }
  }
}

TEST(BinResiduals, EdgesAndCounts) {
  const auto set = residual_set({{2, 0}, {4, 0}, {8, 0}, {499, 0}, {500, 0}, {700, 0}});
  const auto edges = default_edges(GroupBy::kRjb);
  const auto b = bin_residuals(set, GroupBy::kRjb, edges);
  ASSERT_EQ(b.bins.size(), edges.size() - 1);
  EXPECT_EQ(b.bins.front().count, 1u);  // 4 in [4, 8)
  EXPECT_EQ(b.bins[1].count, 1u);       // 8 in [8, 16)
  EXPECT_EQ(b.bins.back().count, 2u);   // 499 and 500, last bin closed
  EXPECT_EQ(b.below_range, 1u);
  EXPECT_EQ(b.above_range, 1u);
  std::size_t total = b.below_range + b.above_range;
  for (const auto& bin : b.bins) total += bin.count;
  EXPECT_EQ(total, set.rows.size());
  EXPECT_FALSE(b.bins[3].mean.has_value());
}

TEST(BinResiduals, EmptyEverywhereWarns) {
  const auto set = residual_set({{1000, 0.2}});
  const double edges[] = {4, 8};
  const auto b = bin_residuals(set, GroupBy::kRjb, edges);
  EXPECT_FALSE(b.warnings.empty());
  EXPECT_EQ(b.bins[0].count, 0u);
}

TEST(BinResiduals, RejectsBadEdges) {
  const auto set = residual_set({{5, 0.0}});
  const double one[] = {4};
  const double flat[] = {4, 4, 8};
  const double down[] = {8, 4};
  EXPECT_THROW(bin_residuals(set, GroupBy::kRjb, one), DataError);
  EXPECT_THROW(bin_residuals(set, GroupBy::kRjb, flat), DataError);
  EXPECT_THROW(bin_residuals(set, GroupBy::kRjb, down), DataError);
}

TEST(BinResiduals, GroupsByVs30) {
  ResidualSet set = residual_set({{5, 1.0}, {5, 3.0}});
  set.rows[0].vs30 = 200;
  set.rows[1].vs30 = 800;
  const auto edges = default_edges(GroupBy::kVs30);
  const auto b = bin_residuals(set, GroupBy::kVs30, edges);
  EXPECT_EQ(b.bins[0].count, 1u);
  EXPECT_EQ(*b.bins[0].mean, 1.0);
  EXPECT_EQ(b.bins[4].count, 1u);  // [760, 1100)
}

TEST(BinResidualsProperty, PermutationInvariant) {
  std::mt19937_64 gen(51);
  std::vector<std::pair<double, double>> rows;
  for (int i = 0; i < 500; ++i) {
    rows.emplace_back(std::exp(testing::uniform(gen, std::log(4.0), std::log(500.0))),
                      testing::uniform(gen, -2, 2));
  }
  const auto edges = default_edges(GroupBy::kRjb);
  const auto reference = bin_residuals(residual_set(rows), GroupBy::kRjb, edges);
  for (int trial = 0; trial < 20; ++trial) {
    std::shuffle(rows.begin(), rows.end(), gen);
    const auto b = bin_residuals(residual_set(rows), GroupBy::kRjb, edges);
    for (std::size_t k = 0; k < b.bins.size(); ++k) {
      EXPECT_EQ(b.bins[k].count, reference.bins[k].count);
      EXPECT_EQ(b.bins[k].mean, reference.bins[k].mean);
      EXPECT_EQ(b.bins[k].ci_upper, reference.bins[k].ci_upper);
    }
  }
}

TEST(AttenuationCurve, MatchesHandOracle) {
  const NetworkModel m = published_model(Target::kPga);
  const auto grid = default_rjb_grid();
  const auto curve = attenuation_curve(m, 3.7, 760, grid);
  ASSERT_EQ(curve.size(), std::size(oracle::kPgaCurveMw37));
  for (std::size_t k = 0; k < curve.size(); ++k) {
    const auto& o = oracle::kPgaCurveMw37[k];
    EXPECT_EQ(curve[k].rjb, o.rjb);
    EXPECT_NEAR(curve[k].value, o.value, 1e-10 * o.value);
  }
}

TEST(AttenuationCurve, SinglePointGrid) {
  const double grid[] = {42.0};
  EXPECT_EQ(attenuation_curve(published_model(Target::kPgv), 4.0, 500, grid).size(), 1u);
}

TEST(AttenuationCurve, LargerMagnitudeLiesAbove) {
  const NetworkModel m = published_model(Target::kPga);
  const double grid[] = {10.0};
  EXPECT_GT(attenuation_curve(m, 5.3, 760, grid)[0].value,
            attenuation_curve(m, 3.7, 760, grid)[0].value);
}

TEST(AttenuationCurve, Errors) {
  const NetworkModel m = published_model(Target::kPga);
  const double unsorted[] = {10.0, 5.0};
  const double negative[] = {-1.0, 5.0};
  EXPECT_THROW(attenuation_curve(m, 4, 760, std::span<const double>{}), DataError);
  EXPECT_THROW(attenuation_curve(m, 4, 760, unsorted), DataError);
  EXPECT_THROW(attenuation_curve(m, 4, 760, negative), DomainError);
}

}  // namespace
}  // namespace gmpe_ann
