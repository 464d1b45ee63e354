// Copyright 2026 The Horacle Authors. All Rights Reserved.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "horacle/modelsel.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "oracles.hpp"

namespace horacle::modelsel {
namespace {

TEST(Auc, HandExample) {
  const std::vector<double> s{0.1, 0.4, 0.35, 0.8};
  const std::vector<int> y{0, 0, 1, 1};
  EXPECT_DOUBLE_EQ(*roc_auc(s, y), 0.75);
}

TEST(Auc, UndefinedForSingleClass) {
  const std::vector<double> s{0.1, 0.2};
  EXPECT_FALSE(roc_auc(s, std::vector<int>{1, 1}).has_value());
  EXPECT_FALSE(roc_auc(s, std::vector<int>{0, 0}).has_value());
  EXPECT_FALSE(roc_auc({}, {}).has_value());
}

TEST(Auc, LengthMismatchThrows) {
  EXPECT_THROW(roc_auc(std::vector<double>{0.1}, std::vector<int>{0, 1}), std::invalid_argument);
}

TEST(Auc, AllTiedIsOneHalf) {
  const std::vector<double> s(6, 0.3);
  EXPECT_DOUBLE_EQ(*roc_auc(s, std::vector<int>{0, 1, 0, 1, 1, 0}), 0.5);
}

TEST(Auc, MatchesPairwiseOracleWithTies) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> n(2, 200);
  std::uniform_int_distribution<int> level(0, 9);
  std::bernoulli_distribution coin(0.4);
  for (int trial = 0; trial < 300; ++trial) {
    const int m = n(rng);
    std::vector<double> s(m);
    std::vector<int> y(m);
    for (int i = 0; i < m; ++i) {
      s[i] = trial % 2 ? level(rng) / 10.0 : std::uniform_real_distribution<double>()(rng);
      y[i] = coin(rng);
    }
    y[0] = 0;
    y[1] = 1;
    EXPECT_NEAR(*roc_auc(s, y), oracle::pairwise_auc(s, y), 1e-12);
  }
}

TEST(Auc, InvariantUnderMonotoneTransform) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<double> s(100);
  std::vector<int> y(100);
  for (int i = 0; i < 100; ++i) {
    s[i] = u(rng);
    y[i] = i % 3 == 0;
  }
  std::vector<double> t(s.size());
  std::transform(s.begin(), s.end(), t.begin(), [](double v) { return std::exp(2.0 * v) + 5.0; });
  EXPECT_DOUBLE_EQ(*roc_auc(s, y), *roc_auc(t, y));
  std::transform(s.begin(), s.end(), t.begin(), [](double v) { return -v; });
  EXPECT_NEAR(*roc_auc(t, y), 1.0 - *roc_auc(s, y), 1e-12);
}

TEST(RocCurve, EndpointsAndTrapezoidArea) {
  const std::vector<double> s{0.1, 0.4, 0.35, 0.8};
  const std::vector<int> y{0, 0, 1, 1};
  const auto c = roc_curve(s, y);
  ASSERT_EQ(c.size(), 5u);
  EXPECT_TRUE(std::isinf(c.front().threshold));
  EXPECT_EQ(c.front().true_positive_rate, 0.0);
  EXPECT_EQ(c.back().false_positive_rate, 1.0);
  EXPECT_EQ(c.back().true_positive_rate, 1.0);
  double area = 0.0;
  for (std::size_t i = 1; i < c.size(); ++i) {
    area += (c[i].false_positive_rate - c[i - 1].false_positive_rate) *
            (c[i].true_positive_rate + c[i - 1].true_positive_rate) / 2.0;
  }
  EXPECT_NEAR(area, 0.75, 1e-12);
  EXPECT_TRUE(roc_curve(s, std::vector<int>{1, 1, 1, 1}).empty());
}

void expect_partition(const Folds& f, std::size_t m) {
  std::set<std::size_t> seen;
  std::size_t lo = m;
  std::size_t hi = 0;
  for (const auto& fold : f) {
    lo = std::min(lo, fold.size());
    hi = std::max(hi, fold.size());
    for (auto i : fold) EXPECT_TRUE(seen.insert(i).second);
  }
  EXPECT_EQ(seen.size(), m);
  EXPECT_LE(hi - lo, 1u);
}

TEST(KFold, EvenSplit) {
  Engine rng(1);
  const auto f = kfold_indices(10, 5, rng);
  ASSERT_TRUE(f);
  ASSERT_EQ(f->size(), 5u);
  for (const auto& fold : *f) EXPECT_EQ(fold.size(), 2u);
  expect_partition(*f, 10);
}

TEST(KFold, UnevenSplit) {
  Engine rng(1);
  const auto f = kfold_indices(11, 5, rng);
  ASSERT_TRUE(f);
  std::vector<std::size_t> sizes;
  for (const auto& fold : *f) sizes.push_back(fold.size());
  std::sort(sizes.begin(), sizes.end());
  EXPECT_EQ(sizes, (std::vector<std::size_t>{2, 2, 2, 2, 3}));
  expect_partition(*f, 11);
}

TEST(KFold, FewerRowsThanFolds) {
  Engine rng(1);
  const auto f = kfold_indices(3, 5, rng);
  ASSERT_TRUE(f);
  EXPECT_EQ(f->size(), 3u);
  expect_partition(*f, 3);
}

TEST(KFold, DegenerateSizes) {
  Engine rng(1);
  EXPECT_FALSE(kfold_indices(1, 5, rng).has_value());
  EXPECT_FALSE(kfold_indices(0, 5, rng).has_value());
  EXPECT_THROW(kfold_indices(10, 0, rng), std::invalid_argument);
}

TEST(KFold, PartitionForManySizes) {
  for (std::size_t m = 2; m < 60; ++m) {
    Engine rng(m);
    expect_partition(*kfold_indices(m, 5, rng), m);
  }
}

TEST(Grid, PaperPresetSizeAndOrder) {
  const Grid g = Grid::paper();
  EXPECT_EQ(g.size(), 432u);
  const auto pts = g.enumerate();
  ASSERT_EQ(pts.size(), 432u);
  EXPECT_EQ(pts[0].max_depth, g.max_depth[0]);
  EXPECT_EQ(pts[1].max_depth, g.max_depth[1]);
  EXPECT_EQ(pts.back().objective, g.objectives.back());
  EXPECT_EQ(pts[0].num_estimators, 500);
  EXPECT_EQ(g.folds, 5);
}

TEST(Grid, Presets) {
  EXPECT_EQ(*Grid::preset("paper"), Grid::paper());
  EXPECT_EQ(*Grid::preset("reduced"), Grid::reduced());
  EXPECT_FALSE(Grid::preset("huge").has_value());
  EXPECT_EQ(Grid::reduced().size(), 4u);
}

Grid single_point() {
  Grid g = Grid::reduced();
  g.l1_alpha = {0.0};
  g.l2_lambda = {1.0};
  g.num_estimators = 20;
  return g;
}

TEST(GridSearch, SinglePointReturnsItsScore) {
  const gbdt::Dataset d = oracle::blobs(100, 1);
  const auto r = grid_search(d, single_point(), 5);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->best_index, 0u);
  EXPECT_EQ(r->best.l1_alpha, 0.0);
  EXPECT_GT(r->mean_cv_auc, 0.99);
}

TEST(GridSearch, TieGoesToEarliestPoint) {
  const gbdt::Dataset d = oracle::blobs(100, 2);
  Grid g = single_point();
  g.l1_alpha = {0.0, 1.0};
  const auto r = grid_search(d, g, 5);
  ASSERT_TRUE(r);
  EXPECT_DOUBLE_EQ(r->mean_cv_auc, 1.0);
  EXPECT_EQ(r->best.l1_alpha, 0.0);
}

TEST(GridSearch, ThreadCountDoesNotChangeResult) {
  std::mt19937_64 rng(9);
  const gbdt::Dataset d = oracle::random_dataset(rng, 80, 3, false);
  Grid g = Grid::reduced();
  g.num_estimators = 10;
  const auto a = grid_search(d, g, 3, 1);
  const auto b = grid_search(d, g, 3, 4);
  ASSERT_TRUE(a && b);
  EXPECT_EQ(a->best_index, b->best_index);
  EXPECT_EQ(a->mean_cv_auc, b->mean_cv_auc);
}

TEST(GridSearch, DegenerateData) {
  gbdt::Dataset one_class(1);
  for (int i = 0; i < 10; ++i) {
    const double x = i;
    one_class.add_row(std::span(&x, 1), 0);
  }
  EXPECT_FALSE(grid_search(one_class, single_point(), 1).has_value());
  gbdt::Dataset one_row(1);
  const double x = 0.0;
  one_row.add_row(std::span(&x, 1), 1);
  EXPECT_FALSE(grid_search(one_row, single_point(), 1).has_value());
}

TEST(Gate, Thresholding) {
  const GateConfig cfg;
  EXPECT_TRUE(gate(0.75, cfg));
  EXPECT_TRUE(gate(0.7, cfg));
  EXPECT_FALSE(gate(0.5, cfg));
  EXPECT_FALSE(gate(0.3, cfg));
  EXPECT_FALSE(gate(std::nullopt, cfg));
  EXPECT_THROW((GateConfig{0.4}).validate(), std::invalid_argument);
}

}  // namespace
}  // namespace horacle::modelsel
