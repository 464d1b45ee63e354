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

#include "horacle/gbdt.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "horacle/modelsel.hpp"
#include "oracles.hpp"

namespace horacle::gbdt {
namespace {

Dataset one_dimensional() {
  Dataset d(1);
  const double xs[] = {1.0, 2.0, 3.0, 4.0};
  const int ys[] = {0, 0, 1, 1};
  for (int i = 0; i < 4; ++i) d.add_row(std::span(&xs[i], 1), ys[i]);
  return d;
}

std::vector<std::size_t> all_rows(const Dataset& d) {
  std::vector<std::size_t> rows(d.rows());
  std::iota(rows.begin(), rows.end(), 0);
  return rows;
}

double total_loss(const Dataset& d, std::span<const double> raw, Objective o) {
  double s = 0.0;
  for (std::size_t i = 0; i < d.rows(); ++i) s += loss(raw[i], d.label(i), o);
  return s;
}

TEST(GradHess, Examples) {
  const GradientPair a = grad_hess(0.0, 1, Objective::kLogistic);
  EXPECT_DOUBLE_EQ(a.grad, -0.5);
  EXPECT_DOUBLE_EQ(a.hess, 0.25);
  const GradientPair b = grad_hess(0.0, 0, Objective::kLogistic);
  EXPECT_DOUBLE_EQ(b.grad, 0.5);
  EXPECT_DOUBLE_EQ(b.hess, 0.25);
  const GradientPair c = grad_hess(0.3, 1, Objective::kLinear);
  EXPECT_NEAR(c.grad, -0.7, 1e-15);
  EXPECT_DOUBLE_EQ(c.hess, 1.0);
}

TEST(GradHess, MatchesFiniteDifferenceOfLoss) {
  for (Objective o : {Objective::kLogistic, Objective::kLinear}) {
    for (double raw : {-3.0, -0.4, 0.0, 1.2, 5.0}) {
      for (int y : {0, 1}) {
        const double h = 1e-5;
        const double g_num = (loss(raw + h, y, o) - loss(raw - h, y, o)) / (2 * h);
        const double h_num = (loss(raw + h, y, o) - 2 * loss(raw, y, o) + loss(raw - h, y, o)) / (h * h);
        EXPECT_NEAR(grad_hess(raw, y, o).grad, g_num, 1e-6);
        EXPECT_NEAR(grad_hess(raw, y, o).hess, h_num, 1e-4);
      }
    }
  }
}

TEST(Sigmoid, StableAtExtremes) {
  EXPECT_DOUBLE_EQ(sigmoid(0.0), 0.5);
  EXPECT_NEAR(sigmoid(2.0), 0.8808, 1e-4);
  EXPECT_EQ(sigmoid(-1000.0), 0.0);
  EXPECT_EQ(sigmoid(1000.0), 1.0);
  EXPECT_TRUE(std::isfinite(loss(-800.0, 1, Objective::kLogistic)));
}

TEST(LeafWeight, Examples) {
  EXPECT_DOUBLE_EQ(leaf_weight(2.0, 3.0, 0.0, 1.0), -0.5);
  EXPECT_DOUBLE_EQ(leaf_weight(0.3, 7.0, 0.5, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(leaf_weight(-2.0, 3.0, 0.5, 0.0), 0.5);
  EXPECT_DOUBLE_EQ(leaf_weight(1.0, 0.0, 0.0, 0.0), 0.0);
}

TEST(LeafWeight, BeatsNumericScan) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> g(-10.0, 10.0);
  std::uniform_real_distribution<double> pos(0.0, 5.0);
  for (int i = 0; i < 200; ++i) {
    const double G = g(rng), H = pos(rng), a = pos(rng), l = pos(rng) + 1e-3;
    const double w = leaf_weight(G, H, a, l);
    EXPECT_LE(oracle::leaf_objective(w, G, H, a, l), oracle::scan_leaf_minimum(G, H, a, l, 10000) + 1e-9);
    EXPECT_NEAR(leaf_objective(w, G, H, a, l), oracle::leaf_objective(w, G, H, a, l), 1e-12);
  }
}

TEST(SplitGain, Examples) {
  EXPECT_DOUBLE_EQ(split_gain(-2.0, 2.0, 2.0, 2.0, 0.0, 0.0, 0.0), 2.0);
  EXPECT_NEAR(split_gain(-2.0, 2.0, 2.0, 2.0, 0.0, 0.02, 0.0), 1.98, 1e-15);
}

TEST(SplitGain, SymmetricAndShiftedByGamma) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> g(-5.0, 5.0);
  std::uniform_real_distribution<double> pos(0.0, 5.0);
  for (int i = 0; i < 500; ++i) {
    const double gl = g(rng), hl = pos(rng), gr = g(rng), hr = pos(rng);
    const double lam = pos(rng) + 0.1, a = pos(rng), gam = pos(rng);
    EXPECT_DOUBLE_EQ(split_gain(gl, hl, gr, hr, lam, gam, a), split_gain(gr, hr, gl, hl, lam, gam, a));
    EXPECT_NEAR(split_gain(gl, hl, gr, hr, lam, gam, a), split_gain(gl, hl, gr, hr, lam, 0.0, a) - gam,
                1e-12);
  }
}

TEST(SoftThreshold, DeadZone) {
  EXPECT_DOUBLE_EQ(soft_threshold(0.3, 0.5), 0.0);
  EXPECT_DOUBLE_EQ(soft_threshold(-0.3, 0.5), 0.0);
  EXPECT_DOUBLE_EQ(soft_threshold(2.0, 0.5), 1.5);
  EXPECT_DOUBLE_EQ(soft_threshold(-2.0, 0.5), -1.5);
}

TEST(BuildTree, OneDimensionalHandExample) {
  const Dataset d = one_dimensional();
  std::vector<double> g, h;
  for (std::size_t i = 0; i < d.rows(); ++i) {
    const auto gh = grad_hess(0.0, d.label(i), Objective::kLogistic);
    g.push_back(gh.grad);
    h.push_back(gh.hess);
  }
  Hyperparameters hp;
  hp.max_depth = 1;
  hp.l2_lambda = 0.0;
  hp.min_child_weight = 0.0;
  const RegressionTree t = build_tree(d, all_rows(d), g, h, hp);
  ASSERT_EQ(t.num_leaves(), 2u);
  EXPECT_EQ(t.root().feature, 0);
  EXPECT_GT(t.root().threshold, 2.0);
  EXPECT_LT(t.root().threshold, 3.0);
  EXPECT_DOUBLE_EQ(t.node(t.root().left).weight, -2.0);
  EXPECT_DOUBLE_EQ(t.node(t.root().right).weight, 2.0);
}

TEST(BuildTree, DepthZeroIsSingleLeaf) {
  const Dataset d = one_dimensional();
  const std::vector<double> g{0.5, 0.5, -0.5, -0.25};
  const std::vector<double> h{0.25, 0.25, 0.25, 0.25};
  Hyperparameters hp;
  hp.max_depth = 0;
  const RegressionTree t = build_tree(d, all_rows(d), g, h, hp);
  ASSERT_EQ(t.nodes().size(), 1u);
  EXPECT_DOUBLE_EQ(t.root().weight, leaf_weight(0.25, 1.0, hp.l1_alpha, hp.l2_lambda));
}

TEST(BuildTree, IdenticalLabelsGiveSingleLeaf) {
  Dataset d(2);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 30; ++i) {
    const double x[2] = {u(rng), u(rng)};
    d.add_row(x, 1);
  }
  Engine e(1);
  Hyperparameters hp;
  hp.num_estimators = 1;
  const BoostedModel m = train(d, hp, e);
  EXPECT_EQ(m.trees.front().num_leaves(), 1u);
}

TEST(BuildTree, MinChildWeightBlocksSplit) {
  const Dataset d = one_dimensional();
  const std::vector<double> g{0.5, 0.5, -0.5, -0.5};
  const std::vector<double> h{0.25, 0.25, 0.25, 0.25};
  Hyperparameters hp;
  hp.min_child_weight = 0.6;
  EXPECT_EQ(build_tree(d, all_rows(d), g, h, hp).num_leaves(), 1u);
}

TEST(BuildTree, EqualValuesAreNeverSeparated) {
  Dataset d(1);
  const double xs[] = {1.0, 1.0, 1.0, 2.0};
  for (int i = 0; i < 4; ++i) d.add_row(std::span(&xs[i], 1), i == 1 ? 1 : 0);
  const std::vector<double> g{0.5, -0.5, 0.5, 0.5};
  const std::vector<double> h(4, 0.25);
  Hyperparameters hp;
  hp.min_child_weight = 0.0;
  hp.l2_lambda = 0.0;
  const RegressionTree t = build_tree(d, all_rows(d), g, h, hp);
  for (const TreeNode& n : t.nodes()) {
    if (!n.is_leaf()) {
      EXPECT_DOUBLE_EQ(n.threshold, 1.5);
    }
  }
}

TEST(BuildTree, MatchesBruteForceOracle) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> mdist(2, 64);
  std::uniform_int_distribution<int> ndist(1, 3);
  std::uniform_int_distribution<int> ddist(1, 2);
  std::uniform_real_distribution<double> raw(-2.0, 2.0);
  for (int trial = 0; trial < 60; ++trial) {
    const Dataset d = oracle::random_dataset(rng, static_cast<std::size_t>(mdist(rng)),
                                             static_cast<std::size_t>(ndist(rng)), trial % 2 == 0);
    std::vector<double> g, h;
    for (std::size_t i = 0; i < d.rows(); ++i) {
      const auto gh = grad_hess(raw(rng), d.label(i), Objective::kLogistic);
      g.push_back(gh.grad);
      h.push_back(gh.hess);
    }
    Hyperparameters hp;
    hp.max_depth = ddist(rng);
    hp.l1_alpha = trial % 3 == 0 ? 0.1 : 0.0;
    hp.l2_lambda = trial % 4 == 0 ? 0.0 : 1.0;
    hp.gamma = trial % 5 == 0 ? 0.02 : 0.0;
    hp.min_child_weight = trial % 2 == 0 ? 0.0 : 1.0;
    const RegressionTree t = build_tree(d, all_rows(d), g, h, hp);

    std::vector<oracle::Node> want;
    const oracle::Problem p{&d, g, h, hp.l1_alpha, hp.l2_lambda, hp.gamma, hp.min_child_weight,
                            hp.max_depth};
    oracle::brute_force_tree(p, all_rows(d), 0, want);
    ASSERT_EQ(t.nodes().size(), want.size()) << "trial " << trial;
    for (std::size_t i = 0; i < want.size(); ++i) {
      EXPECT_EQ(t.nodes()[i].feature, want[i].feature);
      if (want[i].feature >= 0) {
        EXPECT_NEAR(t.nodes()[i].threshold, want[i].threshold, 1e-9);
        EXPECT_NEAR(t.nodes()[i].gain, want[i].gain, 1e-9);
      } else {
        EXPECT_NEAR(t.nodes()[i].weight, want[i].weight, 1e-9);
      }
    }
  }
}

TEST(Train, NoEstimatorsPredictsBase) {
  Dataset d = one_dimensional();
  Hyperparameters hp;
  hp.num_estimators = 0;
  Engine e(1);
  const BoostedModel m = train(d, hp, e);
  const double x = 2.5;
  EXPECT_DOUBLE_EQ(predict(m, std::span(&x, 1)), 0.5);
}

TEST(Train, SingleTreeShrinkage) {
  RegressionTree tree({TreeNode{.weight = 2.0}});
  BoostedModel m;
  m.trees.push_back(tree);
  m.hyperparameters.learning_rate = 1.0;
  m.num_features = 1;
  const double x = 0.0;
  EXPECT_NEAR(predict(m, std::span(&x, 1)), 0.8808, 1e-4);
  m.hyperparameters.learning_rate = 0.5;
  EXPECT_DOUBLE_EQ(predict_raw(m, std::span(&x, 1)), 1.0);
}

TEST(Train, FeatureCountMismatchThrows) {
  Dataset d = one_dimensional();
  Engine e(1);
  Hyperparameters hp;
  hp.num_estimators = 3;
  const BoostedModel m = train(d, hp, e);
  const double x[2] = {1.0, 2.0};
  EXPECT_THROW(predict(m, x), std::invalid_argument);
}

TEST(Train, BlobsAreLearned) {
  const Dataset d = oracle::blobs(200, 3);
  Hyperparameters hp;
  hp.num_estimators = 50;
  Engine e(1);
  const BoostedModel m = train(d, hp, e);
  const auto scores = predict_all(m, d);
  EXPECT_GE(*modelsel::roc_auc(scores, d.labels()), 0.99);
}

TEST(Train, LossIsMonotoneWithFullSample) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const Dataset d = oracle::random_dataset(rng, 80, 3, trial % 2 == 1);
    Hyperparameters hp;
    hp.num_estimators = 30;
    hp.subsample = 1.0;
    hp.learning_rate = 0.3;
    hp.min_child_weight = 0.0;
    double prev = total_loss(d, std::vector<double>(d.rows(), 0.0), hp.objective);
    Engine e(trial);
    train(d, hp, e, [&](int, std::span<const double> raw) {
      const double now = total_loss(d, raw, hp.objective);
      EXPECT_LE(now, prev + 1e-12);
      prev = now;
    });
  }
}

TEST(Train, LinearObjectiveLossIsMonotone) {
  std::mt19937_64 rng(4);
  const Dataset d = oracle::random_dataset(rng, 60, 2, false);
  Hyperparameters hp;
  hp.objective = Objective::kLinear;
  hp.num_estimators = 20;
  double prev = total_loss(d, std::vector<double>(d.rows(), 0.0), hp.objective);
  Engine e(1);
  train(d, hp, e, [&](int, std::span<const double> raw) {
    const double now = total_loss(d, raw, hp.objective);
    EXPECT_LE(now, prev + 1e-12);
    prev = now;
  });
}

TEST(Train, RowOrderDoesNotMatterWithoutSubsampling) {
  std::mt19937_64 rng(12);
  const Dataset d = oracle::random_dataset(rng, 50, 3, false);
  std::vector<std::size_t> perm(d.rows());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  const Dataset shuffled = d.subset(perm);
  Hyperparameters hp;
  hp.num_estimators = 10;
  Engine e1(1), e2(1);
  const BoostedModel a = train(d, hp, e1);
  const BoostedModel b = train(shuffled, hp, e2);
  for (std::size_t i = 0; i < d.rows(); ++i) {
    EXPECT_NEAR(predict(a, d.row(i)), predict(b, d.row(i)), 1e-12);
  }
}

TEST(Train, SeededSubsamplingIsReproducible) {
  std::mt19937_64 rng(13);
  const Dataset d = oracle::random_dataset(rng, 50, 3, false);
  Hyperparameters hp;
  hp.num_estimators = 10;
  hp.subsample = 0.5;
  Engine e1(7), e2(7);
  const BoostedModel a = train(d, hp, e1);
  const BoostedModel b = train(d, hp, e2);
  for (std::size_t i = 0; i < d.rows(); ++i) EXPECT_EQ(predict(a, d.row(i)), predict(b, d.row(i)));
}

TEST(Train, TreesRespectDepthAndChildWeight) {
  std::mt19937_64 rng(14);
  const Dataset d = oracle::random_dataset(rng, 200, 3, false);
  Hyperparameters hp;
  hp.num_estimators = 5;
  hp.max_depth = 3;
  hp.min_child_weight = 2.0;
  Engine e(1);
  const BoostedModel m = train(d, hp, e);
  ASSERT_EQ(m.trees.size(), 5u);
  for (const RegressionTree& t : m.trees) {
    EXPECT_LE(t.depth(), 3);
    for (const TreeNode& n : t.nodes()) {
      if (n.is_leaf()) {
        EXPECT_GE(n.cover, 2.0);
      }
    }
  }
}

TEST(Hyperparameters, Validation) {
  Hyperparameters hp;
  EXPECT_NO_THROW(hp.validate());
  hp.subsample = 0.0;
  EXPECT_THROW(hp.validate(), std::invalid_argument);
  hp = {};
  hp.l2_lambda = -1.0;
  EXPECT_THROW(hp.validate(), std::invalid_argument);
  hp = {};
  hp.learning_rate = 1.5;
  EXPECT_THROW(hp.validate(), std::invalid_argument);
}

TEST(Dataset, RejectsBadRows) {
  Dataset d(2);
  const double x[2] = {1.0, 2.0};
  EXPECT_THROW(d.add_row(std::span(x, 1), 0), std::invalid_argument);
  EXPECT_THROW(d.add_row(x, 2), std::invalid_argument);
  d.add_row(x, 1);
  EXPECT_FALSE(d.has_both_classes());
  d.add_row(x, 0);
  EXPECT_TRUE(d.has_both_classes());
}

TEST(ModelDump, OneRecordPerNode) {
  Dataset d = one_dimensional();
  Hyperparameters hp;
  hp.num_estimators = 2;
  hp.min_child_weight = 0.0;
  Engine e(1);
  const BoostedModel m = train(d, hp, e);
  std::ostringstream os;
  write_model_dump(os, m);
  std::size_t lines = 0;
  std::string line;
  std::istringstream is(os.str());
  std::getline(is, line);
  EXPECT_EQ(line, "tree,id,parent,feature,threshold,weight");
  while (std::getline(is, line)) ++lines;
  EXPECT_EQ(lines, m.trees[0].nodes().size() + m.trees[1].nodes().size());
}

TEST(Objective, ParseRoundTrip) {
  EXPECT_EQ(parse_objective("logistic"), Objective::kLogistic);
  EXPECT_EQ(parse_objective("linear"), Objective::kLinear);
  EXPECT_FALSE(parse_objective("poisson").has_value());
  EXPECT_EQ(to_string(Objective::kLinear), "linear");
}

}  // namespace
}  // namespace horacle::gbdt
