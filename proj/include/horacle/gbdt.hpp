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

#pragma once

// Gradient-boosted regression trees with second-order (Newton) leaves and
// an elastic-net penalty on leaf weights:
//
//   obj = sum_i loss(y_i, yhat_i) + alpha * |w|_1 + 0.5 * lambda * |w|_2^2
//         + gamma * (number of leaves)
//
// Splits are found by exact greedy search over presorted feature columns.

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "horacle/random.hpp"

namespace horacle::gbdt {

enum class Objective { kLogistic, kLinear };

std::string_view to_string(Objective o);
std::optional<Objective> parse_objective(std::string_view s);

struct Hyperparameters {
  Objective objective = Objective::kLogistic;
  double l1_alpha = 0.0;
  double l2_lambda = 1.0;
  double gamma = 0.0;
  int num_estimators = 500;
  int max_depth = 6;
  /// Row fraction drawn without replacement for each boosting round.
  double subsample = 1.0;
  /// Minimum hessian sum for either child of a split.
  double min_child_weight = 1.0;
  double learning_rate = 0.3;

  void validate() const;
  bool operator==(const Hyperparameters&) const = default;
};

/// Dense row-major feature matrix with binary labels.
class Dataset {
 public:
  explicit Dataset(std::size_t num_features);

  void add_row(std::span<const double> features, int label);

  std::size_t rows() const { return labels_.size(); }
  std::size_t cols() const { return cols_; }
  bool empty() const { return labels_.empty(); }

  std::span<const double> row(std::size_t i) const {
    return {features_.data() + i * cols_, cols_};
  }
  double feature(std::size_t i, std::size_t j) const {
    return features_[i * cols_ + j];
  }
  int label(std::size_t i) const { return labels_[i]; }
  std::span<const int> labels() const { return labels_; }

  Dataset subset(std::span<const std::size_t> indices) const;
  bool has_both_classes() const;

 private:
  std::size_t cols_;
  std::vector<double> features_;
  std::vector<int> labels_;
};

struct GradientPair {
  double grad = 0.0;
  double hess = 0.0;
};

double sigmoid(double raw);

/// First and second derivative of the loss w.r.t. the raw prediction.
GradientPair grad_hess(double raw, int label, Objective objective);

/// Per-row loss: logistic log-loss or half squared error.
double loss(double raw, int label, Objective objective);

/// sign(g) * max(|g| - alpha, 0)
double soft_threshold(double g, double alpha);

/// Regularized leaf objective 0.5 (H + lambda) w^2 + G w + alpha |w|.
double leaf_objective(double w, double grad_sum, double hess_sum, double alpha,
                      double lambda);

/// Exact minimizer of leaf_objective. Returns 0 when H + lambda == 0.
double leaf_weight(double grad_sum, double hess_sum, double alpha, double lambda);

/// soft_threshold(G, alpha)^2 / (H + lambda); 0 when H + lambda == 0.
double structure_score(double grad_sum, double hess_sum, double alpha,
                       double lambda);

double split_gain(double grad_left, double hess_left, double grad_right,
                  double hess_right, double lambda, double gamma, double alpha);

/// Relative tolerance under which two split gains count as tied, so the
/// (lowest feature, lowest threshold) rule is not decided by rounding.
inline constexpr double kGainTieTolerance = 1e-12;

inline bool gain_beats(double candidate, double incumbent) {
  const double scale = incumbent < 0.0 ? -incumbent : incumbent;
  return candidate > incumbent + kGainTieTolerance * (scale > 1.0 ? scale : 1.0);
}

struct TreeNode {
  int feature = -1;  // -1 for leaves
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double weight = 0.0;  // unshrunken leaf weight
  double gain = 0.0;    // split gain for internal nodes
  double cover = 0.0;   // training hessian sum

  bool is_leaf() const { return feature < 0; }
};

/// Rows with x[feature] < threshold go left. Node 0 is the root.
class RegressionTree {
 public:
  RegressionTree() = default;
  explicit RegressionTree(std::vector<TreeNode> nodes);

  std::span<const TreeNode> nodes() const { return nodes_; }
  const TreeNode& root() const { return nodes_.front(); }
  const TreeNode& node(int id) const { return nodes_[static_cast<std::size_t>(id)]; }
  std::size_t num_leaves() const;
  int depth() const;

  double predict(std::span<const double> row) const;
  int leaf_index(std::span<const double> row) const;

 private:
  std::vector<TreeNode> nodes_;
};

/// Grows one tree on `rows` of the dataset. `grad` and `hess` are indexed
/// by dataset row.
RegressionTree build_tree(const Dataset& data, std::span<const std::size_t> rows,
                          std::span<const double> grad, std::span<const double> hess,
                          const Hyperparameters& hp);

struct BoostedModel {
  double base_score = 0.0;
  std::vector<RegressionTree> trees;
  Hyperparameters hyperparameters;
  std::size_t num_features = 0;
};

/// Called after every boosting round with the updated raw predictions of
/// all training rows.
using RoundCallback = std::function<void(int round, std::span<const double> raw)>;

BoostedModel train(const Dataset& data, const Hyperparameters& hp, Engine& rng,
                   const RoundCallback& on_round = {});

/// base + learning_rate * sum of tree outputs.
double predict_raw(const BoostedModel& model, std::span<const double> row);

/// Probability for logistic models, raw score for linear ones.
/// Throws std::invalid_argument on a feature-count mismatch.
double predict(const BoostedModel& model, std::span<const double> row);

inline constexpr double kDecisionThreshold = 0.5;

bool predict_class(const BoostedModel& model, std::span<const double> row);

std::vector<double> predict_all(const BoostedModel& model, const Dataset& data);

/// CSV dump: tree,id,parent,feature,threshold,weight
void write_model_dump(std::ostream& os, const BoostedModel& model);

}  // namespace horacle::gbdt
