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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "horacle/gbdt.hpp"
#include "horacle/random.hpp"

namespace horacle::modelsel {

/// Rank-based (Mann-Whitney) ROC AUC with ties counted as one half.
/// std::nullopt when the labels hold a single class.
std::optional<double> roc_auc(std::span<const double> scores,
                              std::span<const int> labels);

struct RocPoint {
  double threshold = 0.0;
  double false_positive_rate = 0.0;
  double true_positive_rate = 0.0;
};

/// One point per distinct score, descending, preceded by (+inf, 0, 0).
/// Empty when the AUC is undefined.
std::vector<RocPoint> roc_curve(std::span<const double> scores,
                                std::span<const int> labels);

using Folds = std::vector<std::vector<std::size_t>>;

/// Shuffled partition of [0, m) into min(K, m) folds whose sizes differ by
/// at most one. std::nullopt when m < 2 (no cross-validation possible).
std::optional<Folds> kfold_indices(std::size_t m, std::size_t k, Engine& rng);

/// Candidate values per hyperparameter, enumerated in the order
/// objective, alpha, lambda, gamma, subsample, min_child_weight, max_depth
/// (max_depth varies fastest).
struct Grid {
  std::vector<gbdt::Objective> objectives;
  std::vector<double> l1_alpha;
  std::vector<double> l2_lambda;
  std::vector<double> gamma;
  std::vector<double> subsample;
  std::vector<double> min_child_weight;
  std::vector<int> max_depth;
  int num_estimators = 500;
  int folds = 5;
  double learning_rate = 0.3;

  static Grid paper();
  static Grid reduced();
  static std::optional<Grid> preset(std::string_view name);

  std::size_t size() const;
  std::vector<gbdt::Hyperparameters> enumerate() const;
  void validate() const;
  bool operator==(const Grid&) const = default;
};

struct GridResult {
  gbdt::Hyperparameters best;
  double mean_cv_auc = 0.0;
  std::size_t best_index = 0;
};

/// Exhaustive K-fold grid search maximizing mean held-out AUC. Folds whose
/// AUC is undefined are skipped. Ties go to the earliest grid point.
/// std::nullopt (degenerate) when the data has a single class, fewer than
/// two rows, or no grid point has a defined fold AUC.
///
/// Fold assignment draws from (seed, kFolds); each (point, fold) training
/// run draws subsamples from its own (seed, kSubsampling, index) stream, so
/// the result does not depend on evaluation order. `threads` > 1 evaluates
/// grid points concurrently.
std::optional<GridResult> grid_search(const gbdt::Dataset& data, const Grid& grid,
                                      std::uint64_t seed, unsigned threads = 1);

struct GateConfig {
  double epsilon = 0.7;

  void validate() const;
};

/// Accept the model iff its AUC is defined and >= epsilon.
bool gate(std::optional<double> auc, const GateConfig& cfg);

}  // namespace horacle::modelsel
