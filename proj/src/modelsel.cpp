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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "horacle/parallel.hpp"

namespace horacle::modelsel {

std::optional<double> roc_auc(std::span<const double> scores,
                              std::span<const int> labels) {
  if (scores.size() != labels.size()) {
    throw std::invalid_argument("roc_auc: scores and labels differ in length");
  }
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Sum of (1-based, tie-averaged) ranks of the positives, kept doubled so
  // it stays an exact integer.
  double doubled_rank_sum = 0.0;
  std::size_t positives = 0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    const double doubled_rank = static_cast<double>(i + 1 + j);  // 2 * mean rank
    for (std::size_t k = i; k < j; ++k) {
      if (labels[order[k]] == 1) {
        doubled_rank_sum += doubled_rank;
        ++positives;
      }
    }
    i = j;
  }
  const std::size_t negatives = n - positives;
  if (positives == 0 || negatives == 0) return std::nullopt;
  const double p = static_cast<double>(positives);
  const double u = doubled_rank_sum / 2.0 - p * (p + 1.0) / 2.0;
  return u / (p * static_cast<double>(negatives));
}

std::vector<RocPoint> roc_curve(std::span<const double> scores,
                                std::span<const int> labels) {
  if (scores.size() != labels.size()) {
    throw std::invalid_argument("roc_curve: scores and labels differ in length");
  }
  const auto positives = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 1));
  const std::size_t negatives = labels.size() - positives;
  if (positives == 0 || negatives == 0) return {};

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  std::vector<RocPoint> curve;
  curve.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    const double s = scores[order[i]];
    while (i < order.size() && scores[order[i]] == s) {
      (labels[order[i]] == 1 ? tp : fp) += 1;
      ++i;
    }
    curve.push_back({s, static_cast<double>(fp) / static_cast<double>(negatives),
                     static_cast<double>(tp) / static_cast<double>(positives)});
  }
  return curve;
}

std::optional<Folds> kfold_indices(std::size_t m, std::size_t k, Engine& rng) {
  if (k == 0) throw std::invalid_argument("kfold_indices: K must be >= 1");
  if (m < 2) return std::nullopt;
  const std::size_t folds = std::min(k, m);

  std::vector<std::size_t> idx(m);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = m - 1; i > 0; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i);
    std::swap(idx[i], idx[pick(rng)]);
  }

  Folds out(folds);
  const std::size_t base = m / folds;
  const std::size_t extra = m % folds;
  std::size_t pos = 0;
  for (std::size_t f = 0; f < folds; ++f) {
    const std::size_t len = base + (f < extra ? 1 : 0);
    out[f].assign(idx.begin() + static_cast<std::ptrdiff_t>(pos),
                  idx.begin() + static_cast<std::ptrdiff_t>(pos + len));
    std::sort(out[f].begin(), out[f].end());
    pos += len;
  }
  return out;
}

Grid Grid::paper() {
  Grid g;
  g.objectives = {gbdt::Objective::kLogistic, gbdt::Objective::kLinear};
  g.l1_alpha = {0.0, 0.5, 1.0};
  g.l2_lambda = {0.0, 0.5, 1.0};
  g.gamma = {0.0, 0.02};
  g.subsample = {0.5, 0.7};
  g.min_child_weight = {0.0, 1.0, 10.0};
  g.max_depth = {6, 8};
  g.num_estimators = 500;
  g.folds = 5;
  return g;
}

Grid Grid::reduced() {
  Grid g;
  g.objectives = {gbdt::Objective::kLogistic};
  g.l1_alpha = {0.0, 1.0};
  g.l2_lambda = {0.0, 1.0};
  g.gamma = {0.0};
  g.subsample = {0.7};
  g.min_child_weight = {1.0};
  g.max_depth = {6};
  g.num_estimators = 50;
  g.folds = 5;
  return g;
}

std::optional<Grid> Grid::preset(std::string_view name) {
  if (name == "paper") return paper();
  if (name == "reduced") return reduced();
  return std::nullopt;
}

std::size_t Grid::size() const {
  return objectives.size() * l1_alpha.size() * l2_lambda.size() * gamma.size() *
         subsample.size() * min_child_weight.size() * max_depth.size();
}

std::vector<gbdt::Hyperparameters> Grid::enumerate() const {
  std::vector<gbdt::Hyperparameters> out;
  out.reserve(size());
  for (auto obj : objectives)
    for (double a : l1_alpha)
      for (double l : l2_lambda)
        for (double g : gamma)
          for (double s : subsample)
            for (double c : min_child_weight)
              for (int d : max_depth) {
                gbdt::Hyperparameters hp;
                hp.objective = obj;
                hp.l1_alpha = a;
                hp.l2_lambda = l;
                hp.gamma = g;
                hp.subsample = s;
                hp.min_child_weight = c;
                hp.max_depth = d;
                hp.num_estimators = num_estimators;
                hp.learning_rate = learning_rate;
                out.push_back(hp);
              }
  return out;
}

void Grid::validate() const {
  if (size() == 0) throw std::invalid_argument("grid: every hyperparameter needs a value");
  if (folds < 1) throw std::invalid_argument("grid.folds must be >= 1");
  for (const auto& hp : enumerate()) hp.validate();
}

std::optional<GridResult> grid_search(const gbdt::Dataset& data, const Grid& grid,
                                      std::uint64_t seed, unsigned threads) {
  if (data.rows() < 2 || !data.has_both_classes()) return std::nullopt;

  Engine fold_rng = make_engine(seed, Stream::kFolds);
  const auto folds = kfold_indices(data.rows(), static_cast<std::size_t>(grid.folds), fold_rng);
  if (!folds) return std::nullopt;
  const std::size_t k = folds->size();

  std::vector<gbdt::Dataset> train_sets;
  std::vector<gbdt::Dataset> held_out;
  for (std::size_t f = 0; f < k; ++f) {
    std::vector<std::size_t> train_idx;
    for (std::size_t g = 0; g < k; ++g) {
      if (g != f) train_idx.insert(train_idx.end(), (*folds)[g].begin(), (*folds)[g].end());
    }
    std::sort(train_idx.begin(), train_idx.end());
    train_sets.push_back(data.subset(train_idx));
    held_out.push_back(data.subset((*folds)[f]));
  }

  const auto points = grid.enumerate();
  std::vector<std::optional<double>> mean_auc(points.size());
  parallel_for(points.size(), threads, [&](std::size_t p) {
    double sum = 0.0;
    std::size_t defined = 0;
    for (std::size_t f = 0; f < k; ++f) {
      if (!held_out[f].has_both_classes()) continue;
      Engine rng = make_engine(seed, Stream::kSubsampling, p * k + f);
      const gbdt::BoostedModel model = gbdt::train(train_sets[f], points[p], rng);
      const auto scores = gbdt::predict_all(model, held_out[f]);
      if (const auto auc = roc_auc(scores, held_out[f].labels())) {
        sum += *auc;
        ++defined;
      }
    }
    if (defined > 0) mean_auc[p] = sum / static_cast<double>(defined);
  });

  std::optional<GridResult> best;
  for (std::size_t p = 0; p < points.size(); ++p) {
    if (!mean_auc[p]) continue;
    if (!best || *mean_auc[p] > best->mean_cv_auc) best = GridResult{points[p], *mean_auc[p], p};
  }
  return best;
}

void GateConfig::validate() const {
  if (!(epsilon >= 0.5 && epsilon <= 1.0)) {
    throw std::invalid_argument("gate.epsilon must be in [0.5, 1]");
  }
}

bool gate(std::optional<double> auc, const GateConfig& cfg) {
  return auc.has_value() && *auc >= cfg.epsilon;
}

}  // namespace horacle::modelsel
