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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include "horacle/numfmt.hpp"

namespace horacle::gbdt {

std::string_view to_string(Objective o) {
  return o == Objective::kLogistic ? "logistic" : "linear";
}

std::optional<Objective> parse_objective(std::string_view s) {
  if (s == "logistic") return Objective::kLogistic;
  if (s == "linear") return Objective::kLinear;
  return std::nullopt;
}

void Hyperparameters::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument(what); };
  if (!(l1_alpha >= 0.0)) fail("l1_alpha must be >= 0");
  if (!(l2_lambda >= 0.0)) fail("l2_lambda must be >= 0");
  if (!(gamma >= 0.0)) fail("gamma must be >= 0");
  if (num_estimators < 0) fail("num_estimators must be >= 0");
  if (max_depth < 0) fail("max_depth must be >= 0");
  if (!(subsample > 0.0 && subsample <= 1.0)) fail("subsample must be in (0, 1]");
  if (!(min_child_weight >= 0.0)) fail("min_child_weight must be >= 0");
  if (!(learning_rate > 0.0 && learning_rate <= 1.0)) {
    fail("learning_rate must be in (0, 1]");
  }
}

// ---------------------------------------------------------------------------
// Dataset

Dataset::Dataset(std::size_t num_features) : cols_(num_features) {
  if (cols_ == 0) throw std::invalid_argument("Dataset needs at least one feature");
}

void Dataset::add_row(std::span<const double> features, int label) {
  if (features.size() != cols_) {
    throw std::invalid_argument("Dataset::add_row: expected " +
                                std::to_string(cols_) + " features, got " +
                                std::to_string(features.size()));
  }
  if (label != 0 && label != 1) {
    throw std::invalid_argument("Dataset::add_row: label must be 0 or 1");
  }
  features_.insert(features_.end(), features.begin(), features.end());
  labels_.push_back(label);
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  Dataset out(cols_);
  out.features_.reserve(indices.size() * cols_);
  out.labels_.reserve(indices.size());
  for (std::size_t i : indices) out.add_row(row(i), labels_[i]);
  return out;
}

bool Dataset::has_both_classes() const {
  bool pos = false;
  bool neg = false;
  for (int y : labels_) {
    (y == 1 ? pos : neg) = true;
    if (pos && neg) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Loss and closed forms

double sigmoid(double raw) {
  if (raw >= 0.0) return 1.0 / (1.0 + std::exp(-raw));
  const double e = std::exp(raw);
  return e / (1.0 + e);
}

GradientPair grad_hess(double raw, int label, Objective objective) {
  const double y = static_cast<double>(label);
  if (objective == Objective::kLogistic) {
    const double p = sigmoid(raw);
    return {p - y, p * (1.0 - p)};
  }
  return {raw - y, 1.0};
}

double loss(double raw, int label, Objective objective) {
  const double y = static_cast<double>(label);
  if (objective == Objective::kLogistic) {
    // log(1 + e^raw) - y * raw
    const double softplus =
        raw > 0.0 ? raw + std::log1p(std::exp(-raw)) : std::log1p(std::exp(raw));
    return softplus - y * raw;
  }
  const double d = raw - y;
  return 0.5 * d * d;
}

double soft_threshold(double g, double alpha) {
  if (g > alpha) return g - alpha;
  if (g < -alpha) return g + alpha;
  return 0.0;
}

double leaf_objective(double w, double grad_sum, double hess_sum, double alpha,
                      double lambda) {
  return 0.5 * (hess_sum + lambda) * w * w + grad_sum * w + alpha * std::abs(w);
}

double leaf_weight(double grad_sum, double hess_sum, double alpha, double lambda) {
  const double denom = hess_sum + lambda;
  if (denom <= 0.0) return 0.0;
  return -soft_threshold(grad_sum, alpha) / denom;
}

double structure_score(double grad_sum, double hess_sum, double alpha,
                       double lambda) {
  const double denom = hess_sum + lambda;
  if (denom <= 0.0) return 0.0;
  const double t = soft_threshold(grad_sum, alpha);
  return t * t / denom;
}

double split_gain(double grad_left, double hess_left, double grad_right,
                  double hess_right, double lambda, double gamma, double alpha) {
  return 0.5 * (structure_score(grad_left, hess_left, alpha, lambda) +
                structure_score(grad_right, hess_right, alpha, lambda) -
                structure_score(grad_left + grad_right, hess_left + hess_right,
                                alpha, lambda)) -
         gamma;
}

// ---------------------------------------------------------------------------
// Trees

RegressionTree::RegressionTree(std::vector<TreeNode> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw std::invalid_argument("RegressionTree needs a root");
}

std::size_t RegressionTree::num_leaves() const {
  return static_cast<std::size_t>(std::count_if(
      nodes_.begin(), nodes_.end(), [](const TreeNode& n) { return n.is_leaf(); }));
}

int RegressionTree::depth() const {
  std::function<int(int)> walk = [&](int id) -> int {
    const TreeNode& n = node(id);
    if (n.is_leaf()) return 0;
    return 1 + std::max(walk(n.left), walk(n.right));
  };
  return nodes_.empty() ? 0 : walk(0);
}

int RegressionTree::leaf_index(std::span<const double> row) const {
  int id = 0;
  while (!node(id).is_leaf()) {
    const TreeNode& n = node(id);
    id = row[static_cast<std::size_t>(n.feature)] < n.threshold ? n.left : n.right;
  }
  return id;
}

double RegressionTree::predict(std::span<const double> row) const {
  return node(leaf_index(row)).weight;
}

namespace {

class TreeBuilder {
 public:
  TreeBuilder(const Dataset& data, std::span<const double> grad,
              std::span<const double> hess, const Hyperparameters& hp)
      : data_(data), grad_(grad), hess_(hess), hp_(hp),
        goes_left_(data.rows(), 0) {}

  std::vector<TreeNode> build(std::span<const std::size_t> rows) {
    std::vector<std::vector<std::size_t>> sorted(data_.cols());
    for (std::size_t f = 0; f < data_.cols(); ++f) {
      sorted[f].assign(rows.begin(), rows.end());
      std::sort(sorted[f].begin(), sorted[f].end(),
                [&](std::size_t a, std::size_t b) {
                  const double va = data_.feature(a, f);
                  const double vb = data_.feature(b, f);
                  return va < vb || (va == vb && a < b);
                });
    }
    grow(std::move(sorted), 0);
    return std::move(nodes_);
  }

 private:
  struct Split {
    int feature = -1;
    double threshold = 0.0;
    double gain = 0.0;
  };

  int grow(std::vector<std::vector<std::size_t>> sorted, int depth) {
    const auto& any = sorted.front();
    double g_sum = 0.0;
    double h_sum = 0.0;
    for (std::size_t r : any) {
      g_sum += grad_[r];
      h_sum += hess_[r];
    }

    const int id = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    nodes_[id].cover = h_sum;

    Split best;
    if (depth < hp_.max_depth && any.size() >= 2) best = find_split(sorted, g_sum, h_sum);

    if (best.feature < 0) {
      nodes_[id].weight = leaf_weight(g_sum, h_sum, hp_.l1_alpha, hp_.l2_lambda);
      return id;
    }

    const auto f = static_cast<std::size_t>(best.feature);
    for (std::size_t r : any) goes_left_[r] = data_.feature(r, f) < best.threshold;

    std::vector<std::vector<std::size_t>> left(sorted.size());
    std::vector<std::vector<std::size_t>> right(sorted.size());
    for (std::size_t k = 0; k < sorted.size(); ++k) {
      for (std::size_t r : sorted[k]) (goes_left_[r] ? left[k] : right[k]).push_back(r);
    }
    sorted.clear();

    nodes_[id].feature = best.feature;
    nodes_[id].threshold = best.threshold;
    nodes_[id].gain = best.gain;
    const int l = grow(std::move(left), depth + 1);
    const int r = grow(std::move(right), depth + 1);
    nodes_[id].left = l;
    nodes_[id].right = r;
    return id;
  }

  Split find_split(const std::vector<std::vector<std::size_t>>& sorted, double g_sum,
                   double h_sum) const {
    Split best;
    for (std::size_t f = 0; f < sorted.size(); ++f) {
      const auto& order = sorted[f];
      double gl = 0.0;
      double hl = 0.0;
      for (std::size_t k = 0; k + 1 < order.size(); ++k) {
        gl += grad_[order[k]];
        hl += hess_[order[k]];
        const double v = data_.feature(order[k], f);
        const double next = data_.feature(order[k + 1], f);
        if (!(v < next)) continue;
        const double gr = g_sum - gl;
        const double hr = h_sum - hl;
        if (hl < hp_.min_child_weight || hr < hp_.min_child_weight) continue;
        const double gain =
            split_gain(gl, hl, gr, hr, hp_.l2_lambda, hp_.gamma, hp_.l1_alpha);
        if (gain_beats(gain, best.gain)) {
          double mid = v + (next - v) / 2.0;
          if (!(mid > v)) mid = next;
          best = {static_cast<int>(f), mid, gain};
        }
      }
    }
    return best;
  }

  const Dataset& data_;
  std::span<const double> grad_;
  std::span<const double> hess_;
  const Hyperparameters& hp_;
  std::vector<char> goes_left_;
  std::vector<TreeNode> nodes_;
};

}  // namespace

RegressionTree build_tree(const Dataset& data, std::span<const std::size_t> rows,
                          std::span<const double> grad, std::span<const double> hess,
                          const Hyperparameters& hp) {
  if (rows.empty()) throw std::invalid_argument("build_tree: no rows");
  if (grad.size() != data.rows() || hess.size() != data.rows()) {
    throw std::invalid_argument("build_tree: gradient length mismatch");
  }
  return RegressionTree(TreeBuilder(data, grad, hess, hp).build(rows));
}

// ---------------------------------------------------------------------------
// Boosting

BoostedModel train(const Dataset& data, const Hyperparameters& hp, Engine& rng,
                   const RoundCallback& on_round) {
  hp.validate();
  if (data.empty()) throw std::invalid_argument("train: empty dataset");

  BoostedModel model;
  model.hyperparameters = hp;
  model.num_features = data.cols();
  model.trees.reserve(static_cast<std::size_t>(hp.num_estimators));

  const std::size_t m = data.rows();
  std::vector<double> raw(m, model.base_score);
  std::vector<double> grad(m);
  std::vector<double> hess(m);
  std::vector<std::size_t> all(m);
  std::iota(all.begin(), all.end(), std::size_t{0});

  const std::size_t sample_size =
      hp.subsample >= 1.0
          ? m
          : std::clamp<std::size_t>(
                static_cast<std::size_t>(std::llround(hp.subsample * static_cast<double>(m))),
                1, m);
  std::vector<std::size_t> pool = all;
  std::vector<std::size_t> sample;

  for (int round = 0; round < hp.num_estimators; ++round) {
    for (std::size_t i = 0; i < m; ++i) {
      const GradientPair gp = grad_hess(raw[i], data.label(i), hp.objective);
      grad[i] = gp.grad;
      hess[i] = gp.hess;
    }

    std::span<const std::size_t> rows = all;
    if (sample_size < m) {
      // partial Fisher-Yates over a fixed pool gives a draw without replacement
      for (std::size_t k = 0; k < sample_size; ++k) {
        std::uniform_int_distribution<std::size_t> pick(k, m - 1);
        std::swap(pool[k], pool[pick(rng)]);
      }
      sample.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(sample_size));
      std::sort(sample.begin(), sample.end());
      rows = sample;
    }

    RegressionTree tree = build_tree(data, rows, grad, hess, hp);
    for (std::size_t i = 0; i < m; ++i) raw[i] += hp.learning_rate * tree.predict(data.row(i));
    model.trees.push_back(std::move(tree));
    if (on_round) on_round(round, raw);
  }
  return model;
}

double predict_raw(const BoostedModel& model, std::span<const double> row) {
  if (row.size() != model.num_features && !model.trees.empty()) {
    throw std::invalid_argument("predict: expected " +
                                std::to_string(model.num_features) +
                                " features, got " + std::to_string(row.size()));
  }
  double raw = model.base_score;
  for (const RegressionTree& t : model.trees) {
    raw += model.hyperparameters.learning_rate * t.predict(row);
  }
  return raw;
}

double predict(const BoostedModel& model, std::span<const double> row) {
  const double raw = predict_raw(model, row);
  return model.hyperparameters.objective == Objective::kLogistic ? sigmoid(raw) : raw;
}

bool predict_class(const BoostedModel& model, std::span<const double> row) {
  return predict(model, row) >= kDecisionThreshold;
}

std::vector<double> predict_all(const BoostedModel& model, const Dataset& data) {
  std::vector<double> out(data.rows());
  for (std::size_t i = 0; i < data.rows(); ++i) out[i] = predict(model, data.row(i));
  return out;
}

void write_model_dump(std::ostream& os, const BoostedModel& model) {
  os << "tree,id,parent,feature,threshold,weight\n";
  for (std::size_t t = 0; t < model.trees.size(); ++t) {
    const auto nodes = model.trees[t].nodes();
    std::vector<int> parent(nodes.size(), -1);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (!nodes[i].is_leaf()) {
        parent[static_cast<std::size_t>(nodes[i].left)] = static_cast<int>(i);
        parent[static_cast<std::size_t>(nodes[i].right)] = static_cast<int>(i);
      }
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const TreeNode& n = nodes[i];
      os << t << ',' << i << ',' << parent[i] << ',' << n.feature << ','
         << (n.is_leaf() ? std::string() : format_double(n.threshold)) << ','
         << (n.is_leaf() ? format_double(n.weight) : std::string()) << '\n';
    }
  }
}

}  // namespace horacle::gbdt
