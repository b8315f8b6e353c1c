// Copyright 2026 The langassess Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "langassess/tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

namespace langassess::ml {
namespace {

constexpr double kTieEps = 1e-12;

int majority(std::size_t n0, std::size_t n1) { return n1 > n0 ? 1 : 0; }

bool better(double gini, int feature, const Split& best) {
  if (best.feature < 0) return true;
  if (gini < best.child_impurity - kTieEps) return true;
  return gini <= best.child_impurity + kTieEps && feature < best.feature;
}

double weighted_gini(std::size_t l0, std::size_t l1, std::size_t r0, std::size_t r1) {
  const double nl = static_cast<double>(l0 + l1);
  const double nr = static_cast<double>(r0 + r1);
  return (nl * gini(l0, l1) + nr * gini(r0, r1)) / (nl + nr);
}

// Best threshold of one feature; feature field stays -1 when constant.
Split scan_feature(const Matrix& x, const Labels& y, const std::vector<std::size_t>& rows,
                   int feature) {
  std::vector<std::pair<double, int>> v;
  v.reserve(rows.size());
  std::size_t c0 = 0, c1 = 0;
  for (auto r : rows) {
    v.emplace_back(x(static_cast<Eigen::Index>(r), feature), y[r]);
    (y[r] == 1 ? c1 : c0) += 1;
  }
  std::sort(v.begin(), v.end());
  Split best;
  std::size_t l0 = 0, l1 = 0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    (v[i].second == 1 ? l1 : l0) += 1;
    if (!(v[i].first < v[i + 1].first)) continue;
    const double g = weighted_gini(l0, l1, c0 - l0, c1 - l1);
    if (best.feature < 0 || g < best.child_impurity - kTieEps) {
      double thr = 0.5 * (v[i].first + v[i + 1].first);
      if (!(thr < v[i + 1].first)) thr = v[i].first;
      best = Split{feature, thr, g};
    }
  }
  return best;
}

Split random_split(const Matrix& x, const Labels& y, const std::vector<std::size_t>& rows,
                   int feature, Rng& rng) {
  double lo = x(static_cast<Eigen::Index>(rows.front()), feature);
  double hi = lo;
  for (auto r : rows) {
    const double v = x(static_cast<Eigen::Index>(r), feature);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (!(lo < hi)) return {};
  double thr = rng.uniform(lo, hi);
  if (!(thr < hi)) thr = lo;
  std::size_t l0 = 0, l1 = 0, r0 = 0, r1 = 0;
  for (auto r : rows) {
    const bool left = x(static_cast<Eigen::Index>(r), feature) <= thr;
    if (y[r] == 1) {
      (left ? l1 : r1) += 1;
    } else {
      (left ? l0 : r0) += 1;
    }
  }
  return Split{feature, thr, weighted_gini(l0, l1, r0, r1)};
}

}  // namespace

double gini(std::size_t n0, std::size_t n1) {
  const double n = static_cast<double>(n0 + n1);
  if (n == 0.0) return 0.0;
  const double p0 = static_cast<double>(n0) / n;
  const double p1 = static_cast<double>(n1) / n;
  return 1.0 - p0 * p0 - p1 * p1;
}

Split best_split(const Matrix& x, const Labels& y, const std::vector<std::size_t>& rows,
                 const std::vector<int>& features) {
  Split best;
  for (int f : features) {
    const Split s = scan_feature(x, y, rows, f);
    if (s.feature >= 0 && better(s.child_impurity, f, best)) best = s;
  }
  return best;
}

void DecisionTree::fit(const Matrix& x, const Labels& y, const TreeParams& params) {
  std::vector<std::size_t> rows(static_cast<std::size_t>(x.rows()));
  std::iota(rows.begin(), rows.end(), 0);
  fit(x, y, rows, params);
}

void DecisionTree::fit(const Matrix& x, const Labels& y, const std::vector<std::size_t>& rows,
                       const TreeParams& params, Rng* rng, Vector* importance) {
  nodes_.clear();
  if (importance && importance->size() != x.cols()) *importance = Vector::Zero(x.cols());
  std::vector<std::size_t> work = rows;
  if (work.empty()) {
    nodes_.push_back(TreeNode{});
    return;
  }
  build(x, y, work, 0, params, rng, importance, work.size());
}

int DecisionTree::build(const Matrix& x, const Labels& y, std::vector<std::size_t>& rows,
                        int depth, const TreeParams& params, Rng* rng, Vector* importance,
                        std::size_t n_total) {
  std::size_t n0 = 0, n1 = 0;
  for (auto r : rows) (y[r] == 1 ? n1 : n0) += 1;
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back(TreeNode{});
  TreeNode node;
  node.n = rows.size();
  node.impurity = gini(n0, n1);
  node.label = majority(n0, n1);

  const bool stop = n0 == 0 || n1 == 0 ||
                    rows.size() < static_cast<std::size_t>(std::max(2, params.min_samples_split)) ||
                    (params.max_depth >= 0 && depth >= params.max_depth);
  if (stop) {
    nodes_[static_cast<std::size_t>(id)] = node;
    return id;
  }

  const int p = static_cast<int>(x.cols());
  std::vector<int> order(static_cast<std::size_t>(p));
  std::iota(order.begin(), order.end(), 0);
  std::size_t m = order.size();
  if (params.max_features > 0 && params.max_features < p && rng) {
    rng->shuffle(order);
    m = static_cast<std::size_t>(params.max_features);
  }

  auto search = [&](std::vector<int> cand) {
    std::sort(cand.begin(), cand.end());
    if (!params.random_thresholds) return best_split(x, y, rows, cand);
    Split best;
    for (int f : cand) {
      const Split s = random_split(x, y, rows, f, *rng);
      if (s.feature >= 0 && better(s.child_impurity, f, best)) best = s;
    }
    return best;
  };
  Split split = search(std::vector<int>(order.begin(), order.begin() + static_cast<long>(m)));
  if (split.feature < 0 && m < order.size()) {
    split = search(std::vector<int>(order.begin() + static_cast<long>(m), order.end()));
  }
  if (split.feature < 0) {
    nodes_[static_cast<std::size_t>(id)] = node;
    return id;
  }

  if (importance) {
    (*importance)[split.feature] += static_cast<double>(rows.size()) /
                                    static_cast<double>(n_total) *
                                    (node.impurity - split.child_impurity);
  }
  std::vector<std::size_t> left, right;
  for (auto r : rows) {
    (x(static_cast<Eigen::Index>(r), split.feature) <= split.threshold ? left : right).push_back(r);
  }
  rows.clear();
  rows.shrink_to_fit();
  node.feature = split.feature;
  node.threshold = split.threshold;
  node.left = build(x, y, left, depth + 1, params, rng, importance, n_total);
  node.right = build(x, y, right, depth + 1, params, rng, importance, n_total);
  nodes_[static_cast<std::size_t>(id)] = node;
  return id;
}

int DecisionTree::predict_row(const Eigen::Ref<const Eigen::RowVectorXd>& row) const {
  std::size_t i = 0;
  while (nodes_[i].feature >= 0) {
    const auto& nd = nodes_[i];
    i = static_cast<std::size_t>(row[nd.feature] <= nd.threshold ? nd.left : nd.right);
  }
  return nodes_[i].label;
}

Labels DecisionTree::predict(const Matrix& x) const {
  Labels out(static_cast<std::size_t>(x.rows()));
  for (Eigen::Index r = 0; r < x.rows(); ++r) out[static_cast<std::size_t>(r)] = predict_row(x.row(r));
  return out;
}

int DecisionTree::depth() const {
  std::vector<int> d(nodes_.size(), 0);
  int best = 0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    best = std::max(best, d[i]);
    if (nodes_[i].feature >= 0) {
      d[static_cast<std::size_t>(nodes_[i].left)] = d[i] + 1;
      d[static_cast<std::size_t>(nodes_[i].right)] = d[i] + 1;
    }
  }
  return best;
}

void Forest::fit(const Matrix& x, const Labels& y, const ForestParams& params) {
  const auto n = static_cast<std::size_t>(x.rows());
  const int p = static_cast<int>(x.cols());
  int m = params.max_features;
  if (m <= 0) m = std::max(1, static_cast<int>(std::floor(std::sqrt(static_cast<double>(p)))));
  m = std::min(m, p);

  TreeParams tp;
  tp.max_depth = params.max_depth;
  tp.min_samples_split = params.min_samples_split;
  tp.max_features = m;
  tp.random_thresholds = params.random_thresholds;

  trees_.assign(static_cast<std::size_t>(std::max(1, params.n_trees)), DecisionTree{});
  importance_ = Vector::Zero(p);
  Rng master(params.seed);
  std::vector<std::size_t> rows(n);
  for (auto& tree : trees_) {
    Rng rng(master.next());
    if (params.bootstrap) {
      for (auto& r : rows) r = rng.index(n);
    } else {
      std::iota(rows.begin(), rows.end(), 0);
    }
    Vector imp = Vector::Zero(p);
    tree.fit(x, y, rows, tp, &rng, &imp);
    const double s = imp.sum();
    if (s > 0.0) importance_ += imp / s;
  }
  const double total = importance_.sum();
  if (total > 0.0) importance_ /= total;
}

int Forest::predict_row(const Eigen::Ref<const Eigen::RowVectorXd>& row) const {
  std::size_t votes1 = 0;
  for (const auto& t : trees_) votes1 += t.predict_row(row) == 1 ? 1 : 0;
  return 2 * votes1 > trees_.size() ? 1 : 0;
}

Labels Forest::predict(const Matrix& x) const {
  Labels out(static_cast<std::size_t>(x.rows()));
  for (Eigen::Index r = 0; r < x.rows(); ++r) out[static_cast<std::size_t>(r)] = predict_row(x.row(r));
  return out;
}

}  // namespace langassess::ml
