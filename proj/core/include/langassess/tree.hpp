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

#ifndef LANGASSESS_TREE_HPP_
#define LANGASSESS_TREE_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "langassess/rng.hpp"
#include "langassess/types.hpp"

namespace langassess::ml {

using Labels = std::vector<int>;  // 0 or 1

struct TreeParams {
  int max_depth = -1;          // -1 = unbounded
  int min_samples_split = 2;
  int max_features = 0;        // 0 = all features
  bool random_thresholds = false;
};

struct TreeNode {
  int feature = -1;  // -1 for leaves
  double threshold = 0.0;
  int left = -1;     // x[feature] <= threshold
  int right = -1;
  int label = 0;
  std::size_t n = 0;
  double impurity = 0.0;
};

struct Split {
  int feature = -1;  // -1 when no split improves on a leaf
  double threshold = 0.0;
  double child_impurity = 0.0;  // weighted Gini of the two children
};

double gini(std::size_t n0, std::size_t n1);

// Exhaustive CART search over midpoints between consecutive distinct values.
// Ties go to the lower feature index, then the lower threshold.
Split best_split(const Matrix& x, const Labels& y, const std::vector<std::size_t>& rows,
                 const std::vector<int>& features);

class DecisionTree {
 public:
  // rows may repeat (bootstrap). importance, when given, receives the
  // unnormalized weighted impurity decrease per feature.
  void fit(const Matrix& x, const Labels& y, const std::vector<std::size_t>& rows,
           const TreeParams& params, Rng* rng = nullptr, Vector* importance = nullptr);
  void fit(const Matrix& x, const Labels& y, const TreeParams& params = {});

  int predict_row(const Eigen::Ref<const Eigen::RowVectorXd>& row) const;
  Labels predict(const Matrix& x) const;

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  int depth() const;

 private:
  int build(const Matrix& x, const Labels& y, std::vector<std::size_t>& rows, int depth,
            const TreeParams& params, Rng* rng, Vector* importance, std::size_t n_total);

  std::vector<TreeNode> nodes_;
};

struct ForestParams {
  int n_trees = 100;
  int max_depth = -1;
  int min_samples_split = 2;
  int max_features = -1;  // -1 = floor(sqrt(p)), at least 1
  bool bootstrap = true;
  bool random_thresholds = false;
  std::uint64_t seed = 42;
};

class Forest {
 public:
  void fit(const Matrix& x, const Labels& y, const ForestParams& params);

  // Hard majority vote; ties go to class 0.
  int predict_row(const Eigen::Ref<const Eigen::RowVectorXd>& row) const;
  Labels predict(const Matrix& x) const;

  // Mean decrease in impurity, normalized to sum to 1 (all zeros when no
  // tree ever split).
  const Vector& importances() const { return importance_; }
  const std::vector<DecisionTree>& trees() const { return trees_; }

 private:
  std::vector<DecisionTree> trees_;
  Vector importance_;
};

}  // namespace langassess::ml

#endif  // LANGASSESS_TREE_HPP_
