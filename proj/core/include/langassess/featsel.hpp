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

#ifndef LANGASSESS_FEATSEL_HPP_
#define LANGASSESS_FEATSEL_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "langassess/feature_matrix.hpp"
#include "langassess/tree.hpp"

namespace langassess::featsel {

enum class RankMethod { Anova, RF, MRMR };

std::string_view to_string(RankMethod m);  // anova, rf, mrmr
RankMethod parse_rank_method(std::string_view s);

struct RankedFeatures {
  RankMethod method = RankMethod::Anova;
  std::vector<std::pair<std::string, double>> ranked;  // best first

  std::vector<std::string> top(std::size_t k) const;
};

inline constexpr double kAnovaCap = 1e12;

// Per-column one-way F between the two label groups. Constant columns score
// 0; scores are capped at kAnovaCap.
std::vector<double> anova_f_scores(const Matrix& x, const ml::Labels& y);
RankedFeatures anova_f_rank(const FeatureMatrix& m);

ml::ForestParams default_importance_forest();  // 100 trees, seed 42, sqrt(p)
RankedFeatures rf_importance_rank(const FeatureMatrix& m,
                                  const ml::ForestParams& params = default_importance_forest());

// Three bins split at mean - std and mean + std (population std).
std::vector<int> discretize3(const Eigen::Ref<const Vector>& column);
// Natural-log mutual information of two discrete sequences.
double mutual_information(const std::vector<int>& a, const std::vector<int>& b);

// Greedy MID ordering of every column. Scores are the criterion value at the
// time of selection (relevance for the first pick).
RankedFeatures mrmr_rank(const FeatureMatrix& m);

struct CommonFeatures {
  std::vector<std::string> names;  // in the order of the first ranking
  bool union_fallback = false;     // intersection was empty
};

CommonFeatures common_top_k(const std::vector<RankedFeatures>& rankings, std::size_t k);

// Groups acoustic names into lines such as "MFCC 12,13 (kurt)",
// "Delta LSP freq 3,5 (mean)" or "Loudness (kurt, skew)". Names that are not
// acoustic feature names are listed unchanged at the end.
std::vector<std::string> grouped_feature_report(const std::vector<std::string>& names);

struct PcaGroup {
  std::string prefix;                // e.g. "pca_mfcc_delta_kurt"
  std::vector<std::string> columns;  // input columns
  Vector mean;
  Vector scale;
  Eigen::MatrixXd loadings;          // columns x 2, orthonormal columns
  std::vector<double> explained;     // all components, nonincreasing
  bool degenerate = false;           // rank < 2; second score fixed at 0
};

struct PcaProjection {
  std::vector<PcaGroup> groups;

  static PcaProjection fit(const FeatureMatrix& m);
  // 18 columns named "<prefix>_pc1", "<prefix>_pc2".
  FeatureMatrix transform(const FeatureMatrix& m) const;
  std::vector<std::string> output_names() const;
};

// The nine (group, functional) input column sets in output order.
std::vector<std::pair<std::string, std::vector<std::string>>> pca_input_groups();

// fit followed by transform. Throws MissingColumns.
FeatureMatrix pca_combine(const FeatureMatrix& m, PcaProjection* fitted = nullptr);

}  // namespace langassess::featsel

#endif  // LANGASSESS_FEATSEL_HPP_
