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

#ifndef LANGASSESS_STATS_HPP_
#define LANGASSESS_STATS_HPP_

#include <string>
#include <vector>

#include "langassess/types.hpp"

namespace langassess::stats {

struct ScoreGroup {
  std::string name;
  std::vector<double> values;
};
using ScoreGroups = std::vector<ScoreGroup>;

struct AnovaResult {
  double f = 0.0;
  int df1 = 0;
  int df2 = 0;
  double p = 1.0;
  bool degenerate = false;  // all observations equal: F = 0, p = 1
};

// Regularized incomplete beta I_x(a, b) by continued fraction.
double incomplete_beta(double a, double b, double x);
// P(F > f) for an F(d1, d2) variable.
double f_survival(double f, double d1, double d2);
// Two-sided p of a Student t statistic.
double t_two_sided_p(double t, double df);

double normal_cdf(double x);
// Inverse of normal_cdf on (0, 1).
double normal_quantile(double p);

// Requires >= 2 groups with >= 2 observations each (TooFewSamples). Zero
// within-group variance with distinct group means throws DegenerateGroups.
AnovaResult one_way_anova(const ScoreGroups& groups);

struct TukeyResult {
  double t = 0.0;
  int df = 0;
  double p = 1.0;
  double mean_difference = 0.0;  // first group minus second
};

// Two-group Tukey HSD, i.e. the pooled two-sample t-test. Throws
// MoreThanTwoGroups for any other group count.
TukeyResult tukey_two_group(const ScoreGroups& groups);

// Normal approximation to two-sample t-test power. Rows follow
// effect_sizes, columns follow n_per_group. An effect size of 0 yields alpha.
Matrix power_curve(const std::vector<double>& effect_sizes, const std::vector<int>& n_per_group,
                   double alpha = 0.05);

}  // namespace langassess::stats

#endif  // LANGASSESS_STATS_HPP_
