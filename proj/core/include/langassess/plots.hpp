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

#ifndef LANGASSESS_PLOTS_HPP_
#define LANGASSESS_PLOTS_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "langassess/report.hpp"
#include "langassess/stats.hpp"
#include "langassess/types.hpp"

namespace langassess::plots {

// Quartiles use linear interpolation between order statistics (R type 7).
// Whiskers reach the most extreme observations within 1.5 IQR of the box.
struct BoxStats {
  std::size_t n = 0;
  double mean = 0.0;
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  double whisker_low = 0.0;
  double whisker_high = 0.0;
  std::vector<double> outliers;
};

double quantile7(std::vector<double> values, double q);
// Throws NoDataToPlot on an empty sample.
BoxStats box_stats(const std::vector<double>& values);

// One box per group. Box statistics are embedded as JSON in <metadata>.
std::string boxplot_svg(const stats::ScoreGroups& groups, const std::string& title, const std::string& y_label);

// grid: rows = effect sizes, columns = sample sizes (as from power_curve).
std::string power_curve_svg(const std::vector<double>& effect_sizes, const std::vector<int>& n_per_group,
                            const Matrix& grid, double alpha);
// Header "n,es=<e1>,es=<e2>,..."; one row per sample size.
std::string power_curve_csv(const std::vector<double>& effect_sizes, const std::vector<int>& n_per_group,
                            const Matrix& grid);

struct PowerSpec {
  std::vector<double> effect_sizes = {0.2, 0.5, 0.8};
  std::vector<int> n_per_group = {4, 8, 16, 24, 32, 48, 64, 96, 128};
  double alpha = 0.05;
};

// For every grouping with data: boxplot_<grouping>.svg plus a long-format
// boxplot_<grouping>.csv (group,value). Always power_curve.svg/.csv.
// Throws NoDataToPlot when the reports contain no scores.
std::vector<std::filesystem::path> emit_plots(const std::vector<std::filesystem::path>& reports,
                                              const std::filesystem::path& outdir,
                                              const PowerSpec& power = {});

}  // namespace langassess::plots

#endif  // LANGASSESS_PLOTS_HPP_
