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

#ifndef LANGASSESS_REPORT_HPP_
#define LANGASSESS_REPORT_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "langassess/stats.hpp"

namespace langassess::report {

// A report grid as written by write_report_csv (or a hand-made table with
// the same layout). Cells hold the mean micro-F1 or nothing when failed.
struct ReportTable {
  struct Row {
    std::string family;
    std::string feature_set;
    std::string classifier;
    std::map<std::string, std::optional<double>> cells;  // by condition column
  };
  std::vector<std::string> conditions;
  std::vector<Row> rows;
};

// "M", "M (+/- S)", "failed" or empty. Throws ParseError on anything else.
std::optional<double> parse_cell(std::string_view cell);

ReportTable read_report_csv(const std::filesystem::path& path);

enum class Grouping { Task, Medium, FeatureFamily };
std::string_view to_string(Grouping g);  // task, medium, feature-family
Grouping parse_grouping(std::string_view s);

// task: pd vs sr columns; medium: phone vs web columns; feature-family:
// every condition cell of acoustic rows vs linguistic rows. Failed cells are
// skipped and counted in *skipped.
stats::ScoreGroups build_groups(const std::vector<ReportTable>& tables, Grouping grouping,
                                std::size_t* skipped = nullptr);

struct Comparison {
  Grouping grouping = Grouping::Task;
  stats::ScoreGroups groups;
  stats::AnovaResult anova;
  stats::TukeyResult tukey;
  std::vector<double> means;
  std::string higher;  // name of the group with the larger mean
  bool significant = false;
  double alpha = 0.05;
  std::size_t skipped_cells = 0;
  std::string verdict;
};

Comparison compare_groups(stats::ScoreGroups groups, Grouping grouping, double alpha = 0.05);
Comparison compare_conditions(const std::vector<std::filesystem::path>& reports, Grouping grouping,
                              double alpha = 0.05);

// Plain text block: groups with n and mean, F with df, p, Tukey p, verdict.
std::string format_comparison(const Comparison& c);
void write_comparison_json(const Comparison& c, const std::filesystem::path& path);

}  // namespace langassess::report

#endif  // LANGASSESS_REPORT_HPP_
