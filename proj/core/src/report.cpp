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

#include "langassess/report.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <numeric>

#include "json.hpp"
#include "langassess/csv.hpp"
#include "langassess/error.hpp"

namespace langassess::report {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

bool parse_number(const std::string& s, double& v) {
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

double mean_of(const std::vector<double>& v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

std::optional<double> parse_cell(std::string_view cell) {
  const std::string s = trim(cell);
  if (s.empty() || s == "failed") return std::nullopt;
  const auto paren = s.find('(');
  const std::string head = trim(std::string_view(s).substr(0, paren));
  double v = 0.0;
  if (!parse_number(head, v)) throw Error(Errc::ParseError, "bad report cell '" + s + "'");
  if (paren != std::string::npos) {
    const std::string tail = trim(std::string_view(s).substr(paren));
    double sd = 0.0;
    if (tail.size() < 7 || tail.rfind("(+/-", 0) != 0 || tail.back() != ')' ||
        !parse_number(trim(std::string_view(tail).substr(4, tail.size() - 5)), sd)) {
      throw Error(Errc::ParseError, "bad report cell '" + s + "'");
    }
  }
  return v;
}

ReportTable read_report_csv(const std::filesystem::path& path) {
  const auto lines = csv::read_lines(path);
  if (lines.empty()) throw Error(Errc::ParseError, path.generic_string() + ": empty report");
  const auto header = csv::split_line(lines[0]);
  if (header.size() < 3 || header[0] != "family" || header[1] != "feature_set" || header[2] != "classifier") {
    throw Error(Errc::ParseError, path.generic_string() + ": header must start with family,feature_set,classifier");
  }
  ReportTable t;
  t.conditions.assign(header.begin() + 3, header.end());
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    const auto cells = csv::split_line(lines[i]);
    if (cells.size() != header.size()) {
      throw Error(Errc::ParseError, path.generic_string() + ": row " + std::to_string(i + 1) + " has " +
                                        std::to_string(cells.size()) + " cells, expected " +
                                        std::to_string(header.size()));
    }
    ReportTable::Row row{cells[0], cells[1], cells[2], {}};
    for (std::size_t c = 3; c < cells.size(); ++c) {
      try {
        row.cells[header[c]] = parse_cell(cells[c]);
      } catch (const Error& e) {
        throw Error(Errc::ParseError, path.generic_string() + ": row " + std::to_string(i + 1) + ", column " +
                                          header[c] + ": " + e.what());
      }
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::string_view to_string(Grouping g) {
  switch (g) {
    case Grouping::Task: return "task";
    case Grouping::Medium: return "medium";
    case Grouping::FeatureFamily: return "feature-family";
  }
  return "?";
}

Grouping parse_grouping(std::string_view s) {
  if (s == "task") return Grouping::Task;
  if (s == "medium") return Grouping::Medium;
  if (s == "feature-family" || s == "family") return Grouping::FeatureFamily;
  throw Error(Errc::InvalidConfig, "unknown grouping '" + std::string(s) + "' (task, medium, feature-family)");
}

stats::ScoreGroups build_groups(const std::vector<ReportTable>& tables, Grouping grouping, std::size_t* skipped) {
  std::size_t missing = 0;
  stats::ScoreGroups groups;
  auto by_column = [&](const std::vector<std::string>& columns) {
    for (const auto& name : columns) {
      stats::ScoreGroup g{name, {}};
      for (const auto& t : tables) {
        for (const auto& row : t.rows) {
          const auto it = row.cells.find(name);
          if (it == row.cells.end()) continue;
          if (it->second) {
            g.values.push_back(*it->second);
          } else {
            ++missing;
          }
        }
      }
      groups.push_back(std::move(g));
    }
  };
  switch (grouping) {
    case Grouping::Task: by_column({"pd", "sr"}); break;
    case Grouping::Medium: by_column({"phone", "web"}); break;
    case Grouping::FeatureFamily: {
      for (const std::string family : {"acoustic", "linguistic"}) {
        stats::ScoreGroup g{family, {}};
        for (const auto& t : tables) {
          for (const auto& row : t.rows) {
            if (row.family != family) continue;
            for (const auto& c : t.conditions) {
              const auto& v = row.cells.at(c);
              if (v) {
                g.values.push_back(*v);
              } else {
                ++missing;
              }
            }
          }
        }
        groups.push_back(std::move(g));
      }
      break;
    }
  }
  if (skipped) *skipped = missing;
  return groups;
}

Comparison compare_groups(stats::ScoreGroups groups, Grouping grouping, double alpha) {
  Comparison c;
  c.grouping = grouping;
  c.alpha = alpha;
  c.anova = stats::one_way_anova(groups);
  c.tukey = stats::tukey_two_group(groups);
  for (const auto& g : groups) c.means.push_back(mean_of(g.values));
  c.higher = c.means[0] >= c.means[1] ? groups[0].name : groups[1].name;
  const std::string lower = c.means[0] >= c.means[1] ? groups[1].name : groups[0].name;
  c.significant = c.tukey.p <= alpha;
  char buf[256];
  if (c.anova.degenerate) {
    c.verdict = "no difference: all scores are identical";
  } else if (c.significant) {
    std::snprintf(buf, sizeof buf, "%s mean > %s mean (Tukey p = %.4g <= %.4g)", c.higher.c_str(), lower.c_str(),
                  c.tukey.p, alpha);
    c.verdict = buf;
  } else {
    std::snprintf(buf, sizeof buf, "no significant difference (Tukey p = %.4g > %.4g); %s mean is higher",
                  c.tukey.p, alpha, c.higher.c_str());
    c.verdict = buf;
  }
  c.groups = std::move(groups);
  return c;
}

Comparison compare_conditions(const std::vector<std::filesystem::path>& reports, Grouping grouping, double alpha) {
  std::vector<ReportTable> tables;
  for (const auto& p : reports) tables.push_back(read_report_csv(p));
  std::size_t skipped = 0;
  auto groups = build_groups(tables, grouping, &skipped);
  for (const auto& g : groups) {
    if (g.values.size() < 2) {
      throw Error(Errc::TooFewSamples, "group '" + g.name + "' has " + std::to_string(g.values.size()) +
                                           " scores; the reports lack the columns needed for grouping " +
                                           std::string(to_string(grouping)));
    }
  }
  auto c = compare_groups(std::move(groups), grouping, alpha);
  c.skipped_cells = skipped;
  return c;
}

std::string format_comparison(const Comparison& c) {
  std::string out;
  char buf[256];
  out += "grouping: " + std::string(to_string(c.grouping)) + "\n";
  for (std::size_t i = 0; i < c.groups.size(); ++i) {
    std::snprintf(buf, sizeof buf, "group %s: n = %zu, mean = %.4f\n", c.groups[i].name.c_str(),
                  c.groups[i].values.size(), c.means[i]);
    out += buf;
  }
  if (c.skipped_cells) out += "skipped failed cells: " + std::to_string(c.skipped_cells) + "\n";
  std::snprintf(buf, sizeof buf, "anova: F(%d, %d) = %.4f, p = %.4g\n", c.anova.df1, c.anova.df2, c.anova.f,
                c.anova.p);
  out += buf;
  std::snprintf(buf, sizeof buf, "tukey: t(%d) = %.4f, p = %.4g, mean difference = %.4f\n", c.tukey.df, c.tukey.t,
                c.tukey.p, c.tukey.mean_difference);
  out += buf;
  out += "verdict: " + c.verdict + "\n";
  return out;
}

void write_comparison_json(const Comparison& c, const std::filesystem::path& path) {
  nlohmann::ordered_json j;
  j["grouping"] = std::string(to_string(c.grouping));
  auto groups = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < c.groups.size(); ++i) {
    groups.push_back({{"name", c.groups[i].name}, {"n", c.groups[i].values.size()}, {"mean", c.means[i]}});
  }
  j["groups"] = std::move(groups);
  j["skipped_cells"] = c.skipped_cells;
  j["anova"] = {{"f", c.anova.f}, {"df1", c.anova.df1}, {"df2", c.anova.df2}, {"p", c.anova.p}};
  j["tukey"] = {{"t", c.tukey.t}, {"df", c.tukey.df}, {"p", c.tukey.p}, {"mean_difference", c.tukey.mean_difference}};
  j["higher"] = c.higher;
  j["significant"] = c.significant;
  j["alpha"] = c.alpha;
  j["verdict"] = c.verdict;
  std::ofstream out(path, std::ios::binary);
  out << j.dump(2) << '\n';
  if (!out) throw Error(Errc::MissingFile, "cannot write " + path.generic_string());
}

}  // namespace langassess::report
