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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "langassess/error.hpp"
#include "langassess/plots.hpp"
#include "langassess/report.hpp"
#include "langassess/rng.hpp"
#include "oracles.hpp"

using namespace langassess;
namespace fs = std::filesystem;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Errc::NumericalFailure;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Sorted-sample interpolation between order statistics.
double type7(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double h = (static_cast<double>(v.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (h - std::floor(h)) * (v[hi] - v[lo]);
}

nlohmann::json svg_metadata(const std::string& svg) {
  const std::string open = "<metadata id=\"box-stats\">";
  const auto a = svg.find(open) + open.size();
  std::string body = svg.substr(a, svg.find("</metadata>") - a);
  for (std::size_t p; (p = body.find("&quot;")) != std::string::npos;) body.replace(p, 6, "\"");
  return nlohmann::json::parse(body);
}

const char* kTable =
    "family,feature_set,classifier,pd,sr,web,phone\n"
    "linguistic,all,DT,0.6 (+/- 0.1),0.5,0.7,0.8\n"
    "linguistic,all,LR,0.7,failed,0.6,0.9\n"
    "acoustic,anova,DT,0.9,0.8,,0.7\n";

}  // namespace

TEST_CASE("cell parsing") {
  CHECK(*report::parse_cell("0.73") == 0.73);
  CHECK(*report::parse_cell("0.73 (+/- 0.13)") == 0.73);
  CHECK(!report::parse_cell("failed"));
  CHECK(!report::parse_cell(""));
  CHECK(code_of([] { report::parse_cell("high"); }) == Errc::ParseError);
}

TEST_CASE("report tables and groupings") {
  const auto dir = oracle::fresh_dir("report");
  std::ofstream(dir / "r.csv") << kTable;
  const auto t = report::read_report_csv(dir / "r.csv");
  CHECK(t.conditions == std::vector<std::string>{"pd", "sr", "web", "phone"});
  REQUIRE(t.rows.size() == 3);
  CHECK(t.rows[1].classifier == "LR");

  std::size_t skipped = 0;
  const auto task = report::build_groups({t}, report::Grouping::Task, &skipped);
  CHECK(task[0].values == std::vector<double>{0.6, 0.7, 0.9});
  CHECK(task[1].values == std::vector<double>{0.5, 0.8});
  CHECK(skipped == 1);
  const auto medium = report::build_groups({t}, report::Grouping::Medium);
  CHECK(medium[0].name == "phone");
  CHECK(medium[1].values.size() == 2);
  const auto family = report::build_groups({t}, report::Grouping::FeatureFamily, &skipped);
  CHECK(family[0].name == "acoustic");
  CHECK(family[0].values.size() == 3);
  CHECK(family[1].values.size() == 7);
  CHECK(skipped == 2);

  const auto c = report::compare_conditions({dir / "r.csv"}, report::Grouping::FeatureFamily);
  CHECK(c.higher == "acoustic");
  CHECK(c.skipped_cells == 2);
  CHECK(c.anova.df1 == 1);
  CHECK(c.anova.df2 == 8);
  CHECK(c.anova.f == doctest::Approx(oracle::anova_f({family[0].values, family[1].values})).epsilon(1e-12));
  CHECK(report::format_comparison(c).find("verdict: ") != std::string::npos);

  report::write_comparison_json(c, dir / "c.json");
  const auto j = nlohmann::json::parse(slurp(dir / "c.json"));
  CHECK(j.contains("verdict"));
}

TEST_CASE("malformed report") {
  const auto dir = oracle::fresh_dir("report_bad");
  std::ofstream(dir / "bad.csv") << "family,feature_set,classifier,pd\nlinguistic,all,DT,x\n";
  CHECK(code_of([&] { report::read_report_csv(dir / "bad.csv"); }) == Errc::ParseError);
  CHECK(code_of([] { report::parse_grouping("site"); }) == Errc::InvalidConfig);
}

TEST_CASE("box statistics against type 7 quartiles") {
  Rng rng(4);
  for (int t = 0; t < 20; ++t) {
    std::vector<double> v(3 + t);
    for (auto& x : v) x = rng.normal();
    for (double q : {0.0, 0.1, 0.25, 0.5, 0.75, 1.0}) {
      CHECK(plots::quantile7(v, q) == doctest::Approx(type7(v, q)).epsilon(1e-14));
    }
    const auto b = plots::box_stats(v);
    CHECK(b.q1 == doctest::Approx(type7(v, 0.25)).epsilon(1e-14));
    CHECK(b.median == doctest::Approx(type7(v, 0.5)).epsilon(1e-14));
    CHECK(b.whisker_low >= b.q1 - 1.5 * (b.q3 - b.q1));
    CHECK(b.whisker_high <= b.q3 + 1.5 * (b.q3 - b.q1));
  }
  const auto out = plots::box_stats({1, 2, 3, 4, 100});
  CHECK(out.outliers == std::vector<double>{100});
  CHECK(out.whisker_high == 4);
  CHECK(code_of([] { plots::box_stats({}); }) == Errc::NoDataToPlot);
}

TEST_CASE("boxplot metadata") {
  const stats::ScoreGroups g = {{"pd", {0.5, 0.6, 0.7, 0.9}}, {"sr", {0.4, 0.45, 0.8}}};
  const auto meta = svg_metadata(plots::boxplot_svg(g, "t", "F1"));
  REQUIRE(meta.size() == 2);
  CHECK(meta[0]["group"] == "pd");
  CHECK(meta[0]["n"] == 4);
  CHECK(meta[0]["q1"].get<double>() == doctest::Approx(type7(g[0].values, 0.25)));
  CHECK(meta[1]["median"].get<double>() == doctest::Approx(0.45));
}

TEST_CASE("power curve table and plot files") {
  const Matrix grid = stats::power_curve({0.2, 0.5}, {8, 16}, 0.05);
  const auto csv = plots::power_curve_csv({0.2, 0.5}, {8, 16}, grid);
  CHECK(csv.rfind("n,es=0.2,es=0.5\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);

  const auto dir = oracle::fresh_dir("plots");
  std::ofstream(dir / "r.csv") << kTable;
  const auto files = plots::emit_plots({dir / "r.csv"}, dir / "out");
  for (const auto name : {"boxplot_task.svg", "boxplot_medium.svg", "boxplot_feature-family.svg",
                          "boxplot_task.csv", "power_curve.svg", "power_curve.csv"}) {
    CHECK(fs::exists(dir / "out" / name));
  }
  CHECK(files.size() >= 6);
  CHECK(slurp(dir / "out" / "boxplot_task.csv").rfind("group,value\n", 0) == 0);

  std::ofstream(dir / "empty.csv") << "family,feature_set,classifier,pd,sr\nlinguistic,all,DT,failed,\n";
  CHECK(code_of([&] { plots::emit_plots({dir / "empty.csv"}, dir / "out2"); }) == Errc::NoDataToPlot);
}
