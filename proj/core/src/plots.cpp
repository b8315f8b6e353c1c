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

#include "langassess/plots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

#include "json.hpp"
#include "langassess/csv.hpp"
#include "langassess/error.hpp"

namespace langassess::plots {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

const char* kPalette[] = {"#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3", "#937860"};

struct Axis {
  double lo;
  double hi;
  double y(double v) const { return kTop + (kHeight - kTop - kBottom) * (hi - v) / (hi - lo); }
};

std::string svg_open(const std::string& title) {
  std::string s = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth) + "\" height=\"" + fmt(kHeight) +
       "\" viewBox=\"0 0 " + fmt(kWidth) + " " + fmt(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s += "<title>" + escape(title) + "</title>\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + fmt(kWidth / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" + escape(title) +
       "</text>\n";
  return s;
}

std::string y_axis(const Axis& ax, const std::string& label, int ticks) {
  std::string s;
  const double x0 = kLeft;
  s += "<line x1=\"" + fmt(x0) + "\" y1=\"" + fmt(kTop) + "\" x2=\"" + fmt(x0) + "\" y2=\"" +
       fmt(kHeight - kBottom) + "\" stroke=\"black\"/>\n";
  s += "<line x1=\"" + fmt(x0) + "\" y1=\"" + fmt(kHeight - kBottom) + "\" x2=\"" + fmt(kWidth - kRight) +
       "\" y2=\"" + fmt(kHeight - kBottom) + "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= ticks; ++i) {
    const double v = ax.lo + (ax.hi - ax.lo) * i / ticks;
    const double y = ax.y(v);
    s += "<line x1=\"" + fmt(x0 - 4) + "\" y1=\"" + fmt(y) + "\" x2=\"" + fmt(x0) + "\" y2=\"" + fmt(y) +
         "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + fmt(x0 - 7) + "\" y=\"" + fmt(y + 4) + "\" text-anchor=\"end\">" + fmt(v) + "</text>\n";
  }
  const double ym = (kTop + kHeight - kBottom) / 2;
  s += "<text x=\"18\" y=\"" + fmt(ym) + "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " + fmt(ym) + ")\">" +
       escape(label) + "</text>\n";
  return s;
}

void write_text(const std::filesystem::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary);
  out << s;
  if (!out) throw Error(Errc::MissingFile, "cannot write " + p.generic_string());
}

}  // namespace

double quantile7(std::vector<double> values, double q) {
  if (values.empty()) throw Error(Errc::NoDataToPlot, "quantile of an empty sample");
  std::sort(values.begin(), values.end());
  const double h = (static_cast<double>(values.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

BoxStats box_stats(const std::vector<double>& values) {
  if (values.empty()) throw Error(Errc::NoDataToPlot, "box statistics of an empty sample");
  BoxStats b;
  b.n = values.size();
  b.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(b.n);
  const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  b.min = *mn;
  b.max = *mx;
  b.q1 = quantile7(values, 0.25);
  b.median = quantile7(values, 0.5);
  b.q3 = quantile7(values, 0.75);
  const double iqr = b.q3 - b.q1;
  const double lo_fence = b.q1 - 1.5 * iqr;
  const double hi_fence = b.q3 + 1.5 * iqr;
  b.whisker_low = b.q1;
  b.whisker_high = b.q3;
  for (double v : values) {
    if (v >= lo_fence && v < b.whisker_low) b.whisker_low = v;
    if (v <= hi_fence && v > b.whisker_high) b.whisker_high = v;
    if (v < lo_fence || v > hi_fence) b.outliers.push_back(v);
  }
  std::sort(b.outliers.begin(), b.outliers.end());
  return b;
}

std::string boxplot_svg(const stats::ScoreGroups& groups, const std::string& title, const std::string& y_label) {
  if (groups.empty()) throw Error(Errc::NoDataToPlot, "no groups to plot");
  std::vector<BoxStats> boxes;
  for (const auto& g : groups) boxes.push_back(box_stats(g.values));

  double lo = 0.0;
  double hi = 1.0;
  for (const auto& b : boxes) {
    lo = std::min(lo, std::floor(b.min * 10) / 10);
    hi = std::max(hi, std::ceil(b.max * 10) / 10);
  }
  const Axis ax{lo, hi};

  nlohmann::ordered_json meta = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const auto& b = boxes[i];
    meta.push_back({{"group", groups[i].name}, {"n", b.n},           {"mean", b.mean},
                    {"min", b.min},            {"q1", b.q1},         {"median", b.median},
                    {"q3", b.q3},              {"max", b.max},       {"whisker_low", b.whisker_low},
                    {"whisker_high", b.whisker_high}, {"outliers", b.outliers}});
  }

  std::string s = svg_open(title);
  s += "<metadata id=\"box-stats\">" + escape(meta.dump()) + "</metadata>\n";
  s += y_axis(ax, y_label, 5);
  const double span = (kWidth - kLeft - kRight) / static_cast<double>(groups.size());
  const double bw = std::min(80.0, span * 0.5);
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const auto& b = boxes[i];
    const double cx = kLeft + span * (static_cast<double>(i) + 0.5);
    const char* color = kPalette[i % std::size(kPalette)];
    s += "<g class=\"box\" data-group=\"" + escape(groups[i].name) + "\">\n";
    s += "<line x1=\"" + fmt(cx) + "\" y1=\"" + fmt(ax.y(b.whisker_low)) + "\" x2=\"" + fmt(cx) + "\" y2=\"" +
         fmt(ax.y(b.q1)) + "\" stroke=\"black\"/>\n";
    s += "<line x1=\"" + fmt(cx) + "\" y1=\"" + fmt(ax.y(b.q3)) + "\" x2=\"" + fmt(cx) + "\" y2=\"" +
         fmt(ax.y(b.whisker_high)) + "\" stroke=\"black\"/>\n";
    for (double w : {b.whisker_low, b.whisker_high}) {
      s += "<line x1=\"" + fmt(cx - bw / 4) + "\" y1=\"" + fmt(ax.y(w)) + "\" x2=\"" + fmt(cx + bw / 4) +
           "\" y2=\"" + fmt(ax.y(w)) + "\" stroke=\"black\"/>\n";
    }
    s += "<rect x=\"" + fmt(cx - bw / 2) + "\" y=\"" + fmt(ax.y(b.q3)) + "\" width=\"" + fmt(bw) + "\" height=\"" +
         fmt(ax.y(b.q1) - ax.y(b.q3)) + "\" fill=\"" + color + "\" fill-opacity=\"0.6\" stroke=\"black\"/>\n";
    s += "<line x1=\"" + fmt(cx - bw / 2) + "\" y1=\"" + fmt(ax.y(b.median)) + "\" x2=\"" + fmt(cx + bw / 2) +
         "\" y2=\"" + fmt(ax.y(b.median)) + "\" stroke=\"black\" stroke-width=\"2\"/>\n";
    for (double o : b.outliers) {
      s += "<circle cx=\"" + fmt(cx) + "\" cy=\"" + fmt(ax.y(o)) + "\" r=\"3\" fill=\"none\" stroke=\"black\"/>\n";
    }
    s += "</g>\n";
    s += "<text x=\"" + fmt(cx) + "\" y=\"" + fmt(kHeight - kBottom + 18) + "\" text-anchor=\"middle\">" +
         escape(groups[i].name) + " (n=" + std::to_string(b.n) + ")</text>\n";
  }
  s += "</svg>\n";
  return s;
}

std::string power_curve_svg(const std::vector<double>& effect_sizes, const std::vector<int>& n_per_group,
                            const Matrix& grid, double alpha) {
  if (effect_sizes.empty() || n_per_group.empty()) throw Error(Errc::NoDataToPlot, "empty power grid");
  const Axis ax{0.0, 1.0};
  const double n_max = *std::max_element(n_per_group.begin(), n_per_group.end());
  const double n_min = *std::min_element(n_per_group.begin(), n_per_group.end());
  auto x = [&](double n) {
    const double range = n_max > n_min ? n_max - n_min : 1.0;
    return kLeft + (kWidth - kLeft - kRight - 90) * (n - n_min) / range;
  };
  char title[96];
  std::snprintf(title, sizeof title, "Two-sample t-test power (alpha = %.3g)", alpha);
  std::string s = svg_open(title);
  s += y_axis(ax, "power", 5);
  for (int n : n_per_group) {
    s += "<text x=\"" + fmt(x(n)) + "\" y=\"" + fmt(kHeight - kBottom + 16) + "\" text-anchor=\"middle\">" +
         std::to_string(n) + "</text>\n";
  }
  s += "<text x=\"" + fmt((kLeft + kWidth - kRight - 90) / 2) + "\" y=\"" + fmt(kHeight - 15) +
       "\" text-anchor=\"middle\">subjects per group</text>\n";
  for (std::size_t e = 0; e < effect_sizes.size(); ++e) {
    const char* color = kPalette[e % std::size(kPalette)];
    std::string pts;
    for (std::size_t j = 0; j < n_per_group.size(); ++j) {
      pts += (j ? " " : "") + fmt(x(n_per_group[j])) + "," +
             fmt(ax.y(grid(static_cast<Eigen::Index>(e), static_cast<Eigen::Index>(j))));
    }
    s += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    char label[48];
    std::snprintf(label, sizeof label, "es = %.3g", effect_sizes[e]);
    const double ly = kTop + 18.0 * static_cast<double>(e);
    s += "<text x=\"" + fmt(kWidth - kRight - 80) + "\" y=\"" + fmt(ly + 4) + "\" fill=\"" + color + "\">" + label +
         "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

std::string power_curve_csv(const std::vector<double>& effect_sizes, const std::vector<int>& n_per_group,
                            const Matrix& grid) {
  std::vector<std::string> header = {"n"};
  for (double e : effect_sizes) header.push_back("es=" + csv::format_double(e));
  std::string s = csv::join(header) + "\n";
  for (std::size_t j = 0; j < n_per_group.size(); ++j) {
    std::vector<std::string> row = {std::to_string(n_per_group[j])};
    for (std::size_t e = 0; e < effect_sizes.size(); ++e) {
      row.push_back(csv::format_double(grid(static_cast<Eigen::Index>(e), static_cast<Eigen::Index>(j))));
    }
    s += csv::join(row) + "\n";
  }
  return s;
}

std::vector<std::filesystem::path> emit_plots(const std::vector<std::filesystem::path>& reports,
                                              const std::filesystem::path& outdir, const PowerSpec& power) {
  std::vector<report::ReportTable> tables;
  for (const auto& p : reports) tables.push_back(report::read_report_csv(p));
  std::filesystem::create_directories(outdir);
  std::vector<std::filesystem::path> written;
  for (auto g : {report::Grouping::Task, report::Grouping::Medium, report::Grouping::FeatureFamily}) {
    stats::ScoreGroups groups;
    for (auto& sg : report::build_groups(tables, g)) {
      if (!sg.values.empty()) groups.push_back(std::move(sg));
    }
    if (groups.empty()) continue;
    const std::string name(report::to_string(g));
    const auto svg = outdir / ("boxplot_" + name + ".svg");
    write_text(svg, boxplot_svg(groups, "F1 scores by " + name, "micro-F1"));
    std::string csv_text = "group,value\n";
    for (const auto& sg : groups) {
      for (double v : sg.values) csv_text += csv::join({sg.name, csv::format_double(v)}) + "\n";
    }
    const auto csv_path = outdir / ("boxplot_" + name + ".csv");
    write_text(csv_path, csv_text);
    written.push_back(svg);
    written.push_back(csv_path);
  }
  if (written.empty()) throw Error(Errc::NoDataToPlot, "reports contain no scores to plot");
  const Matrix grid = stats::power_curve(power.effect_sizes, power.n_per_group, power.alpha);
  const auto svg = outdir / "power_curve.svg";
  const auto csv_path = outdir / "power_curve.csv";
  write_text(svg, power_curve_svg(power.effect_sizes, power.n_per_group, grid, power.alpha));
  write_text(csv_path, power_curve_csv(power.effect_sizes, power.n_per_group, grid));
  written.push_back(svg);
  written.push_back(csv_path);
  return written;
}

}  // namespace langassess::plots
