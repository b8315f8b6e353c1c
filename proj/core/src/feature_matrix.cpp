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

#include "langassess/feature_matrix.hpp"

#include <charconv>
#include <fstream>
#include <unordered_set>

#include "langassess/corpus.hpp"
#include "langassess/csv.hpp"
#include "langassess/error.hpp"

namespace langassess {

std::optional<std::size_t> FeatureMatrix::column(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return i;
  }
  return std::nullopt;
}

void FeatureMatrix::validate(bool require_both_classes) const {
  if (names.size() != cols()) throw Error(Errc::DimensionMismatch, "column names do not match matrix width");
  if (y.size() != rows()) throw Error(Errc::DimensionMismatch, "labels do not match matrix height");
  if (!sample_ids.empty() && sample_ids.size() != rows()) {
    throw Error(Errc::DimensionMismatch, "sample ids do not match matrix height");
  }
  std::unordered_set<std::string> seen;
  for (const auto& n : names) {
    if (!seen.insert(n).second) throw Error(Errc::DuplicateEntry, "duplicate feature column " + n);
  }
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    for (Eigen::Index c = 0; c < x.cols(); ++c) {
      if (!std::isfinite(x(r, c))) {
        const std::string id = sample_ids.empty() ? std::to_string(r) : sample_ids[static_cast<std::size_t>(r)];
        throw Error(Errc::NonFiniteFeature,
                    "non-finite value in column " + names[static_cast<std::size_t>(c)] + " of sample " + id);
      }
    }
  }
  if (require_both_classes) {
    bool has[2] = {false, false};
    for (int l : y) has[l == 1] = true;
    if (!has[0] || !has[1]) throw Error(Errc::SingleClassData, "feature matrix holds a single class");
  }
}

FeatureMatrix FeatureMatrix::select(const std::vector<std::string>& columns) const {
  std::vector<std::size_t> idx;
  std::string missing;
  for (const auto& c : columns) {
    if (auto i = column(c)) {
      idx.push_back(*i);
    } else {
      missing += (missing.empty() ? "" : ", ") + c;
    }
  }
  if (!missing.empty()) throw Error(Errc::MissingColumns, "missing feature columns: " + missing);
  FeatureMatrix out;
  out.sample_ids = sample_ids;
  out.y = y;
  out.names = columns;
  out.x.resize(x.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) {
    out.x.col(static_cast<Eigen::Index>(j)) = x.col(static_cast<Eigen::Index>(idx[j]));
  }
  return out;
}

FeatureMatrix FeatureMatrix::rows_subset(const std::vector<std::size_t>& rws) const {
  FeatureMatrix out;
  out.names = names;
  out.x.resize(static_cast<Eigen::Index>(rws.size()), x.cols());
  for (std::size_t i = 0; i < rws.size(); ++i) {
    out.x.row(static_cast<Eigen::Index>(i)) = x.row(static_cast<Eigen::Index>(rws[i]));
    out.y.push_back(y[rws[i]]);
    if (!sample_ids.empty()) out.sample_ids.push_back(sample_ids[rws[i]]);
  }
  return out;
}

void write_feature_csv(const FeatureMatrix& m, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::MissingFile, "cannot write " + path.string());
  std::vector<std::string> header = {"sample_id", "label"};
  header.insert(header.end(), m.names.begin(), m.names.end());
  out << csv::join(header) << "\n";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::vector<std::string> cells;
    cells.reserve(m.cols() + 2);
    cells.push_back(m.sample_ids.empty() ? std::to_string(r) : m.sample_ids[r]);
    cells.emplace_back(to_string(static_cast<Label>(m.y[r])));
    for (std::size_t c = 0; c < m.cols(); ++c) {
      cells.push_back(csv::format_double(m.x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c))));
    }
    out << csv::join(cells) << "\n";
  }
}

FeatureMatrix read_feature_csv(const std::filesystem::path& path) {
  const auto lines = csv::read_lines(path);
  if (lines.empty()) throw Error(Errc::ParseError, path.string() + ": empty feature file");
  const auto header = csv::split_line(lines[0]);
  if (header.size() < 2 || header[0] != "sample_id" || header[1] != "label") {
    throw Error(Errc::MissingColumns, path.string() + ": header must start with sample_id,label");
  }
  FeatureMatrix m;
  m.names.assign(header.begin() + 2, header.end());
  m.x.resize(static_cast<Eigen::Index>(lines.size() - 1), static_cast<Eigen::Index>(m.names.size()));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto cells = csv::split_line(lines[i]);
    if (cells.size() != header.size()) {
      throw Error(Errc::ParseError, path.string() + " row " + std::to_string(i + 1) + ": expected " +
                                        std::to_string(header.size()) + " cells, got " +
                                        std::to_string(cells.size()));
    }
    m.sample_ids.push_back(cells[0]);
    if (cells[1] == "0" || cells[1] == "1") {
      m.y.push_back(cells[1] == "1" ? 1 : 0);
    } else {
      m.y.push_back(static_cast<int>(parse_label(cells[1])));
    }
    for (std::size_t c = 2; c < cells.size(); ++c) {
      double v = 0.0;
      const auto& s = cells[c];
      const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
      if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw Error(Errc::ParseError, path.string() + " row " + std::to_string(i + 1) + " column " +
                                          std::to_string(c + 1) + ": bad number '" + s + "'");
      }
      m.x(static_cast<Eigen::Index>(i - 1), static_cast<Eigen::Index>(c - 2)) = v;
    }
  }
  m.validate(false);
  return m;
}

}  // namespace langassess
