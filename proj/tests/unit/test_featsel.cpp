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
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "langassess/error.hpp"
#include "langassess/featsel.hpp"
#include "oracles.hpp"

using namespace langassess;
using namespace langassess::featsel;

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

std::vector<std::string> names_of(const RankedFeatures& r) {
  std::vector<std::string> out;
  for (const auto& [n, s] : r.ranked) out.push_back(n);
  return out;
}

// Column 0 copies the label, column 1 is noise, column 2 is constant.
FeatureMatrix separable(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  const auto y = fixtures::balanced_labels(n);
  Matrix x(static_cast<Eigen::Index>(n), 3);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    x(r, 0) = 10.0 * y[i];
    x(r, 1) = rng.normal();
    x(r, 2) = 4.0;
  }
  return fixtures::make_matrix(x, y, {"copy", "noise", "flat"});
}

RankedFeatures ranking(std::vector<std::string> names) {
  RankedFeatures r;
  double s = static_cast<double>(names.size());
  for (auto& n : names) r.ranked.emplace_back(n, s--);
  return r;
}

}  // namespace

TEST_CASE("anova f scores") {
  Matrix x(6, 1);
  x << 1, 2, 3, 2, 3, 4;
  const ml::Labels y = {0, 0, 0, 1, 1, 1};
  CHECK(anova_f_scores(x, y)[0] == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(anova_f_scores(x, y)[0] == doctest::Approx(oracle::anova_f({{1, 2, 3}, {2, 3, 4}})).epsilon(1e-12));

  const auto m = separable(20, 1);
  const auto r = anova_f_rank(m);
  CHECK(names_of(r) == std::vector<std::string>{"copy", "noise", "flat"});
  CHECK(r.ranked[0].second == kAnovaCap);
  CHECK(r.ranked[2].second == 0.0);

  // Equal scores keep the canonical column order.
  Matrix twin(6, 2);
  twin.col(0) = x.col(0);
  twin.col(1) = x.col(0);
  const auto t = anova_f_rank(fixtures::make_matrix(twin, y, {"b", "a"}));
  CHECK(names_of(t) == std::vector<std::string>{"b", "a"});
}

TEST_CASE("anova scores are invariant to affine rescaling") {
  Rng rng(2);
  Matrix x(30, 4);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = rng.normal();
  const auto y = fixtures::balanced_labels(30);
  const auto a = anova_f_scores(x, y);
  const auto b = anova_f_scores((x.array() * -3.0 + 7.0).matrix(), y);
  for (std::size_t c = 0; c < 4; ++c) CHECK(b[c] == doctest::Approx(a[c]).epsilon(1e-9));
}

TEST_CASE("random forest importance") {
  const auto m = separable(40, 3);
  const auto r = rf_importance_rank(m);
  CHECK(r.ranked[0].first == "copy");
  double sum = 0.0, copy = 0.0, noise = 0.0;
  for (const auto& [n, s] : r.ranked) {
    sum += s;
    if (n == "copy") copy = s;
    if (n == "noise") noise = s;
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(noise < copy);
  // Deterministic for the fixed seed.
  CHECK(rf_importance_rank(m).ranked == r.ranked);
}

TEST_CASE("discretization and mutual information") {
  Vector v(5);
  v << 0, 1, 2, 3, 10;
  const auto d = discretize3(v);
  const std::vector<double> raw(v.data(), v.data() + v.size());
  CHECK(d == oracle::discretize_mean_sd(raw));
  const std::vector<int> a = {0, 0, 1, 1, 2, 2}, b = {0, 0, 1, 1, 2, 2};
  CHECK(mutual_information(a, b) == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  CHECK(mutual_information(a, {0, 0, 0, 0, 0, 0}) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("mrmr first pick and duplicate rejection") {
  Rng rng(5);
  const std::size_t n = 60;
  const auto y = fixtures::balanced_labels(n);
  Matrix x(static_cast<Eigen::Index>(n), 3);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    x(r, 0) = y[i] + 0.3 * rng.normal();
    x(r, 1) = x(r, 0);
    x(r, 2) = y[i] + 1.0 * rng.normal();
  }
  const auto m = fixtures::make_matrix(x, y, {"a", "dup", "weak"});
  const auto r = mrmr_rank(m);
  std::vector<double> rel;
  for (int c = 0; c < 3; ++c) rel.push_back(mutual_information(discretize3(x.col(c)), y));
  CHECK(r.ranked[0].first == "a");
  CHECK(r.ranked[0].second == doctest::Approx(*std::max_element(rel.begin(), rel.end())).epsilon(1e-12));
  REQUIRE(rel[2] > 0.0);
  CHECK(r.ranked[1].first == "weak");
}

TEST_CASE("mrmr matches exhaustive greedy recomputation") {
  for (std::uint64_t seed = 10; seed < 30; ++seed) {
    Rng rng(seed);
    const std::size_t n = 24 + seed % 7;
    const auto y = fixtures::balanced_labels(n);
    Matrix x(static_cast<Eigen::Index>(n), 4);
    for (std::size_t i = 0; i < n; ++i) {
      for (int c = 0; c < 4; ++c) x(static_cast<Eigen::Index>(i), c) = (c + 1) * 0.3 * y[i] + rng.normal();
    }
    const auto r = mrmr_rank(fixtures::make_matrix(x, y));
    const auto order = oracle::brute_mrmr(x, y);
    std::vector<std::string> expected;
    for (int c : order) expected.push_back("f" + std::to_string(c));
    CHECK(names_of(r) == expected);
  }
}

TEST_CASE("common top k") {
  const auto a = ranking({"x", "y", "z", "w"});
  const auto same = common_top_k({a, a, a}, 3);
  CHECK(same.names == std::vector<std::string>{"x", "y", "z"});
  CHECK(!same.union_fallback);

  const auto b = ranking({"p", "q", "x", "y"});
  const auto disjoint = common_top_k({a, b}, 2);
  CHECK(disjoint.union_fallback);
  CHECK(disjoint.names == std::vector<std::string>{"x", "y", "p", "q"});

  const auto c = ranking({"y", "x", "q", "z"});
  CHECK(common_top_k({a, c}, 3).names == std::vector<std::string>{"x", "y"});
}

TEST_CASE("grouped feature report") {
  const auto lines = grouped_feature_report(
      {"mfcc13_mean", "mfcc12_kurt", "mfcc13_kurt", "lsp5_delta_mean", "lsp3_delta_mean", "loudness_skew",
       "loudness_kurt", "brunet_index"});
  const std::set<std::string> got(lines.begin(), lines.end());
  CHECK(got.count("MFCC 13 (mean)") == 1);
  CHECK(got.count("MFCC 12,13 (kurt)") == 1);
  CHECK(got.count("Delta LSP freq 3,5 (mean)") == 1);
  CHECK(got.count("Loudness (kurt, skew)") == 1);
  CHECK(lines.back() == "brunet_index");
}

TEST_CASE("pca combine names and structure") {
  const auto m = fixtures::planted_acoustic(40, 8);
  PcaProjection fitted;
  const auto out = pca_combine(m, &fitted);
  REQUIRE(out.cols() == 18);
  CHECK(out.names.front() == "pca_mfcc_mean_pc1");
  CHECK(out.names.back() == "pca_lsp_delta_skew_pc2");
  const std::set<std::string> unique(out.names.begin(), out.names.end());
  CHECK(unique.size() == 18);
  for (const auto& g : fitted.groups) {
    const Eigen::MatrixXd gram = g.loadings.transpose() * g.loadings;
    CHECK((gram - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-9);
    for (std::size_t i = 1; i < g.explained.size(); ++i) CHECK(g.explained[i] <= g.explained[i - 1] + 1e-15);
    CHECK(g.explained[0] + g.explained[1] >= 0.75);
  }
  // PC scores are uncorrelated and centred.
  for (Eigen::Index c = 0; c < 18; c += 2) {
    const Vector a = out.x.col(c), b = out.x.col(c + 1);
    CHECK(std::abs(a.mean()) < 1e-9);
    CHECK(std::abs(a.dot(b)) < 1e-8 * std::max(1.0, a.norm() * b.norm()));
  }
}

TEST_CASE("pca on rank-one data") {
  auto m = fixtures::planted_acoustic(20, 9);
  Rng rng(1);
  std::vector<double> t(20);
  for (auto& v : t) v = rng.normal();
  for (const auto& [prefix, cols] : pca_input_groups()) {
    double w = 1.0;
    for (const auto& c : cols) {
      const auto idx = static_cast<Eigen::Index>(*m.column(c));
      for (Eigen::Index r = 0; r < 20; ++r) m.x(r, idx) = w * t[static_cast<std::size_t>(r)];
      w += 0.5;
    }
  }
  PcaProjection fitted;
  const auto out = pca_combine(m, &fitted);
  for (const auto& g : fitted.groups) {
    CHECK(g.explained[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(g.degenerate);
  }
  for (Eigen::Index c = 1; c < 18; c += 2) CHECK(out.x.col(c).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("pca requires its input columns") {
  auto m = fixtures::make_matrix(Matrix::Ones(4, 2), {0, 1, 0, 1});
  CHECK(code_of([&] { pca_combine(m); }) == Errc::MissingColumns);
}
