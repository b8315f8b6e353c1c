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

#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>

#include "doctest.h"
#include "langassess/error.hpp"
#include "langassess/rng.hpp"
#include "langassess/stats.hpp"
#include "oracles.hpp"

using namespace langassess;
using namespace langassess::stats;

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

double boost_f_survival(double f, double d1, double d2) {
  return boost::math::ibeta(d2 / 2.0, d1 / 2.0, d2 / (d2 + d1 * f));
}

ScoreGroups random_groups(Rng& rng, int n_a, int n_b, double shift) {
  ScoreGroups g{{"a", {}}, {"b", {}}};
  for (int i = 0; i < n_a; ++i) g[0].values.push_back(rng.normal());
  for (int i = 0; i < n_b; ++i) g[1].values.push_back(rng.normal(shift, 1.0));
  return g;
}

}  // namespace

TEST_CASE("incomplete beta against boost") {
  Rng rng(1);
  for (int i = 0; i < 200; ++i) {
    const double a = rng.uniform(0.1, 60.0), b = rng.uniform(0.1, 60.0), x = rng.uniform();
    CHECK(std::abs(incomplete_beta(a, b, x) - boost::math::ibeta(a, b, x)) < 1e-10);
  }
  CHECK(incomplete_beta(2.0, 3.0, 0.0) == 0.0);
  CHECK(incomplete_beta(2.0, 3.0, 1.0) == 1.0);
}

TEST_CASE("f survival on 100 random points") {
  Rng rng(2);
  for (int i = 0; i < 100; ++i) {
    const double f = rng.uniform(0.01, 40.0);
    const double d1 = 1.0 + static_cast<double>(rng.index(10));
    const double d2 = 2.0 + static_cast<double>(rng.index(300));
    CHECK(std::abs(f_survival(f, d1, d2) - boost_f_survival(f, d1, d2)) < 1e-8);
  }
}

TEST_CASE("normal helpers") {
  const boost::math::normal n;
  for (double x : {-3.0, -1.2, 0.0, 0.4, 2.5}) CHECK(normal_cdf(x) == doctest::Approx(boost::math::cdf(n, x)).epsilon(1e-12));
  for (double p : {0.001, 0.025, 0.3, 0.5, 0.975}) {
    CHECK(normal_quantile(p) == doctest::Approx(boost::math::quantile(n, p)).epsilon(1e-9));
  }
}

TEST_CASE("one way anova hand example") {
  const auto r = one_way_anova({{"a", {1, 2, 3}}, {"b", {2, 3, 4}}});
  CHECK(r.f == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(r.df1 == 1);
  CHECK(r.df2 == 4);
  CHECK(r.p == doctest::Approx(boost_f_survival(1.5, 1, 4)).epsilon(1e-12));
  CHECK(std::abs(r.p - 0.288) < 5e-4);
}

TEST_CASE("anova degenerate and invalid inputs") {
  const auto same = one_way_anova({{"a", {2, 2, 2}}, {"b", {2, 2}}});
  CHECK(same.f == 0.0);
  CHECK(same.p == 1.0);
  CHECK(same.degenerate);
  const auto twins = one_way_anova({{"a", {1, 2, 3}}, {"b", {1, 2, 3}}});
  CHECK(twins.f == 0.0);
  CHECK(twins.p == 1.0);
  CHECK(code_of([] { one_way_anova({{"a", {1, 1}}, {"b", {2, 2}}}); }) == Errc::DegenerateGroups);
  CHECK(code_of([] { one_way_anova({{"a", {1}}, {"b", {2, 3}}}); }) == Errc::TooFewSamples);
  CHECK(code_of([] { one_way_anova({{"a", {1, 2}}}); }) == Errc::TooFewSamples);
}

TEST_CASE("anova properties") {
  Rng rng(3);
  for (int t = 0; t < 30; ++t) {
    auto g = random_groups(rng, 5 + t % 7, 4 + t % 5, 0.5);
    const auto base = one_way_anova(g);
    CHECK(base.f == doctest::Approx(oracle::anova_f({g[0].values, g[1].values})).epsilon(1e-12));
    CHECK((base.p > 0.0 && base.p <= 1.0));
    auto shifted = g;
    for (auto& grp : shifted) {
      for (auto& v : grp.values) v = -2.5 * v + 11.0;
    }
    CHECK(one_way_anova(shifted).f == doctest::Approx(base.f).epsilon(1e-9));

    // Two groups: F = t^2 and the p-values agree.
    const auto tk = tukey_two_group(g);
    CHECK(tk.t * tk.t == doctest::Approx(base.f).epsilon(1e-9));
    CHECK(std::abs(tk.p - base.p) < 1e-9);
    CHECK(tk.df == base.df2);
  }
}

TEST_CASE("tukey two groups") {
  const auto same = tukey_two_group({{"a", {1, 2, 3}}, {"b", {1, 2, 3}}});
  CHECK(same.p == doctest::Approx(1.0).epsilon(1e-12));
  const auto r = tukey_two_group({{"a", {5, 6, 7}}, {"b", {1, 2, 3}}});
  CHECK(r.mean_difference == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(r.t > 0.0);
  CHECK(code_of([] { tukey_two_group({{"a", {1, 2}}, {"b", {1, 2}}, {"c", {1, 2}}}); }) == Errc::MoreThanTwoGroups);
  // t two-sided p against the F route.
  CHECK(t_two_sided_p(2.3, 17) == doctest::Approx(boost_f_survival(2.3 * 2.3, 1, 17)).epsilon(1e-10));
}

TEST_CASE("power curve") {
  const std::vector<double> es = {0.0, 0.2, 0.5, 0.8};
  const std::vector<int> ns = {4, 8, 16, 32, 64, 128};
  const Matrix p = power_curve(es, ns, 0.05);
  for (Eigen::Index c = 0; c < p.cols(); ++c) CHECK(p(0, c) == 0.05);
  for (Eigen::Index r = 1; r < p.rows(); ++r) {
    for (Eigen::Index c = 1; c < p.cols(); ++c) CHECK(p(r, c) > p(r, c - 1));
  }
  for (Eigen::Index c = 0; c < p.cols(); ++c) {
    for (Eigen::Index r = 1; r < p.rows(); ++r) CHECK(p(r, c) > p(r - 1, c));
  }
  CHECK(std::abs(p(2, 4) - 0.80) <= 0.02);
  // Closed form with boost's normal.
  const boost::math::normal n;
  const double z = boost::math::quantile(n, 0.975);
  const double d = 0.5 * std::sqrt(64 / 2.0);
  CHECK(p(2, 4) == doctest::Approx(boost::math::cdf(n, d - z) + boost::math::cdf(n, -d - z)).epsilon(1e-9));
}
