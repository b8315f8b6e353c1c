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

#include "langassess/stats.hpp"

#include <cmath>
#include <limits>

#include "langassess/error.hpp"

namespace langassess::stats {
namespace {

// Modified Lentz evaluation of the incomplete beta continued fraction.
double beta_cf(double a, double b, double x) {
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 1e-16;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 100000; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw Error(Errc::NumericalFailure, "incomplete beta continued fraction did not converge");
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw Error(Errc::NumericalFailure, "incomplete beta needs a, b > 0");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
                          b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
  return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double f_survival(double f, double d1, double d2) {
  if (!(f > 0.0)) return 1.0;
  if (std::isinf(f)) return 0.0;
  return incomplete_beta(0.5 * d2, 0.5 * d1, d2 / (d2 + d1 * f));
}

double t_two_sided_p(double t, double df) {
  if (t == 0.0) return 1.0;
  return incomplete_beta(0.5 * df, 0.5, df / (df + t * t));
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    if (p == 0.0) return -std::numeric_limits<double>::infinity();
    if (p == 1.0) return std::numeric_limits<double>::infinity();
    throw Error(Errc::NumericalFailure, "normal quantile needs p in (0, 1)");
  }
  // Acklam's rational approximation followed by Halley refinement.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                             1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                             6.680131188771972e+01,  -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                             -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                             3.754408661907416e+00};
  constexpr double kLow = 0.02425;
  double x;
  if (p < kLow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - kLow) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  for (int i = 0; i < 2; ++i) {
    const double e = normal_cdf(x) - p;
    const double u = e * std::sqrt(2.0 * std::acos(-1.0)) * std::exp(0.5 * x * x);
    x -= u / (1.0 + 0.5 * x * u);
  }
  return x;
}

AnovaResult one_way_anova(const ScoreGroups& groups) {
  if (groups.size() < 2) throw Error(Errc::TooFewSamples, "ANOVA needs at least two groups");
  std::size_t n = 0;
  double total = 0.0;
  for (const auto& g : groups) {
    if (g.values.size() < 2) {
      throw Error(Errc::TooFewSamples, "group '" + g.name + "' has fewer than two observations");
    }
    for (double v : g.values) {
      if (!std::isfinite(v)) throw Error(Errc::NonFiniteFeature, "non-finite score in group '" + g.name + "'");
      total += v;
    }
    n += g.values.size();
  }
  const double grand = total / static_cast<double>(n);
  double ssb = 0.0, ssw = 0.0, sst = 0.0;
  for (const auto& g : groups) {
    const double m = mean(g.values);
    ssb += static_cast<double>(g.values.size()) * (m - grand) * (m - grand);
    for (double v : g.values) {
      ssw += (v - m) * (v - m);
      sst += (v - grand) * (v - grand);
    }
  }
  AnovaResult r;
  r.df1 = static_cast<int>(groups.size()) - 1;
  r.df2 = static_cast<int>(n - groups.size());
  const double tiny = 1e-14 * std::max(1.0, grand * grand * static_cast<double>(n));
  if (sst <= tiny) {
    r.degenerate = true;
    return r;
  }
  if (ssw <= 1e-14 * sst) {
    throw Error(Errc::DegenerateGroups, "zero within-group variance with distinct group means");
  }
  r.f = (ssb / r.df1) / (ssw / r.df2);
  r.p = f_survival(r.f, r.df1, r.df2);
  return r;
}

TukeyResult tukey_two_group(const ScoreGroups& groups) {
  if (groups.size() != 2) {
    throw Error(Errc::MoreThanTwoGroups, "post-hoc comparison supports exactly two groups, got " +
                                             std::to_string(groups.size()));
  }
  const auto& a = groups[0].values;
  const auto& b = groups[1].values;
  if (a.size() < 2 || b.size() < 2) throw Error(Errc::TooFewSamples, "each group needs two observations");
  const double ma = mean(a);
  const double mb = mean(b);
  double ss = 0.0;
  for (double v : a) ss += (v - ma) * (v - ma);
  for (double v : b) ss += (v - mb) * (v - mb);
  TukeyResult r;
  r.df = static_cast<int>(a.size() + b.size()) - 2;
  r.mean_difference = ma - mb;
  const double sp2 = ss / r.df;
  const double se = std::sqrt(sp2 * (1.0 / static_cast<double>(a.size()) + 1.0 / static_cast<double>(b.size())));
  if (se == 0.0) {
    if (r.mean_difference == 0.0) return r;
    throw Error(Errc::DegenerateGroups, "zero within-group variance with distinct group means");
  }
  r.t = r.mean_difference / se;
  r.p = t_two_sided_p(r.t, r.df);
  return r;
}

Matrix power_curve(const std::vector<double>& effect_sizes, const std::vector<int>& n_per_group,
                   double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(Errc::InvalidConfig, "alpha must lie in (0, 1)");
  const double z = normal_quantile(1.0 - alpha / 2.0);
  Matrix out(static_cast<Eigen::Index>(effect_sizes.size()), static_cast<Eigen::Index>(n_per_group.size()));
  for (std::size_t i = 0; i < effect_sizes.size(); ++i) {
    for (std::size_t j = 0; j < n_per_group.size(); ++j) {
      if (n_per_group[j] < 1) throw Error(Errc::InvalidConfig, "group sizes must be positive");
      const double es = effect_sizes[i];
      double pw = alpha;
      if (es != 0.0) {
        const double shift = es * std::sqrt(n_per_group[j] / 2.0);
        pw = normal_cdf(shift - z) + normal_cdf(-shift - z);
      }
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = pw;
    }
  }
  return out;
}

}  // namespace langassess::stats
