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

#include "langassess/functionals.hpp"

#include <algorithm>
#include <cmath>

namespace langassess::dsp {

std::vector<double> delta(std::span<const double> series, int window) {
  const auto n = static_cast<long>(series.size());
  std::vector<double> out(series.size(), 0.0);
  if (n == 0 || window < 1) return out;
  double denom = 0.0;
  for (int k = 1; k <= window; ++k) denom += static_cast<double>(k) * k;
  denom *= 2.0;
  auto at = [&](long t) { return series[static_cast<std::size_t>(std::clamp(t, 0L, n - 1))]; };
  for (long t = 0; t < n; ++t) {
    double acc = 0.0;
    for (int k = 1; k <= window; ++k) acc += k * (at(t + k) - at(t - k));
    out[static_cast<std::size_t>(t)] = acc / denom;
  }
  return out;
}

Functionals functionals(std::span<const double> series) {
  Functionals out;
  if (series.empty()) return out;
  const double n = static_cast<double>(series.size());
  double mean = 0.0;
  for (double x : series) mean += x;
  mean /= n;
  double m2 = 0.0;
  double m3 = 0.0;
  double m4 = 0.0;
  for (double x : series) {
    const double d = x - mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  out.mean = mean;
  out.std = std::sqrt(m2);
  if (m2 >= 1e-12) {
    out.skew = m3 / std::pow(m2, 1.5);
    out.kurt = m4 / (m2 * m2) - 3.0;
  }
  return out;
}

}  // namespace langassess::dsp
