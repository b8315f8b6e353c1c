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

#ifndef LANGASSESS_FUNCTIONALS_HPP_
#define LANGASSESS_FUNCTIONALS_HPP_

#include <span>
#include <vector>

namespace langassess::dsp {

// Regression deltas with replication padding at the edges.
std::vector<double> delta(std::span<const double> series, int window = 2);

struct Functionals {
  double mean = 0.0;
  double std = 0.0;
  double skew = 0.0;  // m3 / m2^1.5
  double kurt = 0.0;  // m4 / m2^2 - 3
};

// Population moments. Skew and kurt are 0 when m2 < 1e-12. An empty series
// yields all zeros.
Functionals functionals(std::span<const double> series);

}  // namespace langassess::dsp

#endif  // LANGASSESS_FUNCTIONALS_HPP_
