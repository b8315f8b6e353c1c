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

// Constructed data sets shared by unit and acceptance tests.

#ifndef LANGASSESS_TESTS_FIXTURES_HPP_
#define LANGASSESS_TESTS_FIXTURES_HPP_

#include <map>
#include <string>
#include <vector>

#include "langassess/acoustic.hpp"
#include "langassess/error.hpp"
#include "langassess/feature_matrix.hpp"
#include "langassess/rng.hpp"

namespace fixtures {

inline langassess::FeatureMatrix make_matrix(const langassess::Matrix& x, const std::vector<int>& y,
                                             std::vector<std::string> names = {}) {
  langassess::FeatureMatrix m;
  m.x = x;
  m.y = y;
  if (names.empty()) {
    for (Eigen::Index c = 0; c < x.cols(); ++c) names.push_back("f" + std::to_string(c));
  }
  m.names = std::move(names);
  for (Eigen::Index r = 0; r < x.rows(); ++r) m.sample_ids.push_back("s" + std::to_string(r));
  return m;
}

inline std::vector<int> balanced_labels(std::size_t n) {
  std::vector<int> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = static_cast<int>(i % 2);
  return y;
}

// A full 296-column acoustic matrix in which every column of a PCA group is
// a random mix of two latent factors plus small independent noise.
inline langassess::FeatureMatrix planted_acoustic(std::size_t n, std::uint64_t seed, double noise = 0.1) {
  langassess::Rng rng(seed);
  const auto& names = langassess::acoustic_feature_names();
  langassess::Matrix x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(names.size()));
  // One pair of latent factors per (functional, family) group key; other
  // columns are plain noise.
  std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> latent;
  auto group_key = [](const std::string& name) {
    const auto fn = name.substr(name.rfind('_') + 1);
    const bool delta = name.find("_delta_") != std::string::npos;
    const auto family = name.rfind("mfcc", 0) == 0 ? "mfcc" : (name.rfind("lsp", 0) == 0 ? "lsp" : "other");
    return std::string(family) + (delta ? "_delta_" : "_") + fn;
  };
  for (std::size_t c = 0; c < names.size(); ++c) {
    const auto key = group_key(names[c]);
    auto it = latent.find(key);
    if (it == latent.end()) {
      std::vector<double> a(n), b(n);
      for (std::size_t i = 0; i < n; ++i) {
        a[i] = rng.normal();
        b[i] = rng.normal();
      }
      it = latent.emplace(key, std::make_pair(a, b)).first;
    }
    const double wa = rng.uniform(-1.0, 1.0), wb = rng.uniform(-1.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
      x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
          wa * it->second.first[i] + wb * it->second.second[i] + noise * rng.normal();
    }
  }
  return make_matrix(x, balanced_labels(n), names);
}

}  // namespace fixtures

#endif  // LANGASSESS_TESTS_FIXTURES_HPP_
