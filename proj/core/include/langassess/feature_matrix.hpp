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

#ifndef LANGASSESS_FEATURE_MATRIX_HPP_
#define LANGASSESS_FEATURE_MATRIX_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "langassess/tree.hpp"
#include "langassess/types.hpp"

namespace langassess {

struct FeatureMatrix {
  std::vector<std::string> sample_ids;
  std::vector<std::string> names;  // column names, unique
  Matrix x;                        // rows = samples
  ml::Labels y;                    // 0 control, 1 dementia

  std::size_t rows() const { return static_cast<std::size_t>(x.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(x.cols()); }

  std::optional<std::size_t> column(const std::string& name) const;

  // Throws DimensionMismatch, DuplicateEntry, NonFiniteFeature, or
  // SingleClassData when require_both_classes is set.
  void validate(bool require_both_classes = true) const;

  // Columns in the requested order; throws MissingColumns listing every
  // absent name.
  FeatureMatrix select(const std::vector<std::string>& columns) const;
  FeatureMatrix rows_subset(const std::vector<std::size_t>& rows) const;
};

// Header "sample_id,label,<names...>"; labels are written as control or
// dementia.
void write_feature_csv(const FeatureMatrix& m, const std::filesystem::path& path);
FeatureMatrix read_feature_csv(const std::filesystem::path& path);

}  // namespace langassess

#endif  // LANGASSESS_FEATURE_MATRIX_HPP_
