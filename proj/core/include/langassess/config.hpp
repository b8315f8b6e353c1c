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

#ifndef LANGASSESS_CONFIG_HPP_
#define LANGASSESS_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "langassess/corpus.hpp"
#include "langassess/ml.hpp"

namespace langassess {

// Experimental conditions: the two tasks and the two recording media.
enum class Condition { PD, SR, Web, Phone };

std::string_view to_string(Condition c);  // pd, sr, web, phone
Condition parse_condition(std::string_view s);
bool includes(Condition c, const SampleEntry& e);

inline const std::vector<std::string> kLinguisticSets = {"lexical", "syntactic", "semantic", "all"};
inline const std::vector<std::string> kAcousticSets = {"anova", "rf", "mrmr", "common", "pca"};

struct PipelineConfig {
  std::filesystem::path manifest;
  std::filesystem::path output_dir = "langassess_out";
  std::vector<Condition> conditions = {Condition::PD, Condition::SR, Condition::Web, Condition::Phone};
  std::vector<std::string> linguistic_sets = {"lexical", "syntactic", "semantic", "all"};
  std::vector<std::string> acoustic_sets = {"anova", "rf", "mrmr", "common"};
  std::vector<ml::ModelKind> classifiers = ml::all_model_kinds();
  int folds = 3;
  int top_k_pd = 8;
  int top_k_sr = 15;
  int top_k_web = 15;
  int top_k_phone = 15;
  int threads = 0;  // 0 = hardware concurrency

  // Classifier hyperparameters shared by every condition.
  int n_estimators = 100;
  int max_depth = -1;
  int k_neighbors = 5;
  double svm_c = 1.0;
  double lr_c = 1.0;

  // Feature ranking.
  int rank_trees = 100;

  // Semantic features.
  double sif_a = 1e-3;
  int lda_k_min = 2;
  int lda_k_max = 8;
  int lda_iterations = 300;
  double topic_threshold = 0.1;

  // Seeds.
  std::uint64_t cv_seed = 0;
  std::uint64_t rank_seed = 42;
  std::uint64_t model_seed = 42;
  std::uint64_t lda_seed = 42;

  // "full": acoustic rankings on the whole condition matrix, as in the
  // described workflow. "fold": re-rank on each training fold.
  std::string selection_scope = "full";

  // Permutation-null runs: labels are permuted after ranking, right before
  // cross-validation.
  bool shuffle_labels = false;
  std::uint64_t shuffle_seed = 1;

  int top_k(Condition c) const;
  ml::ModelSpec model_spec(ml::ModelKind kind) const;

  // Throws InvalidConfig. When check_paths is set the manifest must exist.
  void validate(bool check_paths = true) const;
};

// TOML-style text: [section] headers, key = value lines, '#' comments.
// Values are quoted strings, numbers, true/false or arrays of strings.
// Relative paths are resolved against base_dir.
PipelineConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {});
PipelineConfig load_config(const std::filesystem::path& path);

// Every key with its current value, in the format parse_config reads.
std::string format_config(const PipelineConfig& cfg);

}  // namespace langassess

#endif  // LANGASSESS_CONFIG_HPP_
