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

#ifndef LANGASSESS_ML_HPP_
#define LANGASSESS_ML_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "langassess/models.hpp"
#include "langassess/tree.hpp"
#include "langassess/types.hpp"

namespace langassess::ml {

enum class ModelKind { DT, ET, RF, kNN, LDA, LR, SVM_linear, SVM_rbf };

std::string_view to_string(ModelKind kind);
// Column label used in result tables: DT ET kNN LDA R_SVM L_SVM LR RF.
std::string_view report_name(ModelKind kind);
// Accepts either spelling, case-insensitive.
ModelKind parse_model_kind(std::string_view s);
// Table order: DT, ET, kNN, LDA, SVM_rbf, SVM_linear, LR, RF.
const std::vector<ModelKind>& all_model_kinds();

struct ModelSpec {
  ModelKind kind = ModelKind::DT;
  int n_estimators = 100;
  int max_depth = -1;
  int min_samples_split = 2;
  int max_features = -1;  // forests only; -1 = sqrt(p)
  int k_neighbors = 5;
  double c = 1.0;         // LR and SVM
  double gamma = 0.0;     // RBF; <= 0 = 1 / (p * Var(X))
  double svm_tol = 1e-6;
  long svm_max_iter = 100000;
  double lda_ridge = 1e-6;
  std::uint64_t seed = 42;

  // Throws InvalidConfig.
  void validate() const;
};

class TrainedModel {
 public:
  using Impl = std::variant<DecisionTree, Forest, KnnModel, LdaModel, LogisticModel, SvmModel>;

  TrainedModel(ModelKind kind, std::optional<Standardizer> scaler, Impl impl)
      : kind_(kind), scaler_(std::move(scaler)), impl_(std::move(impl)) {}

  ModelKind kind() const { return kind_; }
  Labels predict(const Matrix& x) const;

  const std::optional<Standardizer>& scaler() const { return scaler_; }
  const Impl& impl() const { return impl_; }

 private:
  ModelKind kind_;
  std::optional<Standardizer> scaler_;
  Impl impl_;
};

// Throws SingleClassData (LDA, LR, SVM), NonFiniteFeature, DimensionMismatch.
TrainedModel train(const ModelSpec& spec, const Matrix& x, const Labels& y);
Labels predict(const TrainedModel& model, const Matrix& x);

// Pooled over both classes; equals accuracy for single-label data.
double micro_f1(const Labels& y_true, const Labels& y_pred);

struct CVResult {
  std::vector<double> fold_scores;
  double mean = 0.0;
  double std = 0.0;  // population std across folds
  int k = 0;
  bool k_lowered = false;

  // "M (+/- S)" with two decimals.
  std::string formatted() const;
};

// Fold index per row: per class, shuffle with the seed, then deal round-robin
// continuing the count across classes (class 0 first).
std::vector<int> stratified_folds(const Labels& y, int k, std::uint64_t seed);

// Throws TooFewSamples when a class has fewer than 2 rows; lowers k to the
// smallest class count otherwise.
CVResult cross_validate(const ModelSpec& spec, const Matrix& x, const Labels& y, int k = 3,
                        std::uint64_t seed = 0);

// Chooses the columns a fold trains on, seeing only that fold's training rows.
using FoldSelector =
    std::function<std::vector<std::size_t>(int fold, const Matrix& x_train, const Labels& y_train)>;

// As above, with per-fold column selection.
CVResult cross_validate(const ModelSpec& spec, const Matrix& x, const Labels& y, int k, std::uint64_t seed,
                        const FoldSelector& select);

std::string format_mean_std(double mean, double std);

}  // namespace langassess::ml

#endif  // LANGASSESS_ML_HPP_
