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

#include "langassess/ml.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>

#include "langassess/error.hpp"
#include "langassess/rng.hpp"

namespace langassess::ml {
namespace {

struct KindName {
  ModelKind kind;
  std::string_view name;
  std::string_view report;
};

constexpr std::array<KindName, 8> kKinds = {{
    {ModelKind::DT, "DT", "DT"},
    {ModelKind::ET, "ET", "ET"},
    {ModelKind::kNN, "kNN", "kNN"},
    {ModelKind::LDA, "LDA", "LDA"},
    {ModelKind::SVM_rbf, "SVM_rbf", "R_SVM"},
    {ModelKind::SVM_linear, "SVM_linear", "L_SVM"},
    {ModelKind::LR, "LR", "LR"},
    {ModelKind::RF, "RF", "RF"},
}};

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) != std::tolower(static_cast<unsigned char>(b[i]))) {
      return false;
    }
  }
  return true;
}

bool needs_scaling(ModelKind k) {
  return k == ModelKind::kNN || k == ModelKind::LDA || k == ModelKind::LR ||
         k == ModelKind::SVM_linear || k == ModelKind::SVM_rbf;
}

void check_inputs(const Matrix& x, const Labels& y) {
  if (x.rows() == 0) throw Error(Errc::TooFewSamples, "no training rows");
  if (static_cast<std::size_t>(x.rows()) != y.size()) {
    throw Error(Errc::DimensionMismatch, "feature rows and labels differ in length");
  }
  for (int l : y) {
    if (l != 0 && l != 1) throw Error(Errc::InvalidEnumValue, "labels must be 0 or 1");
  }
  if (!x.allFinite()) throw Error(Errc::NonFiniteFeature, "feature matrix contains NaN or Inf");
}

}  // namespace

std::string_view to_string(ModelKind kind) {
  for (const auto& k : kKinds) {
    if (k.kind == kind) return k.name;
  }
  return "?";
}

std::string_view report_name(ModelKind kind) {
  for (const auto& k : kKinds) {
    if (k.kind == kind) return k.report;
  }
  return "?";
}

ModelKind parse_model_kind(std::string_view s) {
  for (const auto& k : kKinds) {
    if (iequals(s, k.name) || iequals(s, k.report)) return k.kind;
  }
  throw Error(Errc::InvalidEnumValue, "unknown classifier '" + std::string(s) + "'");
}

const std::vector<ModelKind>& all_model_kinds() {
  static const std::vector<ModelKind> kinds = [] {
    std::vector<ModelKind> v;
    for (const auto& k : kKinds) v.push_back(k.kind);
    return v;
  }();
  return kinds;
}

void ModelSpec::validate() const {
  auto fail = [](const std::string& m) { throw Error(Errc::InvalidConfig, m); };
  if (n_estimators < 1) fail("n_estimators must be >= 1");
  if (max_depth == 0 || max_depth < -1) fail("max_depth must be >= 1 or unbounded (-1)");
  if (min_samples_split < 2) fail("min_samples_split must be >= 2");
  if (max_features == 0 || max_features < -1) fail("max_features must be >= 1 or -1 (sqrt)");
  if (k_neighbors < 1) fail("k_neighbors must be >= 1");
  if (!(c > 0.0)) fail("C must be > 0");
  if (!(svm_tol > 0.0)) fail("svm tolerance must be > 0");
  if (svm_max_iter < 1) fail("svm max_iter must be >= 1");
  if (!(lda_ridge >= 0.0)) fail("lda ridge must be >= 0");
}

Labels TrainedModel::predict(const Matrix& x) const {
  if (!x.allFinite()) throw Error(Errc::NonFiniteFeature, "feature matrix contains NaN or Inf");
  const Matrix xs = scaler_ ? scaler_->apply(x) : x;
  return std::visit([&](const auto& m) { return m.predict(xs); }, impl_);
}

TrainedModel train(const ModelSpec& spec, const Matrix& x, const Labels& y) {
  spec.validate();
  check_inputs(x, y);
  std::optional<Standardizer> scaler;
  Matrix xs;
  if (needs_scaling(spec.kind)) {
    scaler = Standardizer::fit(x);
    xs = scaler->apply(x);
  }
  const Matrix& xt = scaler ? xs : x;

  ForestParams fp;
  fp.n_trees = spec.n_estimators;
  fp.max_depth = spec.max_depth;
  fp.min_samples_split = spec.min_samples_split;
  fp.max_features = spec.max_features;
  fp.seed = spec.seed;

  switch (spec.kind) {
    case ModelKind::DT: {
      DecisionTree t;
      TreeParams tp;
      tp.max_depth = spec.max_depth;
      tp.min_samples_split = spec.min_samples_split;
      t.fit(xt, y, tp);
      return TrainedModel(spec.kind, scaler, std::move(t));
    }
    case ModelKind::RF:
    case ModelKind::ET: {
      fp.bootstrap = spec.kind == ModelKind::RF;
      fp.random_thresholds = spec.kind == ModelKind::ET;
      Forest f;
      f.fit(xt, y, fp);
      return TrainedModel(spec.kind, scaler, std::move(f));
    }
    case ModelKind::kNN:
      return TrainedModel(spec.kind, scaler, KnnModel{spec.k_neighbors, xt, y});
    case ModelKind::LDA:
      return TrainedModel(spec.kind, scaler, LdaModel::fit(xt, y, spec.lda_ridge));
    case ModelKind::LR: {
      const bool both = std::find(y.begin(), y.end(), 0) != y.end() &&
                        std::find(y.begin(), y.end(), 1) != y.end();
      if (!both) throw Error(Errc::SingleClassData, "LR needs both classes");
      return TrainedModel(spec.kind, scaler, LogisticModel::fit(xt, y, spec.c));
    }
    case ModelKind::SVM_linear:
    case ModelKind::SVM_rbf: {
      SvmParams sp;
      sp.kernel = spec.kind == ModelKind::SVM_rbf ? Kernel::Rbf : Kernel::Linear;
      sp.c = spec.c;
      sp.gamma = spec.gamma;
      sp.tol = spec.svm_tol;
      sp.max_iter = spec.svm_max_iter;
      return TrainedModel(spec.kind, scaler, SvmModel::fit(xt, y, sp));
    }
  }
  throw Error(Errc::InvalidConfig, "unhandled classifier kind");
}

Labels predict(const TrainedModel& model, const Matrix& x) { return model.predict(x); }

double micro_f1(const Labels& y_true, const Labels& y_pred) {
  if (y_true.size() != y_pred.size()) throw Error(Errc::DimensionMismatch, "label vectors differ in length");
  if (y_true.empty()) throw Error(Errc::TooFewSamples, "micro-F1 of empty label vectors");
  double tp = 0.0, fp = 0.0, fn = 0.0;
  for (int cls = 0; cls < 2; ++cls) {
    for (std::size_t i = 0; i < y_true.size(); ++i) {
      const bool t = y_true[i] == cls;
      const bool p = y_pred[i] == cls;
      tp += (t && p) ? 1.0 : 0.0;
      fp += (!t && p) ? 1.0 : 0.0;
      fn += (t && !p) ? 1.0 : 0.0;
    }
  }
  return 2.0 * tp / (2.0 * tp + fp + fn);
}

std::string format_mean_std(double mean, double std) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f (+/- %.2f)", mean, std);
  return buf;
}

std::string CVResult::formatted() const { return format_mean_std(mean, std); }

std::vector<int> stratified_folds(const Labels& y, int k, std::uint64_t seed) {
  std::vector<int> fold(y.size(), 0);
  Rng rng(seed);
  std::size_t counter = 0;
  for (int cls = 0; cls < 2; ++cls) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (y[i] == cls) idx.push_back(i);
    }
    rng.shuffle(idx);
    for (auto i : idx) fold[i] = static_cast<int>(counter++ % static_cast<std::size_t>(k));
  }
  return fold;
}

CVResult cross_validate(const ModelSpec& spec, const Matrix& x, const Labels& y, int k,
                        std::uint64_t seed) {
  return cross_validate(spec, x, y, k, seed, FoldSelector{});
}

CVResult cross_validate(const ModelSpec& spec, const Matrix& x, const Labels& y, int k, std::uint64_t seed,
                        const FoldSelector& select) {
  check_inputs(x, y);
  if (k < 2) throw Error(Errc::InvalidConfig, "fold count must be >= 2");
  const auto n1 = static_cast<int>(std::count(y.begin(), y.end(), 1));
  const int n0 = static_cast<int>(y.size()) - n1;
  const int min_count = std::min(n0, n1);
  if (min_count < 2) {
    throw Error(Errc::TooFewSamples, "smallest class has " + std::to_string(min_count) +
                                         " samples; cross-validation needs at least 2");
  }
  CVResult res;
  res.k = k;
  if (min_count < k) {
    res.k = min_count;
    res.k_lowered = true;
  }
  const auto fold = stratified_folds(y, res.k, seed);
  for (int f = 0; f < res.k; ++f) {
    std::vector<Eigen::Index> tr, te;
    for (std::size_t i = 0; i < y.size(); ++i) (fold[i] == f ? te : tr).push_back(static_cast<Eigen::Index>(i));
    Matrix xtr(static_cast<Eigen::Index>(tr.size()), x.cols());
    Matrix xte(static_cast<Eigen::Index>(te.size()), x.cols());
    Labels ytr, yte;
    for (std::size_t i = 0; i < tr.size(); ++i) {
      xtr.row(static_cast<Eigen::Index>(i)) = x.row(tr[i]);
      ytr.push_back(y[static_cast<std::size_t>(tr[i])]);
    }
    for (std::size_t i = 0; i < te.size(); ++i) {
      xte.row(static_cast<Eigen::Index>(i)) = x.row(te[i]);
      yte.push_back(y[static_cast<std::size_t>(te[i])]);
    }
    if (select) {
      const auto cols = select(f, xtr, ytr);
      if (cols.empty()) throw Error(Errc::MissingColumns, "fold selector returned no columns");
      Matrix str(xtr.rows(), static_cast<Eigen::Index>(cols.size()));
      Matrix ste(xte.rows(), static_cast<Eigen::Index>(cols.size()));
      for (std::size_t c = 0; c < cols.size(); ++c) {
        const auto src = static_cast<Eigen::Index>(cols[c]);
        if (src >= x.cols()) throw Error(Errc::DimensionMismatch, "fold selector column out of range");
        str.col(static_cast<Eigen::Index>(c)) = xtr.col(src);
        ste.col(static_cast<Eigen::Index>(c)) = xte.col(src);
      }
      xtr = std::move(str);
      xte = std::move(ste);
    }
    const auto model = train(spec, xtr, ytr);
    res.fold_scores.push_back(micro_f1(yte, model.predict(xte)));
  }
  double s = 0.0;
  for (double v : res.fold_scores) s += v;
  res.mean = s / res.k;
  double ss = 0.0;
  for (double v : res.fold_scores) ss += (v - res.mean) * (v - res.mean);
  res.std = std::sqrt(ss / res.k);
  return res;
}

}  // namespace langassess::ml
