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

#ifndef LANGASSESS_PIPELINE_HPP_
#define LANGASSESS_PIPELINE_HPP_

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "langassess/config.hpp"
#include "langassess/corpus.hpp"
#include "langassess/error.hpp"
#include "langassess/featsel.hpp"
#include "langassess/feature_matrix.hpp"
#include "langassess/ml.hpp"

namespace langassess {

// One entry of the failure ledger. stage is extract, select or evaluate.
struct Failure {
  std::string stage;
  std::string condition;  // empty when not condition specific
  std::string subject;    // sample id or report cell
  Errc code = Errc::NumericalFailure;
  std::string message;
};

struct ConditionFeatures {
  Condition condition = Condition::PD;
  FeatureMatrix acoustic;    // 296 columns
  FeatureMatrix linguistic;  // 17 columns
};

struct ExtractionResult {
  std::vector<ConditionFeatures> conditions;
  std::vector<Failure> failures;
};

// Reads every audio file and transcript once, then assembles one acoustic and
// one linguistic matrix per configured condition. Per-sample errors are
// recorded and the sample is skipped for the affected family. Tangentiality
// uses a topic model fitted on the transcripts of each condition.
ExtractionResult extract_features(const PipelineConfig& cfg, const CorpusManifest& manifest);

// Permutation null: within each condition, permutes labels over samples
// (class counts preserved). The acoustic and linguistic matrices of a
// condition receive the same permutation.
void shuffle_labels(std::vector<ConditionFeatures>& features, std::uint64_t seed);

// features/<condition>_{acoustic,linguistic}.csv under dir.
void write_features(const ExtractionResult& features, const std::filesystem::path& dir);
ExtractionResult read_features(const std::vector<Condition>& conditions,
                               const std::filesystem::path& dir);

struct ConditionRanking {
  Condition condition = Condition::PD;
  int top_k = 0;
  std::vector<featsel::RankedFeatures> rankings;  // anova, rf, mrmr
  featsel::CommonFeatures common;
};

ConditionRanking rank_condition(Condition c, const FeatureMatrix& acoustic,
                                const PipelineConfig& cfg);
// rankings/<condition>.json under dir.
void write_ranking(const ConditionRanking& ranking, const std::filesystem::path& dir);
ConditionRanking read_ranking(Condition c, const std::filesystem::path& dir);

struct FeatureSet {
  std::string family;  // linguistic or acoustic
  std::string name;    // lexical, ..., anova, ..., pca
  FeatureMatrix data;
};

// Configured linguistic sets followed by configured acoustic sets.
std::vector<FeatureSet> build_feature_sets(const ConditionFeatures& features,
                                           const ConditionRanking& ranking,
                                           const PipelineConfig& cfg);

struct ReportCell {
  std::optional<ml::CVResult> result;  // empty = failed
  std::string error;
};

struct ReportRow {
  std::string family;
  std::string feature_set;
  ml::ModelKind classifier = ml::ModelKind::DT;
  std::map<Condition, ReportCell> cells;
};

struct EvaluationReport {
  std::vector<Condition> conditions;
  std::vector<ReportRow> rows;  // family, then set, then classifier order
  int folds = 3;
  std::vector<Failure> failures;
};

// Column indices of a ranking-based acoustic set (anova, rf, mrmr, common).
std::vector<std::size_t> ranked_set_columns(const ConditionRanking& ranking, const std::string& set,
                                            const FeatureMatrix& acoustic);

// Per-fold acoustic rankings of one condition, computed lazily from the
// training rows of each fold and shared by every classifier. Thread safe.
class FoldRankings {
 public:
  FoldRankings(Condition c, std::vector<std::string> names, const PipelineConfig& cfg);
  const ConditionRanking& get(int fold, const Matrix& x_train, const ml::Labels& y_train);

 private:
  Condition condition_;
  std::vector<std::string> names_;
  const PipelineConfig* cfg_;
  std::mutex mutex_;
  std::map<int, ConditionRanking> cache_;
};

// Cross-validates every (feature set x classifier) cell of every condition.
// Ranking-based acoustic sets use the given full-matrix rankings, or are
// re-ranked inside each training fold when cfg.selection_scope is "fold".
EvaluationReport evaluate(const std::vector<ConditionFeatures>& features,
                          const std::vector<ConditionRanking>& rankings, const PipelineConfig& cfg);

// Header: family,feature_set,classifier,<condition...>; cells are
// "M (+/- S)" or "failed".
void write_report_csv(const EvaluationReport& report, const std::filesystem::path& path);
void write_report_json(const EvaluationReport& report, const std::filesystem::path& path);
void write_failures(const std::vector<Failure>& failures, const std::filesystem::path& path);

struct PipelineOutputs {
  std::filesystem::path report_csv;
  std::filesystem::path report_json;
  std::filesystem::path failures_csv;
  EvaluationReport report;
  std::vector<Failure> failures;
};

// extract -> rank -> evaluate, writing every artifact under cfg.output_dir.
// Partial results are flushed and failures listed in failures.csv.
PipelineOutputs run_pipeline(const PipelineConfig& cfg);

}  // namespace langassess

#endif  // LANGASSESS_PIPELINE_HPP_
