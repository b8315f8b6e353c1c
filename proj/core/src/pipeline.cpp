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

#include "langassess/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <functional>
#include <thread>

#include "json.hpp"

#include "langassess/acoustic.hpp"
#include "langassess/csv.hpp"
#include "langassess/lda.hpp"
#include "langassess/log.hpp"
#include "langassess/rng.hpp"
#include "langassess/semantics.hpp"
#include "langassess/text.hpp"
#include "langassess/wav.hpp"

namespace langassess {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

int worker_count(int configured, std::size_t jobs) {
  int n = configured > 0 ? configured : static_cast<int>(std::thread::hardware_concurrency());
  n = std::max(1, n);
  return static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(n), std::max<std::size_t>(jobs, 1)));
}

// Runs fn(i) for i in [0, n). Results must be written to slot i so the outcome
// does not depend on scheduling.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
  const int workers = worker_count(threads, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < n; i = next++) fn(i);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

struct SampleFeatures {
  std::optional<std::vector<double>> acoustic;
  std::optional<text::TokenizedDoc> doc;
  semantics::IncoherenceValues incoherence;
  std::vector<std::string> content_tokens;
  std::vector<Failure> failures;
};

bool is_content(text::PosTag t) {
  return t == text::PosTag::NN || t == text::PosTag::VB || t == text::PosTag::JJ || t == text::PosTag::RB;
}

SampleFeatures extract_sample(const SampleEntry& e, const CorpusManifest& manifest, const PipelineConfig& cfg) {
  SampleFeatures out;
  const std::string id = e.sample_id();
  if (e.audio_path) {
    const fs::path p = manifest.resolve(*e.audio_path);
    try {
      const Signal sig = read_wav(p);
      auto v = extract_acoustic_vector(sig);
      if (v.no_voiced_content) log::warn(id + ": no voiced frames, phonation features set to 0");
      out.acoustic = std::move(v.values);
    } catch (const Error& err) {
      out.failures.push_back({"extract", "", id, err.code(), "audio " + p.generic_string() + ": " + err.what()});
    }
  }
  if (e.transcript_path) {
    const fs::path p = manifest.resolve(*e.transcript_path);
    try {
      auto t = text::load_transcript(p);
      out.incoherence = semantics::incoherence(t.doc.sentences, semantics::EmbeddingTable::bundled(), cfg.sif_a);
      const auto tagged = text::pos_tag(t.doc);
      const auto tokens = t.doc.tokens();
      for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (is_content(tagged.tags[i])) out.content_tokens.push_back(tokens[i]);
      }
      out.doc = std::move(t.doc);
    } catch (const Error& err) {
      out.failures.push_back(
          {"extract", "", id, err.code(), "transcript " + p.generic_string() + ": " + err.what()});
    }
  }
  return out;
}

FeatureMatrix make_matrix(const std::vector<std::string>& names, const std::vector<std::string>& ids,
                          const std::vector<std::vector<double>>& rows, const ml::Labels& y) {
  FeatureMatrix m;
  m.names = names;
  m.sample_ids = ids;
  m.y = y;
  m.x.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(names.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < names.size(); ++c) {
      m.x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
  }
  return m;
}

int label_value(Label l) { return l == Label::Dementia ? 1 : 0; }

fs::path feature_path(const fs::path& dir, Condition c, std::string_view family) {
  return dir / (std::string(to_string(c)) + "_" + std::string(family) + ".csv");
}

}  // namespace

void shuffle_labels(std::vector<ConditionFeatures>& features, std::uint64_t seed) {
  Rng rng(seed);
  for (auto& cf : features) {
    std::vector<std::string> ids;
    std::map<std::string, int> label_of;
    for (const FeatureMatrix* m : {&cf.acoustic, &cf.linguistic}) {
      for (std::size_t r = 0; r < m->rows(); ++r) {
        if (label_of.emplace(m->sample_ids[r], m->y[r]).second) ids.push_back(m->sample_ids[r]);
      }
    }
    std::vector<int> labels;
    for (const auto& id : ids) labels.push_back(label_of[id]);
    rng.shuffle(labels);
    for (std::size_t i = 0; i < ids.size(); ++i) label_of[ids[i]] = labels[i];
    for (FeatureMatrix* m : {&cf.acoustic, &cf.linguistic}) {
      for (std::size_t r = 0; r < m->rows(); ++r) m->y[r] = label_of[m->sample_ids[r]];
    }
  }
}

ExtractionResult extract_features(const PipelineConfig& cfg, const CorpusManifest& manifest) {
  const auto& entries = manifest.entries();
  std::vector<std::size_t> used;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (auto c : cfg.conditions) {
      if (includes(c, entries[i])) {
        used.push_back(i);
        break;
      }
    }
  }
  std::vector<SampleFeatures> samples(entries.size());
  parallel_for(used.size(), cfg.threads, [&](std::size_t j) {
    const std::size_t i = used[j];
    samples[i] = extract_sample(entries[i], manifest, cfg);
  });

  ExtractionResult result;
  for (std::size_t i : used) {
    for (auto& f : samples[i].failures) {
      log::error(f.subject + ": " + f.message);
      result.failures.push_back(f);
    }
  }

  semantics::LdaConfig lda;
  lda.k_min = cfg.lda_k_min;
  lda.k_max = cfg.lda_k_max;
  lda.iterations = cfg.lda_iterations;
  lda.topic_threshold = cfg.topic_threshold;
  lda.seed = cfg.lda_seed;

  for (auto c : cfg.conditions) {
    ConditionFeatures cf;
    cf.condition = c;
    const std::string cname(to_string(c));

    std::vector<std::string> a_ids;
    std::vector<std::vector<double>> a_rows;
    ml::Labels a_y;
    std::vector<std::size_t> t_idx;
    for (std::size_t i : used) {
      if (!includes(c, entries[i])) continue;
      if (samples[i].acoustic) {
        a_ids.push_back(entries[i].sample_id());
        a_rows.push_back(*samples[i].acoustic);
        a_y.push_back(label_value(entries[i].label));
      }
      if (samples[i].doc) t_idx.push_back(i);
    }
    cf.acoustic = make_matrix(acoustic_feature_names(), a_ids, a_rows, a_y);

    std::vector<double> tang(t_idx.size(), 0.0);
    if (!t_idx.empty()) {
      std::vector<std::vector<std::string>> docs;
      for (std::size_t i : t_idx) docs.push_back(samples[i].content_tokens);
      try {
        tang = semantics::tangentiality_all(semantics::fit_lda(docs, lda));
      } catch (const Error& err) {
        result.failures.push_back({"extract", cname, "topic-model", err.code(),
                                   std::string(err.what()) + "; tangentiality set to 0"});
      }
    }
    std::vector<std::string> l_ids;
    std::vector<std::vector<double>> l_rows;
    ml::Labels l_y;
    for (std::size_t j = 0; j < t_idx.size(); ++j) {
      const std::size_t i = t_idx[j];
      const auto& inc = samples[i].incoherence;
      try {
        const auto v = text::extract_linguistic_vector(*samples[i].doc, {inc.sa, inc.sif, inc.tfidf, tang[j]});
        l_ids.push_back(entries[i].sample_id());
        l_rows.emplace_back(v.values.begin(), v.values.end());
        l_y.push_back(label_value(entries[i].label));
      } catch (const Error& err) {
        result.failures.push_back({"extract", cname, entries[i].sample_id(), err.code(), err.what()});
      }
    }
    cf.linguistic = make_matrix(text::linguistic_feature_names(), l_ids, l_rows, l_y);
    log::info(cname + ": " + std::to_string(a_rows.size()) + " acoustic rows, " +
              std::to_string(l_rows.size()) + " linguistic rows");
    result.conditions.push_back(std::move(cf));
  }
  return result;
}

void write_features(const ExtractionResult& features, const fs::path& dir) {
  fs::create_directories(dir);
  for (const auto& cf : features.conditions) {
    write_feature_csv(cf.acoustic, feature_path(dir, cf.condition, "acoustic"));
    write_feature_csv(cf.linguistic, feature_path(dir, cf.condition, "linguistic"));
  }
}

ExtractionResult read_features(const std::vector<Condition>& conditions, const fs::path& dir) {
  ExtractionResult r;
  for (auto c : conditions) {
    ConditionFeatures cf;
    cf.condition = c;
    cf.acoustic = read_feature_csv(feature_path(dir, c, "acoustic"));
    cf.linguistic = read_feature_csv(feature_path(dir, c, "linguistic"));
    r.conditions.push_back(std::move(cf));
  }
  return r;
}

ConditionRanking rank_condition(Condition c, const FeatureMatrix& acoustic, const PipelineConfig& cfg) {
  acoustic.validate(true);
  ConditionRanking r;
  r.condition = c;
  r.top_k = std::min(cfg.top_k(c), static_cast<int>(acoustic.cols()));
  auto forest = featsel::default_importance_forest();
  forest.n_trees = cfg.rank_trees;
  forest.seed = cfg.rank_seed;
  r.rankings.push_back(featsel::anova_f_rank(acoustic));
  r.rankings.push_back(featsel::rf_importance_rank(acoustic, forest));
  r.rankings.push_back(featsel::mrmr_rank(acoustic));
  r.common = featsel::common_top_k(r.rankings, static_cast<std::size_t>(r.top_k));
  return r;
}

void write_ranking(const ConditionRanking& ranking, const fs::path& dir) {
  fs::create_directories(dir);
  json j;
  j["condition"] = std::string(to_string(ranking.condition));
  j["top_k"] = ranking.top_k;
  json methods = json::array();
  for (const auto& rf : ranking.rankings) {
    json m;
    m["method"] = std::string(featsel::to_string(rf.method));
    m["top"] = rf.top(static_cast<std::size_t>(ranking.top_k));
    json ranked = json::array();
    for (const auto& [name, score] : rf.ranked) ranked.push_back({{"feature", name}, {"score", score}});
    m["ranked"] = std::move(ranked);
    methods.push_back(std::move(m));
  }
  j["rankings"] = std::move(methods);
  j["common"] = {{"features", ranking.common.names},
                 {"union_fallback", ranking.common.union_fallback},
                 {"grouped", featsel::grouped_feature_report(ranking.common.names)}};
  std::ofstream out(dir / (std::string(to_string(ranking.condition)) + ".json"), std::ios::binary);
  out << j.dump(2) << '\n';
  if (!out) throw Error(Errc::MissingFile, "cannot write rankings to " + dir.generic_string());
}

ConditionRanking read_ranking(Condition c, const fs::path& dir) {
  const fs::path p = dir / (std::string(to_string(c)) + ".json");
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(Errc::MissingFile, "rankings not found: " + p.generic_string());
  ConditionRanking r;
  r.condition = c;
  try {
    const json j = json::parse(in);
    r.top_k = j.at("top_k").get<int>();
    for (const auto& m : j.at("rankings")) {
      featsel::RankedFeatures rf;
      rf.method = featsel::parse_rank_method(m.at("method").get<std::string>());
      for (const auto& e : m.at("ranked")) {
        rf.ranked.emplace_back(e.at("feature").get<std::string>(), e.at("score").get<double>());
      }
      r.rankings.push_back(std::move(rf));
    }
    r.common.names = j.at("common").at("features").get<std::vector<std::string>>();
    r.common.union_fallback = j.at("common").at("union_fallback").get<bool>();
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, p.generic_string() + ": " + e.what());
  }
  return r;
}

std::vector<std::size_t> ranked_set_columns(const ConditionRanking& ranking, const std::string& set,
                                            const FeatureMatrix& acoustic) {
  std::vector<std::string> names;
  if (set == "common") {
    names = ranking.common.names;
  } else {
    const auto method = featsel::parse_rank_method(set);
    for (const auto& rf : ranking.rankings) {
      if (rf.method == method) names = rf.top(static_cast<std::size_t>(ranking.top_k));
    }
    if (names.empty()) {
      throw Error(Errc::MissingColumns,
                  "ranking '" + set + "' missing for condition " + std::string(to_string(ranking.condition)));
    }
  }
  std::vector<std::size_t> cols;
  std::vector<std::string> missing;
  for (const auto& n : names) {
    if (const auto c = acoustic.column(n)) {
      cols.push_back(*c);
    } else {
      missing.push_back(n);
    }
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
    throw Error(Errc::MissingColumns, "ranked features not in the matrix: " + list);
  }
  return cols;
}

FoldRankings::FoldRankings(Condition c, std::vector<std::string> names, const PipelineConfig& cfg)
    : condition_(c), names_(std::move(names)), cfg_(&cfg) {}

const ConditionRanking& FoldRankings::get(int fold, const Matrix& x_train, const ml::Labels& y_train) {
  std::lock_guard<std::mutex> lock(mutex_);
  const auto it = cache_.find(fold);
  if (it != cache_.end()) return it->second;
  FeatureMatrix m;
  m.names = names_;
  m.x = x_train;
  m.y = y_train;
  for (Eigen::Index i = 0; i < x_train.rows(); ++i) m.sample_ids.push_back("row" + std::to_string(i));
  return cache_.emplace(fold, rank_condition(condition_, m, *cfg_)).first->second;
}

namespace {

bool is_ranked_set(const std::string& family, const std::string& name) {
  return family == "acoustic" && name != "pca";
}

FeatureMatrix build_set(const ConditionFeatures& f, const ConditionRanking* ranking, const std::string& family,
                        const std::string& name) {
  if (family == "linguistic") {
    if (name == "lexical") return f.linguistic.select(text::lexical_feature_names());
    if (name == "syntactic") return f.linguistic.select(text::syntactic_feature_names());
    if (name == "semantic") return f.linguistic.select(text::semantic_feature_names());
    return f.linguistic;
  }
  if (name == "pca") return featsel::pca_combine(f.acoustic);
  if (!ranking) {
    throw Error(Errc::MissingColumns, "no acoustic ranking for condition " + std::string(to_string(f.condition)));
  }
  std::vector<std::string> names;
  for (auto c : ranked_set_columns(*ranking, name, f.acoustic)) names.push_back(f.acoustic.names[c]);
  return f.acoustic.select(names);
}

std::vector<std::pair<std::string, std::string>> set_names(const PipelineConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& s : cfg.linguistic_sets) out.emplace_back("linguistic", s);
  for (const auto& s : cfg.acoustic_sets) out.emplace_back("acoustic", s);
  return out;
}

}  // namespace

std::vector<FeatureSet> build_feature_sets(const ConditionFeatures& features, const ConditionRanking& ranking,
                                           const PipelineConfig& cfg) {
  std::vector<FeatureSet> out;
  for (const auto& [family, name] : set_names(cfg)) {
    out.push_back({family, name, build_set(features, &ranking, family, name)});
  }
  return out;
}

EvaluationReport evaluate(const std::vector<ConditionFeatures>& features,
                          const std::vector<ConditionRanking>& rankings, const PipelineConfig& cfg) {
  EvaluationReport report;
  report.folds = cfg.folds;
  const auto sets = set_names(cfg);
  for (const auto& [family, name] : sets) {
    for (auto kind : cfg.classifiers) report.rows.push_back({family, name, kind, {}});
  }

  struct Job {
    std::size_t row;
    Condition condition;
    std::shared_ptr<const FeatureMatrix> data;
    std::shared_ptr<FoldRankings> folds;  // ranking-based acoustic sets only
    std::string set;
    std::string error;
    Errc code = Errc::NumericalFailure;
  };
  std::vector<Job> jobs;
  for (const auto& cf : features) {
    report.conditions.push_back(cf.condition);
    const ConditionRanking* ranking = nullptr;
    for (const auto& r : rankings) {
      if (r.condition == cf.condition) ranking = &r;
    }
    const bool per_fold = cfg.selection_scope == "fold";
    auto fold_rankings = std::make_shared<FoldRankings>(cf.condition, cf.acoustic.names, cfg);
    for (std::size_t s = 0; s < sets.size(); ++s) {
      const auto& [family, name] = sets[s];
      std::shared_ptr<const FeatureMatrix> data;
      std::string error;
      Errc code = Errc::NumericalFailure;
      try {
        FeatureMatrix m;
        if (per_fold && is_ranked_set(family, name)) {
          if (name != "common") featsel::parse_rank_method(name);
          m = cf.acoustic;
        } else {
          m = build_set(cf, ranking, family, name);
        }
        m.validate(true);
        data = std::make_shared<const FeatureMatrix>(std::move(m));
      } catch (const Error& e) {
        error = e.what();
        code = e.code();
      }
      for (std::size_t k = 0; k < cfg.classifiers.size(); ++k) {
        jobs.push_back({s * cfg.classifiers.size() + k, cf.condition, data,
                        per_fold && is_ranked_set(family, name) ? fold_rankings : nullptr, name, error, code});
      }
    }
  }

  std::vector<ReportCell> cells(jobs.size());
  std::vector<std::optional<Errc>> codes(jobs.size());
  parallel_for(jobs.size(), cfg.threads, [&](std::size_t j) {
    const Job& job = jobs[j];
    if (!job.data) {
      cells[j].error = job.error;
      codes[j] = job.code;
      return;
    }
    try {
      const auto spec = cfg.model_spec(report.rows[job.row].classifier);
      ml::FoldSelector select;
      if (job.folds) {
        select = [&job](int fold, const Matrix& xtr, const ml::Labels& ytr) {
          return ranked_set_columns(job.folds->get(fold, xtr, ytr), job.set, *job.data);
        };
      }
      cells[j].result = ml::cross_validate(spec, job.data->x, job.data->y, cfg.folds, cfg.cv_seed, select);
    } catch (const Error& e) {
      cells[j].error = e.what();
      codes[j] = e.code();
    }
  });

  for (std::size_t j = 0; j < jobs.size(); ++j) {
    auto& row = report.rows[jobs[j].row];
    if (!cells[j].result) {
      report.failures.push_back({"evaluate", std::string(to_string(jobs[j].condition)),
                                 row.family + "/" + row.feature_set + "/" + std::string(ml::report_name(row.classifier)),
                                 *codes[j], cells[j].error});
    }
    row.cells[jobs[j].condition] = std::move(cells[j]);
  }
  return report;
}

void write_report_csv(const EvaluationReport& report, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::MissingFile, "cannot write " + path.generic_string());
  std::vector<std::string> header = {"family", "feature_set", "classifier"};
  for (auto c : report.conditions) header.emplace_back(to_string(c));
  out << csv::join(header) << '\n';
  for (const auto& row : report.rows) {
    std::vector<std::string> cells = {row.family, row.feature_set, std::string(ml::report_name(row.classifier))};
    for (auto c : report.conditions) {
      const auto it = row.cells.find(c);
      cells.push_back(it != row.cells.end() && it->second.result ? it->second.result->formatted() : "failed");
    }
    out << csv::join(cells) << '\n';
  }
}

void write_report_json(const EvaluationReport& report, const fs::path& path) {
  json j;
  j["metric"] = "micro_f1";
  j["dispersion"] = "population standard deviation of the per-fold scores";
  j["folds"] = report.folds;
  std::vector<std::string> conds;
  for (auto c : report.conditions) conds.emplace_back(to_string(c));
  j["conditions"] = conds;
  json rows = json::array();
  for (const auto& row : report.rows) {
    json r;
    r["family"] = row.family;
    r["feature_set"] = row.feature_set;
    r["classifier"] = std::string(ml::report_name(row.classifier));
    json cells = json::object();
    for (auto c : report.conditions) {
      json cell;
      const auto it = row.cells.find(c);
      if (it != row.cells.end() && it->second.result) {
        const auto& res = *it->second.result;
        cell = {{"status", "ok"},     {"mean", res.mean},   {"std", res.std},
                {"folds", res.k},     {"folds_lowered", res.k_lowered}, {"fold_scores", res.fold_scores}};
      } else {
        cell = {{"status", "failed"}, {"error", it != row.cells.end() ? it->second.error : "not run"}};
      }
      cells[std::string(to_string(c))] = std::move(cell);
    }
    r["cells"] = std::move(cells);
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  std::ofstream out(path, std::ios::binary);
  out << j.dump(2) << '\n';
  if (!out) throw Error(Errc::MissingFile, "cannot write " + path.generic_string());
}

void write_failures(const std::vector<Failure>& failures, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::MissingFile, "cannot write " + path.generic_string());
  out << "stage,condition,subject,code,message\n";
  for (const auto& f : failures) {
    out << csv::join({f.stage, f.condition, f.subject, std::string(errc_name(f.code)), f.message}) << '\n';
  }
}

PipelineOutputs run_pipeline(const PipelineConfig& cfg) {
  cfg.validate(true);
  const CorpusManifest manifest = load_manifest(cfg.manifest);

  PipelineOutputs out;
  fs::create_directories(cfg.output_dir);
  out.report_csv = cfg.output_dir / "report.csv";
  out.report_json = cfg.output_dir / "report.json";
  out.failures_csv = cfg.output_dir / "failures.csv";

  auto extracted = extract_features(cfg, manifest);
  out.failures = extracted.failures;
  write_features(extracted, cfg.output_dir / "features");
  write_failures(out.failures, out.failures_csv);

  std::vector<ConditionRanking> rankings;
  for (const auto& cf : extracted.conditions) {
    try {
      rankings.push_back(rank_condition(cf.condition, cf.acoustic, cfg));
      write_ranking(rankings.back(), cfg.output_dir / "rankings");
    } catch (const Error& e) {
      out.failures.push_back({"select", std::string(to_string(cf.condition)), "acoustic", e.code(), e.what()});
    }
  }
  write_failures(out.failures, out.failures_csv);

  if (cfg.shuffle_labels) shuffle_labels(extracted.conditions, cfg.shuffle_seed);
  out.report = evaluate(extracted.conditions, rankings, cfg);
  out.failures.insert(out.failures.end(), out.report.failures.begin(), out.report.failures.end());
  write_report_csv(out.report, out.report_csv);
  write_report_json(out.report, out.report_json);
  write_failures(out.failures, out.failures_csv);
  return out;
}

}  // namespace langassess
