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

// langassess command-line front end.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "langassess/config.hpp"
#include "langassess/error.hpp"
#include "langassess/log.hpp"
#include "langassess/pipeline.hpp"
#include "langassess/plots.hpp"
#include "langassess/report.hpp"
#include "langassess/synth.hpp"

namespace fs = std::filesystem;
using namespace langassess;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitNumerical = 4;

int exit_code(const Error& e) {
  switch (error_category(e.code())) {
    case ErrorCategory::Config: return kExitConfig;
    case ErrorCategory::Data: return kExitData;
    case ErrorCategory::Numerical: return kExitNumerical;
  }
  return kExitData;
}

// Options shared by the pipeline subcommands.
struct Overrides {
  std::string config;
  std::string manifest;
  std::string output_dir;
  std::vector<std::string> conditions;
  int threads = -1;
  int folds = -1;
  bool shuffle = false;

  void attach(CLI::App* app) {
    app->add_option("--config", config, "pipeline config file (TOML-style)");
    app->add_option("--manifest", manifest, "manifest CSV (overrides the config)");
    app->add_option("--output-dir", output_dir, "output directory (overrides the config)");
    app->add_option("--conditions", conditions, "subset of pd, sr, web, phone");
    app->add_option("--threads", threads, "worker threads, 0 = all cores");
    app->add_option("--folds", folds, "cross-validation folds");
    app->add_flag("--shuffle-labels", shuffle, "permute labels after ranking, before cross-validation");
  }

  PipelineConfig resolve(bool check_paths) const {
    PipelineConfig cfg = config.empty() ? PipelineConfig{} : load_config(config);
    if (!manifest.empty()) cfg.manifest = manifest;
    if (!output_dir.empty()) cfg.output_dir = output_dir;
    if (!conditions.empty()) {
      cfg.conditions.clear();
      for (const auto& c : conditions) cfg.conditions.push_back(parse_condition(c));
    }
    if (threads >= 0) cfg.threads = threads;
    if (folds >= 0) cfg.folds = folds;
    if (shuffle) cfg.shuffle_labels = true;
    cfg.validate(check_paths);
    return cfg;
  }
};

void print_failures(const std::vector<Failure>& failures) {
  for (const auto& f : failures) {
    std::fprintf(stderr, "failed [%s%s%s] %s: %s\n", f.stage.c_str(), f.condition.empty() ? "" : " ",
                 f.condition.c_str(), f.subject.c_str(), f.message.c_str());
  }
}

int cmd_synth(const synth::SynthSpec& spec, const std::string& outdir) {
  const auto result = synth::synthesize_cohort(spec, outdir);
  std::ofstream cfg(fs::path(outdir) / "langassess.toml", std::ios::binary);
  cfg << "# Generated with the synthetic cohort.\n[pipeline]\nmanifest = \"manifest.csv\"\noutput_dir = \"results\"\n";
  std::printf("wrote %zu samples for %zu subjects to %s\n", result.manifest.size(), result.subjects.size(),
              outdir.c_str());
  return 0;
}

int cmd_extract(const Overrides& o) {
  const auto cfg = o.resolve(true);
  const CorpusManifest manifest = load_manifest(cfg.manifest);
  const auto result = extract_features(cfg, manifest);
  write_features(result, cfg.output_dir / "features");
  write_failures(result.failures, cfg.output_dir / "failures.csv");
  print_failures(result.failures);
  for (const auto& c : result.conditions) {
    std::printf("%s: %zu acoustic rows, %zu linguistic rows\n", std::string(to_string(c.condition)).c_str(),
                c.acoustic.rows(), c.linguistic.rows());
  }
  return 0;
}

int cmd_select(const Overrides& o) {
  const auto cfg = o.resolve(false);
  const auto features = read_features(cfg.conditions, cfg.output_dir / "features");
  for (const auto& c : features.conditions) {
    const auto r = rank_condition(c.condition, c.acoustic, cfg);
    write_ranking(r, cfg.output_dir / "rankings");
    std::printf("%s common features (top %d):\n", std::string(to_string(c.condition)).c_str(), r.top_k);
    for (const auto& line : featsel::grouped_feature_report(r.common.names)) std::printf("  %s\n", line.c_str());
  }
  return 0;
}

int cmd_evaluate(const Overrides& o) {
  const auto cfg = o.resolve(false);
  auto features = read_features(cfg.conditions, cfg.output_dir / "features");
  std::vector<ConditionRanking> rankings;
  for (auto c : cfg.conditions) rankings.push_back(read_ranking(c, cfg.output_dir / "rankings"));
  if (cfg.shuffle_labels) shuffle_labels(features.conditions, cfg.shuffle_seed);
  const auto report = evaluate(features.conditions, rankings, cfg);
  write_report_csv(report, cfg.output_dir / "report.csv");
  write_report_json(report, cfg.output_dir / "report.json");
  write_failures(report.failures, cfg.output_dir / "evaluate_failures.csv");
  print_failures(report.failures);
  std::printf("wrote %s\n", (cfg.output_dir / "report.csv").generic_string().c_str());
  return 0;
}

int cmd_run(const Overrides& o) {
  const auto cfg = o.resolve(true);
  const auto out = run_pipeline(cfg);
  print_failures(out.failures);
  std::printf("wrote %s\n", out.report_csv.generic_string().c_str());
  return 0;
}

int cmd_train(const Overrides& o, const std::string& condition, const std::string& family, const std::string& set,
              const std::string& classifier) {
  auto cfg = o.resolve(false);
  const Condition c = parse_condition(condition);
  cfg.conditions = {c};
  cfg.classifiers = {ml::parse_model_kind(classifier)};
  if (family == "linguistic") {
    cfg.linguistic_sets = {set};
    cfg.acoustic_sets.clear();
  } else {
    cfg.acoustic_sets = {set};
    cfg.linguistic_sets.clear();
  }
  cfg.validate(false);
  const auto features = read_features(cfg.conditions, cfg.output_dir / "features");
  const auto& cf = features.conditions.front();
  const bool ranked = family == "acoustic" && set != "pca";
  const auto ranking = ranked ? rank_condition(c, cf.acoustic, cfg) : ConditionRanking{};
  const auto data = build_feature_sets(cf, ranking, cfg).front().data;
  data.validate(true);
  const auto spec = cfg.model_spec(cfg.classifiers.front());
  const auto model = ml::train(spec, data.x, data.y);
  const double train_f1 = ml::micro_f1(data.y, model.predict(data.x));
  const auto report = evaluate(features.conditions, {ranking}, cfg);
  const auto& cell = report.rows.front().cells.at(c);
  if (!cell.result) throw Error(report.failures.front().code, cell.error);
  const auto& cv = *cell.result;
  std::printf("condition: %s\nfeature set: %s/%s (%zu features, %zu samples)\nclassifier: %s\n", condition.c_str(),
              family.c_str(), set.c_str(), data.cols(), data.rows(),
              std::string(ml::report_name(spec.kind)).c_str());
  std::printf("training micro-F1: %.4f\ncross-validated micro-F1: %s over %d folds%s\n", train_f1,
              cv.formatted().c_str(), cv.k, cv.k_lowered ? " (fold count lowered)" : "");
  for (std::size_t i = 0; i < cv.fold_scores.size(); ++i) std::printf("  fold %zu: %.4f\n", i + 1, cv.fold_scores[i]);
  return 0;
}

int cmd_compare(const std::vector<std::string>& reports, const std::string& grouping, double alpha,
                const std::string& json_out) {
  std::vector<fs::path> paths(reports.begin(), reports.end());
  const auto c = report::compare_conditions(paths, report::parse_grouping(grouping), alpha);
  std::fputs(report::format_comparison(c).c_str(), stdout);
  if (!json_out.empty()) report::write_comparison_json(c, json_out);
  return 0;
}

int cmd_plot(const std::vector<std::string>& reports, const std::string& outdir) {
  std::vector<fs::path> paths(reports.begin(), reports.end());
  for (const auto& p : plots::emit_plots(paths, outdir)) std::printf("wrote %s\n", p.generic_string().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acoustic and linguistic language assessment pipeline"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "langassess 0.1.0");

  synth::SynthSpec spec;
  std::string synth_out;
  auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic labelled cohort");
  synth_cmd->add_option("--outdir", synth_out, "output directory")->required();
  synth_cmd->add_option("--n-dementia", spec.n_dementia, "dementia subjects");
  synth_cmd->add_option("--n-control", spec.n_control, "control subjects");
  synth_cmd->add_option("--seed", spec.seed, "generator seed");
  synth_cmd->add_option("--separation", spec.separation, "group separation in [0, 1]");
  synth_cmd->add_option("--sample-rate", spec.sample_rate, "audio sample rate in Hz");
  synth_cmd->add_option("--duration", spec.duration_s, "picture-description recording length in seconds");

  Overrides extract_o, select_o, evaluate_o, run_o, train_o, print_o;
  extract_o.attach(app.add_subcommand("extract", "extract acoustic and linguistic features"));
  select_o.attach(app.add_subcommand("select", "rank acoustic features (ANOVA, RF, mRMR)"));
  evaluate_o.attach(app.add_subcommand("evaluate", "cross-validate every feature set and classifier"));
  run_o.attach(app.add_subcommand("run", "extract, select and evaluate in one go"));

  auto* train_cmd = app.add_subcommand("train", "fit and cross-validate one classifier on one feature set");
  train_o.attach(train_cmd);
  std::string t_condition = "pd", t_family = "acoustic", t_set = "anova", t_classifier = "RF";
  train_cmd->add_option("--condition", t_condition, "pd, sr, web or phone");
  train_cmd->add_option("--family", t_family, "linguistic or acoustic")
      ->check(CLI::IsMember({"linguistic", "acoustic"}));
  train_cmd->add_option("--feature-set", t_set, "feature set name");
  train_cmd->add_option("--classifier", t_classifier, "DT, ET, kNN, LDA, R_SVM, L_SVM, LR or RF");

  std::vector<std::string> c_reports;
  std::string c_grouping = "task", c_json;
  double c_alpha = 0.05;
  auto* compare_cmd = app.add_subcommand("compare", "one-way ANOVA and Tukey test between report groups");
  compare_cmd->add_option("--report", c_reports, "report CSV (repeatable)")->required();
  compare_cmd->add_option("--grouping", c_grouping, "task, medium or feature-family");
  compare_cmd->add_option("--alpha", c_alpha, "significance level");
  compare_cmd->add_option("--json", c_json, "also write the comparison as JSON");

  std::vector<std::string> p_reports;
  std::string p_outdir = "plots";
  auto* plot_cmd = app.add_subcommand("plot", "box plots and power curves as SVG and CSV");
  plot_cmd->add_option("--report", p_reports, "report CSV (repeatable)")->required();
  plot_cmd->add_option("--outdir", p_outdir, "output directory");

  auto* print_cmd = app.add_subcommand("print-config", "print the effective configuration");
  print_o.attach(print_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (*synth_cmd) return cmd_synth(spec, synth_out);
    if (app.got_subcommand("extract")) return cmd_extract(extract_o);
    if (app.got_subcommand("select")) return cmd_select(select_o);
    if (app.got_subcommand("evaluate")) return cmd_evaluate(evaluate_o);
    if (app.got_subcommand("run")) return cmd_run(run_o);
    if (*train_cmd) return cmd_train(train_o, t_condition, t_family, t_set, t_classifier);
    if (*compare_cmd) return cmd_compare(c_reports, c_grouping, c_alpha, c_json);
    if (*plot_cmd) return cmd_plot(p_reports, p_outdir);
    if (*print_cmd) {
      std::fputs(format_config(print_o.resolve(false)).c_str(), stdout);
      return 0;
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code(e);
  } catch (const fs::filesystem_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitData;
  }
  return 0;
}
