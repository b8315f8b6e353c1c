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

// Acceptance checks. Each run evaluates one criterion and prints a single
// "criterion N: PASS|FAIL ..." line; the exit status is 0 only on PASS.

#include <boost/math/special_functions/beta.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "fixtures.hpp"
#include "langassess/acoustic.hpp"
#include "langassess/featsel.hpp"
#include "langassess/functionals.hpp"
#include "langassess/models.hpp"
#include "langassess/pipeline.hpp"
#include "langassess/pitch.hpp"
#include "langassess/report.hpp"
#include "langassess/semantics.hpp"
#include "langassess/stats.hpp"
#include "langassess/synth.hpp"
#include "langassess/text.hpp"
#include "langassess/tree.hpp"
#include "oracles.hpp"

using namespace langassess;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Collects sub-check outcomes; the first failure message is reported.
struct Verdict {
  bool ok = true;
  std::string detail;

  void check(bool cond, const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what + (cond ? "" : " [miss]");
    ok = ok && cond;
  }
};

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

std::string read_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Matrix gaussian(Eigen::Index n, Eigen::Index p, Rng& rng) {
  Matrix x(n, p);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = rng.normal();
  return x;
}

ml::Labels random_labels(std::size_t n, Rng& rng) {
  ml::Labels y(n);
  for (auto& v : y) v = rng.bernoulli(0.5) ? 1 : 0;
  y[0] = 0;
  y[1] = 1;
  return y;
}

double boost_f_survival(double f, double d1, double d2) {
  return boost::math::ibeta(d2 / 2.0, d1 / 2.0, d2 / (d2 + d1 * f));
}

// Feature inventory and extraction time for a 30 s recording.
Verdict criterion1() {
  Verdict v;
  int spectral = 0, phonation = 0, speech = 0;
  for (const auto& n : acoustic_feature_names()) {
    switch (acoustic_group(n)) {
      case AcousticGroup::Spectral: ++spectral; break;
      case AcousticGroup::Phonation: ++phonation; break;
      case AcousticGroup::Speech: ++speech; break;
    }
  }
  v.check(acoustic_feature_names().size() == 296, fmt("acoustic %zu", acoustic_feature_names().size()));
  v.check(spectral == 248 && phonation == 40 && speech == 8, fmt("groups %d/%d/%d", spectral, phonation, speech));
  v.check(text::linguistic_feature_names().size() == 17, fmt("linguistic %zu", text::linguistic_feature_names().size()));

  Rng rng(11);
  const auto signal = synth::synthesize_voice({}, 16000, 30.0, rng);
  const auto transcript = synth::synthesize_text({}, Task::PD, 0, rng);
  const auto t0 = Clock::now();
  const auto a = extract_acoustic_vector(signal);
  const auto l = text::extract_linguistic_vector(text::tokenize(transcript), {});
  const double secs = seconds_since(t0);
  v.check(a.values.size() == 296 && l.values.size() == 17, "vector sizes");
  v.check(secs < 1.0, fmt("30 s recording in %.3f s", secs));
  return v;
}

// Meta-analysis of the transcribed result tables.
Verdict criterion2() {
  Verdict v;
  const fs::path dir = LANGASSESS_FIXTURE_DIR;
  const std::vector<fs::path> reports = {dir / "reference_f1_linguistic.csv", dir / "reference_f1_acoustic.csv"};
  const auto task = report::compare_conditions(reports, report::Grouping::Task);
  v.check(task.anova.df1 == 1 && task.anova.df2 == 126 && std::abs(task.anova.f - 8.27) <= 0.45 && task.anova.p <= 0.01,
          fmt("pd vs sr F(%d,%d)=%.3f p=%.4g (want 8.27+/-0.45, p<=0.01)", task.anova.df1, task.anova.df2,
              task.anova.f, task.anova.p));
  const auto medium = report::compare_conditions(reports, report::Grouping::Medium);
  v.check(medium.anova.df1 == 1 && medium.anova.df2 == 126 && std::abs(medium.anova.f - 4.26) <= 0.45 &&
              medium.anova.p <= 0.06,
          fmt("phone vs web F(%d,%d)=%.3f p=%.4g (want 4.26+/-0.45, p<=0.06)", medium.anova.df1, medium.anova.df2,
              medium.anova.f, medium.anova.p));
  const auto family = report::compare_conditions(reports, report::Grouping::FeatureFamily);
  v.check(std::abs(family.anova.f - 62.43) <= 3.2 && family.higher == "acoustic",
          fmt("acoustic vs linguistic F(%d,%d)=%.3f higher=%s (want 62.43+/-3.2, acoustic)", family.anova.df1,
              family.anova.df2, family.anova.f, family.higher.c_str()));
  return v;
}

// Formula fixtures against hand values and independent references.
Verdict criterion3() {
  Verdict v;
  const auto t0 = Clock::now();
  const double w = 15, u = 13, s = 2, syl = 21;
  const auto doc = text::tokenize("The big boy quickly jumped in the park. He and I jumped because Mary waited.");
  const auto lv = text::extract_linguistic_vector(doc, {0.1, 0.2, 0.3, 0.4});
  const std::vector<double> expected = {std::pow(w, std::pow(u, -0.165)),
                                        100.0 * std::log(w) / (1.0 - w / u),
                                        0.39 * (w / s) + 11.8 * (syl / w) - 15.59,
                                        206.835 - 1.015 * (w / s) - 84.6 * (syl / w),
                                        u / w,
                                        1.0,
                                        0.5,
                                        2.0 / 3.0,
                                        1.0,
                                        7.0 / 15.0,
                                        7.0 / 15.0,
                                        2.0 / 15.0,
                                        3.0 / 15.0,
                                        0.1,
                                        0.2,
                                        0.3,
                                        0.4};
  bool text_ok = doc.w == 15 && doc.u == 13 && doc.s == 2 && doc.syl == 21;
  for (std::size_t i = 0; i < 17; ++i) text_ok = text_ok && close(lv.values[i], expected[i], 1e-9);
  v.check(text_ok, "BI/HS/FK/FRES/ratios/densities");

  const std::vector<double> periods = {10, 11, 10, 11}, amps = {1.0, 0.8, 1.0, 0.8};
  const auto p = dsp::perturbation(periods, amps);
  v.check(close(p.jitter_local, 1.0 / 10.5, 1e-9) && close(p.jitter_ddp, 2.0 / 10.5, 1e-9) &&
              close(p.shimmer, 0.2 / 0.9, 1e-9),
          "jitter/shimmer");

  const std::vector<double> x4 = {1, 2, 3, 4};
  const auto f = dsp::functionals(x4);
  v.check(close(f.mean, 2.5, 1e-9) && close(f.std, std::sqrt(1.25), 1e-9) && std::abs(f.skew) < 1e-9 &&
              close(f.kurt, 2.5625 / 1.5625 - 3.0, 1e-9),
          "functionals");

  bool sem_ok = true;
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    std::vector<Vector> vs(3 + t % 5, Vector(6));
    for (auto& e : vs) {
      for (Eigen::Index i = 0; i < 6; ++i) e[i] = rng.normal();
    }
    sem_ok = sem_ok && close(semantics::cosine(vs[0], vs[1]), oracle::cos_sim(vs[0], vs[1]), 1e-9);
    sem_ok = sem_ok && close(semantics::incoherence_sa(vs), oracle::brute_incoherence_sa(vs), 1e-9);
    const double sif = oracle::brute_incoherence_sum(
        vs.size(), [&](std::size_t i, std::size_t j) { return 1.0 - oracle::cos_sim(vs[i], vs[j]); });
    sem_ok = sem_ok && close(semantics::incoherence_sif(vs), sif, 1e-9);
  }
  const semantics::Sentences four = {
      {"the", "cat", "sat"}, {"the", "dog", "ran"}, {"a", "cat", "ran", "far"}, {"the", "end"}};
  const auto dense = oracle::dense_tfidf(four);
  const double tf =
      oracle::brute_incoherence_sum(4, [&](std::size_t i, std::size_t j) { return oracle::cos_sim(dense[i], dense[j]); });
  sem_ok = sem_ok && close(semantics::incoherence_tfidf(four), tf, 1e-9);
  v.check(sem_ok, "cosine/incoherence");

  Signal sig;
  sig.samples = oracle::sine(440.0, 16000, 4000);
  const auto frames = dsp::frame_signal(sig);
  const Matrix c = dsp::mfcc(frames);
  const Matrix b = dsp::log_mel(frames);
  const auto ref = oracle::reference_mfcc(sig.samples, 16000);
  bool dsp_ok = c.rows() == ref.mfcc.rows();
  for (Eigen::Index r = 0; dsp_ok && r < c.rows(); ++r) {
    for (Eigen::Index k = 0; k < 15; ++k) dsp_ok = dsp_ok && close(c(r, k), ref.mfcc(r, k), 1e-6);
    for (Eigen::Index k = 0; k < 8; ++k) dsp_ok = dsp_ok && close(b(r, k), ref.log_mel(r, k), 1e-6);
  }
  v.check(dsp_ok, "mfcc/log-mel (1e-6)");
  const double secs = seconds_since(t0);
  v.check(secs < 10.0, fmt("%.2f s", secs));
  return v;
}

// Classifier oracles.
Verdict criterion4() {
  Verdict v;
  int knn_ok = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed + 100);
    const auto n = static_cast<Eigen::Index>(6 + rng.index(30));
    const auto p = static_cast<Eigen::Index>(1 + rng.index(5));
    Matrix x = gaussian(n, p, rng);
    if (seed % 2 == 0) x = x.array().round();
    const auto y = random_labels(static_cast<std::size_t>(n), rng);
    Matrix q = gaussian(20, p, rng);
    if (seed % 2 == 0) q = q.array().round();
    const int k = 1 + static_cast<int>(rng.index(7));
    knn_ok += ml::KnnModel{k, x, y}.predict(q) == oracle::brute_knn(x, y, q, k);
  }
  v.check(knn_ok == 50, fmt("kNN %d/50", knn_ok));

  double worst_grad = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    const Matrix x = gaussian(25, 4, rng);
    const auto y = random_labels(25, rng);
    Vector theta(5);
    for (int i = 0; i < 5; ++i) theta[i] = rng.normal();
    const double c = 0.5 + static_cast<double>(seed);
    const Vector g = ml::logistic_gradient(theta, x, y, c);
    Vector fd(5);
    for (int i = 0; i < 5; ++i) {
      const double h = 1e-5 * std::max(1.0, std::abs(theta[i]));
      Vector a = theta, b = theta;
      a[i] += h;
      b[i] -= h;
      fd[i] = (ml::logistic_loss(a, x, y, c) - ml::logistic_loss(b, x, y, c)) / (2.0 * h);
    }
    worst_grad = std::max(worst_grad, (g - fd).norm() / fd.norm());
  }
  v.check(worst_grad < 1e-4, fmt("LR gradient rel err %.2e", worst_grad));

  double worst_kkt = 0.0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Rng rng(seed + 7);
    Matrix x = gaussian(6, 2, rng);
    for (Eigen::Index i = 3; i < 6; ++i) x.row(i).array() += 0.8;
    const ml::Labels y = {0, 0, 0, 1, 1, 1};
    ml::SvmParams sp;
    sp.c = seed % 3 == 0 ? 0.5 : 10.0;
    const auto m = ml::SvmModel::fit(x, y, sp);
    worst_kkt = std::max(worst_kkt, oracle::svm_kkt_residual(x, y, sp.c, m.alpha, m.b));
  }
  v.check(worst_kkt < 1e-6, fmt("SVM KKT residual %.2e", worst_kkt));

  int dt_ok = 0, dt_total = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Rng rng(seed + 500);
    const Matrix x = ((gaussian(20, 3, rng) * 10.0).array().round() / 10.0).matrix();
    const auto y = random_labels(20, rng);
    const auto best = oracle::exhaustive_split(x, y);
    const double parent = oracle::gini_of(std::count(y.begin(), y.end(), 0), std::count(y.begin(), y.end(), 1));
    if (!best.unique || best.impurity >= parent - 1e-12) continue;
    ml::DecisionTree tree;
    ml::TreeParams tp;
    tp.max_depth = 1;
    tree.fit(x, y, tp);
    const auto& root = tree.nodes().front();
    ++dt_total;
    dt_ok += root.feature == best.feature && std::abs(root.threshold - best.threshold) < 1e-12;
  }
  v.check(dt_total >= 20 && dt_ok == dt_total, fmt("DT first split %d/%d", dt_ok, dt_total));
  return v;
}

// Mean of each classifier's cell means over every feature set and condition.
std::map<std::string, double> classifier_means(const EvaluationReport& r) {
  std::map<std::string, std::pair<double, int>> acc;
  for (const auto& row : r.rows) {
    for (const auto& [c, cell] : row.cells) {
      if (!cell.result) continue;
      auto& a = acc[std::string(ml::report_name(row.classifier))];
      a.first += cell.result->mean;
      ++a.second;
    }
  }
  std::map<std::string, double> out;
  for (const auto& [k, a] : acc) out[k] = a.second ? a.first / a.second : 0.0;
  return out;
}

// End-to-end behaviour on separable and null synthetic cohorts.
Verdict criterion5() {
  Verdict v;
  const auto t0 = Clock::now();
  auto run = [](double separation, bool shuffle, const std::string& name) {
    const auto dir = oracle::fresh_dir(name);
    synth::SynthSpec spec;
    spec.separation = separation;
    synth::synthesize_cohort(spec, dir / "data");
    PipelineConfig cfg;
    cfg.manifest = dir / "data" / "manifest.csv";
    cfg.output_dir = dir / "out";
    cfg.shuffle_labels = shuffle;
    return run_pipeline(cfg);
  };
  const auto apart = run(1.0, false, "accept5_sep1");
  const auto m1 = classifier_means(apart.report);
  double best_tree = 0.0;
  std::string best_name;
  for (const char* t : {"DT", "ET", "RF"}) {
    if (m1.at(t) > best_tree) {
      best_tree = m1.at(t);
      best_name = t;
    }
  }
  v.check(best_tree >= 0.9, fmt("sep=1 best tree %s %.3f", best_name.c_str(), best_tree));

  const auto null = run(0.0, true, "accept5_null");
  const auto m0 = classifier_means(null.report);
  std::string spread;
  bool inside = m0.size() == 8;
  for (const auto& [k, m] : m0) {
    spread += fmt("%s %.2f ", k.c_str(), m);
    inside = inside && m >= 0.35 && m <= 0.65;
  }
  v.check(inside, "null means " + spread.substr(0, spread.size() - 1));
  const double secs = seconds_since(t0);
  v.check(secs < 120.0, fmt("%.1f s", secs));
  return v;
}

// PCA group projection on planted low-rank structure.
Verdict criterion6() {
  Verdict v;
  featsel::PcaProjection fitted;
  const auto out = featsel::pca_combine(fixtures::planted_acoustic(40, 8), &fitted);
  v.check(out.names.size() == 18, fmt("%zu names", out.names.size()));
  double worst = 1.0;
  for (const auto& g : fitted.groups) worst = std::min(worst, g.explained[0] + g.explained[1]);
  v.check(worst >= 0.75, fmt("min retained %.3f", worst));
  return v;
}

// ANOVA p-values and the power curve.
Verdict criterion7() {
  Verdict v;
  Rng rng(2024);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    stats::ScoreGroups g{{"a", {}}, {"b", {}}};
    const auto na = 2 + rng.index(60), nb = 2 + rng.index(60);
    const double shift = rng.uniform(0.0, 1.5);
    for (std::size_t k = 0; k < na; ++k) g[0].values.push_back(rng.normal());
    for (std::size_t k = 0; k < nb; ++k) g[1].values.push_back(rng.normal(shift, 1.0));
    const auto r = stats::one_way_anova(g);
    worst = std::max(worst, std::abs(r.p - boost_f_survival(r.f, r.df1, r.df2)));
  }
  v.check(worst <= 1e-8, fmt("max |p - ibeta| %.2e", worst));
  const Matrix p = stats::power_curve({0.0, 0.5}, {64}, 0.05);
  v.check(p(0, 0) == 0.05, fmt("power(es=0) %.17g", p(0, 0)));
  v.check(std::abs(p(1, 0) - 0.80) <= 0.02, fmt("power(0.5, 64) %.4f", p(1, 0)));
  return v;
}

// Two identical runs give byte-identical artifacts.
Verdict criterion8() {
  Verdict v;
  const auto dir = oracle::fresh_dir("accept8");
  synth::SynthSpec spec;
  spec.n_dementia = 6;
  spec.n_control = 6;
  spec.duration_s = 3.0;
  synth::synthesize_cohort(spec, dir / "data");
  auto cfg = [&](const char* out) {
    PipelineConfig c;
    c.manifest = dir / "data" / "manifest.csv";
    c.output_dir = dir / out;
    c.folds = 2;
    return c;
  };
  run_pipeline(cfg("a"));
  run_pipeline(cfg("b"));
  std::size_t files = 0, same = 0;
  for (const auto& e : fs::recursive_directory_iterator(dir / "a")) {
    if (!e.is_regular_file()) continue;
    ++files;
    const auto twin = dir / "b" / fs::relative(e.path(), dir / "a");
    same += fs::exists(twin) && read_bytes(e.path()) == read_bytes(twin);
  }
  v.check(files > 0 && same == files, fmt("%zu/%zu files identical", same, files));
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  int criterion = 0;
  app.add_option("--criterion", criterion, "criterion number (1-8)")->required()->check(CLI::Range(1, 8));
  CLI11_PARSE(app, argc, argv);

  Verdict v;
  try {
    switch (criterion) {
      case 1: v = criterion1(); break;
      case 2: v = criterion2(); break;
      case 3: v = criterion3(); break;
      case 4: v = criterion4(); break;
      case 5: v = criterion5(); break;
      case 6: v = criterion6(); break;
      case 7: v = criterion7(); break;
      case 8: v = criterion8(); break;
    }
  } catch (const std::exception& e) {
    v.ok = false;
    v.detail = std::string("error: ") + e.what();
  }
  std::printf("criterion %d: %s (%s)\n", criterion, v.ok ? "PASS" : "FAIL", v.detail.c_str());
  return v.ok ? 0 : 1;
}
