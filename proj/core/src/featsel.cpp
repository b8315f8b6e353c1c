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

#include "langassess/featsel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <set>

#include "langassess/acoustic.hpp"
#include "langassess/error.hpp"

namespace langassess::featsel {
namespace {

constexpr double kEps = 1e-12;

RankedFeatures sorted_ranking(RankMethod method, const std::vector<std::string>& names,
                              const std::vector<double>& scores) {
  std::vector<std::size_t> idx(names.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  RankedFeatures r;
  r.method = method;
  for (auto i : idx) r.ranked.emplace_back(names[i], scores[i]);
  return r;
}

}  // namespace

std::string_view to_string(RankMethod m) {
  switch (m) {
    case RankMethod::Anova: return "anova";
    case RankMethod::RF: return "rf";
    case RankMethod::MRMR: return "mrmr";
  }
  return "?";
}

RankMethod parse_rank_method(std::string_view s) {
  if (s == "anova") return RankMethod::Anova;
  if (s == "rf") return RankMethod::RF;
  if (s == "mrmr") return RankMethod::MRMR;
  throw Error(Errc::InvalidEnumValue, "unknown ranking method '" + std::string(s) + "'");
}

std::vector<std::string> RankedFeatures::top(std::size_t k) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < std::min(k, ranked.size()); ++i) out.push_back(ranked[i].first);
  return out;
}

std::vector<double> anova_f_scores(const Matrix& x, const ml::Labels& y) {
  const auto n = static_cast<double>(x.rows());
  double cnt[2] = {0.0, 0.0};
  for (int l : y) cnt[l == 1] += 1.0;
  if (cnt[0] == 0.0 || cnt[1] == 0.0) throw Error(Errc::SingleClassData, "ANOVA ranking needs both classes");
  if (x.rows() < 3) throw Error(Errc::TooFewSamples, "ANOVA ranking needs at least 3 samples");
  std::vector<double> scores(static_cast<std::size_t>(x.cols()), 0.0);
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    double sum[2] = {0.0, 0.0};
    for (Eigen::Index r = 0; r < x.rows(); ++r) sum[y[static_cast<std::size_t>(r)] == 1] += x(r, c);
    const double mean[2] = {sum[0] / cnt[0], sum[1] / cnt[1]};
    const double grand = (sum[0] + sum[1]) / n;
    double ssw = 0.0;
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
      const double d = x(r, c) - mean[y[static_cast<std::size_t>(r)] == 1];
      ssw += d * d;
    }
    const double ssb = cnt[0] * (mean[0] - grand) * (mean[0] - grand) +
                       cnt[1] * (mean[1] - grand) * (mean[1] - grand);
    const double scale = std::max(1.0, (x.col(c).array() - grand).square().sum());
    double f = 0.0;
    if (ssb <= kEps * scale) {
      f = 0.0;
    } else if (ssw <= 1e-18 * scale) {
      f = kAnovaCap;
    } else {
      f = std::min(kAnovaCap, ssb / (ssw / (n - 2.0)));
    }
    scores[static_cast<std::size_t>(c)] = f;
  }
  return scores;
}

RankedFeatures anova_f_rank(const FeatureMatrix& m) {
  m.validate();
  return sorted_ranking(RankMethod::Anova, m.names, anova_f_scores(m.x, m.y));
}

ml::ForestParams default_importance_forest() {
  ml::ForestParams p;
  p.n_trees = 100;
  p.seed = 42;
  p.max_features = -1;
  p.bootstrap = true;
  return p;
}

RankedFeatures rf_importance_rank(const FeatureMatrix& m, const ml::ForestParams& params) {
  m.validate();
  ml::Forest f;
  f.fit(m.x, m.y, params);
  const Vector& imp = f.importances();
  return sorted_ranking(RankMethod::RF, m.names, std::vector<double>(imp.data(), imp.data() + imp.size()));
}

std::vector<int> discretize3(const Eigen::Ref<const Vector>& column) {
  const auto n = static_cast<double>(column.size());
  std::vector<int> out(static_cast<std::size_t>(column.size()), 1);
  if (column.size() == 0) return out;
  const double mean = column.sum() / n;
  const double sd = std::sqrt((column.array() - mean).square().sum() / n);
  for (Eigen::Index i = 0; i < column.size(); ++i) {
    const double v = column[i];
    out[static_cast<std::size_t>(i)] = v < mean - sd ? 0 : (v > mean + sd ? 2 : 1);
  }
  return out;
}

double mutual_information(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) throw Error(Errc::DimensionMismatch, "sequences differ in length");
  if (a.empty()) return 0.0;
  std::map<std::pair<int, int>, double> joint;
  std::map<int, double> pa, pb;
  const double n = static_cast<double>(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    joint[{a[i], b[i]}] += 1.0 / n;
    pa[a[i]] += 1.0 / n;
    pb[b[i]] += 1.0 / n;
  }
  double mi = 0.0;
  for (const auto& [k, p] : joint) mi += p * std::log(p / (pa[k.first] * pb[k.second]));
  return std::max(0.0, mi);
}

RankedFeatures mrmr_rank(const FeatureMatrix& m) {
  m.validate();
  const std::size_t p = m.cols();
  std::vector<std::vector<int>> d(p);
  for (std::size_t c = 0; c < p; ++c) d[c] = discretize3(m.x.col(static_cast<Eigen::Index>(c)));
  std::vector<double> rel(p);
  for (std::size_t c = 0; c < p; ++c) rel[c] = mutual_information(d[c], m.y);

  RankedFeatures r;
  r.method = RankMethod::MRMR;
  std::vector<bool> chosen(p, false);
  std::vector<double> redundancy_sum(p, 0.0);
  for (std::size_t step = 0; step < p; ++step) {
    std::size_t best = p;
    double best_score = 0.0;
    for (std::size_t c = 0; c < p; ++c) {
      if (chosen[c]) continue;
      const double score = step == 0 ? rel[c] : rel[c] - redundancy_sum[c] / static_cast<double>(step);
      if (best == p || score > best_score + kEps) {
        best = c;
        best_score = score;
      }
    }
    chosen[best] = true;
    r.ranked.emplace_back(m.names[best], best_score);
    for (std::size_t c = 0; c < p; ++c) {
      if (!chosen[c]) redundancy_sum[c] += mutual_information(d[c], d[best]);
    }
  }
  return r;
}

CommonFeatures common_top_k(const std::vector<RankedFeatures>& rankings, std::size_t k) {
  CommonFeatures out;
  if (rankings.empty()) return out;
  std::vector<std::set<std::string>> tops;
  for (const auto& r : rankings) {
    const auto t = r.top(k);
    tops.emplace_back(t.begin(), t.end());
  }
  for (const auto& name : rankings.front().top(k)) {
    bool all = true;
    for (const auto& t : tops) all = all && t.count(name) > 0;
    if (all) out.names.push_back(name);
  }
  if (out.names.empty()) {
    out.union_fallback = true;
    std::set<std::string> seen;
    for (const auto& r : rankings) {
      for (const auto& name : r.top(k)) {
        if (seen.insert(name).second) out.names.push_back(name);
      }
    }
  }
  return out;
}

namespace {

struct ParsedName {
  std::string family;  // display label
  int family_order = 0;
  std::optional<int> index;
  std::string functional;
};

constexpr const char* kFunctionalOrder[] = {"mean", "std", "skew", "kurt"};

int functional_rank(const std::string& f) {
  for (int i = 0; i < 4; ++i) {
    if (f == kFunctionalOrder[i]) return i;
  }
  return 4;
}

std::optional<ParsedName> parse_acoustic_name(const std::string& name) {
  const auto& all = acoustic_feature_names();
  if (std::find(all.begin(), all.end(), name) == all.end()) return std::nullopt;
  ParsedName p;
  const auto us = name.rfind('_');
  p.functional = name.substr(us + 1);
  std::string series = name.substr(0, us);
  bool delta = false;
  if (series.ends_with("_delta")) {
    delta = true;
    series.resize(series.size() - 6);
  }
  struct Fam {
    const char* key;
    const char* label;
    bool indexed;
  };
  static const Fam fams[] = {
      {"mfcc", "MFCC", true},         {"log_mel", "Log Mel", true},
      {"lsp", "LSP freq", true},      {"f0", "F0", false},
      {"jitter_local", "Jitter (local)", false}, {"jitter_ddp", "Jitter (DDP)", false},
      {"shimmer", "Shimmer", false},  {"loudness", "Loudness", false},
      {"voicing_prob", "Voicing probability", false},
  };
  for (int i = 0; i < static_cast<int>(std::size(fams)); ++i) {
    const std::string key = fams[i].key;
    if (fams[i].indexed) {
      if (!series.starts_with(key)) continue;
      const std::string rest = series.substr(key.size());
      if (rest.empty() || rest.find_first_not_of("0123456789") != std::string::npos) continue;
      p.index = std::stoi(rest);
    } else if (series != key) {
      continue;
    }
    p.family = std::string(delta ? "Delta " : "") + fams[i].label;
    p.family_order = 2 * i + (delta ? 1 : 0);
    return p;
  }
  return std::nullopt;
}

}  // namespace

std::vector<std::string> grouped_feature_report(const std::vector<std::string>& names) {
  // Indexed families: (family, functional) -> indices. Scalar families:
  // family -> functionals.
  std::map<std::pair<int, int>, std::pair<std::string, std::set<int>>> indexed;
  std::map<int, std::pair<std::string, std::set<int>>> scalar;
  std::vector<std::string> other;
  for (const auto& n : names) {
    const auto p = parse_acoustic_name(n);
    if (!p) {
      other.push_back(n);
      continue;
    }
    const int fr = functional_rank(p->functional);
    if (p->index) {
      auto& e = indexed[{p->family_order, fr}];
      e.first = p->family + "|" + p->functional;
      e.second.insert(*p->index);
    } else {
      auto& e = scalar[p->family_order];
      e.first = p->family;
      e.second.insert(fr);
    }
  }
  std::vector<std::pair<int, std::string>> lines;
  for (const auto& [key, e] : indexed) {
    const auto bar = e.first.find('|');
    std::string idx;
    for (int i : e.second) idx += (idx.empty() ? "" : ",") + std::to_string(i);
    lines.emplace_back(key.first, e.first.substr(0, bar) + " " + idx + " (" + e.first.substr(bar + 1) + ")");
  }
  for (const auto& [fam, e] : scalar) {
    // Functionals are listed alphabetically, e.g. "Voicing prob. (kurt, mean, std)".
    std::set<std::string> sorted;
    for (int f : e.second) sorted.insert(kFunctionalOrder[f]);
    std::string fns;
    for (const auto& f : sorted) fns += (fns.empty() ? "" : ", ") + f;
    lines.emplace_back(fam, e.first + " (" + fns + ")");
  }
  std::stable_sort(lines.begin(), lines.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::string> out;
  for (auto& l : lines) out.push_back(std::move(l.second));
  out.insert(out.end(), other.begin(), other.end());
  return out;
}

std::vector<std::pair<std::string, std::vector<std::string>>> pca_input_groups() {
  std::vector<std::pair<std::string, std::vector<std::string>>> out;
  struct Block {
    const char* prefix;
    const char* series;
    const char* suffix;
    int count;
  };
  const Block blocks[] = {{"pca_mfcc", "mfcc", "", 15},
                          {"pca_mfcc_delta", "mfcc", "_delta", 15},
                          {"pca_lsp_delta", "lsp", "_delta", 8}};
  for (const auto& b : blocks) {
    for (const char* fn : {"mean", "kurt", "skew"}) {
      std::vector<std::string> cols;
      for (int i = 0; i < b.count; ++i) {
        cols.push_back(std::string(b.series) + std::to_string(i) + b.suffix + "_" + fn);
      }
      out.emplace_back(std::string(b.prefix) + "_" + fn, std::move(cols));
    }
  }
  return out;
}

PcaProjection PcaProjection::fit(const FeatureMatrix& m) {
  PcaProjection proj;
  for (auto& [prefix, cols] : pca_input_groups()) {
    const FeatureMatrix sub = m.select(cols);
    const Eigen::Index n = sub.x.rows();
    const Eigen::Index p = sub.x.cols();
    PcaGroup g;
    g.prefix = prefix;
    g.columns = cols;
    const double nn = static_cast<double>(std::max<Eigen::Index>(n, 1));
    g.mean = sub.x.colwise().sum().transpose() / nn;
    g.scale = Vector::Ones(p);
    Matrix z(n, p);
    for (Eigen::Index c = 0; c < p; ++c) {
      const double var = (sub.x.col(c).array() - g.mean[c]).square().sum() / nn;
      if (var > 0.0) g.scale[c] = std::sqrt(var);
      z.col(c) = (sub.x.col(c).array() - g.mean[c]) / g.scale[c];
    }
    const Eigen::MatrixXd cov = z.transpose() * z / std::max(1.0, nn - 1.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
    if (es.info() != Eigen::Success) throw Error(Errc::NumericalFailure, "PCA eigendecomposition failed");
    Vector evals = es.eigenvalues().reverse();
    Eigen::MatrixXd evecs = es.eigenvectors().rowwise().reverse();
    for (Eigen::Index i = 0; i < evals.size(); ++i) evals[i] = std::max(0.0, evals[i]);
    const double total = evals.sum();
    for (Eigen::Index i = 0; i < evals.size(); ++i) g.explained.push_back(total > 0.0 ? evals[i] / total : 0.0);
    const double tol = 1e-10 * std::max(evals[0], 1e-300);
    const int rank = static_cast<int>((evals.array() > tol).count());
    g.degenerate = total <= 0.0 || rank < 2;
    g.loadings = evecs.leftCols(2);
    for (int k = 0; k < 2; ++k) {
      Eigen::Index arg = 0;
      for (Eigen::Index i = 1; i < p; ++i) {
        if (std::abs(g.loadings(i, k)) > std::abs(g.loadings(arg, k)) + 1e-12) arg = i;
      }
      if (g.loadings(arg, k) < 0.0) g.loadings.col(k) *= -1.0;
    }
    proj.groups.push_back(std::move(g));
  }
  return proj;
}

std::vector<std::string> PcaProjection::output_names() const {
  std::vector<std::string> out;
  for (const auto& g : groups) {
    out.push_back(g.prefix + "_pc1");
    out.push_back(g.prefix + "_pc2");
  }
  return out;
}

FeatureMatrix PcaProjection::transform(const FeatureMatrix& m) const {
  FeatureMatrix out;
  out.sample_ids = m.sample_ids;
  out.y = m.y;
  out.names = output_names();
  out.x.resize(m.x.rows(), static_cast<Eigen::Index>(2 * groups.size()));
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    const auto& g = groups[gi];
    const FeatureMatrix sub = m.select(g.columns);
    for (Eigen::Index r = 0; r < sub.x.rows(); ++r) {
      const Vector zr = (sub.x.row(r).transpose() - g.mean).cwiseQuotient(g.scale);
      const auto c = static_cast<Eigen::Index>(2 * gi);
      const double total = std::accumulate(g.explained.begin(), g.explained.end(), 0.0);
      out.x(r, c) = total > 0.0 ? zr.dot(g.loadings.col(0)) : 0.0;
      out.x(r, c + 1) = g.degenerate ? 0.0 : zr.dot(g.loadings.col(1));
    }
  }
  return out;
}

FeatureMatrix pca_combine(const FeatureMatrix& m, PcaProjection* fitted) {
  auto proj = PcaProjection::fit(m);
  auto out = proj.transform(m);
  if (fitted) *fitted = std::move(proj);
  return out;
}

}  // namespace langassess::featsel
