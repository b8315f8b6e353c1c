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

// Reference implementations used by the tests. Everything here is written
// from the textbook definitions, deliberately slow and without sharing code
// with the library.

#ifndef LANGASSESS_TESTS_ORACLES_HPP_
#define LANGASSESS_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Dense = Eigen::MatrixXd;

inline std::filesystem::path fresh_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "langassess_tests" / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::vector<double> sine(double hz, int sample_rate, std::size_t n, double amplitude = 1.0) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = amplitude * std::sin(2.0 * std::numbers::pi * hz * static_cast<double>(i) / sample_rate);
  }
  return out;
}

// ---------------------------------------------------------------- DSP chain

struct MfccReference {
  Dense mfcc;     // frames x n_ceps
  Dense log_mel;  // frames x n_bands
};

inline double mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
inline double inv_mel(double m) { return 700.0 * (std::pow(10.0, m / 2595.0) - 1.0); }

// Framing, Hamming window, direct DFT, triangular mel bank, log with floor,
// orthonormal DCT-II computed term by term.
inline Dense reference_log_bands(const std::vector<double>& x, int sr, int n_filters) {
  const int len = static_cast<int>(std::lround(sr * 0.025));
  const int hop = static_cast<int>(std::lround(sr * 0.010));
  int nfft = 1;
  while (nfft < len) nfft *= 2;
  const int frames = (static_cast<int>(x.size()) - len) / hop + 1;
  std::vector<double> edges(n_filters + 2);
  for (int i = 0; i < n_filters + 2; ++i) edges[i] = inv_mel(mel(sr / 2.0) * i / (n_filters + 1));

  Dense out(frames, n_filters);
  std::vector<double> w(len);
  for (int i = 0; i < len; ++i) w[i] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * i / (len - 1));
  for (int t = 0; t < frames; ++t) {
    std::vector<double> power(nfft / 2 + 1);
    for (int k = 0; k <= nfft / 2; ++k) {
      long double re = 0.0L, im = 0.0L;
      for (int i = 0; i < len; ++i) {
        const long double v = x[static_cast<std::size_t>(t * hop + i)] * w[i];
        const long double ang = 2.0L * std::numbers::pi_v<long double> * k * i / nfft;
        re += v * std::cos(ang);
        im -= v * std::sin(ang);
      }
      power[k] = static_cast<double>(re * re + im * im);
    }
    for (int m = 0; m < n_filters; ++m) {
      double e = 0.0;
      for (int k = 0; k <= nfft / 2; ++k) {
        const double f = static_cast<double>(k) * sr / nfft;
        double weight = 0.0;
        if (f >= edges[m] && f <= edges[m + 1]) {
          weight = (f - edges[m]) / (edges[m + 1] - edges[m]);
        } else if (f > edges[m + 1] && f <= edges[m + 2]) {
          weight = (edges[m + 2] - f) / (edges[m + 2] - edges[m + 1]);
        }
        e += weight * power[k];
      }
      out(t, m) = std::log(std::max(e, 1e-10));
    }
  }
  return out;
}

inline MfccReference reference_mfcc(const std::vector<double>& x, int sr, int n_ceps = 15,
                                    int n_filters = 26, int n_bands = 8) {
  MfccReference ref;
  const Dense logs = reference_log_bands(x, sr, n_filters);
  ref.mfcc.resize(logs.rows(), n_ceps);
  for (Eigen::Index t = 0; t < logs.rows(); ++t) {
    for (int n = 0; n < n_ceps; ++n) {
      double acc = 0.0;
      for (int m = 0; m < n_filters; ++m) {
        acc += logs(t, m) * std::cos(std::numbers::pi * n * (m + 0.5) / n_filters);
      }
      ref.mfcc(t, n) = acc * std::sqrt((n == 0 ? 1.0 : 2.0) / n_filters);
    }
  }
  ref.log_mel = reference_log_bands(x, sr, n_bands);
  return ref;
}

// ------------------------------------------------------------- semantics

inline double cos_sim(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const double na = a.norm(), nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return a.dot(b) / (na * nb);
}

inline double brute_incoherence_sa(const std::vector<Eigen::VectorXd>& v) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i) {
    double mx = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (i == j) continue;
      const double d = std::abs(static_cast<double>(i) - static_cast<double>(j)) + 1.0;
      mx = std::max(mx, cos_sim(v[i], v[j]) / d);
    }
    best = std::min(best, mx);
  }
  return best;
}

template <typename Sim>
double brute_incoherence_sum(std::size_t n, Sim sim) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      s += sim(i, j) / (std::abs(static_cast<double>(i) - static_cast<double>(j)) + 1.0);
    }
    best = std::min(best, s);
  }
  return best;
}

// Dense tf-idf with idf = ln((1+S)/(1+df)) + 1 over sentence documents.
inline std::vector<Eigen::VectorXd> dense_tfidf(const std::vector<std::vector<std::string>>& sentences) {
  std::map<std::string, int> index;
  for (const auto& s : sentences) {
    for (const auto& w : s) index.emplace(w, 0);
  }
  int next = 0;
  for (auto& [w, i] : index) i = next++;
  std::vector<double> df(index.size(), 0.0);
  for (const auto& s : sentences) {
    std::vector<bool> seen(index.size(), false);
    for (const auto& w : s) seen[index[w]] = true;
    for (std::size_t i = 0; i < seen.size(); ++i) df[i] += seen[i] ? 1.0 : 0.0;
  }
  const double n = static_cast<double>(sentences.size());
  std::vector<Eigen::VectorXd> out;
  for (const auto& s : sentences) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(index.size()));
    for (const auto& w : s) v[index[w]] += 1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] *= std::log((1.0 + n) / (1.0 + df[i])) + 1.0;
    if (v.norm() > 0.0) v /= v.norm();
    out.push_back(v);
  }
  return out;
}

// --------------------------------------------------------------- classifiers

// Majority of the k nearest rows by (squared distance, index); ties -> 0.
inline std::vector<int> brute_knn(const Dense& x, const std::vector<int>& y, const Dense& q, int k) {
  std::vector<int> out;
  for (Eigen::Index r = 0; r < q.rows(); ++r) {
    std::vector<std::pair<double, Eigen::Index>> d;
    for (Eigen::Index i = 0; i < x.rows(); ++i) d.emplace_back((x.row(i) - q.row(r)).squaredNorm(), i);
    std::sort(d.begin(), d.end());
    int ones = 0;
    const int take = std::min<int>(k, static_cast<int>(d.size()));
    for (int i = 0; i < take; ++i) ones += y[static_cast<std::size_t>(d[i].second)];
    out.push_back(2 * ones > take ? 1 : 0);
  }
  return out;
}

struct SplitChoice {
  int feature = -1;
  double threshold = 0.0;
  double impurity = 0.0;  // weighted child Gini
  bool unique = true;     // no other candidate within 1e-12 of the optimum
};

inline double gini_of(double n0, double n1) {
  const double n = n0 + n1;
  if (n == 0.0) return 0.0;
  return 1.0 - (n0 / n) * (n0 / n) - (n1 / n) * (n1 / n);
}

// Every midpoint between consecutive distinct values of every feature.
inline SplitChoice exhaustive_split(const Dense& x, const std::vector<int>& y) {
  struct Cand {
    int f;
    double t, imp;
  };
  std::vector<Cand> all;
  const double n = static_cast<double>(x.rows());
  for (int f = 0; f < x.cols(); ++f) {
    std::vector<double> vals(x.col(f).data(), x.col(f).data() + x.rows());
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
      const double t = 0.5 * (vals[i] + vals[i + 1]);
      double l0 = 0, l1 = 0, r0 = 0, r1 = 0;
      for (Eigen::Index r = 0; r < x.rows(); ++r) {
        const bool left = x(r, f) <= t;
        const bool one = y[static_cast<std::size_t>(r)] == 1;
        (left ? (one ? l1 : l0) : (one ? r1 : r0)) += 1.0;
      }
      all.push_back({f, t, ((l0 + l1) * gini_of(l0, l1) + (r0 + r1) * gini_of(r0, r1)) / n});
    }
  }
  SplitChoice best;
  if (all.empty()) return best;
  double lo = all.front().imp;
  for (const auto& c : all) lo = std::min(lo, c.imp);
  int within = 0;
  for (const auto& c : all) {
    if (c.imp <= lo + 1e-12) {
      if (within == 0) best = {c.f, c.t, c.imp, true};
      ++within;
    }
  }
  best.unique = within == 1;
  return best;
}

// Dual of the soft-margin SVM with a linear kernel, solved by enumerating
// every assignment of each multiplier to {0, free, C}.
struct QpSolution {
  Eigen::VectorXd alpha;
  double b = 0.0;
  double objective = std::numeric_limits<double>::infinity();
  bool found = false;
};

inline QpSolution enumerate_svm_dual(const Dense& x, const std::vector<int>& labels, double c) {
  const int n = static_cast<int>(x.rows());
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) y[i] = labels[static_cast<std::size_t>(i)] == 1 ? 1.0 : -1.0;
  const Dense k = x * x.transpose();
  Dense q(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) q(i, j) = y[i] * y[j] * k(i, j);
  }
  QpSolution best;
  int combos = 1;
  for (int i = 0; i < n; ++i) combos *= 3;
  for (int code = 0; code < combos; ++code) {
    std::vector<int> state(n);  // 0 lower, 1 free, 2 upper
    int rest = code;
    std::vector<int> free_idx;
    for (int i = 0; i < n; ++i) {
      state[i] = rest % 3;
      rest /= 3;
      if (state[i] == 1) free_idx.push_back(i);
    }
    Eigen::VectorXd alpha = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) {
      if (state[i] == 2) alpha[i] = c;
    }
    double b = 0.0;
    const int m = static_cast<int>(free_idx.size());
    if (m > 0) {
      // Rows: (Q alpha)_i + y_i b = 1 for free i, and y'alpha = 0.
      Dense a = Dense::Zero(m + 1, m + 1);
      Eigen::VectorXd rhs(m + 1);
      for (int r = 0; r < m; ++r) {
        const int i = free_idx[r];
        for (int s = 0; s < m; ++s) a(r, s) = q(i, free_idx[s]);
        a(r, m) = y[i];
        rhs[r] = 1.0 - q.row(i).dot(alpha);
      }
      for (int s = 0; s < m; ++s) a(m, s) = y[free_idx[s]];
      rhs[m] = -y.dot(alpha);
      Eigen::FullPivLU<Dense> lu(a);
      if (lu.rank() < m + 1) continue;
      const Eigen::VectorXd sol = lu.solve(rhs);
      bool ok = true;
      for (int s = 0; s < m; ++s) {
        if (!(sol[s] > 0.0 && sol[s] < c)) ok = false;
        alpha[free_idx[s]] = sol[s];
      }
      if (!ok) continue;
      b = sol[m];
    } else {
      if (std::abs(y.dot(alpha)) > 1e-12) continue;
      // b only needs to satisfy the bound-constraint inequalities.
      double lo = -std::numeric_limits<double>::infinity(), hi = std::numeric_limits<double>::infinity();
      for (int i = 0; i < n; ++i) {
        const double g = 1.0 - q.row(i).dot(alpha);  // need y_i b >= g (lower) or <= g (upper)
        const bool want_ge = state[i] == 0;
        if ((y[i] > 0) == want_ge) {
          lo = std::max(lo, y[i] > 0 ? g : -g);
        } else {
          hi = std::min(hi, y[i] > 0 ? g : -g);
        }
      }
      if (lo > hi + 1e-12) continue;
      b = std::isfinite(lo) ? lo : (std::isfinite(hi) ? hi : 0.0);
    }
    bool feasible = true;
    for (int i = 0; i < n; ++i) {
      const double margin = q.row(i).dot(alpha) + y[i] * b;  // y_i f(x_i)
      if (state[i] == 0 && margin < 1.0 - 1e-9) feasible = false;
      if (state[i] == 2 && margin > 1.0 + 1e-9) feasible = false;
    }
    if (!feasible) continue;
    const double obj = 0.5 * alpha.dot(q * alpha) - alpha.sum();
    if (obj < best.objective) best = {alpha, b, obj, true};
  }
  return best;
}

// Largest violation of the dual optimality conditions for given multipliers
// and intercept, linear kernel.
inline double svm_kkt_residual(const Dense& x, const std::vector<int>& labels, double c,
                               const Eigen::VectorXd& alpha, double b) {
  const int n = static_cast<int>(x.rows());
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) y[i] = labels[static_cast<std::size_t>(i)] == 1 ? 1.0 : -1.0;
  double worst = std::abs(alpha.dot(y));
  for (int i = 0; i < n; ++i) {
    double f = b;
    for (int j = 0; j < n; ++j) f += alpha[j] * y[j] * x.row(j).dot(x.row(i));
    const double margin = y[i] * f;
    worst = std::max(worst, std::max(0.0, -alpha[i]));
    worst = std::max(worst, std::max(0.0, alpha[i] - c));
    if (alpha[i] <= 0.0) {
      worst = std::max(worst, std::max(0.0, 1.0 - margin));
    } else if (alpha[i] >= c) {
      worst = std::max(worst, std::max(0.0, margin - 1.0));
    } else {
      worst = std::max(worst, std::abs(margin - 1.0));
    }
  }
  return worst;
}

// ------------------------------------------------------------- selection

inline std::vector<int> discretize_mean_sd(const std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  const double sd = std::sqrt(var / static_cast<double>(v.size()));
  std::vector<int> out;
  for (double x : v) out.push_back(x < mean - sd ? 0 : (x > mean + sd ? 2 : 1));
  return out;
}

inline double mi(const std::vector<int>& a, const std::vector<int>& b) {
  const double n = static_cast<double>(a.size());
  double total = 0.0;
  for (int u = 0; u < 3; ++u) {
    for (int v = 0; v < 3; ++v) {
      double nab = 0, na = 0, nb = 0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        nab += (a[i] == u && b[i] == v) ? 1 : 0;
        na += a[i] == u ? 1 : 0;
        nb += b[i] == v ? 1 : 0;
      }
      if (nab > 0) total += (nab / n) * std::log((nab / n) / ((na / n) * (nb / n)));
    }
  }
  return total;
}

// Greedy MID order recomputing every score from scratch at each step.
inline std::vector<int> brute_mrmr(const Dense& x, const std::vector<int>& y) {
  const int p = static_cast<int>(x.cols());
  std::vector<std::vector<int>> d;
  for (int c = 0; c < p; ++c) d.push_back(discretize_mean_sd(std::vector<double>(x.col(c).data(), x.col(c).data() + x.rows())));
  std::vector<int> order;
  std::vector<bool> used(p, false);
  for (int step = 0; step < p; ++step) {
    int best = -1;
    double best_score = 0.0;
    for (int c = 0; c < p; ++c) {
      if (used[c]) continue;
      double score = mi(d[c], y);
      if (!order.empty()) {
        double red = 0.0;
        for (int s : order) red += mi(d[c], d[s]);
        score -= red / static_cast<double>(order.size());
      }
      if (best < 0 || score > best_score + 1e-12) {
        best = c;
        best_score = score;
      }
    }
    used[best] = true;
    order.push_back(best);
  }
  return order;
}

// Two-group F by sums of squares.
inline double anova_f(const std::vector<std::vector<double>>& groups) {
  double grand = 0.0;
  std::size_t n = 0;
  for (const auto& g : groups) {
    for (double v : g) grand += v;
    n += g.size();
  }
  grand /= static_cast<double>(n);
  double ssb = 0.0, ssw = 0.0;
  for (const auto& g : groups) {
    double m = 0.0;
    for (double v : g) m += v;
    m /= static_cast<double>(g.size());
    ssb += static_cast<double>(g.size()) * (m - grand) * (m - grand);
    for (double v : g) ssw += (v - m) * (v - m);
  }
  const double df1 = static_cast<double>(groups.size() - 1);
  const double df2 = static_cast<double>(n - groups.size());
  return (ssb / df1) / (ssw / df2);
}

}  // namespace oracle

#endif  // LANGASSESS_TESTS_ORACLES_HPP_
