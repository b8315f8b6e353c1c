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

#include "langassess/lda.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <ostream>
#include <set>

#include "langassess/error.hpp"
#include "langassess/rng.hpp"

namespace langassess::semantics {

std::vector<std::size_t> TopicModel::top_words(int t, std::size_t n) const {
  std::vector<std::size_t> idx(vocabulary.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return topic_word(t, static_cast<Eigen::Index>(a)) > topic_word(t, static_cast<Eigen::Index>(b));
  });
  idx.resize(std::min(n, idx.size()));
  return idx;
}

namespace {

struct Encoded {
  std::vector<std::string> vocab;
  std::vector<std::vector<int>> docs;
  std::size_t tokens = 0;
};

Encoded encode(const std::vector<std::vector<std::string>>& documents) {
  if (documents.empty()) throw Error(Errc::EmptyCorpus, "no documents for topic model");
  std::set<std::string> words;
  for (const auto& d : documents) words.insert(d.begin(), d.end());
  if (words.empty()) throw Error(Errc::EmptyCorpus, "documents contain no tokens");
  Encoded e;
  e.vocab.assign(words.begin(), words.end());
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < e.vocab.size(); ++i) index[e.vocab[i]] = static_cast<int>(i);
  for (const auto& d : documents) {
    std::vector<int> ids;
    ids.reserve(d.size());
    for (const auto& w : d) ids.push_back(index[w]);
    e.tokens += ids.size();
    e.docs.push_back(std::move(ids));
  }
  return e;
}

TopicModel gibbs(const Encoded& e, int k, const LdaConfig& cfg) {
  if (k < 1) throw Error(Errc::InvalidConfig, "topic count must be positive");
  const std::size_t v = e.vocab.size();
  const auto K = static_cast<std::size_t>(k);
  Eigen::MatrixXi nkw = Eigen::MatrixXi::Zero(k, static_cast<Eigen::Index>(v));
  std::vector<int> nk(K, 0);
  std::vector<std::vector<int>> ndk(e.docs.size(), std::vector<int>(K, 0));
  std::vector<std::vector<int>> z(e.docs.size());

  Rng rng(cfg.seed);
  for (std::size_t d = 0; d < e.docs.size(); ++d) {
    z[d].resize(e.docs[d].size());
    for (std::size_t i = 0; i < e.docs[d].size(); ++i) {
      const int t = static_cast<int>(rng.index(K));
      z[d][i] = t;
      ++nkw(t, e.docs[d][i]);
      ++nk[static_cast<std::size_t>(t)];
      ++ndk[d][static_cast<std::size_t>(t)];
    }
  }

  const double vbeta = static_cast<double>(v) * cfg.beta;
  std::vector<double> p(K);
  for (int it = 0; it < cfg.iterations; ++it) {
    for (std::size_t d = 0; d < e.docs.size(); ++d) {
      for (std::size_t i = 0; i < e.docs[d].size(); ++i) {
        const int w = e.docs[d][i];
        const int old = z[d][i];
        --nkw(old, w);
        --nk[static_cast<std::size_t>(old)];
        --ndk[d][static_cast<std::size_t>(old)];
        double total = 0.0;
        for (std::size_t t = 0; t < K; ++t) {
          total += (ndk[d][t] + cfg.alpha) * (nkw(static_cast<Eigen::Index>(t), w) + cfg.beta) /
                   (nk[t] + vbeta);
          p[t] = total;
        }
        const double u = rng.uniform() * total;
        std::size_t t = 0;
        while (t + 1 < K && p[t] <= u) ++t;
        const int nt = static_cast<int>(t);
        z[d][i] = nt;
        ++nkw(nt, w);
        ++nk[t];
        ++ndk[d][t];
      }
    }
  }

  TopicModel m;
  m.k = k;
  m.seed = cfg.seed;
  m.vocabulary = e.vocab;
  m.topic_word = std::move(nkw);
  for (std::size_t d = 0; d < e.docs.size(); ++d) {
    const double denom = static_cast<double>(e.docs[d].size()) + static_cast<double>(K) * cfg.alpha;
    Vector th(k);
    int n = 0;
    for (std::size_t t = 0; t < K; ++t) {
      th[static_cast<Eigen::Index>(t)] = (ndk[d][t] + cfg.alpha) / denom;
      if (th[static_cast<Eigen::Index>(t)] > cfg.topic_threshold) ++n;
    }
    m.theta.push_back(std::move(th));
    m.n_topic.push_back(std::max(n, 1));
  }
  return m;
}

double umass(const TopicModel& m, const Encoded& e, std::size_t top_n) {
  std::vector<std::set<int>> doc_words;
  doc_words.reserve(e.docs.size());
  for (const auto& d : e.docs) doc_words.emplace_back(d.begin(), d.end());
  auto df = [&](int a) {
    int c = 0;
    for (const auto& s : doc_words) c += s.count(a) ? 1 : 0;
    return c;
  };
  auto co_df = [&](int a, int b) {
    int c = 0;
    for (const auto& s : doc_words) c += (s.count(a) && s.count(b)) ? 1 : 0;
    return c;
  };
  double sum = 0.0;
  for (int t = 0; t < m.k; ++t) {
    const auto top = m.top_words(t, top_n);
    double c = 0.0;
    for (std::size_t j = 1; j < top.size(); ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        const int wi = static_cast<int>(top[i]);
        const int wj = static_cast<int>(top[j]);
        c += std::log((co_df(wj, wi) + 1.0) / static_cast<double>(df(wi)));
      }
    }
    sum += c;
  }
  return sum / static_cast<double>(m.k);
}

}  // namespace

TopicModel fit_lda_k(const std::vector<std::vector<std::string>>& documents, int k,
                     const LdaConfig& cfg) {
  const auto e = encode(documents);
  auto m = gibbs(e, k, cfg);
  m.coherence = umass(m, e, static_cast<std::size_t>(cfg.coherence_top_n));
  return m;
}

TopicModel fit_lda(const std::vector<std::vector<std::string>>& documents, const LdaConfig& cfg) {
  if (cfg.k_min < 2 || cfg.k_max > 20 || cfg.k_min > cfg.k_max) {
    throw Error(Errc::InvalidConfig, "topic range must satisfy 2 <= k_min <= k_max <= 20");
  }
  const auto e = encode(documents);
  TopicModel best;
  bool have = false;
  for (int k = cfg.k_min; k <= cfg.k_max; ++k) {
    auto m = gibbs(e, k, cfg);
    m.coherence = umass(m, e, static_cast<std::size_t>(cfg.coherence_top_n));
    if (!have || m.coherence > best.coherence) {
      best = std::move(m);
      have = true;
    }
  }
  return best;
}

double umass_coherence(const TopicModel& model,
                       const std::vector<std::vector<std::string>>& documents, std::size_t top_n) {
  return umass(model, encode(documents), top_n);
}

double tangentiality(std::size_t d, const TopicModel& model) {
  if (d >= model.n_topic.size()) throw Error(Errc::DimensionMismatch, "document index out of range");
  const double total = std::accumulate(model.n_topic.begin(), model.n_topic.end(), 0.0);
  return 1.0 - static_cast<double>(model.n_topic[d]) / total;
}

std::vector<double> tangentiality_all(const TopicModel& model) {
  std::vector<double> out;
  out.reserve(model.n_topic.size());
  for (std::size_t d = 0; d < model.n_topic.size(); ++d) out.push_back(tangentiality(d, model));
  return out;
}

void write_model(std::ostream& out, const TopicModel& model) {
  out << "lda-model 1\n";
  out << "K " << model.k << "\n";
  out << "seed " << model.seed << "\n";
  out << "coherence " << model.coherence << "\n";
  out << "vocabulary " << model.vocabulary.size() << "\n";
  for (std::size_t w = 0; w < model.vocabulary.size(); ++w) {
    out << model.vocabulary[w];
    for (int t = 0; t < model.k; ++t) out << ' ' << model.topic_word(t, static_cast<Eigen::Index>(w));
    out << "\n";
  }
  out << "documents " << model.n_topic.size() << "\n";
  for (std::size_t d = 0; d < model.n_topic.size(); ++d) {
    out << model.n_topic[d];
    for (int t = 0; t < model.k; ++t) out << ' ' << model.theta[d][t];
    out << "\n";
  }
}

}  // namespace langassess::semantics
