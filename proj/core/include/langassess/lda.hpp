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

#ifndef LANGASSESS_LDA_HPP_
#define LANGASSESS_LDA_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "langassess/types.hpp"

namespace langassess::semantics {

struct LdaConfig {
  int k_min = 2;
  int k_max = 8;
  int iterations = 300;
  double alpha = 0.1;
  double beta = 0.01;
  double topic_threshold = 0.1;  // theta above this counts toward N_topic
  int coherence_top_n = 10;
  std::uint64_t seed = 42;
};

struct TopicModel {
  int k = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> vocabulary;   // sorted
  Eigen::MatrixXi topic_word;            // k x V counts
  std::vector<Vector> theta;             // per document, sums to 1
  std::vector<int> n_topic;              // per document, in [1, k]
  double coherence = 0.0;                // mean UMass over topics

  // Vocabulary indices of the n most probable words of topic t.
  std::vector<std::size_t> top_words(int t, std::size_t n) const;
};

// Collapsed Gibbs sampling at a single K.
TopicModel fit_lda_k(const std::vector<std::vector<std::string>>& documents, int k,
                     const LdaConfig& cfg);

// Fits every K in [k_min, k_max] and keeps the one with the highest mean
// UMass coherence; ties go to the smaller K. Throws EmptyCorpus.
TopicModel fit_lda(const std::vector<std::vector<std::string>>& documents,
                   const LdaConfig& cfg = {});

// Mean over topics of sum_{m<l} ln((D(w_m, w_l) + 1) / D(w_m)) over the top
// words, D counting documents.
double umass_coherence(const TopicModel& model,
                       const std::vector<std::vector<std::string>>& documents,
                       std::size_t top_n);

// 1 - N_topic(d) / sum_j N_topic(j).
double tangentiality(std::size_t d, const TopicModel& model);
std::vector<double> tangentiality_all(const TopicModel& model);

void write_model(std::ostream& out, const TopicModel& model);

}  // namespace langassess::semantics

#endif  // LANGASSESS_LDA_HPP_
