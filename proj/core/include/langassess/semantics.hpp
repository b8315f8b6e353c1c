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

#ifndef LANGASSESS_SEMANTICS_HPP_
#define LANGASSESS_SEMANTICS_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "langassess/types.hpp"

namespace langassess::semantics {

using Sentences = std::vector<std::vector<std::string>>;

class EmbeddingTable {
 public:
  EmbeddingTable() = default;

  // "word v1 .. vd" per line. Throws DimensionMismatch on ragged rows or d < 2.
  static EmbeddingTable parse(std::string_view embeddings);
  static EmbeddingTable load(const std::filesystem::path& embeddings,
                             const std::optional<std::filesystem::path>& counts = std::nullopt);
  static const EmbeddingTable& bundled();

  // "word count" per line. Frequencies are normalized over the listed words.
  // Without counts every vocabulary word gets the same frequency.
  void set_counts(std::string_view counts);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return vectors_.size(); }
  bool contains(std::string_view word) const;

  // OOV words map to the zero vector; *oov is incremented when given.
  Vector lookup(std::string_view word, std::size_t* oov = nullptr) const;
  // p(w); 0 for words without a count.
  double frequency(std::string_view word) const;

 private:
  std::size_t dim_ = 0;
  std::unordered_map<std::string, Vector> vectors_;
  std::unordered_map<std::string, double> freq_;
};

// Mean of token vectors, OOV zeros included. Empty input gives a zero vector.
Vector embed_sa(const std::vector<std::string>& tokens, const EmbeddingTable& table,
                std::size_t* oov = nullptr);

// Weighted means with weight a / (a + p(w)), then removal of the projection
// onto the first (uncentered) principal component of the sentence vectors.
std::vector<Vector> embed_sif(const Sentences& sentences, const EmbeddingTable& table,
                              double a = 1e-3, std::size_t* oov = nullptr);

using SparseVector = std::map<std::string, double>;

// Sentences act as documents: idf = ln((1+S)/(1+df)) + 1, L2-normalized.
std::vector<SparseVector> tfidf_vectors(const Sentences& sentences);

// A zero operand gives 0 and sets *zero_operand.
double cosine(const Vector& a, const Vector& b, bool* zero_operand = nullptr);
double cosine(const SparseVector& a, const SparseVector& b, bool* zero_operand = nullptr);

// All three exclude j == i. With fewer than two sentences SA returns 1.0,
// SIF and TFIDF return 0.0, and *single_sentence is set.
double incoherence_sa(const std::vector<Vector>& v, bool* single_sentence = nullptr);
double incoherence_sif(const std::vector<Vector>& v, bool* single_sentence = nullptr);
double incoherence_tfidf(const std::vector<SparseVector>& v, bool* single_sentence = nullptr);
double incoherence_tfidf(const Sentences& sentences, bool* single_sentence = nullptr);

struct IncoherenceValues {
  double sa = 0.0;
  double sif = 0.0;
  double tfidf = 0.0;
  std::size_t oov_tokens = 0;
  bool single_sentence = false;
};

IncoherenceValues incoherence(const Sentences& sentences, const EmbeddingTable& table,
                              double sif_a = 1e-3);

}  // namespace langassess::semantics

#endif  // LANGASSESS_SEMANTICS_HPP_
