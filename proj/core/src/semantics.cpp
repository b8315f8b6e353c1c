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

#include "langassess/semantics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "langassess/error.hpp"
#include "langassess/resources.hpp"

namespace langassess::semantics {
namespace {

std::string read_file(const std::filesystem::path& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::MissingFile, std::string("cannot open ") + what + " " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <typename F>
void for_each_line(std::string_view contents, F&& f) {
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < contents.size()) {
    auto end = contents.find('\n', pos);
    if (end == std::string_view::npos) end = contents.size();
    std::string_view line = contents.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    f(line, line_no);
  }
}

}  // namespace

EmbeddingTable EmbeddingTable::parse(std::string_view embeddings) {
  EmbeddingTable t;
  for_each_line(embeddings, [&](std::string_view line, std::size_t line_no) {
    std::istringstream ss{std::string(line)};
    std::string word;
    ss >> word;
    std::vector<double> vals;
    std::string tok;
    while (ss >> tok) {
      try {
        std::size_t used = 0;
        vals.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw Error(Errc::ParseError,
                    "embedding line " + std::to_string(line_no) + ": bad value '" + tok + "'");
      }
    }
    if (t.dim_ == 0) {
      if (vals.size() < 2) {
        throw Error(Errc::DimensionMismatch, "embedding dimension must be at least 2");
      }
      t.dim_ = vals.size();
    } else if (vals.size() != t.dim_) {
      throw Error(Errc::DimensionMismatch, "embedding line " + std::to_string(line_no) + " has " +
                                               std::to_string(vals.size()) + " values, expected " +
                                               std::to_string(t.dim_));
    }
    t.vectors_[word] = Eigen::Map<const Vector>(vals.data(), static_cast<Eigen::Index>(vals.size()));
  });
  if (t.vectors_.empty()) throw Error(Errc::DimensionMismatch, "embedding table is empty");
  const double uniform = 1.0 / static_cast<double>(t.vectors_.size());
  for (const auto& [w, v] : t.vectors_) t.freq_[w] = uniform;
  return t;
}

void EmbeddingTable::set_counts(std::string_view counts) {
  std::unordered_map<std::string, double> raw;
  double total = 0.0;
  for_each_line(counts, [&](std::string_view line, std::size_t line_no) {
    std::istringstream ss{std::string(line)};
    std::string word;
    double c = -1.0;
    if (!(ss >> word >> c) || c < 0.0) {
      throw Error(Errc::ParseError, "count line " + std::to_string(line_no) + ": expected 'word count'");
    }
    raw[word] += c;
    total += c;
  });
  if (total <= 0.0) throw Error(Errc::ParseError, "word counts sum to zero");
  freq_.clear();
  for (const auto& [w, c] : raw) freq_[w] = c / total;
}

EmbeddingTable EmbeddingTable::load(const std::filesystem::path& embeddings,
                                    const std::optional<std::filesystem::path>& counts) {
  auto t = parse(read_file(embeddings, "embedding file"));
  if (counts) t.set_counts(read_file(*counts, "frequency file"));
  return t;
}

const EmbeddingTable& EmbeddingTable::bundled() {
  static const EmbeddingTable t = [] {
    auto table = parse(resources::embeddings());
    table.set_counts(resources::word_counts());
    return table;
  }();
  return t;
}

bool EmbeddingTable::contains(std::string_view word) const {
  return vectors_.find(std::string(word)) != vectors_.end();
}

Vector EmbeddingTable::lookup(std::string_view word, std::size_t* oov) const {
  if (auto it = vectors_.find(std::string(word)); it != vectors_.end()) return it->second;
  if (oov) ++*oov;
  return Vector::Zero(static_cast<Eigen::Index>(dim_));
}

double EmbeddingTable::frequency(std::string_view word) const {
  auto it = freq_.find(std::string(word));
  return it == freq_.end() ? 0.0 : it->second;
}

Vector embed_sa(const std::vector<std::string>& tokens, const EmbeddingTable& table,
                std::size_t* oov) {
  Vector sum = Vector::Zero(static_cast<Eigen::Index>(table.dim()));
  if (tokens.empty()) return sum;
  for (const auto& t : tokens) sum += table.lookup(t, oov);
  return sum / static_cast<double>(tokens.size());
}

std::vector<Vector> embed_sif(const Sentences& sentences, const EmbeddingTable& table, double a,
                              std::size_t* oov) {
  const auto d = static_cast<Eigen::Index>(table.dim());
  std::vector<Vector> out;
  out.reserve(sentences.size());
  for (const auto& s : sentences) {
    Vector v = Vector::Zero(d);
    for (const auto& t : s) v += (a / (a + table.frequency(t))) * table.lookup(t, oov);
    if (!s.empty()) v /= static_cast<double>(s.size());
    out.push_back(std::move(v));
  }
  if (out.empty()) return out;

  Matrix m(static_cast<Eigen::Index>(out.size()), d);
  for (std::size_t i = 0; i < out.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = out[i];
  const Eigen::MatrixXd gram = m.transpose() * m;
  if (gram.norm() == 0.0) return out;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
  const Vector u = es.eigenvectors().col(d - 1);
  for (auto& v : out) v -= u.dot(v) * u;
  return out;
}

std::vector<SparseVector> tfidf_vectors(const Sentences& sentences) {
  std::map<std::string, double> df;
  for (const auto& s : sentences) {
    std::map<std::string, bool> seen;
    for (const auto& t : s) {
      if (!seen[t]) {
        seen[t] = true;
        df[t] += 1.0;
      }
    }
  }
  const double n = static_cast<double>(sentences.size());
  std::vector<SparseVector> out;
  out.reserve(sentences.size());
  for (const auto& s : sentences) {
    SparseVector v;
    for (const auto& t : s) v[t] += 1.0;
    double norm2 = 0.0;
    for (auto& [t, x] : v) {
      x *= std::log((1.0 + n) / (1.0 + df[t])) + 1.0;
      norm2 += x * x;
    }
    if (norm2 > 0.0) {
      const double inv = 1.0 / std::sqrt(norm2);
      for (auto& [t, x] : v) x *= inv;
    }
    out.push_back(std::move(v));
  }
  return out;
}

double cosine(const Vector& a, const Vector& b, bool* zero_operand) {
  if (a.size() != b.size()) throw Error(Errc::DimensionMismatch, "cosine of vectors of different size");
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) {
    if (zero_operand) *zero_operand = true;
    return 0.0;
  }
  return std::clamp(a.dot(b) / (na * nb), -1.0, 1.0);
}

double cosine(const SparseVector& a, const SparseVector& b, bool* zero_operand) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (const auto& [t, x] : a) {
    na += x * x;
    if (auto it = b.find(t); it != b.end()) dot += x * it->second;
  }
  for (const auto& [t, x] : b) nb += x * x;
  if (na == 0.0 || nb == 0.0) {
    if (zero_operand) *zero_operand = true;
    return 0.0;
  }
  return std::clamp(dot / std::sqrt(na * nb), -1.0, 1.0);
}

namespace {

double gap(std::size_t i, std::size_t j) {
  return static_cast<double>(i > j ? i - j : j - i) + 1.0;
}

// min_i sum_{j != i} term(i, j) / (|i - j| + 1)
template <typename Term>
double min_of_sums(std::size_t n, Term&& term) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) s += term(i, j) / gap(i, j);
    }
    best = std::min(best, s);
  }
  return best;
}

}  // namespace

double incoherence_sa(const std::vector<Vector>& v, bool* single_sentence) {
  if (v.size() < 2) {
    if (single_sentence) *single_sentence = true;
    return 1.0;
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i) {
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (j != i) m = std::max(m, cosine(v[i], v[j]) / gap(i, j));
    }
    best = std::min(best, m);
  }
  return best;
}

double incoherence_sif(const std::vector<Vector>& v, bool* single_sentence) {
  if (v.size() < 2) {
    if (single_sentence) *single_sentence = true;
    return 0.0;
  }
  return min_of_sums(v.size(), [&](std::size_t i, std::size_t j) { return 1.0 - cosine(v[i], v[j]); });
}

double incoherence_tfidf(const std::vector<SparseVector>& v, bool* single_sentence) {
  if (v.size() < 2) {
    if (single_sentence) *single_sentence = true;
    return 0.0;
  }
  return min_of_sums(v.size(), [&](std::size_t i, std::size_t j) { return cosine(v[i], v[j]); });
}

double incoherence_tfidf(const Sentences& sentences, bool* single_sentence) {
  return incoherence_tfidf(tfidf_vectors(sentences), single_sentence);
}

IncoherenceValues incoherence(const Sentences& sentences, const EmbeddingTable& table, double sif_a) {
  IncoherenceValues out;
  std::vector<Vector> sa;
  sa.reserve(sentences.size());
  for (const auto& s : sentences) sa.push_back(embed_sa(s, table, &out.oov_tokens));
  out.sa = incoherence_sa(sa, &out.single_sentence);
  out.sif = incoherence_sif(embed_sif(sentences, table, sif_a));
  out.tfidf = incoherence_tfidf(sentences);
  return out;
}

}  // namespace langassess::semantics
