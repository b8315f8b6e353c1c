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

#ifndef LANGASSESS_TEXT_HPP_
#define LANGASSESS_TEXT_HPP_

#include <array>
#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace langassess::text {

struct TokenizedDoc {
  std::vector<std::vector<std::string>> sentences;  // lowercase tokens
  std::size_t w = 0;    // tokens
  std::size_t u = 0;    // unique types
  std::size_t s = 0;    // sentences
  std::size_t syl = 0;  // syllables

  std::vector<std::string> tokens() const;
};

// Sentences end at '.', '!' or '?' followed by whitespace or end of text.
// Tokens are maximal runs of ASCII letters and apostrophes, lowercased, with
// leading and trailing apostrophes removed. Throws EmptyText when no token
// survives.
TokenizedDoc tokenize(std::string_view raw_text);

struct Transcript {
  std::string raw_text;
  TokenizedDoc doc;
};

Transcript load_transcript(const std::filesystem::path& path);

// Vowel-group count (a e i o u y), minus a silent final 'e' after a
// consonant, never below 1.
int count_syllables(std::string_view word);

enum class PosTag { NN, NNP, VB, JJ, RB, IN, CC, PRP1, PRP3, PRP, SUB, OTHER };
inline constexpr std::size_t kTagCount = 12;

std::string_view to_string(PosTag tag);
PosTag parse_tag(std::string_view s);

class Lexicon {
 public:
  Lexicon() = default;
  // Parses "word<TAB>tag" lines; '#' starts a comment line.
  static Lexicon parse(std::string_view contents);
  static Lexicon load(const std::filesystem::path& path);
  static const Lexicon& bundled();

  // Closed-class and known words by lookup, otherwise suffix rules:
  // -ly RB, -ing/-ed VB, -ous/-ful/-ive JJ, else NN.
  PosTag tag(std::string_view word) const;
  bool contains(std::string_view word) const;
  std::size_t size() const { return table_.size(); }

 private:
  std::unordered_map<std::string, PosTag> table_;
};

struct TaggedDoc {
  std::vector<PosTag> tags;  // one per token in document order
  std::array<std::size_t, kTagCount> counts{};

  std::size_t count(PosTag t) const { return counts[static_cast<std::size_t>(t)]; }
  std::size_t total() const { return tags.size(); }
};

TaggedDoc pos_tag(const TokenizedDoc& doc, const Lexicon& lexicon = Lexicon::bundled());
TaggedDoc tag_counts(const std::vector<PosTag>& tags);

double brunet_index(std::size_t w, std::size_t u);
// 100 ln(w) / (1 - w/u); throws DegenerateVocabulary when w == u.
double honore_statistic(std::size_t w, std::size_t u);
double flesch_kincaid(std::size_t w, std::size_t s, std::size_t syl);
double flesch_reading_ease(std::size_t w, std::size_t s, std::size_t syl);

struct PosRatios {
  double pron3_to_propn = 0.0;
  double pron1_to_pron = 0.0;
  double noun_to_verb = 0.0;
  double sub_to_coord = 0.0;
};
// Each ratio is numerator / max(denominator, 1).
PosRatios pos_ratios(const TaggedDoc& tagged);

struct Densities {
  double propositional = 0.0;  // (VB+JJ+RB+IN+CC)/N
  double content = 0.0;        // (NN+VB+JJ+RB)/N
};
Densities densities(const TaggedDoc& tagged);

inline constexpr std::size_t kLinguisticFeatureCount = 17;

// incoherence_sa, incoherence_sif, incoherence_tfidf, tangentiality
struct SemanticValues {
  double incoherence_sa = 0.0;
  double incoherence_sif = 0.0;
  double incoherence_tfidf = 0.0;
  double tangentiality = 0.0;
};

struct LinguisticVector {
  std::array<double, kLinguisticFeatureCount> values{};
  bool honore_degenerate = false;
};

// 5 lexical, 8 syntactic, 4 semantic names in canonical order.
const std::vector<std::string>& linguistic_feature_names();
const std::vector<std::string>& lexical_feature_names();
const std::vector<std::string>& syntactic_feature_names();
const std::vector<std::string>& semantic_feature_names();

LinguisticVector extract_linguistic_vector(const TokenizedDoc& doc, const SemanticValues& semantic,
                                           const Lexicon& lexicon = Lexicon::bundled());

}  // namespace langassess::text

#endif  // LANGASSESS_TEXT_HPP_
