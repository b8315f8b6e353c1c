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

#include "langassess/text.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "langassess/error.hpp"
#include "langassess/resources.hpp"

namespace langassess::text {
namespace {

bool is_letter(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
}

std::string trim_apostrophes(const std::string& token) {
  const auto first = token.find_first_not_of('\'');
  if (first == std::string::npos) return {};
  const auto last = token.find_last_not_of('\'');
  return token.substr(first, last - first + 1);
}

}  // namespace

std::vector<std::string> TokenizedDoc::tokens() const {
  std::vector<std::string> out;
  out.reserve(w);
  for (const auto& s : sentences) out.insert(out.end(), s.begin(), s.end());
  return out;
}

TokenizedDoc tokenize(std::string_view raw_text) {
  TokenizedDoc doc;
  std::vector<std::string> sentence;
  std::string token;
  auto flush_token = [&] {
    auto t = trim_apostrophes(token);
    if (!t.empty()) sentence.push_back(std::move(t));
    token.clear();
  };
  auto flush_sentence = [&] {
    flush_token();
    if (!sentence.empty()) doc.sentences.push_back(std::move(sentence));
    sentence.clear();
  };
  for (std::size_t i = 0; i < raw_text.size(); ++i) {
    const char c = raw_text[i];
    if (is_letter(c) || c == '\'') {
      token.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
      continue;
    }
    flush_token();
    if ((c == '.' || c == '!' || c == '?') &&
        (i + 1 == raw_text.size() || is_space(raw_text[i + 1]))) {
      flush_sentence();
    }
  }
  flush_sentence();
  if (doc.sentences.empty()) throw Error(Errc::EmptyText, "text contains no word tokens");

  std::unordered_set<std::string> types;
  for (const auto& s : doc.sentences) {
    for (const auto& t : s) {
      ++doc.w;
      types.insert(t);
      doc.syl += static_cast<std::size_t>(count_syllables(t));
    }
  }
  doc.u = types.size();
  doc.s = doc.sentences.size();
  return doc;
}

Transcript load_transcript(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::MissingFile, "cannot open transcript " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  Transcript t;
  t.raw_text = ss.str();
  t.doc = tokenize(t.raw_text);
  return t;
}

int count_syllables(std::string_view word) {
  std::string w;
  for (char c : word) {
    if (is_letter(c)) w.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  int groups = 0;
  bool in_group = false;
  for (char c : w) {
    const bool v = is_vowel(c);
    if (v && !in_group) ++groups;
    in_group = v;
  }
  if (w.size() >= 2 && w.back() == 'e' && !is_vowel(w[w.size() - 2]) && groups > 1) --groups;
  return groups < 1 ? 1 : groups;
}

std::string_view to_string(PosTag tag) {
  switch (tag) {
    case PosTag::NN: return "NN";
    case PosTag::NNP: return "NNP";
    case PosTag::VB: return "VB";
    case PosTag::JJ: return "JJ";
    case PosTag::RB: return "RB";
    case PosTag::IN: return "IN";
    case PosTag::CC: return "CC";
    case PosTag::PRP1: return "PRP1";
    case PosTag::PRP3: return "PRP3";
    case PosTag::PRP: return "PRP";
    case PosTag::SUB: return "SUB";
    case PosTag::OTHER: return "OTHER";
  }
  return "OTHER";
}

PosTag parse_tag(std::string_view s) {
  for (std::size_t i = 0; i < kTagCount; ++i) {
    const auto t = static_cast<PosTag>(i);
    if (to_string(t) == s) return t;
  }
  throw Error(Errc::InvalidEnumValue, "unknown POS tag '" + std::string(s) + "'");
}

Lexicon Lexicon::parse(std::string_view contents) {
  Lexicon lex;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < contents.size()) {
    auto end = contents.find('\n', pos);
    if (end == std::string_view::npos) end = contents.size();
    std::string_view line = contents.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos || tab == 0) {
      throw Error(Errc::ParseError, "lexicon line " + std::to_string(line_no) + ": expected word<TAB>tag");
    }
    lex.table_[std::string(line.substr(0, tab))] = parse_tag(line.substr(tab + 1));
  }
  return lex;
}

Lexicon Lexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::MissingFile, "cannot open lexicon " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

const Lexicon& Lexicon::bundled() {
  static const Lexicon lex = parse(resources::tag_lexicon());
  return lex;
}

bool Lexicon::contains(std::string_view word) const {
  return table_.find(std::string(word)) != table_.end();
}

PosTag Lexicon::tag(std::string_view word) const {
  if (auto it = table_.find(std::string(word)); it != table_.end()) return it->second;
  if (word.ends_with("ly")) return PosTag::RB;
  if (word.ends_with("ing") || word.ends_with("ed")) return PosTag::VB;
  if (word.ends_with("ous") || word.ends_with("ful") || word.ends_with("ive")) return PosTag::JJ;
  return PosTag::NN;
}

TaggedDoc tag_counts(const std::vector<PosTag>& tags) {
  TaggedDoc out;
  out.tags = tags;
  for (PosTag t : tags) ++out.counts[static_cast<std::size_t>(t)];
  return out;
}

TaggedDoc pos_tag(const TokenizedDoc& doc, const Lexicon& lexicon) {
  std::vector<PosTag> tags;
  tags.reserve(doc.w);
  for (const auto& s : doc.sentences) {
    for (const auto& t : s) tags.push_back(lexicon.tag(t));
  }
  return tag_counts(tags);
}

double brunet_index(std::size_t w, std::size_t u) {
  return std::pow(static_cast<double>(w), std::pow(static_cast<double>(u), -0.165));
}

double honore_statistic(std::size_t w, std::size_t u) {
  if (w == u) {
    throw Error(Errc::DegenerateVocabulary, "every token is a distinct type (w == u)");
  }
  const double wd = static_cast<double>(w);
  return 100.0 * std::log(wd) / (1.0 - wd / static_cast<double>(u));
}

double flesch_kincaid(std::size_t w, std::size_t s, std::size_t syl) {
  const double wd = static_cast<double>(w);
  return 0.39 * (wd / static_cast<double>(s)) + 11.8 * (static_cast<double>(syl) / wd) - 15.59;
}

double flesch_reading_ease(std::size_t w, std::size_t s, std::size_t syl) {
  const double wd = static_cast<double>(w);
  return 206.835 - 1.015 * (wd / static_cast<double>(s)) - 84.6 * (static_cast<double>(syl) / wd);
}

namespace {
double ratio(std::size_t num, std::size_t den) {
  return static_cast<double>(num) / static_cast<double>(den == 0 ? 1 : den);
}
}  // namespace

PosRatios pos_ratios(const TaggedDoc& t) {
  PosRatios r;
  r.pron3_to_propn = ratio(t.count(PosTag::PRP3), t.count(PosTag::NNP));
  r.pron1_to_pron = ratio(t.count(PosTag::PRP1),
                          t.count(PosTag::PRP1) + t.count(PosTag::PRP3) + t.count(PosTag::PRP));
  r.noun_to_verb = ratio(t.count(PosTag::NN), t.count(PosTag::VB));
  r.sub_to_coord = ratio(t.count(PosTag::SUB), t.count(PosTag::CC));
  return r;
}

Densities densities(const TaggedDoc& t) {
  Densities d;
  const std::size_t n = t.total();
  if (n == 0) return d;
  const auto c = [&](PosTag tag) { return t.count(tag); };
  d.propositional = ratio(c(PosTag::VB) + c(PosTag::JJ) + c(PosTag::RB) + c(PosTag::IN) +
                              c(PosTag::CC), n);
  d.content = ratio(c(PosTag::NN) + c(PosTag::VB) + c(PosTag::JJ) + c(PosTag::RB), n);
  return d;
}

const std::vector<std::string>& lexical_feature_names() {
  static const std::vector<std::string> names = {"brunet_index", "honore_statistic",
                                                 "flesch_kincaid", "flesch_reading_ease",
                                                 "type_token_ratio"};
  return names;
}

const std::vector<std::string>& syntactic_feature_names() {
  static const std::vector<std::string> names = {
      "ratio_pron3_propn", "ratio_pron1_pron",      "ratio_noun_verb", "ratio_sub_coord",
      "density_propositional", "density_content", "noun_rate",       "verb_rate"};
  return names;
}

const std::vector<std::string>& semantic_feature_names() {
  static const std::vector<std::string> names = {"incoherence_sa", "incoherence_sif",
                                                 "incoherence_tfidf", "tangentiality"};
  return names;
}

const std::vector<std::string>& linguistic_feature_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out = lexical_feature_names();
    for (const auto& n : syntactic_feature_names()) out.push_back(n);
    for (const auto& n : semantic_feature_names()) out.push_back(n);
    return out;
  }();
  return names;
}

LinguisticVector extract_linguistic_vector(const TokenizedDoc& doc, const SemanticValues& semantic,
                                           const Lexicon& lexicon) {
  if (doc.w == 0 || doc.s == 0) throw Error(Errc::EmptyText, "document has no tokens");
  LinguisticVector out;
  auto& v = out.values;
  v[0] = brunet_index(doc.w, doc.u);
  try {
    v[1] = honore_statistic(doc.w, doc.u);
  } catch (const Error&) {
    v[1] = 0.0;
    out.honore_degenerate = true;
  }
  v[2] = flesch_kincaid(doc.w, doc.s, doc.syl);
  v[3] = flesch_reading_ease(doc.w, doc.s, doc.syl);
  v[4] = static_cast<double>(doc.u) / static_cast<double>(doc.w);

  const auto tagged = pos_tag(doc, lexicon);
  const auto r = pos_ratios(tagged);
  const auto d = densities(tagged);
  const double n = static_cast<double>(tagged.total());
  v[5] = r.pron3_to_propn;
  v[6] = r.pron1_to_pron;
  v[7] = r.noun_to_verb;
  v[8] = r.sub_to_coord;
  v[9] = d.propositional;
  v[10] = d.content;
  v[11] = static_cast<double>(tagged.count(PosTag::NN)) / n;
  v[12] = static_cast<double>(tagged.count(PosTag::VB)) / n;

  v[13] = semantic.incoherence_sa;
  v[14] = semantic.incoherence_sif;
  v[15] = semantic.incoherence_tfidf;
  v[16] = semantic.tangentiality;
  for (double x : v) {
    if (!std::isfinite(x)) throw Error(Errc::NumericalFailure, "non-finite linguistic feature");
  }
  return out;
}

}  // namespace langassess::text
