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

#include "langassess/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "langassess/csv.hpp"
#include "langassess/error.hpp"

namespace langassess {

std::string_view to_string(Condition c) {
  switch (c) {
    case Condition::PD: return "pd";
    case Condition::SR: return "sr";
    case Condition::Web: return "web";
    case Condition::Phone: return "phone";
  }
  return "?";
}

Condition parse_condition(std::string_view s) {
  if (s == "pd") return Condition::PD;
  if (s == "sr") return Condition::SR;
  if (s == "web") return Condition::Web;
  if (s == "phone") return Condition::Phone;
  throw Error(Errc::InvalidConfig, "unknown condition '" + std::string(s) + "'");
}

bool includes(Condition c, const SampleEntry& e) {
  switch (c) {
    case Condition::PD: return e.task == Task::PD;
    case Condition::SR: return e.task == Task::SR;
    case Condition::Web: return e.medium == Medium::Web;
    case Condition::Phone: return e.medium == Medium::Phone;
  }
  return false;
}

int PipelineConfig::top_k(Condition c) const {
  switch (c) {
    case Condition::PD: return top_k_pd;
    case Condition::SR: return top_k_sr;
    case Condition::Web: return top_k_web;
    case Condition::Phone: return top_k_phone;
  }
  return top_k_pd;
}

ml::ModelSpec PipelineConfig::model_spec(ml::ModelKind kind) const {
  ml::ModelSpec s;
  s.kind = kind;
  s.n_estimators = n_estimators;
  s.max_depth = max_depth;
  s.k_neighbors = k_neighbors;
  s.c = (kind == ml::ModelKind::LR) ? lr_c : svm_c;
  s.seed = model_seed;
  return s;
}

void PipelineConfig::validate(bool check_paths) const {
  auto fail = [](const std::string& m) { throw Error(Errc::InvalidConfig, m); };
  if (check_paths) {
    if (manifest.empty()) fail("pipeline.manifest is not set");
    if (!std::filesystem::exists(manifest)) fail("manifest not found: " + manifest.string());
  }
  if (conditions.empty()) fail("no conditions configured");
  if (classifiers.empty()) fail("no classifiers configured");
  if (linguistic_sets.empty() && acoustic_sets.empty()) fail("no feature sets configured");
  for (const auto& s : linguistic_sets) {
    if (std::find(kLinguisticSets.begin(), kLinguisticSets.end(), s) == kLinguisticSets.end()) {
      fail("unknown linguistic feature set '" + s + "'");
    }
  }
  for (const auto& s : acoustic_sets) {
    if (std::find(kAcousticSets.begin(), kAcousticSets.end(), s) == kAcousticSets.end()) {
      fail("unknown acoustic feature set '" + s + "'");
    }
  }
  if (folds < 2) fail("folds must be >= 2");
  for (int k : {top_k_pd, top_k_sr, top_k_web, top_k_phone}) {
    if (k < 1) fail("top_k values must be >= 1");
  }
  if (threads < 0) fail("threads must be >= 0");
  if (rank_trees < 1) fail("rank_trees must be >= 1");
  if (selection_scope != "full" && selection_scope != "fold") fail("selection_scope must be \"full\" or \"fold\"");
  if (!(sif_a > 0.0)) fail("sif_a must be > 0");
  if (lda_k_min < 2 || lda_k_max > 20 || lda_k_min > lda_k_max) fail("LDA topic range must lie in [2, 20]");
  if (lda_iterations < 1) fail("lda_iterations must be >= 1");
  if (!(topic_threshold > 0.0 && topic_threshold < 1.0)) fail("topic_threshold must lie in (0, 1)");
  for (auto k : classifiers) model_spec(k).validate();
}

namespace {

struct Value {
  enum class Kind { String, Number, Bool, List } kind = Kind::String;
  std::string text;
  double number = 0.0;
  bool boolean = false;
  std::vector<std::string> list;
};

[[noreturn]] void bad(std::size_t line, const std::string& msg) {
  throw Error(Errc::InvalidConfig, "config line " + std::to_string(line) + ": " + msg);
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::string strip_comment(const std::string& s) {
  bool in_str = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') in_str = !in_str;
    if (s[i] == '#' && !in_str) return s.substr(0, i);
  }
  return s;
}

std::string parse_string(const std::string& s, std::size_t line) {
  if (s.size() < 2 || s.front() != '"' || s.back() != '"') bad(line, "expected quoted string, got " + s);
  return s.substr(1, s.size() - 2);
}

Value parse_value(const std::string& raw, std::size_t line) {
  Value v;
  if (raw.empty()) bad(line, "missing value");
  if (raw.front() == '"') {
    v.kind = Value::Kind::String;
    v.text = parse_string(raw, line);
  } else if (raw.front() == '[') {
    if (raw.back() != ']') bad(line, "unterminated array");
    v.kind = Value::Kind::List;
    const std::string body = trim(std::string_view(raw).substr(1, raw.size() - 2));
    if (!body.empty()) {
      std::stringstream ss(body);
      std::string item;
      while (std::getline(ss, item, ',')) {
        const std::string t = trim(item);
        if (t.empty()) continue;
        v.list.push_back(parse_string(t, line));
      }
    }
  } else if (raw == "true" || raw == "false") {
    v.kind = Value::Kind::Bool;
    v.boolean = raw == "true";
  } else {
    v.kind = Value::Kind::Number;
    const auto res = std::from_chars(raw.data(), raw.data() + raw.size(), v.number);
    if (res.ec != std::errc() || res.ptr != raw.data() + raw.size()) bad(line, "invalid value '" + raw + "'");
  }
  v.text = v.kind == Value::Kind::String ? v.text : raw;
  return v;
}

struct Key {
  std::string section;
  std::string name;
  std::function<void(const Value&, std::size_t)> set;
  std::function<std::string()> get;
};

std::string quote_value(const std::string& s) { return "\"" + s + "\""; }

std::string list_of(const std::vector<std::string>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + quote_value(v[i]);
  return out + "]";
}

std::vector<Key> keys(PipelineConfig& c, const std::filesystem::path& base_dir) {
  auto num = [](std::size_t line, const Value& v) {
    if (v.kind != Value::Kind::Number) bad(line, "expected a number");
    return v.number;
  };
  auto integer = [num](std::size_t line, const Value& v) {
    const double d = num(line, v);
    if (d != std::floor(d)) bad(line, "expected an integer");
    return static_cast<long long>(d);
  };
  auto str = [](std::size_t line, const Value& v) {
    if (v.kind != Value::Kind::String) bad(line, "expected a quoted string");
    return v.text;
  };
  auto lst = [](std::size_t line, const Value& v) {
    if (v.kind != Value::Kind::List) bad(line, "expected an array of strings");
    return v.list;
  };
  auto path = [base_dir](const std::string& s) {
    std::filesystem::path p(s);
    return (p.is_relative() && !base_dir.empty()) ? base_dir / p : p;
  };
  auto int_key = [&](const char* sec, const char* name, int& field) {
    return Key{sec, name, [&field, integer](const Value& v, std::size_t l) { field = static_cast<int>(integer(l, v)); },
               [&field] { return std::to_string(field); }};
  };
  auto seed_key = [&](const char* name, std::uint64_t& field) {
    return Key{"seeds", name,
               [&field, integer](const Value& v, std::size_t l) {
                 const auto x = integer(l, v);
                 if (x < 0) bad(l, "seeds must be non-negative");
                 field = static_cast<std::uint64_t>(x);
               },
               [&field] { return std::to_string(field); }};
  };
  auto dbl_key = [&](const char* sec, const char* name, double& field) {
    return Key{sec, name, [&field, num](const Value& v, std::size_t l) { field = num(l, v); },
               [&field] { return csv::format_double(field); }};
  };
  std::vector<Key> k;
  k.push_back({"pipeline", "manifest", [&c, str, path](const Value& v, std::size_t l) { c.manifest = path(str(l, v)); },
               [&c] { return quote_value(c.manifest.generic_string()); }});
  k.push_back({"pipeline", "output_dir",
               [&c, str, path](const Value& v, std::size_t l) { c.output_dir = path(str(l, v)); },
               [&c] { return quote_value(c.output_dir.generic_string()); }});
  k.push_back({"pipeline", "conditions",
               [&c, lst](const Value& v, std::size_t l) {
                 c.conditions.clear();
                 for (const auto& s : lst(l, v)) c.conditions.push_back(parse_condition(s));
               },
               [&c] {
                 std::vector<std::string> s;
                 for (auto x : c.conditions) s.emplace_back(to_string(x));
                 return list_of(s);
               }});
  k.push_back(int_key("pipeline", "folds", c.folds));
  k.push_back(int_key("pipeline", "threads", c.threads));
  k.push_back({"pipeline", "shuffle_labels",
               [&c](const Value& v, std::size_t l) {
                 if (v.kind != Value::Kind::Bool) bad(l, "expected true or false");
                 c.shuffle_labels = v.boolean;
               },
               [&c] { return std::string(c.shuffle_labels ? "true" : "false"); }});
  k.push_back({"features", "linguistic_sets", [&c, lst](const Value& v, std::size_t l) { c.linguistic_sets = lst(l, v); },
               [&c] { return list_of(c.linguistic_sets); }});
  k.push_back({"features", "acoustic_sets", [&c, lst](const Value& v, std::size_t l) { c.acoustic_sets = lst(l, v); },
               [&c] { return list_of(c.acoustic_sets); }});
  k.push_back(int_key("features", "top_k_pd", c.top_k_pd));
  k.push_back(int_key("features", "top_k_sr", c.top_k_sr));
  k.push_back(int_key("features", "top_k_web", c.top_k_web));
  k.push_back(int_key("features", "top_k_phone", c.top_k_phone));
  k.push_back(int_key("features", "rank_trees", c.rank_trees));
  k.push_back(Key{"features", "selection_scope",
                  [&c, str](const Value& v, std::size_t l) { c.selection_scope = str(l, v); },
                  [&c]() -> std::string { return quote_value(c.selection_scope); }});
  k.push_back({"classifiers", "kinds",
               [&c, lst](const Value& v, std::size_t l) {
                 c.classifiers.clear();
                 for (const auto& s : lst(l, v)) {
                   try {
                     c.classifiers.push_back(ml::parse_model_kind(s));
                   } catch (const Error&) {
                     bad(l, "unknown classifier '" + s + "'");
                   }
                 }
               },
               [&c] {
                 std::vector<std::string> s;
                 for (auto x : c.classifiers) s.emplace_back(ml::to_string(x));
                 return list_of(s);
               }});
  k.push_back(int_key("classifiers", "n_estimators", c.n_estimators));
  k.push_back(int_key("classifiers", "max_depth", c.max_depth));
  k.push_back(int_key("classifiers", "k_neighbors", c.k_neighbors));
  k.push_back(dbl_key("classifiers", "svm_c", c.svm_c));
  k.push_back(dbl_key("classifiers", "lr_c", c.lr_c));
  k.push_back(dbl_key("semantics", "sif_a", c.sif_a));
  k.push_back(int_key("semantics", "lda_k_min", c.lda_k_min));
  k.push_back(int_key("semantics", "lda_k_max", c.lda_k_max));
  k.push_back(int_key("semantics", "lda_iterations", c.lda_iterations));
  k.push_back(dbl_key("semantics", "topic_threshold", c.topic_threshold));
  k.push_back(seed_key("cv", c.cv_seed));
  k.push_back(seed_key("rank", c.rank_seed));
  k.push_back(seed_key("model", c.model_seed));
  k.push_back(seed_key("lda", c.lda_seed));
  k.push_back(seed_key("shuffle", c.shuffle_seed));
  return k;
}

}  // namespace

PipelineConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  PipelineConfig cfg;
  auto registry = keys(cfg, base_dir);
  std::set<std::string> seen;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const std::string s = trim(strip_comment(raw));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') bad(line, "malformed section header");
      section = trim(std::string_view(s).substr(1, s.size() - 2));
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) bad(line, "expected key = value");
    const std::string key = trim(std::string_view(s).substr(0, eq));
    const Value v = parse_value(trim(std::string_view(s).substr(eq + 1)), line);
    const auto it = std::find_if(registry.begin(), registry.end(),
                                 [&](const Key& k) { return k.section == section && k.name == key; });
    if (it == registry.end()) bad(line, "unknown key '" + (section.empty() ? key : section + "." + key) + "'");
    if (!seen.insert(section + "." + key).second) bad(line, "duplicate key '" + section + "." + key + "'");
    it->set(v, line);
  }
  return cfg;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::InvalidConfig, "cannot open config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.parent_path());
}

std::string format_config(const PipelineConfig& cfg) {
  PipelineConfig copy = cfg;
  const auto registry = keys(copy, {});
  std::string out;
  std::string section;
  for (const auto& k : registry) {
    if (k.section != section) {
      out += (out.empty() ? "" : "\n") + std::string("[") + k.section + "]\n";
      section = k.section;
    }
    out += k.name + " = " + k.get() + "\n";
  }
  return out;
}

}  // namespace langassess
