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

#include "langassess/synth.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "langassess/error.hpp"
#include "langassess/resources.hpp"

namespace langassess::synth {
namespace {

using TopicVocab = std::map<std::string, std::map<std::string, std::vector<std::string>>>;

const TopicVocab& topic_vocab() {
  static const TopicVocab vocab = [] {
    TopicVocab v;
    std::istringstream in{std::string(resources::topic_vocabulary())};
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::istringstream ls(line);
      std::string topic, tag, word;
      std::getline(ls, topic, '\t');
      std::getline(ls, tag, '\t');
      std::getline(ls, word, '\t');
      if (!word.empty()) v[topic][tag].push_back(word);
    }
    return v;
  }();
  return vocab;
}

constexpr std::array<const char*, 2> kPdTopics = {"kitchen", "picnic"};
constexpr std::array<const char*, 2> kSrTopics = {"grandfather", "rainbow"};
constexpr std::array<const char*, 8> kNames = {"john", "mary", "peter", "susan",
                                               "tom",  "linda", "david", "anna"};
constexpr std::array<const char*, 4> kPronouns = {"he", "she", "it", "they"};
constexpr std::array<const char*, 8> kPreps = {"in", "on", "near", "behind", "under", "with", "at", "over"};
constexpr std::array<const char*, 5> kSubords = {"while", "when", "because", "although", "until"};
constexpr std::array<const char*, 2> kFillers = {"um", "uh"};

template <typename C>
const auto& pick(const C& c, Rng& rng) {
  return c[rng.index(c.size())];
}

std::string pick_prefix(const std::vector<std::string>& words, int pool, Rng& rng) {
  const auto n = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(pool, 1)), 1, words.size());
  return words[rng.index(n)];
}

std::string make_sentence(const TextParams& p, const std::string& topic, Rng& rng) {
  const auto& v = topic_vocab().at(topic);
  const auto& nouns = v.at("NN");
  const auto& verbs = v.at("VB");
  const auto& adjs = v.at("JJ");
  const auto& advs = v.at("RB");
  auto noun_phrase = [&] {
    std::string s = "the ";
    if (rng.bernoulli(0.3)) s += pick(adjs, rng) + " ";
    return s + pick_prefix(nouns, p.noun_pool, rng);
  };
  auto subject = [&]() -> std::string {
    if (rng.bernoulli(p.pronoun_prob)) return pick(kPronouns, rng);
    if (rng.bernoulli(0.15)) return pick(kNames, rng);
    return noun_phrase();
  };
  auto verb = [&] { return pick_prefix(verbs, p.verb_pool, rng); };

  std::string s;
  if (rng.bernoulli(p.filler_prob)) s += std::string(pick(kFillers, rng)) + " ";
  switch (rng.index(4)) {
    case 0:
      s += subject() + " " + verb() + " " + noun_phrase();
      break;
    case 1:
      s += subject() + " " + verb() + " " + pick(advs, rng) + " " + pick(kPreps, rng) + " " + noun_phrase();
      break;
    case 2:
      s += subject() + " " + verb() + " " + noun_phrase() + " and " + subject() + " " + verb() + " " +
           noun_phrase();
      break;
    default:
      s += std::string(pick(kSubords, rng)) + " " + subject() + " " + verb() + ", " + subject() + " " +
           verb() + " " + noun_phrase();
      break;
  }
  s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s + ".";
}

// Two-pole resonator with unity gain at its centre frequency (approximately).
void resonate(std::vector<double>& x, double freq, double bw, int sr) {
  const double r = std::exp(-std::numbers::pi * bw / sr);
  const double theta = 2.0 * std::numbers::pi * freq / sr;
  const double a1 = 2.0 * r * std::cos(theta);
  const double a2 = -r * r;
  const double g = 1.0 - r;
  double y1 = 0.0, y2 = 0.0;
  for (double& s : x) {
    const double y = g * s + a1 * y1 + a2 * y2;
    y2 = y1;
    y1 = y;
    s = y;
  }
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void SynthSpec::validate() const {
  if (n_dementia < 1 || n_control < 1) throw Error(Errc::InvalidSpec, "cohort needs at least one subject per group");
  if (!(separation >= 0.0 && separation <= 1.0)) throw Error(Errc::InvalidSpec, "separation must lie in [0, 1]");
  if (sample_rate < kMinSampleRate) throw Error(Errc::InvalidSpec, "sample rate below 8000 Hz");
  if (!(duration_s >= 1.0)) throw Error(Errc::InvalidSpec, "duration must be at least 1 s");
}

std::vector<SubjectParams> draw_subjects(const SynthSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  std::vector<SubjectParams> out;
  const double sep = spec.separation;
  int serial = 0;
  for (Label label : {Label::Control, Label::Dementia}) {
    const int count = label == Label::Control ? spec.n_control : spec.n_dementia;
    const double d = label == Label::Dementia ? sep : 0.0;
    for (int i = 0; i < count; ++i) {
      SubjectParams s;
      char id[16];
      std::snprintf(id, sizeof id, "S%03d", ++serial);
      s.subject_id = id;
      s.label = label;
      s.medium = i % 2 == 0 ? Medium::Phone : Medium::Web;
      s.seed = rng.next();
      s.voice.f0_hz = rng.uniform(95.0, 210.0);
      s.voice.jitter = (0.005 + 0.04 * d) * std::exp(0.2 * rng.normal());
      s.voice.shimmer = (0.03 + 0.15 * d) * std::exp(0.2 * rng.normal());
      s.voice.pause_fraction = std::clamp(0.2 + 0.25 * d + rng.uniform(-0.05, 0.05), 0.05, 0.8);
      s.text.noun_pool = static_cast<int>(std::lround(20.0 - 14.0 * d));
      s.text.verb_pool = static_cast<int>(std::lround(10.0 - 6.0 * d));
      s.text.pronoun_prob = 0.15 + 0.45 * d;
      s.text.drift_prob = 0.05 + 0.7 * d;
      s.text.filler_prob = 0.05 + 0.25 * d;
      out.push_back(std::move(s));
    }
  }
  return out;
}

Signal synthesize_voice(const VoiceParams& p, int sr, double duration_s, Rng& rng) {
  static constexpr double kVowels[][3] = {
      {730, 1090, 2440}, {270, 2290, 3010}, {530, 1840, 2480}, {570, 840, 2410}, {300, 870, 2240}};
  const auto n = static_cast<std::size_t>(duration_s * sr);
  std::vector<double> out(n, 0.0);
  std::size_t pos = static_cast<std::size_t>(rng.uniform(0.05, 0.15) * sr);
  while (pos < n) {
    const auto seg_len = static_cast<std::size_t>(rng.uniform(0.15, 0.45) * sr);
    const std::size_t end = std::min(n, pos + seg_len);
    const double f0 = p.f0_hz * (1.0 + 0.05 * rng.normal());
    const auto& vowel = kVowels[rng.index(std::size(kVowels))];

    std::vector<double> seg(end - pos, 0.0);
    double t = 0.0;
    double prev = 0.0;
    while (t < static_cast<double>(seg.size())) {
      const double period = sr / f0 * std::max(0.5, 1.0 + p.jitter * rng.normal());
      const double amp = std::clamp(1.0 + p.shimmer * rng.normal(), 0.2, 2.0);
      const double open = 0.6 * period;
      const double close = 0.2 * period;
      const auto start = static_cast<std::size_t>(std::lround(t));
      for (std::size_t k = 0; start + k < seg.size() && k < static_cast<std::size_t>(period); ++k) {
        const double u = static_cast<double>(k);
        double g = 0.0;
        if (u < open) {
          g = 0.5 * (1.0 - std::cos(std::numbers::pi * u / open));
        } else if (u < open + close) {
          g = std::cos(0.5 * std::numbers::pi * (u - open) / close);
        }
        seg[start + k] = amp * (g - prev);
        prev = g;
      }
      t += period;
    }
    resonate(seg, vowel[0], 80.0, sr);
    resonate(seg, vowel[1], 100.0, sr);
    resonate(seg, vowel[2], 120.0, sr);
    const std::size_t fade = std::min<std::size_t>(seg.size() / 2, static_cast<std::size_t>(0.02 * sr));
    for (std::size_t k = 0; k < fade; ++k) {
      const double w = 0.5 * (1.0 - std::cos(std::numbers::pi * static_cast<double>(k) / fade));
      seg[k] *= w;
      seg[seg.size() - 1 - k] *= w;
    }
    for (std::size_t k = 0; k < seg.size(); ++k) out[pos + k] += seg[k];

    const double gap = static_cast<double>(seg_len) * p.pause_fraction / (1.0 - p.pause_fraction) *
                       rng.uniform(0.5, 1.5);
    pos = end + static_cast<std::size_t>(gap);
  }
  double peak = 0.0;
  for (double v : out) peak = std::max(peak, std::abs(v));
  const double gain = peak > 0.0 ? 0.8 / peak : 1.0;
  for (double& v : out) v = std::clamp(v * gain + 0.002 * rng.normal(), -1.0, 1.0);
  return Signal{std::move(out), sr};
}

std::string synthesize_text(const TextParams& p, Task task, int topic_slot, Rng& rng) {
  const auto& topics = task == Task::PD ? kPdTopics : kSrTopics;
  const std::string main_topic = topics[static_cast<std::size_t>(topic_slot) % topics.size()];
  std::vector<std::string> others;
  for (const auto& [name, tags] : topic_vocab()) {
    if (name != main_topic) others.push_back(name);
  }
  const int sentences = (task == Task::PD ? 8 : 6) + static_cast<int>(rng.index(3));
  std::string text;
  for (int i = 0; i < sentences; ++i) {
    const bool drift = i > 0 && rng.bernoulli(p.drift_prob);
    const std::string& topic = drift ? others[rng.index(others.size())] : main_topic;
    if (!text.empty()) text += ' ';
    text += make_sentence(p, topic, rng);
  }
  return text + "\n";
}

SynthResult synthesize_cohort(const SynthSpec& spec, const std::filesystem::path& outdir) {
  SynthResult result;
  result.subjects = draw_subjects(spec);
  std::filesystem::create_directories(outdir / "audio");
  std::filesystem::create_directories(outdir / "text");

  std::vector<SampleEntry> entries;
  int slot[2] = {0, 0};
  for (const auto& s : result.subjects) {
    const int topic_slot = slot[static_cast<int>(s.label)]++;
    for (Task task : {Task::PD, Task::SR}) {
      const std::string stem = s.subject_id + "_" + std::string(to_string(task));
      const std::uint64_t task_salt = task == Task::PD ? 0x51ULL : 0x52ULL;
      Rng voice_rng(s.seed ^ (task_salt * 0x9E3779B97F4A7C15ULL));
      Rng text_rng(s.seed ^ ((task_salt + 0x100ULL) * 0x9E3779B97F4A7C15ULL));
      const double dur = task == Task::PD ? spec.duration_s : 0.875 * spec.duration_s;
      write_wav(synthesize_voice(s.voice, spec.sample_rate, dur, voice_rng), outdir / "audio" / (stem + ".wav"));
      {
        std::ofstream t(outdir / "text" / (stem + ".txt"), std::ios::binary);
        if (!t) throw Error(Errc::MissingFile, "cannot write transcript under " + outdir.string());
        t << synthesize_text(s.text, task, topic_slot, text_rng);
      }
      SampleEntry e;
      e.subject_id = s.subject_id;
      e.session_id = "1";
      e.task = task;
      e.medium = s.medium;
      e.label = s.label;
      e.audio_path = std::filesystem::path("audio") / (stem + ".wav");
      e.transcript_path = std::filesystem::path("text") / (stem + ".txt");
      entries.push_back(std::move(e));
    }
  }
  result.manifest = CorpusManifest(std::move(entries), outdir);
  write_manifest(result.manifest, outdir / "manifest.csv");

  std::ofstream js(outdir / "generator_params.json", std::ios::binary);
  if (!js) throw Error(Errc::MissingFile, "cannot write generator_params.json");
  js << "{\n  \"seed\": " << spec.seed << ",\n  \"separation\": " << num(spec.separation)
     << ",\n  \"n_dementia\": " << spec.n_dementia << ",\n  \"n_control\": " << spec.n_control
     << ",\n  \"sample_rate\": " << spec.sample_rate << ",\n  \"duration_s\": " << num(spec.duration_s)
     << ",\n  \"subjects\": [";
  for (std::size_t i = 0; i < result.subjects.size(); ++i) {
    const auto& s = result.subjects[i];
    js << (i ? "," : "") << "\n    {\"subject_id\": \"" << json_escape(s.subject_id) << "\", \"label\": \""
       << to_string(s.label) << "\", \"medium\": \"" << to_string(s.medium) << "\", \"f0_hz\": "
       << num(s.voice.f0_hz) << ", \"jitter\": " << num(s.voice.jitter) << ", \"shimmer\": "
       << num(s.voice.shimmer) << ", \"pause_fraction\": " << num(s.voice.pause_fraction)
       << ", \"noun_pool\": " << s.text.noun_pool << ", \"verb_pool\": " << s.text.verb_pool
       << ", \"pronoun_prob\": " << num(s.text.pronoun_prob) << ", \"drift_prob\": "
       << num(s.text.drift_prob) << ", \"filler_prob\": " << num(s.text.filler_prob) << "}";
  }
  js << "\n  ]\n}\n";
  return result;
}

}  // namespace langassess::synth
