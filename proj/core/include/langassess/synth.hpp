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

#ifndef LANGASSESS_SYNTH_HPP_
#define LANGASSESS_SYNTH_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "langassess/corpus.hpp"
#include "langassess/rng.hpp"
#include "langassess/wav.hpp"

namespace langassess::synth {

struct SynthSpec {
  int n_dementia = 10;
  int n_control = 10;
  std::uint64_t seed = 7;
  double separation = 1.0;  // 0 = identical groups, 1 = maximally distinct
  int sample_rate = 16000;
  double duration_s = 4.0;

  // Throws InvalidSpec.
  void validate() const;
};

struct VoiceParams {
  double f0_hz = 140.0;
  double jitter = 0.005;        // relative period perturbation (sd)
  double shimmer = 0.03;        // relative amplitude perturbation (sd)
  double pause_fraction = 0.2;  // share of time spent in pauses
};

struct TextParams {
  int noun_pool = 20;        // distinct nouns available per topic
  int verb_pool = 10;
  double pronoun_prob = 0.15;
  double drift_prob = 0.05;  // chance a sentence leaves the main topic
  double filler_prob = 0.05;
};

struct SubjectParams {
  std::string subject_id;
  Label label = Label::Control;
  Medium medium = Medium::Phone;
  std::uint64_t seed = 0;
  VoiceParams voice;
  TextParams text;
};

// Parameters drawn for every subject, in manifest order.
std::vector<SubjectParams> draw_subjects(const SynthSpec& spec);

// Glottal pulse train shaped by formant resonators, with noise-filled pauses.
Signal synthesize_voice(const VoiceParams& params, int sample_rate, double duration_s, Rng& rng);

// A picture-description (PD) or story-recall (SR) style narrative.
std::string synthesize_text(const TextParams& params, Task task, int topic_slot, Rng& rng);

struct SynthResult {
  CorpusManifest manifest;
  std::vector<SubjectParams> subjects;
};

// Writes manifest.csv, audio/*.wav, text/*.txt and generator_params.json
// under outdir. One session per subject with both tasks.
SynthResult synthesize_cohort(const SynthSpec& spec, const std::filesystem::path& outdir);

}  // namespace langassess::synth

#endif  // LANGASSESS_SYNTH_HPP_
