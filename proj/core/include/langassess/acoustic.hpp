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

#ifndef LANGASSESS_ACOUSTIC_HPP_
#define LANGASSESS_ACOUSTIC_HPP_

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "langassess/dsp.hpp"
#include "langassess/wav.hpp"

namespace langassess {

inline constexpr std::size_t kAcousticFeatureCount = 296;

enum class AcousticGroup { Spectral, Phonation, Speech };

// Per-frame (or per-window) series for the 37 base descriptors.
struct SeriesBundle {
  std::vector<std::string> names;
  std::vector<std::vector<double>> series;
};

struct AcousticVector {
  std::vector<double> values;  // canonical order, see acoustic_feature_names()
  bool no_voiced_content = false;
  int unstable_lpc_frames = 0;
};

// The 37 base series names in canonical order: mfcc0..14, log_mel0..7,
// lsp0..7, f0, jitter_local, jitter_ddp, shimmer, loudness, voicing_prob.
const std::vector<std::string>& base_series_names();

// All 296 names. Families follow the order mfcc, mfcc delta, log_mel,
// log_mel delta, lsp, lsp delta, then each scalar series followed by its
// delta; every series contributes mean, std, skew, kurt in that order.
// Names look like "mfcc3_delta_kurt" or "voicing_prob_mean".
const std::vector<std::string>& acoustic_feature_names();

AcousticGroup acoustic_group(std::string_view feature_name);

SeriesBundle compute_series(const Signal& signal, const dsp::DspConfig& cfg = {},
                            bool* no_voiced_content = nullptr, int* unstable_lpc = nullptr);

AcousticVector extract_acoustic_vector(const Signal& signal, const dsp::DspConfig& cfg = {});

}  // namespace langassess

#endif  // LANGASSESS_ACOUSTIC_HPP_
