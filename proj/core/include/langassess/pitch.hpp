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

#ifndef LANGASSESS_PITCH_HPP_
#define LANGASSESS_PITCH_HPP_

#include <span>
#include <vector>

#include "langassess/dsp.hpp"

namespace langassess::dsp {

struct PitchTrack {
  std::vector<double> f0;            // Hz, 0 on unvoiced frames
  std::vector<double> voicing_prob;  // in [0, 1]
  int frame_len = 0;
  int hop = 0;
  int sample_rate = 0;

  bool voiced(std::size_t frame) const { return f0[frame] > 0.0; }
};

// Normalised autocorrelation pitch tracker over the frame grid of
// frame_signal(). The lag search covers [f0_min_hz, f0_max_hz].
PitchTrack f0_and_voicing(const Signal& signal, const DspConfig& cfg = {});

struct Perturbation {
  double jitter_local = 0.0;
  double jitter_ddp = 0.0;
  double shimmer = 0.0;
};

// Cycle-to-cycle measures from consecutive period lengths and peak
// amplitudes. Needs at least 3 periods and 2 amplitudes.
Perturbation perturbation(std::span<const double> periods, std::span<const double> amplitudes);

struct PhonationSeries {
  std::vector<double> jitter_local;
  std::vector<double> jitter_ddp;
  std::vector<double> shimmer;
  // Set when no window held enough voiced periods; the series are then [0].
  bool no_voiced_content = false;
};

// Period marks located by waveform peak picking guided by the f0 track.
// Each mark is a peak position in samples (sub-sample refined) and the
// waveform value there. One inner vector per run of consecutive voiced
// frames; periods never straddle two runs.
struct PeriodMark {
  double position = 0.0;
  double amplitude = 0.0;
};
std::vector<std::vector<PeriodMark>> period_marks(const Signal& signal, const PitchTrack& track);

// Jitter and shimmer over windows of phonation_window_ms with
// phonation_hop_ms hop. Windows with fewer than 3 voiced periods are
// skipped.
PhonationSeries jitter_shimmer(const Signal& signal, const PitchTrack& track,
                               const DspConfig& cfg = {});

}  // namespace langassess::dsp

#endif  // LANGASSESS_PITCH_HPP_
