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

#ifndef LANGASSESS_DSP_HPP_
#define LANGASSESS_DSP_HPP_

#include <span>
#include <vector>

#include "langassess/types.hpp"
#include "langassess/wav.hpp"

namespace langassess::dsp {

// Analysis constants. The defaults are the conventional short-time speech
// settings; every stage reads them from here.
struct DspConfig {
  double frame_ms = 25.0;
  double hop_ms = 10.0;
  int n_mel_filters = 26;
  int n_mfcc = 15;
  int n_log_mel = 8;
  int lpc_order = 8;
  double log_floor = 1e-10;
  double f0_min_hz = 75.0;
  double f0_max_hz = 500.0;
  double voicing_threshold = 0.45;
  double phonation_window_ms = 500.0;
  double phonation_hop_ms = 250.0;
  int delta_window = 2;
};

struct FrameSequence {
  Matrix frames;  // n_frames x frame_len, Hamming windowed
  Matrix raw;     // same frames before windowing
  int frame_len = 0;
  int hop = 0;
  int sample_rate = 0;

  Eigen::Index n_frames() const { return frames.rows(); }
};

int frame_length(int sample_rate, const DspConfig& cfg = {});
int hop_length(int sample_rate, const DspConfig& cfg = {});
// Smallest power of two >= n.
int fft_size(int n);

// Throws SignalTooShort when the signal holds less than one frame.
FrameSequence frame_signal(const Signal& signal, const DspConfig& cfg = {});

std::vector<double> hamming(int n);

// |X_k|^2 for k = 0..nfft/2 of the zero-padded frame.
std::vector<double> power_spectrum(std::span<const double> frame, int nfft);

// Triangular filters with peak 1, centres equally spaced on the mel scale
// between 0 Hz and sample_rate/2. Row m holds the weights of filter m over
// the nfft/2+1 spectrum bins.
Matrix mel_filterbank(int n_filters, int nfft, int sample_rate);

double hz_to_mel(double hz);
double mel_to_hz(double mel);

// n_frames x 15 cepstral coefficients (orders 0..14).
Matrix mfcc(const FrameSequence& frames, const DspConfig& cfg = {});
// n_frames x 8 log mel-band energies.
Matrix log_mel(const FrameSequence& frames, const DspConfig& cfg = {});

// Autocorrelation r[0..order] of a frame.
std::vector<double> autocorrelation(std::span<const double> frame, int order);

struct LpcResult {
  std::vector<double> a;  // a[0] = 1, A(z) = sum a[k] z^-k
  std::vector<double> reflection;
  double error = 0.0;
  bool stable = false;
};

// Levinson-Durbin recursion. stable is false when a reflection coefficient
// reaches magnitude 1 or the prediction error vanishes.
LpcResult levinson_durbin(std::span<const double> r, int order);

// Line spectral frequencies of A(z), ascending, normalised by pi into
// (0, 1). Returns an empty vector when the roots cannot all be isolated.
std::vector<double> lpc_to_lsf(std::span<const double> a);

struct LspTrack {
  Matrix lsf;                  // n_frames x order
  int unstable_frames = 0;     // frames that fell back to a previous value
};

LspTrack lsp(const FrameSequence& frames, const DspConfig& cfg = {});

// RMS^0.3 of the unwindowed frame.
double loudness(std::span<const double> frame);
std::vector<double> loudness(const FrameSequence& frames);

}  // namespace langassess::dsp

#endif  // LANGASSESS_DSP_HPP_
