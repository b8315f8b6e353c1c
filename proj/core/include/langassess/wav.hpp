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

#ifndef LANGASSESS_WAV_HPP_
#define LANGASSESS_WAV_HPP_

#include <filesystem>
#include <vector>

namespace langassess {

inline constexpr int kMinSampleRate = 8000;

struct Signal {
  std::vector<double> samples;  // in [-1, 1]
  int sample_rate = 16000;

  double duration_seconds() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
};

// 16-bit PCM RIFF/WAVE, mono or stereo; stereo is averaged to mono.
Signal read_wav(const std::filesystem::path& path);

// Writes mono 16-bit PCM. Samples are clipped to [-1, 1] and rounded.
void write_wav(const Signal& signal, const std::filesystem::path& path);

}  // namespace langassess

#endif  // LANGASSESS_WAV_HPP_
