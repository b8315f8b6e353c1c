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

#include "langassess/pitch.hpp"

#include <algorithm>
#include <cmath>

#include "langassess/error.hpp"

namespace langassess::dsp {

PitchTrack f0_and_voicing(const Signal& signal, const DspConfig& cfg) {
  const int len = frame_length(signal.sample_rate, cfg);
  const int hop = hop_length(signal.sample_rate, cfg);
  const auto n = static_cast<long>(signal.samples.size());
  if (n < len) {
    throw Error(Errc::SignalTooShort, std::to_string(n) + " samples, need at least " +
                                          std::to_string(len) + " for one frame");
  }
  const long n_frames = (n - len) / hop + 1;
  const double sr = signal.sample_rate;
  const int lag_min = std::max(2, static_cast<int>(std::floor(sr / cfg.f0_max_hz)));
  const int lag_max = std::min(len - 2, static_cast<int>(std::ceil(sr / cfg.f0_min_hz)));

  PitchTrack track;
  track.frame_len = len;
  track.hop = hop;
  track.sample_rate = signal.sample_rate;
  track.f0.assign(static_cast<std::size_t>(n_frames), 0.0);
  track.voicing_prob.assign(static_cast<std::size_t>(n_frames), 0.0);

  std::vector<double> prefix(static_cast<std::size_t>(len + 1));
  std::vector<double> nccf(static_cast<std::size_t>(lag_max + 2), 0.0);
  for (long f = 0; f < n_frames; ++f) {
    const double* x = signal.samples.data() + f * hop;
    prefix[0] = 0.0;
    for (int i = 0; i < len; ++i) prefix[i + 1] = prefix[i] + x[i] * x[i];
    if (!(prefix[len] > 0.0)) continue;

    double best = -1.0;
    for (int lag = lag_min; lag <= lag_max + 1 && lag < len; ++lag) {
      double acc = 0.0;
      for (int t = 0; t + lag < len; ++t) acc += x[t] * x[t + lag];
      const double e0 = prefix[len - lag];
      const double e1 = prefix[len] - prefix[lag];
      const double denom = std::sqrt(e0 * e1);
      nccf[lag] = denom > 0.0 ? acc / denom : 0.0;
      if (lag <= lag_max) best = std::max(best, nccf[lag]);
    }
    if (!(best > 0.0)) continue;

    // Smallest-lag local maximum close to the global one; guards against
    // picking a multiple of the true period.
    int chosen = -1;
    for (int lag = lag_min; lag <= lag_max; ++lag) {
      const double v = nccf[lag];
      const bool left_ok = lag == lag_min || v >= nccf[lag - 1];
      const bool right_ok = lag + 1 >= len || v >= nccf[lag + 1];
      if (left_ok && right_ok && v >= 0.9 * best) {
        chosen = lag;
        break;
      }
    }
    if (chosen < 0) continue;

    const double peak = nccf[chosen];
    track.voicing_prob[f] = std::clamp(peak, 0.0, 1.0);
    if (track.voicing_prob[f] < cfg.voicing_threshold) continue;

    double refined = chosen;
    if (chosen > lag_min && chosen < lag_max) {
      const double ym = nccf[chosen - 1];
      const double yp = nccf[chosen + 1];
      const double curv = ym - 2.0 * peak + yp;
      if (curv < 0.0) refined += std::clamp(0.5 * (ym - yp) / curv, -0.5, 0.5);
    }
    track.f0[f] = sr / refined;
  }
  return track;
}

namespace {

// Accumulates cycle-to-cycle differences over any number of runs.
struct PerturbationSums {
  double abs_diff = 0.0;
  std::size_t n_diff = 0;
  double abs_diff2 = 0.0;
  std::size_t n_diff2 = 0;
  double period_sum = 0.0;
  std::size_t n_period = 0;
  double amp_abs_diff = 0.0;
  std::size_t n_amp_diff = 0;
  double amp_sum = 0.0;
  std::size_t n_amp = 0;

  void add(std::span<const double> periods, std::span<const double> amplitudes) {
    for (std::size_t i = 0; i < periods.size(); ++i) {
      period_sum += periods[i];
      ++n_period;
      if (i >= 1) {
        abs_diff += std::abs(periods[i] - periods[i - 1]);
        ++n_diff;
      }
      if (i >= 2) {
        abs_diff2 += std::abs((periods[i] - periods[i - 1]) - (periods[i - 1] - periods[i - 2]));
        ++n_diff2;
      }
    }
    for (std::size_t i = 0; i < amplitudes.size(); ++i) {
      amp_sum += amplitudes[i];
      ++n_amp;
      if (i >= 1) {
        amp_abs_diff += std::abs(amplitudes[i] - amplitudes[i - 1]);
        ++n_amp_diff;
      }
    }
  }

  Perturbation result() const {
    Perturbation p;
    const double mean_period = period_sum / static_cast<double>(n_period);
    p.jitter_local = (abs_diff / static_cast<double>(n_diff)) / mean_period;
    p.jitter_ddp = (abs_diff2 / static_cast<double>(n_diff2)) / mean_period;
    const double mean_amp = amp_sum / static_cast<double>(n_amp);
    p.shimmer = mean_amp > 0.0 ? (amp_abs_diff / static_cast<double>(n_amp_diff)) / mean_amp : 0.0;
    return p;
  }
};

}  // namespace

Perturbation perturbation(std::span<const double> periods, std::span<const double> amplitudes) {
  if (periods.size() < 3 || amplitudes.size() < 2) {
    throw Error(Errc::NoVoicedContent, "need at least 3 periods and 2 amplitudes");
  }
  PerturbationSums sums;
  sums.add(periods, amplitudes);
  return sums.result();
}

std::vector<std::vector<PeriodMark>> period_marks(const Signal& signal, const PitchTrack& track) {
  std::vector<std::vector<PeriodMark>> runs;
  const auto& x = signal.samples;
  const auto n_frames = static_cast<long>(track.f0.size());
  const long half = track.frame_len / 2;
  auto period_at = [&](double t) {
    long f = static_cast<long>(std::lround((t - half) / track.hop));
    f = std::clamp(f, 0L, n_frames - 1);
    // Nearest voiced frame in the neighbourhood keeps the search inside the run.
    for (long d = 0; d < n_frames; ++d) {
      if (f - d >= 0 && track.f0[f - d] > 0.0) return track.sample_rate / track.f0[f - d];
      if (f + d < n_frames && track.f0[f + d] > 0.0) return track.sample_rate / track.f0[f + d];
    }
    return 0.0;
  };
  auto refine = [&](long i) {
    PeriodMark m{static_cast<double>(i), x[i]};
    if (i > 0 && i + 1 < static_cast<long>(x.size())) {
      const double ym = x[i - 1];
      const double yp = x[i + 1];
      const double curv = ym - 2.0 * x[i] + yp;
      if (curv < 0.0) {
        const double delta = std::clamp(0.5 * (ym - yp) / curv, -0.5, 0.5);
        m.position += delta;
        m.amplitude = x[i] - 0.25 * (ym - yp) * delta;
      }
    }
    return m;
  };
  auto argmax = [&](long lo, long hi) {
    long best = lo;
    for (long i = lo + 1; i < hi; ++i) {
      if (x[i] > x[best]) best = i;
    }
    return best;
  };

  long f = 0;
  while (f < n_frames) {
    if (!(track.f0[f] > 0.0)) {
      ++f;
      continue;
    }
    long g = f;
    while (g + 1 < n_frames && track.f0[g + 1] > 0.0) ++g;
    const long start = f * track.hop;
    const long stop = std::min<long>(g * track.hop + track.frame_len, static_cast<long>(x.size()));
    f = g + 1;

    std::vector<PeriodMark> marks;
    const double first_period = period_at(static_cast<double>(start));
    const long first_end = std::min(stop, start + static_cast<long>(std::ceil(first_period)));
    if (first_end - start < 2) continue;
    long idx = argmax(start, first_end);
    marks.push_back(refine(idx));
    while (true) {
      const double period = period_at(static_cast<double>(idx));
      if (!(period > 0.0)) break;
      const long lo = idx + static_cast<long>(std::floor(0.8 * period));
      const long hi = idx + static_cast<long>(std::ceil(1.2 * period)) + 1;
      if (hi > stop) break;
      idx = argmax(std::max(lo, idx + 1), hi);
      marks.push_back(refine(idx));
    }
    if (marks.size() >= 2) runs.push_back(std::move(marks));
  }
  return runs;
}

PhonationSeries jitter_shimmer(const Signal& signal, const PitchTrack& track,
                               const DspConfig& cfg) {
  PhonationSeries out;
  const auto runs = period_marks(signal, track);
  const auto n = static_cast<long>(signal.samples.size());
  const long win = std::max(1L, std::lround(signal.sample_rate * cfg.phonation_window_ms / 1000.0));
  const long hop = std::max(1L, std::lround(signal.sample_rate * cfg.phonation_hop_ms / 1000.0));

  std::vector<long> starts;
  if (n <= win) {
    starts.push_back(0);
  } else {
    for (long s = 0; s + win <= n; s += hop) starts.push_back(s);
  }

  std::vector<double> periods;
  std::vector<double> amps;
  for (long s : starts) {
    const double lo = static_cast<double>(s);
    const double hi = static_cast<double>(std::min(n, s + win));
    PerturbationSums sums;
    bool usable = false;
    for (const auto& run : runs) {
      periods.clear();
      amps.clear();
      const PeriodMark* prev = nullptr;
      for (const auto& m : run) {
        if (m.position < lo || m.position >= hi) continue;
        if (prev != nullptr) periods.push_back(m.position - prev->position);
        amps.push_back(m.amplitude);
        prev = &m;
      }
      if (periods.size() >= 3) {
        sums.add(periods, amps);
        usable = true;
      }
    }
    if (!usable) continue;
    const auto p = sums.result();
    out.jitter_local.push_back(p.jitter_local);
    out.jitter_ddp.push_back(p.jitter_ddp);
    out.shimmer.push_back(p.shimmer);
  }
  if (out.jitter_local.empty()) {
    out.no_voiced_content = true;
    out.jitter_local = {0.0};
    out.jitter_ddp = {0.0};
    out.shimmer = {0.0};
  }
  return out;
}

}  // namespace langassess::dsp
