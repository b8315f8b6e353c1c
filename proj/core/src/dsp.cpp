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

#include "langassess/dsp.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "fft.hpp"
#include "langassess/error.hpp"

namespace langassess::dsp {

int frame_length(int sample_rate, const DspConfig& cfg) {
  return static_cast<int>(std::lround(sample_rate * cfg.frame_ms / 1000.0));
}

int hop_length(int sample_rate, const DspConfig& cfg) {
  return static_cast<int>(std::lround(sample_rate * cfg.hop_ms / 1000.0));
}

int fft_size(int n) {
  int size = 1;
  while (size < n) size <<= 1;
  return size;
}

std::vector<double> hamming(int n) {
  std::vector<double> w(static_cast<std::size_t>(n), 1.0);
  if (n < 2) return w;
  for (int i = 0; i < n; ++i) {
    w[i] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * i / (n - 1));
  }
  return w;
}

FrameSequence frame_signal(const Signal& signal, const DspConfig& cfg) {
  if (signal.sample_rate < kMinSampleRate) {
    throw Error(Errc::UnsupportedEncoding,
                "sample rate " + std::to_string(signal.sample_rate) + " Hz below 8000 Hz");
  }
  const int len = frame_length(signal.sample_rate, cfg);
  const int hop = hop_length(signal.sample_rate, cfg);
  if (len <= 0 || hop <= 0) throw Error(Errc::InvalidConfig, "frame and hop must be positive");
  const auto n = static_cast<long>(signal.samples.size());
  if (n < len) {
    throw Error(Errc::SignalTooShort, std::to_string(n) + " samples, need at least " +
                                          std::to_string(len) + " for one frame");
  }
  const long n_frames = (n - len) / hop + 1;
  FrameSequence fs;
  fs.frame_len = len;
  fs.hop = hop;
  fs.sample_rate = signal.sample_rate;
  fs.raw.resize(n_frames, len);
  fs.frames.resize(n_frames, len);
  const auto window = hamming(len);
  for (long f = 0; f < n_frames; ++f) {
    const double* src = signal.samples.data() + f * hop;
    for (int i = 0; i < len; ++i) {
      fs.raw(f, i) = src[i];
      fs.frames(f, i) = src[i] * window[i];
    }
  }
  return fs;
}

std::vector<double> power_spectrum(std::span<const double> frame, int nfft) {
  std::vector<std::complex<double>> buf(static_cast<std::size_t>(nfft));
  const std::size_t n = std::min<std::size_t>(frame.size(), buf.size());
  for (std::size_t i = 0; i < n; ++i) buf[i] = frame[i];
  detail::fft(buf);
  std::vector<double> power(static_cast<std::size_t>(nfft / 2 + 1));
  for (std::size_t k = 0; k < power.size(); ++k) power[k] = std::norm(buf[k]);
  return power;
}

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

Matrix mel_filterbank(int n_filters, int nfft, int sample_rate) {
  const int n_bins = nfft / 2 + 1;
  const double top = hz_to_mel(sample_rate / 2.0);
  std::vector<double> edges(static_cast<std::size_t>(n_filters + 2));
  for (int i = 0; i < n_filters + 2; ++i) edges[i] = mel_to_hz(top * i / (n_filters + 1));
  Matrix bank = Matrix::Zero(n_filters, n_bins);
  for (int m = 0; m < n_filters; ++m) {
    const double lo = edges[m];
    const double centre = edges[m + 1];
    const double hi = edges[m + 2];
    for (int k = 0; k < n_bins; ++k) {
      const double f = static_cast<double>(k) * sample_rate / nfft;
      if (f >= lo && f <= centre) {
        bank(m, k) = (f - lo) / (centre - lo);
      } else if (f > centre && f <= hi) {
        bank(m, k) = (hi - f) / (hi - centre);
      }
    }
  }
  return bank;
}

namespace {

Matrix log_filterbank_energies(const FrameSequence& frames, int n_filters, double floor) {
  const int nfft = fft_size(frames.frame_len);
  const Matrix bank = mel_filterbank(n_filters, nfft, frames.sample_rate);
  Matrix out(frames.n_frames(), n_filters);
  for (Eigen::Index f = 0; f < frames.n_frames(); ++f) {
    const auto row = frames.frames.row(f);
    const auto power = power_spectrum(std::span<const double>(row.data(), row.size()), nfft);
    const Eigen::Map<const Vector> p(power.data(), static_cast<Eigen::Index>(power.size()));
    const Vector energies = bank * p;
    for (int m = 0; m < n_filters; ++m) out(f, m) = std::log(std::max(energies[m], floor));
  }
  return out;
}

}  // namespace

Matrix mfcc(const FrameSequence& frames, const DspConfig& cfg) {
  const int m_count = cfg.n_mel_filters;
  const Matrix logs = log_filterbank_energies(frames, m_count, cfg.log_floor);
  // Orthonormal DCT-II.
  Matrix dct(cfg.n_mfcc, m_count);
  for (int n = 0; n < cfg.n_mfcc; ++n) {
    const double scale = n == 0 ? std::sqrt(1.0 / m_count) : std::sqrt(2.0 / m_count);
    for (int m = 0; m < m_count; ++m) {
      dct(n, m) = scale * std::cos(std::numbers::pi * n * (m + 0.5) / m_count);
    }
  }
  return logs * dct.transpose();
}

Matrix log_mel(const FrameSequence& frames, const DspConfig& cfg) {
  return log_filterbank_energies(frames, cfg.n_log_mel, cfg.log_floor);
}

std::vector<double> autocorrelation(std::span<const double> frame, int order) {
  std::vector<double> r(static_cast<std::size_t>(order + 1), 0.0);
  for (int lag = 0; lag <= order; ++lag) {
    double acc = 0.0;
    for (std::size_t i = static_cast<std::size_t>(lag); i < frame.size(); ++i) {
      acc += frame[i] * frame[i - lag];
    }
    r[lag] = acc;
  }
  return r;
}

LpcResult levinson_durbin(std::span<const double> r, int order) {
  LpcResult res;
  res.a.assign(static_cast<std::size_t>(order + 1), 0.0);
  res.a[0] = 1.0;
  res.error = r.empty() ? 0.0 : r[0];
  if (static_cast<int>(r.size()) <= order || !(r[0] > 0.0)) return res;
  std::vector<double> prev(res.a);
  for (int i = 1; i <= order; ++i) {
    double acc = r[i];
    for (int j = 1; j < i; ++j) acc += res.a[j] * r[i - j];
    const double k = -acc / res.error;
    if (!(std::abs(k) < 1.0)) return res;
    res.reflection.push_back(k);
    prev = res.a;
    for (int j = 1; j < i; ++j) res.a[j] = prev[j] + k * prev[i - j];
    res.a[i] = k;
    res.error *= (1.0 - k * k);
    if (!(res.error > 0.0)) return res;
  }
  res.stable = true;
  return res;
}

namespace {

// Evaluates c[h] + 2 sum_{n=1..h} c[h-n] T_n(x) for a symmetric polynomial
// of even degree 2h, using Clenshaw's recurrence.
double symmetric_poly_on_circle(const std::vector<double>& c, double x) {
  const int h = static_cast<int>(c.size() / 2);
  double b1 = 0.0;
  double b2 = 0.0;
  for (int n = h; n >= 1; --n) {
    const double coef = 2.0 * c[h - n];
    const double b0 = coef + 2.0 * x * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return c[h] + x * b1 - b2;
}

std::vector<double> roots_on_half_circle(const std::vector<double>& c, int grid) {
  std::vector<double> roots;
  auto eval = [&](double w) { return symmetric_poly_on_circle(c, std::cos(w)); };
  double w_prev = 0.0;
  double f_prev = eval(0.0);
  for (int j = 1; j <= grid; ++j) {
    const double w = std::numbers::pi * j / grid;
    const double f = eval(w);
    if (f == 0.0 && j < grid) {
      roots.push_back(w);
    } else if ((f_prev < 0.0 && f > 0.0) || (f_prev > 0.0 && f < 0.0)) {
      double lo = w_prev;
      double hi = w;
      double flo = f_prev;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = eval(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    w_prev = w;
    f_prev = f;
  }
  return roots;
}

}  // namespace

std::vector<double> lpc_to_lsf(std::span<const double> a) {
  const int p = static_cast<int>(a.size()) - 1;
  if (p < 2 || p % 2 != 0) {
    throw Error(Errc::InvalidConfig, "LSP conversion requires an even LPC order");
  }
  std::vector<double> ext(a.begin(), a.end());
  ext.push_back(0.0);
  std::vector<double> sum(static_cast<std::size_t>(p + 2));
  std::vector<double> diff(static_cast<std::size_t>(p + 2));
  for (int k = 0; k <= p + 1; ++k) {
    sum[k] = ext[k] + ext[p + 1 - k];
    diff[k] = ext[k] - ext[p + 1 - k];
  }
  // Deflate the trivial roots at z = -1 and z = +1.
  std::vector<double> c(static_cast<std::size_t>(p + 1));
  std::vector<double> d(static_cast<std::size_t>(p + 1));
  c[0] = sum[0];
  d[0] = diff[0];
  for (int k = 1; k <= p; ++k) {
    c[k] = sum[k] - c[k - 1];
    d[k] = diff[k] + d[k - 1];
  }
  constexpr int kGrid = 1024;
  auto roots_p = roots_on_half_circle(c, kGrid);
  auto roots_q = roots_on_half_circle(d, kGrid);
  if (static_cast<int>(roots_p.size()) != p / 2 || static_cast<int>(roots_q.size()) != p / 2) {
    return {};
  }
  std::vector<double> lsf;
  lsf.reserve(static_cast<std::size_t>(p));
  for (double w : roots_p) lsf.push_back(w / std::numbers::pi);
  for (double w : roots_q) lsf.push_back(w / std::numbers::pi);
  std::sort(lsf.begin(), lsf.end());
  for (int i = 0; i < p; ++i) {
    const double lo = i == 0 ? 0.0 : lsf[i - 1];
    if (!(lsf[i] > lo) || !(lsf[i] < 1.0)) return {};
  }
  return lsf;
}

LspTrack lsp(const FrameSequence& frames, const DspConfig& cfg) {
  const int p = cfg.lpc_order;
  LspTrack track;
  track.lsf.resize(frames.n_frames(), p);
  std::vector<double> previous(static_cast<std::size_t>(p));
  for (int i = 0; i < p; ++i) previous[i] = static_cast<double>(i + 1) / (p + 1);
  for (Eigen::Index f = 0; f < frames.n_frames(); ++f) {
    const auto row = frames.frames.row(f);
    const auto r = autocorrelation(std::span<const double>(row.data(), row.size()), p);
    const auto lpc = levinson_durbin(r, p);
    std::vector<double> lsf;
    if (lpc.stable) lsf = lpc_to_lsf(lpc.a);
    if (lsf.empty()) {
      ++track.unstable_frames;
      lsf = previous;
    }
    for (int i = 0; i < p; ++i) track.lsf(f, i) = lsf[i];
    previous = std::move(lsf);
  }
  return track;
}

double loudness(std::span<const double> frame) {
  if (frame.empty()) return 0.0;
  double acc = 0.0;
  for (double x : frame) acc += x * x;
  return std::pow(std::sqrt(acc / static_cast<double>(frame.size())), 0.3);
}

std::vector<double> loudness(const FrameSequence& frames) {
  std::vector<double> out(static_cast<std::size_t>(frames.n_frames()));
  for (Eigen::Index f = 0; f < frames.n_frames(); ++f) {
    const auto row = frames.raw.row(f);
    out[f] = loudness(std::span<const double>(row.data(), row.size()));
  }
  return out;
}

}  // namespace langassess::dsp
