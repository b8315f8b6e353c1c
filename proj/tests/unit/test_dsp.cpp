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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "doctest.h"
#include "langassess/acoustic.hpp"
#include "langassess/dsp.hpp"
#include "langassess/error.hpp"
#include "langassess/functionals.hpp"
#include "langassess/pitch.hpp"
#include "langassess/rng.hpp"
#include "oracles.hpp"

using namespace langassess;

namespace {

Signal make_signal(std::vector<double> x, int sr = 16000) {
  Signal s;
  s.samples = std::move(x);
  s.sample_rate = sr;
  return s;
}

Signal white_noise(std::size_t n, std::uint64_t seed, double sd = 0.1) {
  Rng rng(seed);
  std::vector<double> x(n);
  for (auto& v : x) v = rng.normal(0.0, sd);
  return make_signal(std::move(x));
}

Signal pulse_train(double hz, double seconds, int sr = 16000) {
  std::vector<double> x(static_cast<std::size_t>(seconds * sr), 0.0);
  const auto period = static_cast<std::size_t>(std::lround(sr / hz));
  for (std::size_t i = 0; i < x.size(); i += period) x[i] = 0.8;
  return make_signal(std::move(x), sr);
}

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Errc::NumericalFailure;
}

}  // namespace

TEST_CASE("framing counts and short signals") {
  const auto frames = dsp::frame_signal(make_signal(std::vector<double>(16000, 0.1)));
  CHECK(frames.n_frames() == 98);  // floor((16000 - 400) / 160) + 1
  CHECK(frames.frame_len == 400);
  CHECK(frames.hop == 160);
  CHECK(code_of([] { dsp::frame_signal(make_signal(std::vector<double>(399, 0.0))); }) ==
        Errc::SignalTooShort);

  const auto zeros = dsp::frame_signal(make_signal(std::vector<double>(1000, 0.0)));
  CHECK(zeros.frames.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("hamming window matches the closed form") {
  const auto w = dsp::hamming(400);
  for (int i = 0; i < 400; ++i) {
    CHECK(w[i] == doctest::Approx(0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * i / 399)).epsilon(1e-12));
  }
}

TEST_CASE("power spectrum equals the direct DFT") {
  Rng rng(3);
  std::vector<double> frame(300);
  for (auto& v : frame) v = rng.uniform(-1.0, 1.0);
  const auto p = dsp::power_spectrum(frame, 512);
  REQUIRE(p.size() == 257);
  for (int k = 0; k <= 256; k += 17) {
    double re = 0.0, im = 0.0;
    for (int i = 0; i < 300; ++i) {
      re += frame[i] * std::cos(2.0 * std::numbers::pi * k * i / 512);
      im -= frame[i] * std::sin(2.0 * std::numbers::pi * k * i / 512);
    }
    CHECK(p[k] == doctest::Approx(re * re + im * im).epsilon(1e-9));
  }
}

TEST_CASE("mfcc shape and silence") {
  const auto frames = dsp::frame_signal(make_signal(std::vector<double>(8000, 0.0)));
  const Matrix c = dsp::mfcc(frames);
  CHECK(c.cols() == 15);
  CHECK(c.rows() == frames.n_frames());
  for (Eigen::Index r = 1; r < c.rows(); ++r) CHECK((c.row(r) - c.row(0)).cwiseAbs().maxCoeff() == 0.0);
  // Every band sits at the floor, so only the DC coefficient survives.
  CHECK(c(0, 0) == doctest::Approx(std::log(1e-10) * std::sqrt(26.0)).epsilon(1e-12));
  CHECK(c.row(0).tail(14).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("mfcc and log mel match the reference chain on a 440 Hz sine") {
  const auto x = oracle::sine(440.0, 16000, 4000);
  const auto frames = dsp::frame_signal(make_signal(x));
  const Matrix c = dsp::mfcc(frames);
  const Matrix b = dsp::log_mel(frames);
  const auto ref = oracle::reference_mfcc(x, 16000);
  REQUIRE(c.rows() == ref.mfcc.rows());
  for (Eigen::Index r = 0; r < c.rows(); ++r) {
    for (Eigen::Index k = 0; k < 15; ++k) {
      CHECK(std::abs(c(r, k) - ref.mfcc(r, k)) <= 1e-6 * std::max(1.0, std::abs(ref.mfcc(r, k))));
    }
    for (Eigen::Index k = 0; k < 8; ++k) {
      CHECK(std::abs(b(r, k) - ref.log_mel(r, k)) <= 1e-6 * std::max(1.0, std::abs(ref.log_mel(r, k))));
    }
  }
}

TEST_CASE("log mel homogeneity and the 440 Hz band") {
  const auto x = oracle::sine(440.0, 16000, 4000, 0.25);
  auto x2 = x;
  for (auto& v : x2) v *= 2.0;
  const Matrix a = dsp::log_mel(dsp::frame_signal(make_signal(x)));
  const Matrix b = dsp::log_mel(dsp::frame_signal(make_signal(x2)));
  CHECK(a.cols() == 8);
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index k = 0; k < 8; ++k) {
      if (a(r, k) > std::log(1e-10) + 1.0) CHECK(b(r, k) - a(r, k) == doctest::Approx(std::log(4.0)).epsilon(1e-9));
    }
  }
  // The band whose triangle has the largest weight at 440 Hz.
  const Matrix bank = dsp::mel_filterbank(8, 512, 16000);
  const double bin = 440.0 * 512 / 16000;
  const auto lo = static_cast<Eigen::Index>(std::floor(bin));
  Eigen::Index expected = 0;
  bank.col(lo).maxCoeff(&expected);
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    Eigen::Index arg = 0;
    a.row(r).maxCoeff(&arg);
    CHECK(arg == expected);
  }
}

TEST_CASE("levinson durbin solves the normal equations") {
  Rng rng(11);
  std::vector<double> frame(400);
  for (auto& v : frame) v = rng.normal();
  const auto r = dsp::autocorrelation(frame, 8);
  const auto lpc = dsp::levinson_durbin(r, 8);
  REQUIRE(lpc.stable);
  CHECK(lpc.a[0] == 1.0);
  // sum_k a[k] r[|i-k|] = 0 for i = 1..8.
  for (int i = 1; i <= 8; ++i) {
    double acc = 0.0;
    for (int k = 0; k <= 8; ++k) acc += lpc.a[k] * r[std::abs(i - k)];
    CHECK(std::abs(acc) < 1e-9 * r[0]);
  }
}

TEST_CASE("lsp frequencies ascend inside (0, 1)") {
  const auto frames = dsp::frame_signal(white_noise(16000, 5));
  const auto track = dsp::lsp(frames);
  CHECK(track.lsf.cols() == 8);
  for (Eigen::Index r = 0; r < track.lsf.rows(); ++r) {
    CHECK(track.lsf(r, 0) > 0.0);
    CHECK(track.lsf(r, 7) < 1.0);
    for (int k = 1; k < 8; ++k) CHECK(track.lsf(r, k) > track.lsf(r, k - 1));
  }
}

TEST_CASE("white noise gives near uniform lsp spacing") {
  const auto frames = dsp::frame_signal(white_noise(32000, 6));
  const auto track = dsp::lsp(frames);
  // A flat spectrum has A(z) = 1, whose line spectrum sits at k / 9.
  for (int k = 0; k < 8; ++k) CHECK(track.lsf.col(k).mean() == doctest::Approx((k + 1) / 9.0).epsilon(0.04));
}

TEST_CASE("an AR(2) resonance is bracketed by a close lsp pair") {
  const double r = 0.97, theta = 0.3 * std::numbers::pi;
  Rng rng(9);
  std::vector<double> x(16000, 0.0);
  for (std::size_t n = 2; n < x.size(); ++n) {
    x[n] = 2.0 * r * std::cos(theta) * x[n - 1] - r * r * x[n - 2] + 0.01 * rng.normal();
  }
  // Order-2 fit per frame: the pole angle of z^2 + a1 z + a2 comes from the
  // quadratic formula and must lie between the two lines.
  dsp::DspConfig cfg;
  cfg.lpc_order = 2;
  const auto frames = dsp::frame_signal(make_signal(x), cfg);
  const auto track = dsp::lsp(frames, cfg);
  REQUIRE(track.lsf.cols() == 2);
  double mean_angle = 0.0;
  for (Eigen::Index f = 0; f < track.lsf.rows(); ++f) {
    const auto row = frames.frames.row(f);
    const auto lpc = dsp::levinson_durbin(dsp::autocorrelation({row.data(), static_cast<std::size_t>(row.size())}, 2), 2);
    REQUIRE(lpc.a[2] > 0.0);
    const double angle = std::acos(-lpc.a[1] / (2.0 * std::sqrt(lpc.a[2]))) / std::numbers::pi;
    CHECK(track.lsf(f, 0) < angle);
    CHECK(angle < track.lsf(f, 1));
    mean_angle += angle / static_cast<double>(track.lsf.rows());
  }
  CHECK(std::abs(mean_angle - 0.3) < 0.01);
}

TEST_CASE("pitch tracker on pulses, noise and silence") {
  const auto pulses = dsp::f0_and_voicing(pulse_train(200.0, 1.0));
  std::vector<double> voiced;
  for (double f : pulses.f0) {
    if (f > 0.0) voiced.push_back(f);
  }
  REQUIRE(!voiced.empty());
  std::nth_element(voiced.begin(), voiced.begin() + voiced.size() / 2, voiced.end());
  CHECK(std::abs(voiced[voiced.size() / 2] - 200.0) <= 2.0);

  const auto noise = dsp::f0_and_voicing(white_noise(16000, 21));
  const double mean = std::accumulate(noise.voicing_prob.begin(), noise.voicing_prob.end(), 0.0) /
                      static_cast<double>(noise.voicing_prob.size());
  CHECK(mean < 0.4);

  const auto quiet = dsp::f0_and_voicing(make_signal(std::vector<double>(8000, 0.0)));
  for (double v : quiet.voicing_prob) CHECK(v == 0.0);
  for (double v : quiet.voicing_prob) CHECK(v >= 0.0);
  for (double v : noise.voicing_prob) CHECK((v >= 0.0 && v <= 1.0));
}

TEST_CASE("perturbation hand values") {
  const std::vector<double> periods = {10, 11, 10, 11};
  const std::vector<double> flat = {1, 1, 1, 1};
  const auto p = dsp::perturbation(periods, flat);
  CHECK(p.jitter_local == doctest::Approx(1.0 / 10.5).epsilon(1e-12));
  CHECK(p.jitter_ddp == doctest::Approx(2.0 / 10.5).epsilon(1e-12));
  CHECK(p.shimmer == 0.0);
  const std::vector<double> amps = {1.0, 0.8, 1.0, 0.8};
  CHECK(dsp::perturbation(periods, amps).shimmer == doctest::Approx(0.2 / 0.9).epsilon(1e-12));
  const std::vector<double> two = {10, 11};
  CHECK(code_of([&] { dsp::perturbation(two, amps); }) == Errc::NoVoicedContent);
}

TEST_CASE("perfectly periodic pulses have no jitter or shimmer") {
  const auto sig = pulse_train(200.0, 1.0);
  const auto track = dsp::f0_and_voicing(sig);
  const auto ph = dsp::jitter_shimmer(sig, track);
  REQUIRE(!ph.no_voiced_content);
  for (double v : ph.jitter_local) CHECK(std::abs(v) < 1e-9);
  for (double v : ph.shimmer) CHECK(std::abs(v) < 1e-9);
}

TEST_CASE("silence has no voiced content") {
  const auto sig = make_signal(std::vector<double>(16000, 0.0));
  const auto ph = dsp::jitter_shimmer(sig, dsp::f0_and_voicing(sig));
  CHECK(ph.no_voiced_content);
  CHECK(ph.jitter_local == std::vector<double>{0.0});
}

TEST_CASE("loudness") {
  CHECK(dsp::loudness(std::vector<double>(400, 0.0)) == 0.0);
  // 400 samples hold exactly 10 periods of 400 Hz, so the RMS is 1/sqrt(2).
  const auto s = oracle::sine(400.0, 16000, 400);
  CHECK(dsp::loudness(s) == doctest::Approx(std::pow(std::sqrt(0.5), 0.3)).epsilon(1e-12));
  CHECK(std::abs(dsp::loudness(s) - 0.9013) < 5e-5);
  auto scaled = s;
  for (auto& v : scaled) v *= 0.25;
  CHECK(dsp::loudness(scaled) / dsp::loudness(s) == doctest::Approx(std::pow(0.25, 0.3)).epsilon(1e-12));
}

TEST_CASE("delta regression") {
  CHECK(dsp::delta(std::vector<double>(7, 3.0)) == std::vector<double>(7, 0.0));
  CHECK(dsp::delta(std::vector<double>{5.0}) == std::vector<double>{0.0});
  std::vector<double> ramp(12);
  for (int t = 0; t < 12; ++t) ramp[t] = 0.7 * t;
  const auto d = dsp::delta(ramp);
  for (int t = 2; t < 10; ++t) CHECK(d[t] == doctest::Approx(0.7).epsilon(1e-12));
  // Edge: x_{-1} = x_{-2} = x_0.
  const double edge = (1 * (ramp[1] - ramp[0]) + 2 * (ramp[2] - ramp[0])) / 10.0;
  CHECK(d[0] == doctest::Approx(edge).epsilon(1e-12));
}

TEST_CASE("functionals hand moments") {
  const std::vector<double> x = {1, 2, 3, 4};
  const auto f = dsp::functionals(x);
  CHECK(f.mean == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(f.std == doctest::Approx(std::sqrt(1.25)).epsilon(1e-12));
  CHECK(std::abs(f.skew) < 1e-12);
  CHECK(f.kurt == doctest::Approx(2.5625 / 1.5625 - 3.0).epsilon(1e-12));
  const auto c = dsp::functionals(std::vector<double>(5, 2.0));
  CHECK(c.std == 0.0);
  CHECK(c.skew == 0.0);
  CHECK(c.kurt == 0.0);
}

TEST_CASE("acoustic vector inventory") {
  const auto& names = acoustic_feature_names();
  REQUIRE(names.size() == 296);
  CHECK(std::set<std::string>(names.begin(), names.end()).size() == 296);
  int spectral = 0, phonation = 0, speech = 0;
  for (const auto& n : names) {
    switch (acoustic_group(n)) {
      case AcousticGroup::Spectral: ++spectral; break;
      case AcousticGroup::Phonation: ++phonation; break;
      case AcousticGroup::Speech: ++speech; break;
    }
  }
  CHECK(spectral == 248);
  CHECK(phonation == 40);
  CHECK(speech == 8);
  CHECK(names.front() == "mfcc0_mean");
  CHECK(names.back() == "voicing_prob_delta_kurt");
}

TEST_CASE("acoustic vector on a voiced signal is finite and repeatable") {
  const auto sig = pulse_train(150.0, 2.0);
  const auto a = extract_acoustic_vector(sig);
  const auto b = extract_acoustic_vector(sig);
  REQUIRE(a.values.size() == 296);
  CHECK(a.values == b.values);
  for (double v : a.values) CHECK(std::isfinite(v));
}

TEST_CASE("acoustic vector on silence uses the documented defaults") {
  const auto v = extract_acoustic_vector(make_signal(std::vector<double>(16000, 0.0)));
  CHECK(v.no_voiced_content);
  const auto& names = acoustic_feature_names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    CHECK(std::isfinite(v.values[i]));
    if (acoustic_group(names[i]) != AcousticGroup::Spectral) CHECK(v.values[i] == 0.0);
  }
  CHECK(v.values[0] == doctest::Approx(std::log(1e-10) * std::sqrt(26.0)).epsilon(1e-12));
}
