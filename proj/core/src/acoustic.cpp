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

#include "langassess/acoustic.hpp"

#include <cmath>

#include "langassess/error.hpp"
#include "langassess/functionals.hpp"
#include "langassess/pitch.hpp"

namespace langassess {
namespace {

struct Family {
  const char* stem;
  int count;  // 0 for a scalar series
};

constexpr Family kIndexedFamilies[] = {{"mfcc", 15}, {"log_mel", 8}, {"lsp", 8}};
constexpr const char* kScalarSeries[] = {"f0",      "jitter_local", "jitter_ddp",
                                         "shimmer", "loudness",     "voicing_prob"};
constexpr const char* kFunctionalNames[] = {"mean", "std", "skew", "kurt"};

void append_functionals(std::vector<std::string>& names, const std::string& series) {
  for (const char* fn : kFunctionalNames) names.push_back(series + "_" + fn);
}

// Series names in output order: base/delta blocks per family.
std::vector<std::string> output_series_order() {
  std::vector<std::string> out;
  for (const auto& fam : kIndexedFamilies) {
    for (int i = 0; i < fam.count; ++i) out.push_back(fam.stem + std::to_string(i));
    for (int i = 0; i < fam.count; ++i) out.push_back(fam.stem + std::to_string(i) + "_delta");
  }
  for (const char* s : kScalarSeries) {
    out.emplace_back(s);
    out.push_back(std::string(s) + "_delta");
  }
  return out;
}

void append_column(std::vector<std::vector<double>>& series, const Matrix& m, Eigen::Index col) {
  std::vector<double> v(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) v[r] = m(r, col);
  series.push_back(std::move(v));
}

}  // namespace

const std::vector<std::string>& base_series_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& fam : kIndexedFamilies) {
      for (int i = 0; i < fam.count; ++i) out.push_back(fam.stem + std::to_string(i));
    }
    for (const char* s : kScalarSeries) out.emplace_back(s);
    return out;
  }();
  return names;
}

const std::vector<std::string>& acoustic_feature_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& s : output_series_order()) append_functionals(out, s);
    return out;
  }();
  return names;
}

AcousticGroup acoustic_group(std::string_view name) {
  if (name.starts_with("mfcc") || name.starts_with("log_mel") || name.starts_with("lsp")) {
    return AcousticGroup::Spectral;
  }
  if (name.starts_with("voicing_prob")) return AcousticGroup::Speech;
  if (name.starts_with("f0") || name.starts_with("jitter") || name.starts_with("shimmer") ||
      name.starts_with("loudness")) {
    return AcousticGroup::Phonation;
  }
  throw Error(Errc::MissingColumns, "not an acoustic feature name: " + std::string(name));
}

SeriesBundle compute_series(const Signal& signal, const dsp::DspConfig& cfg,
                            bool* no_voiced_content, int* unstable_lpc) {
  const auto frames = dsp::frame_signal(signal, cfg);
  const Matrix cepstra = dsp::mfcc(frames, cfg);
  const Matrix bands = dsp::log_mel(frames, cfg);
  const auto lsp = dsp::lsp(frames, cfg);
  const auto pitch = dsp::f0_and_voicing(signal, cfg);
  const auto phonation = dsp::jitter_shimmer(signal, pitch, cfg);

  SeriesBundle bundle;
  bundle.names = base_series_names();
  for (Eigen::Index c = 0; c < cepstra.cols(); ++c) append_column(bundle.series, cepstra, c);
  for (Eigen::Index c = 0; c < bands.cols(); ++c) append_column(bundle.series, bands, c);
  for (Eigen::Index c = 0; c < lsp.lsf.cols(); ++c) append_column(bundle.series, lsp.lsf, c);

  // F0 functionals describe voiced speech only.
  std::vector<double> f0;
  for (double v : pitch.f0) {
    if (v > 0.0) f0.push_back(v);
  }
  if (f0.empty()) f0.push_back(0.0);
  bundle.series.push_back(std::move(f0));
  bundle.series.push_back(phonation.jitter_local);
  bundle.series.push_back(phonation.jitter_ddp);
  bundle.series.push_back(phonation.shimmer);
  bundle.series.push_back(dsp::loudness(frames));
  bundle.series.push_back(pitch.voicing_prob);

  if (bundle.series.size() != bundle.names.size()) {
    throw Error(Errc::InvalidConfig, "DSP configuration does not produce the 37 base series");
  }
  if (no_voiced_content != nullptr) *no_voiced_content = phonation.no_voiced_content;
  if (unstable_lpc != nullptr) *unstable_lpc = lsp.unstable_frames;
  return bundle;
}

AcousticVector extract_acoustic_vector(const Signal& signal, const dsp::DspConfig& cfg) {
  AcousticVector out;
  const auto bundle =
      compute_series(signal, cfg, &out.no_voiced_content, &out.unstable_lpc_frames);

  const auto& names = bundle.names;
  auto find = [&](const std::string& name) -> const std::vector<double>& {
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i] == name) return bundle.series[i];
    }
    throw Error(Errc::MissingColumns, "missing base series " + name);
  };

  out.values.reserve(kAcousticFeatureCount);
  for (const auto& series_name : output_series_order()) {
    constexpr std::string_view kSuffix = "_delta";
    const bool is_delta = series_name.ends_with(kSuffix);
    const auto& base = find(is_delta ? series_name.substr(0, series_name.size() - kSuffix.size())
                                     : series_name);
    const auto fn = is_delta ? dsp::functionals(dsp::delta(base, cfg.delta_window))
                             : dsp::functionals(base);
    out.values.insert(out.values.end(), {fn.mean, fn.std, fn.skew, fn.kurt});
  }
  for (double v : out.values) {
    if (!std::isfinite(v)) throw Error(Errc::NumericalFailure, "non-finite acoustic feature");
  }
  return out;
}

}  // namespace langassess
