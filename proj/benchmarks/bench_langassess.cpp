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

#include <benchmark/benchmark.h>

#include "langassess/acoustic.hpp"
#include "langassess/featsel.hpp"
#include "langassess/ml.hpp"
#include "langassess/models.hpp"
#include "langassess/rng.hpp"
#include "langassess/synth.hpp"
#include "langassess/text.hpp"

using namespace langassess;

namespace {

Matrix gaussian(Eigen::Index n, Eigen::Index p, Rng& rng) {
  Matrix x(n, p);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = rng.normal();
  return x;
}

ml::Labels alternating(Eigen::Index n) {
  ml::Labels y(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = static_cast<int>(i % 2);
  return y;
}

// Shifts class 1 so the problems are learnable but overlapping.
Matrix shifted(Matrix x, const ml::Labels& y) {
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    if (y[static_cast<std::size_t>(i)]) x.row(i).array() += 0.5;
  }
  return x;
}

void BM_AcousticVector(benchmark::State& state) {
  Rng rng(1);
  const auto signal = synth::synthesize_voice({}, 16000, static_cast<double>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(extract_acoustic_vector(signal));
  state.SetLabel(std::to_string(state.range(0)) + " s");
}
BENCHMARK(BM_AcousticVector)->Arg(5)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_LinguisticVector(benchmark::State& state) {
  Rng rng(2);
  const auto transcript = synth::synthesize_text({}, Task::PD, 0, rng);
  for (auto _ : state) benchmark::DoNotOptimize(text::extract_linguistic_vector(text::tokenize(transcript), {}));
}
BENCHMARK(BM_LinguisticVector);

void BM_SvmLinear(benchmark::State& state) {
  Rng rng(3);
  const auto n = static_cast<Eigen::Index>(state.range(0));
  const auto y = alternating(n);
  const Matrix x = shifted(gaussian(n, 15, rng), y);
  ml::SvmParams sp;
  for (auto _ : state) benchmark::DoNotOptimize(ml::SvmModel::fit(x, y, sp));
}
BENCHMARK(BM_SvmLinear)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_RandomForest(benchmark::State& state) {
  Rng rng(4);
  const auto y = alternating(128);
  const Matrix x = shifted(gaussian(128, 15, rng), y);
  ml::ModelSpec spec;
  spec.kind = ml::ModelKind::RF;
  spec.n_estimators = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ml::train(spec, x, y));
}
BENCHMARK(BM_RandomForest)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_MrmrRank(benchmark::State& state) {
  Rng rng(5);
  FeatureMatrix m;
  m.y = alternating(64);
  m.x = shifted(gaussian(64, 296, rng), m.y);
  m.names = acoustic_feature_names();
  for (int i = 0; i < 64; ++i) m.sample_ids.push_back("s" + std::to_string(i));
  for (auto _ : state) benchmark::DoNotOptimize(featsel::mrmr_rank(m));
}
BENCHMARK(BM_MrmrRank)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
