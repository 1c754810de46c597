/*
 * Copyright 2026 The turnsample authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <benchmark/benchmark.h>

#include "turnsample/matvec.hpp"
#include "turnsample/tensor.hpp"

namespace {

using namespace turnsample;

// Sketch sizes are pinned across n so the curves show the n-dependence of
// the update path itself.
SamplerConfig pinned_config(uint64_t n) {
  SamplerConfig cfg;
  cfg.n = n;
  cfg.epsilon = 0.25;
  cfg.repetitions = 1;
  cfg.seed = MasterSeed{2026};
  cfg.rows = 40;
  cfg.buckets = 400;
  cfg.ams_estimators = 160;
  return cfg;
}

void BM_DirectSamplerUpdate(benchmark::State& state) {
  const uint64_t n = static_cast<uint64_t>(state.range(0));
  L2Sampler sampler(pinned_config(n));
  uint64_t tick = 0;
  for (auto _ : state) {
    sampler.update(tick % n + 1, (tick & 1) ? 1.0 : -1.0);
    ++tick;
  }
  benchmark::DoNotOptimize(sampler.repetition(0).point_sketch().table().data());
}
BENCHMARK(BM_DirectSamplerUpdate)->Arg(1 << 10)->Arg(1 << 14)->Arg(1 << 18);

void BM_OperatorSketchAUpdate(benchmark::State& state) {
  const uint64_t n = static_cast<uint64_t>(state.range(0));
  const uint64_t d = 8;
  MatVecSampler mv(MatVecModel::kUpdateBoth, n, d, pinned_config(n));
  uint64_t tick = 0;
  for (auto _ : state) {
    mv.update_a(tick % n + 1, tick % d + 1, (tick & 1) ? 1.0 : -1.0);
    ++tick;
  }
}
BENCHMARK(BM_OperatorSketchAUpdate)->Arg(1 << 10)->Arg(1 << 14);

void BM_OperatorSketchXUpdate(benchmark::State& state) {
  const uint64_t n = static_cast<uint64_t>(state.range(0));
  const uint64_t d = 8;
  Matrix a(n, d);
  for (uint64_t i = 0; i < n; ++i) a.at(i, i % d) = 1.0;
  MatVecSampler mv(MatVecModel::kFixAUpdateX, n, d, pinned_config(n), &a);
  uint64_t tick = 0;
  for (auto _ : state) {
    mv.update_x(tick % d + 1, (tick & 1) ? 1.0 : -1.0);
    ++tick;
  }
}
BENCHMARK(BM_OperatorSketchXUpdate)->Arg(1 << 10)->Arg(1 << 14);

void BM_TensorBlockUpdate(benchmark::State& state) {
  const uint64_t n = static_cast<uint64_t>(state.range(0));
  const uint64_t d = 8;
  Matrix a2(n, d);
  for (uint64_t i = 0; i < n; ++i)
    for (uint64_t j = 0; j < d; ++j) a2.at(i, j) = static_cast<double>((i + j) % 5) - 2.0;
  std::vector<double> x(d * d, 1.0);
  TensorSampler ts(n, d, pinned_config(n * n), a2, x);
  uint64_t tick = 0;
  for (auto _ : state) {
    ts.update_a1(tick % n + 1, tick % d + 1, (tick & 1) ? 1.0 : -1.0);
    ++tick;
  }
}
BENCHMARK(BM_TensorBlockUpdate)->Arg(256)->Arg(512)->Arg(1024);

}  // namespace

BENCHMARK_MAIN();
