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

#pragma once

#include <functional>
#include <optional>
#include <string>

#include "turnsample/matrix.hpp"
#include "turnsample/report.hpp"
#include "turnsample/stream.hpp"

namespace turnsample {

// Experiment orchestration shared by the CLI and the acceptance suite.

struct TrialCounts {
  std::vector<uint64_t> counts;  // 1-based outcomes land in counts[outcome - 1]
  uint64_t trials = 0;
  uint64_t accepted = 0;
};

/// Runs fn(trial_index) over deterministic chunks of trial indices, in
/// parallel across threads when available. With target_accepted > 0 the run
/// stops at the first chunk boundary where the accepted count reaches the
/// target; results are identical for any thread count.
TrialCounts run_trials(uint64_t domain, uint64_t max_trials, uint64_t target_accepted,
                       unsigned threads,
                       const std::function<std::optional<uint64_t>(uint64_t)>& fn);

std::vector<double> random_int_vector(MasterSeed seed, uint64_t n, int lo, int hi,
                                      bool ensure_nonzero);
Matrix random_int_matrix(MasterSeed seed, uint64_t rows, uint64_t cols, double density, int lo,
                         int hi);

struct VerifyOptions {
  std::string model = "plain";      // plain | m1 | m2 | m3 | tensor | exp
  std::string instance = "random";  // random | index | disjointness
  uint64_t n = 64;
  uint64_t d = 8;
  double eps = 0.25;
  uint64_t seed = 1;

  // Monte Carlo profile: distribution checks run many independent
  // single-repetition samplers, so the threshold constant is kept small to
  // keep the acceptance rate workable; the conditional distribution does
  // not depend on it.
  double c = 0.35;
  std::size_t r = 1;

  uint64_t trials = 50000;
  uint64_t target_samples = 0;  // 0: run exactly `trials`
  unsigned threads = 0;         // 0: hardware concurrency
  double tv_threshold = 0.1;

  std::vector<double> explicit_y;  // plain/exp instance override
  uint64_t planted = 1;
  int bit = 1;

  std::size_t rows = 0, buckets = 0, ams = 0;  // sketch overrides, 0 = defaults
  int lo = -10, hi = 10;
  double density = 0.15;
};

DistributionReport verify_distribution(const VerifyOptions& opts);

struct BenchOptions {
  std::string model = "m1";  // m1 | m2 | m3 | tensor
  std::vector<uint64_t> ns = {1024, 16384};
  uint64_t d = 8;
  double eps = 0.25;
  uint64_t seed = 1;
  std::size_t r = 1;
  // Pinned sketch sizes so the measurement isolates the n-dependence of the
  // update path; defaults would grow logarithmically with n.
  std::size_t rows = 40, buckets = 400, ams = 160;
  uint64_t updates_per_batch = 0;  // 0: model-specific default
  int batches = 5;
};

struct BenchPoint {
  uint64_t n = 0;
  double ns_per_update = 0.0;
  std::size_t storage_words = 0;
};

std::vector<BenchPoint> bench_updates(const BenchOptions& opts);

struct GenOptions {
  std::string kind = "random";  // random | index | disjointness
  std::string model = "m1";     // random kind only
  uint64_t n = 64;
  uint64_t d = 8;
  double eps = 0.25;
  uint64_t seed = 1;
  std::optional<double> c;
  std::optional<uint64_t> r;
  uint64_t updates = 256;
  uint64_t planted = 1;
  int bit = 1;
  double density = 0.25;
  int lo = -10, hi = 10;
};

StreamFile generate_stream(const GenOptions& opts);

}  // namespace turnsample
