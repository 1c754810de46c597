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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "turnsample/experiments.hpp"
#include "turnsample/oracle.hpp"
#include "turnsample/tensor.hpp"

using namespace turnsample;

namespace {

constexpr uint64_t kBase = 0x7E4502AB;

SamplerConfig mc_config(uint64_t seed, std::size_t reps = 1) {
  SamplerConfig cfg;
  cfg.epsilon = 0.25;
  cfg.threshold_c = 0.35;
  cfg.repetitions = reps;
  cfg.seed = MasterSeed{seed};
  cfg.buckets = 256;
  cfg.ams_estimators = 96;
  return cfg;
}

void check_close(const std::vector<double>& a, const std::vector<double>& b, double rel) {
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double scale = std::max({std::fabs(a[i]), std::fabs(b[i]), 1.0});
    CHECK(std::fabs(a[i] - b[i]) <= rel * scale);
  }
}

}  // namespace

TEST_CASE("kron index arithmetic") {
  CHECK(kron_flat(1, 1, 5) == 1);
  CHECK(kron_flat(2, 3, 4) == 7);
  CHECK(kron_unflat(7, 4) == std::pair<uint64_t, uint64_t>{2, 3});
  for (uint64_t i1 = 1; i1 <= 8; ++i1) {
    for (uint64_t i2 = 1; i2 <= 8; ++i2) {
      CHECK(kron_unflat(kron_flat(i1, i2, 8), 8) == std::pair<uint64_t, uint64_t>{i1, i2});
    }
  }
  CHECK_THROWS_AS(kron_flat(0, 1, 4), std::out_of_range);
  CHECK_THROWS_AS(kron_flat(5, 1, 4), std::out_of_range);
  CHECK_THROWS_AS(kron_unflat(17, 4), std::out_of_range);
}

TEST_CASE("construction validates shapes") {
  const Matrix a2 = Matrix::identity(4);
  std::vector<double> x(16, 0.0);
  CHECK_NOTHROW(TensorSampler(4, 4, mc_config(1), a2, x));
  CHECK_THROWS_AS(TensorSampler(5, 4, mc_config(1), a2, x), std::invalid_argument);
  CHECK_THROWS_AS(TensorSampler(4, 4, mc_config(1), a2, std::vector<double>(15, 0.0)),
                  std::invalid_argument);
}

TEST_CASE("identity A2 and identity X reduce updates to vec(A1)") {
  const uint64_t n = 4;
  const Matrix eye = Matrix::identity(n);
  std::vector<double> x(n * n, 0.0);
  for (uint64_t j = 0; j < n; ++j) x[j * n + j] = 1.0;  // X = I

  SamplerConfig cfg = mc_config(2);
  TensorSampler ts(n, n, cfg, eye, x);

  // Mirror sampler over the flat domain.
  SamplerConfig flat_cfg = cfg;
  flat_cfg.n = n * n;
  flat_cfg.tensor_side = n;
  L2Sampler direct(flat_cfg);

  ts.update_a1(2, 3, 5.0);  // y gains 5 at flat (2-1)*4+3 = 7
  direct.update(7, 5.0);
  CHECK(ts.sampler().flatten_state() == direct.flatten_state());
}

TEST_CASE("kronecker identity action: x = e_1 puts y at (1, 1)") {
  const uint64_t n = 2;
  const Matrix eye = Matrix::identity(n);
  std::vector<double> x = {1, 0, 0, 0};
  TensorSampler ts(n, n, mc_config(3, 64), eye, x);
  // A1 = I streamed entry-wise
  ts.update_a1(1, 1, 1.0);
  ts.update_a1(2, 2, 1.0);
  const std::vector<double> y = exact_kron_matvec(eye, eye, x);
  CHECK(y == std::vector<double>{1, 0, 0, 0});
  const auto s = ts.query();
  CHECK(s.i1 == 1);
  CHECK(s.i2 == 1);
}

TEST_CASE("x = 0 makes every update a no-op") {
  const uint64_t n = 8, d = 3;
  const Matrix a2 = random_int_matrix(MasterSeed{kBase}, n, d, 1.0, -5, 5);
  const std::vector<double> x(d * d, 0.0);
  TensorSampler ts(n, d, mc_config(4), a2, x);
  const std::vector<double> zero_state = ts.sampler().flatten_state();
  ts.update_a1(5, 2, 9.0);
  ts.update_a1(1, 1, -3.0);
  CHECK(ts.sampler().flatten_state() == zero_state);
  CHECK(!ts.try_query().has_value());
}

TEST_CASE("precomputed B equals the dense oracle product") {
  const uint64_t n = 16, d = 4;
  const Matrix a2 = random_int_matrix(MasterSeed{kBase + 1}, n, d, 1.0, -7, 7);
  const std::vector<double> x = random_int_vector(MasterSeed{kBase + 2}, d * d, -7, 7, true);

  // B(i2, j) = sum_k A2(i2, k) X(j, k); check through one streamed update:
  // an update to A1(i, j) must move flat (i-1)n+i2 by B(i2, j).
  SamplerConfig cfg = mc_config(5);
  for (uint64_t j = 1; j <= d; ++j) {
    TensorSampler ts(n, d, cfg, a2, x);
    ts.update_a1(1, j, 1.0);

    SamplerConfig flat_cfg = cfg;
    flat_cfg.n = n * n;
    flat_cfg.tensor_side = n;
    L2Sampler direct(flat_cfg);
    for (uint64_t i2 = 1; i2 <= n; ++i2) {
      double b = 0.0;
      for (uint64_t k = 1; k <= d; ++k)
        b += a2.at(i2 - 1, k - 1) * x[(j - 1) * d + (k - 1)];
      if (b != 0.0) direct.update(i2, b);
    }
    CHECK(ts.sampler().flatten_state() == direct.flatten_state());
  }
}

TEST_CASE("streamed A1 equals the sketch of the materialized product") {
  const uint64_t n = 16, d = 4;
  const Matrix a1 = random_int_matrix(MasterSeed{kBase + 3}, n, d, 0.5, -6, 6);
  const Matrix a2 = random_int_matrix(MasterSeed{kBase + 4}, n, d, 1.0, -6, 6);
  const std::vector<double> x = random_int_vector(MasterSeed{kBase + 5}, d * d, -6, 6, true);
  const std::vector<double> y = exact_kron_matvec(a1, a2, x);

  SamplerConfig cfg = mc_config(6);
  TensorSampler ts(n, d, cfg, a2, x);
  for (std::size_t i = 0; i < a1.rows; ++i)
    for (std::size_t j = 0; j < a1.cols; ++j)
      if (a1.at(i, j) != 0.0) ts.update_a1(i + 1, j + 1, a1.at(i, j));

  SamplerConfig flat_cfg = cfg;
  flat_cfg.n = n * n;
  flat_cfg.tensor_side = n;
  L2Sampler direct(flat_cfg);
  for (uint64_t f = 1; f <= n * n; ++f)
    if (y[f - 1] != 0.0) direct.update(f, y[f - 1]);

  check_close(ts.sampler().flatten_state(), direct.flatten_state(), 1e-9);
}

TEST_CASE("zero A1 stream leaves nothing to sample") {
  const uint64_t n = 8, d = 2;
  const Matrix a2 = random_int_matrix(MasterSeed{kBase + 6}, n, d, 1.0, -3, 3);
  const std::vector<double> x = random_int_vector(MasterSeed{kBase + 7}, d * d, -3, 3, true);
  TensorSampler ts(n, d, mc_config(7, 4), a2, x);
  CHECK_THROWS_AS(ts.query(), AllRepetitionsFailed);
}

TEST_CASE("storage is dense A2/X/B plus n-independent sketches") {
  const uint64_t d = 8;
  SamplerConfig cfg = mc_config(8);
  cfg.rows = 40;

  TensorSampler small(256, d, cfg, Matrix(256, d), std::vector<double>(d * d, 0.0));
  TensorSampler large(512, d, cfg, Matrix(512, d), std::vector<double>(d * d, 0.0));

  CHECK(small.dense_words() == 2 * 256 * d + d * d);
  CHECK(large.dense_words() == 2 * 512 * d + d * d);
  CHECK(small.sketch_words() == large.sketch_words());
  // Never the materialized n^2 vector.
  CHECK(large.storage_words() < 512 * 512 / 2);
}
