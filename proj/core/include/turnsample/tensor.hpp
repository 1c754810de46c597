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

#include <optional>
#include <span>
#include <stdexcept>
#include <utility>

#include "turnsample/matrix.hpp"
#include "turnsample/sampler.hpp"

namespace turnsample {

/// Flat index of (i1, i2) on [side] x [side]: (i1 - 1) * side + i2.
constexpr uint64_t kron_flat(uint64_t i1, uint64_t i2, uint64_t side) {
  if (i1 < 1 || i1 > side || i2 < 1 || i2 > side)
    throw std::out_of_range("kron pair out of range");
  return (i1 - 1) * side + i2;
}

constexpr std::pair<uint64_t, uint64_t> kron_unflat(uint64_t flat, uint64_t side) {
  if (flat < 1 || flat > side * side) throw std::out_of_range("kron flat index out of range");
  return {(flat - 1) / side + 1, (flat - 1) % side + 1};
}

/// l2 sampler over y = (A1 (x) A2) x in R^(n^2) with A2 (n x d) and
/// x (d^2 entries) fixed, A1 streamed entry-wise.
///
/// Stores A2, X = mat(x), and B = A2 * X^T; never the n^2 vector. An update
/// to A1(i, j) moves block i of y by delta * B(:, j), which reaches the
/// sketches as n coordinate updates: O(n)-scale update cost and
/// O(n d) + sketch storage.
class TensorSampler {
 public:
  TensorSampler(uint64_t side, uint64_t d, SamplerConfig cfg, const Matrix& a2,
                std::span<const double> x);

  void update_a1(uint64_t i, uint64_t j, double delta);

  struct KronSample {
    uint64_t i1 = 0, i2 = 0;
    double estimate = 0.0;
  };

  KronSample query() const;  // throws AllRepetitionsFailed
  std::optional<KronSample> try_query() const;

  uint64_t side() const noexcept { return side_; }
  uint64_t d() const noexcept { return d_; }
  const L2Sampler& sampler() const noexcept { return sampler_; }

  std::size_t dense_words() const noexcept;   // A2, X, B
  std::size_t sketch_words() const noexcept;  // repetitions
  std::size_t storage_words() const noexcept { return dense_words() + sketch_words(); }

 private:
  uint64_t side_ = 0, d_ = 0;
  Matrix a2_;
  std::vector<double> x_;       // d^2, row-major X
  std::vector<double> b_cols_;  // B column-major: column j at [j * side, (j+1) * side)
  L2Sampler sampler_;
};

}  // namespace turnsample
