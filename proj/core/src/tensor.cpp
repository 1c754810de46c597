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

#include "turnsample/tensor.hpp"

namespace turnsample {

namespace {

SamplerConfig tensor_config(SamplerConfig cfg, uint64_t side) {
  cfg.n = side * side;
  cfg.tensor_side = side;
  return cfg;
}

}  // namespace

TensorSampler::TensorSampler(uint64_t side, uint64_t d, SamplerConfig cfg, const Matrix& a2,
                             std::span<const double> x)
    : side_(side), d_(d), a2_(a2), sampler_(tensor_config(cfg, side)) {
  if (side_ == 0 || d_ == 0) throw std::invalid_argument("tensor sampler needs n, d >= 1");
  if (a2_.rows != side_ || a2_.cols != d_) throw std::invalid_argument("A2 has wrong shape");
  if (x.size() != d_ * d_) throw std::invalid_argument("x must have d^2 entries");
  x_.assign(x.begin(), x.end());

  // B = A2 * X^T: B(i2, j) = sum_k A2(i2, k) * X(j, k), columns contiguous.
  b_cols_.assign(side_ * d_, 0.0);
  for (uint64_t j = 0; j < d_; ++j) {
    double* col = b_cols_.data() + j * side_;
    for (uint64_t i2 = 0; i2 < side_; ++i2) {
      double acc = 0.0;
      for (uint64_t k = 0; k < d_; ++k) acc += a2_.at(i2, k) * x_[j * d_ + k];
      col[i2] = acc;
    }
  }
}

void TensorSampler::update_a1(uint64_t i, uint64_t j, double delta) {
  if (i < 1 || i > side_ || j < 1 || j > d_) throw std::out_of_range("A1 index out of range");
  if (delta == 0.0) return;
  const double* col = b_cols_.data() + (j - 1) * side_;
  const uint64_t base = (i - 1) * side_;
  for (uint64_t i2 = 1; i2 <= side_; ++i2) {
    const double v = delta * col[i2 - 1];
    if (v != 0.0) sampler_.update(base + i2, v);
  }
}

std::optional<TensorSampler::KronSample> TensorSampler::try_query() const {
  const auto s = sampler_.try_sample();
  if (!s) return std::nullopt;
  const auto [i1, i2] = kron_unflat(s->index, side_);
  return KronSample{i1, i2, s->estimate};
}

TensorSampler::KronSample TensorSampler::query() const {
  if (auto s = try_query()) return *s;
  throw AllRepetitionsFailed();
}

std::size_t TensorSampler::dense_words() const noexcept {
  return a2_.data.size() + x_.size() + b_cols_.size();
}

std::size_t TensorSampler::sketch_words() const noexcept { return sampler_.storage_words(); }

}  // namespace turnsample
