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

#include "turnsample/matrix.hpp"
#include "turnsample/sampler.hpp"

namespace turnsample {

/// Which of A and x evolves over the stream for y = A x.
enum class MatVecModel {
  kUpdateAFixX,   // A streamed, x supplied at construction
  kFixAUpdateX,   // A supplied at construction, x streamed
  kUpdateBoth,    // both streamed
};

/// l2 sampler over y = A x (A is n x d) under one of the three models.
///
/// kUpdateAFixX keeps a direct sampler over y: an update to A(i, j) is the
/// single coordinate update y_i += delta * x_j.
///
/// The other two models keep the sketched operator (Phi A) and the current
/// x, never A itself: storage is (flat rows) * d + d words per repetition,
/// with no n * d term. Queries materialize (Phi A) x and decode it exactly
/// like the direct sampler.
class MatVecSampler {
 public:
  MatVecSampler(MatVecModel model, uint64_t n, uint64_t d, SamplerConfig cfg,
                const Matrix* fixed_a = nullptr, std::span<const double> fixed_x = {});

  void update_a(uint64_t i, uint64_t j, double delta);
  void update_x(uint64_t j, double delta);

  L2Sampler::Sample query() const;  // throws AllRepetitionsFailed
  std::optional<L2Sampler::Sample> try_query() const;

  MatVecModel model() const noexcept { return model_; }
  uint64_t n() const noexcept { return n_; }
  uint64_t d() const noexcept { return d_; }
  std::span<const double> x() const noexcept { return x_; }

  /// The decodable state: all repetition states concatenated, materialized
  /// from (Phi A) x for the operator-sketch models.
  std::vector<double> decode_state() const;

  std::size_t storage_words() const noexcept;

 private:
  void apply_a_entry(uint64_t i, uint64_t j, double delta);
  std::vector<double> materialize_rep(std::size_t rep) const;

  MatVecModel model_;
  uint64_t n_ = 0, d_ = 0;
  SamplerConfig cfg_;
  std::vector<double> x_;

  // kUpdateAFixX
  std::optional<L2Sampler> direct_;

  // kFixAUpdateX / kUpdateBoth: repetitions carry the hash families and
  // scales; their own tables stay zero. phi_a_ holds per repetition the
  // operator sketch, d columns of flat_ entries each, column-major.
  std::vector<SamplerRepetition> reps_;
  std::size_t flat_ = 0;
  std::vector<double> phi_a_;
};

}  // namespace turnsample
