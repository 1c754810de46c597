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

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "turnsample/sketch.hpp"

namespace turnsample {

/// Configuration of an l2 sampler over an implicit vector y in R^n.
struct SamplerConfig {
  uint64_t n = 0;
  double epsilon = 0.25;

  /// Threshold constant C in T = sqrt(C ln n / epsilon). Larger values make
  /// acceptance rarer; the sampling distribution does not depend on it.
  double threshold_c = 24.0;

  /// Number of independent repetitions; 0 selects
  /// ceil(40 / epsilon * ln n * ln(1 / fail_budget)).
  std::size_t repetitions = 0;

  double fail_budget = 0.01;
  MasterSeed seed;
  uint32_t independence = 4;

  /// Sketch sizing overrides; zero fields fall back to
  /// SketchParams::defaults(epsilon, n).
  std::size_t rows = 0;
  std::size_t buckets = 0;
  std::size_t ams_estimators = 0;
  std::size_t ams_group = 16;

  /// Nonzero: coordinates live on [side] x [side] with n = side^2 and the
  /// point sketch pairs two hash/sign families as in the tensor estimator.
  uint64_t tensor_side = 0;

  void validate() const;
  std::size_t effective_repetitions() const;
  SketchParams sketch_params() const;
  std::size_t heavy_count() const;  // ceil(1/eps^2), clamped to n
  double threshold() const;         // T = sqrt(C ln n / eps)
};

/// Decode result of one repetition. FAIL is a value, not an error.
struct SampleOutcome {
  bool failed = true;
  uint64_t index = 0;
  double estimate = 0.0;
};

/// One independent run of the scale-and-decode scheme: a point sketch and a
/// norm sketch of the scaled vector w (w_i = y_i * scale_i / 2^16, with
/// scale_i the integer factor from sampling_scale), plus a norm sketch of
/// the unscaled y.
class SamplerRepetition {
 public:
  SamplerRepetition(const SamplerConfig& cfg, std::size_t rep_index);

  /// Coordinate update to y; forwarded scaled to the w sketches and
  /// unscaled to the y norm sketch. Cost O(rows + estimators).
  void update(uint64_t i, double delta);

  /// Full decode: FAIL, or the argmax coordinate with its unscaled estimate.
  SampleOutcome query(const SamplerConfig& cfg) const;

  double scale(uint64_t i) const;  // integer-valued 2^16 / sqrt(u_i)

  // Linear-map plumbing: the stacked rows of this repetition viewed as one
  // flat vector [point-sketch cells | scaled norm accs | plain norm accs].
  std::size_t flat_size() const noexcept;
  void store_flat(std::span<double> out) const;
  void load_flat(std::span<const double> in);

  /// Visit the nonzero pattern of the basis image for coordinate i:
  /// f(flat_offset, coefficient). The per-coordinate scale is folded into
  /// the scaled rows.
  template <class F>
  void for_each_basis_cell(uint64_t i, F&& f) const {
    const double s = scale(i);
    for (std::size_t r = 0; r < cs_w_.rows(); ++r) {
      const auto [cell, sign] = cs_w_.basis_cell(r, i);
      f(cell, sign * s);
    }
    const std::size_t cs_cells = cs_w_.cell_count();
    for (std::size_t e = 0; e < ams_w_.estimators(); ++e) {
      f(cs_cells + e, ams_w_.sign(e, i) * s);
    }
    const std::size_t base = cs_cells + ams_w_.estimators();
    for (std::size_t e = 0; e < ams_y_.estimators(); ++e) {
      f(base + e, static_cast<double>(ams_y_.sign(e, i)));
    }
  }

  const CountSketch& point_sketch() const noexcept { return cs_w_; }
  const AmsSketch& scaled_norm_sketch() const noexcept { return ams_w_; }
  const AmsSketch& plain_norm_sketch() const noexcept { return ams_y_; }

  std::size_t storage_words() const noexcept;

 private:
  std::size_t rep_ = 0;
  MasterSeed scale_seed_;
  CountSketch cs_w_;
  AmsSketch ams_w_;
  AmsSketch ams_y_;
};

class AllRepetitionsFailed : public std::runtime_error {
 public:
  AllRepetitionsFailed()
      : std::runtime_error("all sampler repetitions returned FAIL; "
                           "increase repetitions or check that y is nonzero") {}
};

/// Turnstile l2 sampler: R independent repetitions, queried in order until
/// one accepts. Single-writer per instance; queries need no active writer.
class L2Sampler {
 public:
  struct Sample {
    uint64_t index = 0;
    double estimate = 0.0;
  };

  explicit L2Sampler(SamplerConfig cfg);

  void update(uint64_t i, double delta);

  SampleOutcome query_repetition(std::size_t rep) const;

  /// Outcome of the lowest-indexed non-FAIL repetition.
  Sample sample() const;  // throws AllRepetitionsFailed
  std::optional<Sample> try_sample() const;

  const SamplerConfig& config() const noexcept { return cfg_; }
  std::size_t repetition_count() const noexcept { return reps_.size(); }
  const SamplerRepetition& repetition(std::size_t r) const { return reps_.at(r); }

  /// All repetition states concatenated; the decodable state vector.
  std::vector<double> flatten_state() const;

  std::size_t storage_words() const noexcept;

 private:
  SamplerConfig cfg_;
  std::vector<SamplerRepetition> reps_;
};

}  // namespace turnsample
