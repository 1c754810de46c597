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

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "turnsample/rng.hpp"

namespace turnsample {

/// Median of the values in v; v is reordered in place. Even counts average
/// the two middle order statistics.
double median_destructive(std::span<double> v);

struct SketchParams {
  std::size_t rows = 0;
  std::size_t buckets = 0;
  std::size_t ams_estimators = 0;
  std::size_t ams_group = 16;

  /// Default sizing for accuracy epsilon over a domain of the given size:
  /// buckets = ceil(100/eps^2), rows = ceil(10 ln N), estimators in groups
  /// of 16 with 16*ceil(6 ln N) accumulators.
  static SketchParams defaults(double epsilon, uint64_t domain);
};

/// Linear point-estimation sketch over coordinates [1, domain]. In tensor
/// mode the domain is [side] x [side] addressed by flat index
/// (i1-1)*side + i2; the bucket of (i1, i2) is (h1(i1) + h2(i2)) mod b and
/// the sign is s1(i1) * s2(i2).
class CountSketch {
 public:
  CountSketch(MasterSeed seed, std::size_t rows, std::size_t buckets, uint64_t domain,
              uint32_t independence = 4);

  static CountSketch tensor(MasterSeed seed, std::size_t rows, std::size_t buckets,
                            uint64_t side, uint32_t independence = 4);

  // Single-writer per instance; reads may run concurrently once no writer
  // is active. Distinct instances are independent.
  void update(uint64_t i, double delta);

  /// Median over rows of the signed cell holding coordinate i.
  double estimate(uint64_t i) const;

  /// Estimates for every coordinate, out[i-1] = estimate(i).
  void estimate_all(std::vector<double>& out) const;

  /// The k coordinates with largest |estimate|, magnitude-descending, ties
  /// broken toward the smaller index.
  std::vector<uint64_t> heavy(std::size_t k) const;

  /// l2 norm of the table after subtracting the given point estimates from
  /// their cells: sqrt of the median over rows of the residual squared cell
  /// mass. Estimates the l2 norm of the sketched vector without the listed
  /// entries.
  double residual_norm(std::span<const uint64_t> ids, std::span<const double> estimates) const;

  bool tensor_mode() const noexcept { return side_ != 0; }
  uint64_t domain() const noexcept { return domain_; }
  uint64_t tensor_side() const noexcept { return side_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t buckets() const noexcept { return buckets_; }

  std::span<const double> table() const noexcept { return table_; }
  std::size_t cell_count() const noexcept { return table_.size(); }
  void load_cells(std::span<const double> cells);
  void clear();

  std::size_t storage_words() const noexcept;

  /// Cell offset and sign coefficient of coordinate i in row r.
  std::pair<std::size_t, double> basis_cell(std::size_t row, uint64_t i) const;

 private:
  CountSketch(MasterSeed seed, std::size_t rows, std::size_t buckets, uint64_t domain,
              uint64_t side, uint32_t independence);

  void check_index(uint64_t i) const;

  std::size_t rows_ = 0;
  std::size_t buckets_ = 0;
  uint64_t domain_ = 0;
  uint64_t side_ = 0;  // nonzero in tensor mode; domain_ == side_^2
  std::vector<double> table_;
  std::vector<HashFamily> h1_, h2_;
  std::vector<SignFamily> s1_, s2_;
};

/// AMS l2 norm estimator: signed accumulators, median over groups of the
/// mean squared accumulator, square-rooted.
class AmsSketch {
 public:
  AmsSketch(MasterSeed seed, std::size_t estimators, std::size_t group, uint64_t domain,
            uint32_t independence = 4);

  void update(uint64_t i, double delta);
  double estimate() const;

  uint64_t domain() const noexcept { return domain_; }
  std::size_t estimators() const noexcept { return acc_.size(); }
  std::size_t group() const noexcept { return group_; }
  std::span<const double> accumulators() const noexcept { return acc_; }
  void load_accumulators(std::span<const double> acc);
  void clear();

  std::size_t storage_words() const noexcept;

  int sign(std::size_t estimator, uint64_t i) const { return signs_[estimator].sign(i); }

 private:
  void check_index(uint64_t i) const;

  uint64_t domain_ = 0;
  std::size_t group_ = 16;
  std::vector<double> acc_;
  std::vector<SignFamily> signs_;
};

/// Tail norm estimate for the vector behind cs: the residual table norm
/// after removing the k largest point estimates, clamped from above by the
/// AMS estimate of the full norm (the tail never exceeds the whole).
double tail_norm_estimate(const CountSketch& cs, const AmsSketch& ams_w, std::size_t k);

namespace detail {
/// Top-k indices by |estimate| with the deterministic tie-break, given the
/// full estimate vector (estimates[i-1] belongs to coordinate i).
std::vector<uint64_t> top_k_by_magnitude(std::span<const double> estimates, std::size_t k);
}  // namespace detail

}  // namespace turnsample
