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

#include "turnsample/sketch.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace turnsample {

double median_destructive(std::span<double> v) {
  if (v.empty()) return 0.0;
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  double hi = v[mid];
  if (v.size() % 2 == 1) return hi;
  double lo = *std::max_element(v.begin(), v.begin() + mid);
  return 0.5 * (lo + hi);
}

SketchParams SketchParams::defaults(double epsilon, uint64_t domain) {
  if (epsilon <= 0.0 || epsilon >= 1.0) throw std::invalid_argument("epsilon must be in (0, 1)");
  const double ln_n = std::log(static_cast<double>(std::max<uint64_t>(domain, 2)));
  SketchParams p;
  p.buckets = static_cast<std::size_t>(std::ceil(100.0 / (epsilon * epsilon)));
  p.rows = static_cast<std::size_t>(std::ceil(10.0 * ln_n));
  p.ams_group = 16;
  p.ams_estimators = 16 * static_cast<std::size_t>(std::ceil(6.0 * ln_n));
  return p;
}

CountSketch::CountSketch(MasterSeed seed, std::size_t rows, std::size_t buckets, uint64_t domain,
                         uint32_t independence)
    : CountSketch(seed, rows, buckets, domain, 0, independence) {}

CountSketch CountSketch::tensor(MasterSeed seed, std::size_t rows, std::size_t buckets,
                                uint64_t side, uint32_t independence) {
  return CountSketch(seed, rows, buckets, side * side, side, independence);
}

CountSketch::CountSketch(MasterSeed seed, std::size_t rows, std::size_t buckets, uint64_t domain,
                         uint64_t side, uint32_t independence)
    : rows_(rows), buckets_(buckets), domain_(domain), side_(side) {
  if (rows_ == 0 || buckets_ == 0) throw std::invalid_argument("CountSketch needs rows and buckets");
  if (domain_ == 0) throw std::invalid_argument("CountSketch needs a nonempty domain");
  table_.assign(rows_ * buckets_, 0.0);
  h1_.reserve(rows_);
  s1_.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    h1_.emplace_back(derive_seed(seed, 0, r), independence, buckets_);
    s1_.emplace_back(derive_seed(seed, 1, r), independence);
  }
  if (side_ != 0) {
    h2_.reserve(rows_);
    s2_.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      h2_.emplace_back(derive_seed(seed, 2, r), independence, buckets_);
      s2_.emplace_back(derive_seed(seed, 3, r), independence);
    }
  }
}

void CountSketch::check_index(uint64_t i) const {
  if (i < 1 || i > domain_) throw std::out_of_range("CountSketch coordinate out of range");
}

std::pair<std::size_t, double> CountSketch::basis_cell(std::size_t row, uint64_t i) const {
  if (side_ == 0) {
    return {row * buckets_ + h1_[row].bucket0(i), static_cast<double>(s1_[row].sign(i))};
  }
  const uint64_t i1 = (i - 1) / side_ + 1;
  const uint64_t i2 = (i - 1) % side_ + 1;
  const std::size_t bucket = (h1_[row].bucket0(i1) + h2_[row].bucket0(i2)) % buckets_;
  return {row * buckets_ + bucket, static_cast<double>(s1_[row].sign(i1) * s2_[row].sign(i2))};
}

void CountSketch::update(uint64_t i, double delta) {
  check_index(i);
  if (delta == 0.0) return;
  for (std::size_t r = 0; r < rows_; ++r) {
    const auto [cell, sign] = basis_cell(r, i);
    table_[cell] += sign * delta;
  }
}

double CountSketch::estimate(uint64_t i) const {
  check_index(i);
  std::vector<double> vals(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    const auto [cell, sign] = basis_cell(r, i);
    vals[r] = sign * table_[cell];
  }
  return median_destructive(vals);
}

void CountSketch::estimate_all(std::vector<double>& out) const {
  out.resize(domain_);
  std::vector<double> vals(rows_);
  for (uint64_t i = 1; i <= domain_; ++i) {
    for (std::size_t r = 0; r < rows_; ++r) {
      const auto [cell, sign] = basis_cell(r, i);
      vals[r] = sign * table_[cell];
    }
    out[i - 1] = median_destructive(vals);  // vals is refilled next pass
  }
}

std::vector<uint64_t> CountSketch::heavy(std::size_t k) const {
  if (k > domain_) throw std::out_of_range("heavy count exceeds domain");
  std::vector<double> ests;
  estimate_all(ests);
  return detail::top_k_by_magnitude(ests, k);
}

std::vector<uint64_t> detail::top_k_by_magnitude(std::span<const double> estimates, std::size_t k) {
  std::vector<uint64_t> ids(estimates.size());
  std::iota(ids.begin(), ids.end(), uint64_t{1});
  if (k > ids.size()) k = ids.size();
  const auto by_magnitude = [&](uint64_t a, uint64_t b) {
    const double ma = std::fabs(estimates[a - 1]);
    const double mb = std::fabs(estimates[b - 1]);
    if (ma != mb) return ma > mb;
    return a < b;
  };
  std::partial_sort(ids.begin(), ids.begin() + k, ids.end(), by_magnitude);
  ids.resize(k);
  return ids;
}

double CountSketch::residual_norm(std::span<const uint64_t> ids,
                                  std::span<const double> estimates) const {
  if (ids.size() != estimates.size()) throw std::invalid_argument("ids/estimates size mismatch");
  std::vector<double> row_mass(rows_);
  std::vector<double> scratch(buckets_);
  for (std::size_t r = 0; r < rows_; ++r) {
    const double* row = table_.data() + r * buckets_;
    std::copy(row, row + buckets_, scratch.begin());
    for (std::size_t t = 0; t < ids.size(); ++t) {
      const auto [cell, sign] = basis_cell(r, ids[t]);
      scratch[cell - r * buckets_] -= sign * estimates[t];
    }
    double mass = 0.0;
    for (double c : scratch) mass += c * c;
    row_mass[r] = mass;
  }
  const double med = median_destructive(row_mass);
  return med > 0.0 ? std::sqrt(med) : 0.0;
}

void CountSketch::load_cells(std::span<const double> cells) {
  if (cells.size() != table_.size()) throw std::invalid_argument("cell count mismatch");
  std::copy(cells.begin(), cells.end(), table_.begin());
}

void CountSketch::clear() { std::fill(table_.begin(), table_.end(), 0.0); }

std::size_t CountSketch::storage_words() const noexcept {
  std::size_t words = table_.size();
  for (const auto& f : h1_) words += f.storage_words();
  for (const auto& f : s1_) words += f.storage_words();
  for (const auto& f : h2_) words += f.storage_words();
  for (const auto& f : s2_) words += f.storage_words();
  return words;
}

AmsSketch::AmsSketch(MasterSeed seed, std::size_t estimators, std::size_t group, uint64_t domain,
                     uint32_t independence)
    : domain_(domain), group_(group) {
  if (estimators == 0) throw std::invalid_argument("AmsSketch needs estimators");
  if (group_ == 0 || estimators % group_ != 0)
    throw std::invalid_argument("AmsSketch estimators must fill whole groups");
  if (domain_ == 0) throw std::invalid_argument("AmsSketch needs a nonempty domain");
  acc_.assign(estimators, 0.0);
  signs_.reserve(estimators);
  for (std::size_t e = 0; e < estimators; ++e) {
    signs_.emplace_back(derive_seed(seed, 0, e), independence);
  }
}

void AmsSketch::check_index(uint64_t i) const {
  if (i < 1 || i > domain_) throw std::out_of_range("AmsSketch coordinate out of range");
}

void AmsSketch::update(uint64_t i, double delta) {
  check_index(i);
  if (delta == 0.0) return;
  for (std::size_t e = 0; e < acc_.size(); ++e) {
    acc_[e] += signs_[e].sign(i) * delta;
  }
}

double AmsSketch::estimate() const {
  const std::size_t groups = acc_.size() / group_;
  std::vector<double> means(groups);
  for (std::size_t g = 0; g < groups; ++g) {
    double sum = 0.0;
    for (std::size_t e = g * group_; e < (g + 1) * group_; ++e) sum += acc_[e] * acc_[e];
    means[g] = sum / static_cast<double>(group_);
  }
  const double med = median_destructive(means);
  return med > 0.0 ? std::sqrt(med) : 0.0;
}

void AmsSketch::load_accumulators(std::span<const double> acc) {
  if (acc.size() != acc_.size()) throw std::invalid_argument("accumulator count mismatch");
  std::copy(acc.begin(), acc.end(), acc_.begin());
}

void AmsSketch::clear() { std::fill(acc_.begin(), acc_.end(), 0.0); }

std::size_t AmsSketch::storage_words() const noexcept {
  std::size_t words = acc_.size();
  for (const auto& f : signs_) words += f.storage_words();
  return words;
}

double tail_norm_estimate(const CountSketch& cs, const AmsSketch& ams_w, std::size_t k) {
  if (k > cs.domain()) k = cs.domain();
  std::vector<double> ests;
  cs.estimate_all(ests);
  const std::vector<uint64_t> ids = detail::top_k_by_magnitude(ests, k);
  std::vector<double> heavy_est(ids.size());
  for (std::size_t t = 0; t < ids.size(); ++t) heavy_est[t] = ests[ids[t] - 1];
  const double residual = cs.residual_norm(ids, heavy_est);
  return std::min(residual, ams_w.estimate());
}

}  // namespace turnsample
