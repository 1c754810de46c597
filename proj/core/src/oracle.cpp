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

#include "turnsample/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace turnsample {

std::vector<double> exact_matvec(const Matrix& a, std::span<const double> x) {
  if (a.cols != x.size()) throw std::invalid_argument("matvec dimension mismatch");
  std::vector<double> y(a.rows, 0.0);
  for (std::size_t i = 0; i < a.rows; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < a.cols; ++j) acc += a.at(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

std::vector<double> exact_kron_matvec(const Matrix& a1, const Matrix& a2,
                                      std::span<const double> x) {
  if (x.size() != a1.cols * a2.cols) throw std::invalid_argument("kron matvec dimension mismatch");
  const std::size_t d1 = a1.cols, d2 = a2.cols;
  // rows of X, row-major: X(j, k) = x[j * d2 + k]
  // M = X * A2^T, then y = vec(A1 * M) row-major.
  Matrix m(d1, a2.rows);
  for (std::size_t j = 0; j < d1; ++j) {
    for (std::size_t i2 = 0; i2 < a2.rows; ++i2) {
      double acc = 0.0;
      for (std::size_t k = 0; k < d2; ++k) acc += x[j * d2 + k] * a2.at(i2, k);
      m.at(j, i2) = acc;
    }
  }
  std::vector<double> y(a1.rows * a2.rows, 0.0);
  for (std::size_t i1 = 0; i1 < a1.rows; ++i1) {
    for (std::size_t i2 = 0; i2 < a2.rows; ++i2) {
      double acc = 0.0;
      for (std::size_t j = 0; j < d1; ++j) acc += a1.at(i1, j) * m.at(j, i2);
      y[i1 * a2.rows + i2] = acc;
    }
  }
  return y;
}

Matrix materialize_kron(const Matrix& a1, const Matrix& a2) {
  Matrix k(a1.rows * a2.rows, a1.cols * a2.cols);
  for (std::size_t i1 = 0; i1 < a1.rows; ++i1)
    for (std::size_t j1 = 0; j1 < a1.cols; ++j1)
      for (std::size_t i2 = 0; i2 < a2.rows; ++i2)
        for (std::size_t j2 = 0; j2 < a2.cols; ++j2)
          k.at(i1 * a2.rows + i2, j1 * a2.cols + j2) = a1.at(i1, j1) * a2.at(i2, j2);
  return k;
}

ExactDistribution exact_l2_distribution(std::span<const double> y) {
  double norm_sq = 0.0;
  for (double v : y) norm_sq += v * v;
  if (norm_sq == 0.0) throw std::invalid_argument("l2 distribution of the zero vector");
  ExactDistribution d;
  d.p.resize(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) d.p[i] = y[i] * y[i] / norm_sq;
  return d;
}

ExactDistribution exact_softmax_distribution(std::span<const double> y) {
  ExactDistribution d;
  d.p.resize(y.size());
  if (y.empty()) return d;
  const double shift = *std::max_element(y.begin(), y.end());
  double total = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    d.p[i] = std::exp(y[i] - shift);
    total += d.p[i];
  }
  for (double& v : d.p) v /= total;
  return d;
}

uint64_t inverse_cdf_sample(const ExactDistribution& dist, MasterSeed seed) {
  if (dist.p.empty()) throw std::invalid_argument("sampling from an empty distribution");
  const double u = uniform_scale(seed, domain_tag::kDraw, 1);
  double cum = 0.0;
  for (std::size_t i = 0; i < dist.p.size(); ++i) {
    cum += dist.p[i];
    if (u <= cum) return i + 1;
  }
  return dist.p.size();
}

uint64_t offline_exp_sample(std::span<const double> y, MasterSeed seed) {
  return inverse_cdf_sample(exact_softmax_distribution(y), seed);
}

double tv_distance(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw std::invalid_argument("tv_distance size mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) acc += std::fabs(p[i] - q[i]);
  return 0.5 * acc;
}

double chi2_stat(std::span<const uint64_t> counts, std::span<const double> p) {
  if (counts.size() != p.size()) throw std::invalid_argument("chi2_stat size mismatch");
  uint64_t total = 0;
  for (uint64_t c : counts) total += c;
  double stat = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double expected = static_cast<double>(total) * p[i];
    if (expected == 0.0) {
      if (counts[i] != 0) throw std::invalid_argument("observed count in a zero-probability cell");
      continue;
    }
    const double diff = static_cast<double>(counts[i]) - expected;
    stat += diff * diff / expected;
  }
  return stat;
}

HardInstance gen_index_hard_instance(uint64_t d, uint64_t planted, int bit) {
  if (planted < 1 || planted > d) throw std::out_of_range("planted coordinate out of range");
  HardInstance inst;
  inst.kind = HardInstanceKind::kIndex;
  inst.bit = bit;
  inst.a = Matrix(d + 1, d);
  for (uint64_t j = 1; j <= d; ++j) {
    // Off-planted diagonal bits are immaterial (x = e_planted); fill them
    // deterministically.
    const double v = (j == planted) ? static_cast<double>(bit) : static_cast<double>(j % 2);
    inst.a.at(j - 1, j - 1) = v;
  }
  for (uint64_t j = 1; j <= d; ++j) inst.a.at(d, j - 1) = 1e-10;
  inst.x.assign(d, 0.0);
  inst.x[planted - 1] = 1.0;
  inst.planted = bit ? planted : d + 1;
  return inst;
}

HardInstance gen_disjointness_instance(uint64_t n, std::span<const uint64_t> set_a,
                                       std::span<const uint64_t> set_b, double c) {
  HardInstance inst;
  inst.kind = HardInstanceKind::kDisjointness;
  inst.y.assign(n, 0.0);
  const double scale = 100.0 * c * std::log(static_cast<double>(n));
  for (uint64_t i : set_a) {
    if (i < 1 || i > n) throw std::out_of_range("set element out of range");
    inst.y[i - 1] += scale;
  }
  uint64_t intersection = 0;
  for (uint64_t i : set_b) {
    if (i < 1 || i > n) throw std::out_of_range("set element out of range");
    inst.y[i - 1] += scale;
    if (inst.y[i - 1] == 2.0 * scale) intersection = i;
  }
  inst.planted = intersection;
  return inst;
}

}  // namespace turnsample
