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
#include <span>
#include <vector>

#include "turnsample/matrix.hpp"
#include "turnsample/rng.hpp"

namespace turnsample {

// Brute-force ground truth and adversarial fixtures. All functions here are
// pure and safe for unrestricted concurrent use.

/// Dense product A * x. Throws on dimension mismatch.
std::vector<double> exact_matvec(const Matrix& a, std::span<const double> x);

/// vec(A1 * mat(x) * A2^T) under the row-major vec convention; equals the
/// materialized (A1 (x) A2) * x. a1 is n1 x d1, a2 is n2 x d2, x has
/// d1 * d2 entries; the result has n1 * n2 entries.
std::vector<double> exact_kron_matvec(const Matrix& a1, const Matrix& a2,
                                      std::span<const double> x);

/// Explicit Kronecker product, (a1 (x) a2)[(i1-1)*n2+i2, (j1-1)*d2+j2] =
/// a1(i1, j1) * a2(i2, j2). Intended for small shapes in tests.
Matrix materialize_kron(const Matrix& a1, const Matrix& a2);

struct ExactDistribution {
  std::vector<double> p;  // nonnegative, sums to 1 within 1e-12
};

/// p_j = y_j^2 / ||y||^2. Throws on the zero vector.
ExactDistribution exact_l2_distribution(std::span<const double> y);

/// p_j = exp(y_j) / sum_i exp(y_i), computed with max-shift.
ExactDistribution exact_softmax_distribution(std::span<const double> y);

/// One inverse-CDF draw from the softmax distribution of y; 1-based index.
uint64_t offline_exp_sample(std::span<const double> y, MasterSeed seed);

/// One inverse-CDF draw from an arbitrary distribution; 1-based index.
uint64_t inverse_cdf_sample(const ExactDistribution& dist, MasterSeed seed);

/// Total variation distance, 0.5 * sum |p_i - q_i|.
double tv_distance(std::span<const double> p, std::span<const double> q);

/// Pearson chi-squared statistic of observed counts against expected
/// proportions p; cells with p_i = 0 must have zero counts.
double chi2_stat(std::span<const uint64_t> counts, std::span<const double> p);

enum class HardInstanceKind { kIndex, kDisjointness };

struct HardInstance {
  HardInstanceKind kind = HardInstanceKind::kIndex;
  Matrix a;                // kIndex: (d+1) x d
  std::vector<double> x;   // kIndex: elementary vector
  std::vector<double> y;   // kDisjointness: scaled indicator sum
  uint64_t planted = 0;    // index a correct sampler must favor; 0 = none
  int bit = 0;
};

/// One-way-communication planted instance: A is diag(v) with v_planted = bit
/// plus an appended row of 1e-10 in every entry; x = e_planted. A correct
/// sampler on Ax returns `planted` when bit = 1 and d+1 when bit = 0.
HardInstance gen_index_hard_instance(uint64_t d, uint64_t planted, int bit);

/// Set-disjointness instance: y = 100 * c * ln(n) * (chi_A + chi_B). Any
/// intersection coordinate carries twice the mass of the rest, so a softmax
/// sampler concentrates on it.
HardInstance gen_disjointness_instance(uint64_t n, std::span<const uint64_t> set_a,
                                       std::span<const uint64_t> set_b, double c);

}  // namespace turnsample
