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
#include <string>
#include <vector>

namespace turnsample {

/// Outcome of a distribution-verification experiment: empirical sampling
/// frequencies against the exact distribution. Numbers are rendered with 17
/// significant digits; `pass` holds iff tv_distance <= tv_threshold.
struct DistributionReport {
  std::string model;
  std::string instance;
  uint64_t trials = 0;
  uint64_t accepted = 0;
  std::vector<double> empirical;  // sums to 1 over accepted trials
  std::vector<double> exact;
  double tv_distance = 0.0;
  double chi2 = 0.0;
  double tv_threshold = 0.0;
  bool pass = false;
  uint64_t planted_index = 0;  // 0 when the instance has no planted answer
  double planted_frequency = 0.0;
  double wall_ms = 0.0;

  /// Structured-text rendering; wall-clock metrics are the only
  /// run-dependent fields and can be excluded for stable comparison.
  std::string serialize(bool include_wall = true) const;
};

}  // namespace turnsample
