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

#include "turnsample/report.hpp"

#include <sstream>

#include "turnsample/stream.hpp"

namespace turnsample {

std::string DistributionReport::serialize(bool include_wall) const {
  std::ostringstream out;
  out << "DistributionReport {\n";
  out << "  model = " << model << "\n";
  out << "  instance = " << instance << "\n";
  out << "  trials = " << trials << "\n";
  out << "  accepted = " << accepted << "\n";
  out << "  tv_distance = " << format_g17(tv_distance) << "\n";
  out << "  chi2 = " << format_g17(chi2) << "\n";
  out << "  tv_threshold = " << format_g17(tv_threshold) << "\n";
  out << "  pass = " << (pass ? "true" : "false") << "\n";
  out << "  planted_index = " << planted_index << "\n";
  out << "  planted_frequency = " << format_g17(planted_frequency) << "\n";
  out << "  empirical = [";
  for (std::size_t i = 0; i < empirical.size(); ++i) {
    if (i) out << ", ";
    out << format_g17(empirical[i]);
  }
  out << "]\n";
  out << "  exact = [";
  for (std::size_t i = 0; i < exact.size(); ++i) {
    if (i) out << ", ";
    out << format_g17(exact[i]);
  }
  out << "]\n";
  if (include_wall) out << "  wall_ms = " << format_g17(wall_ms) << "\n";
  out << "}\n";
  return out.str();
}

}  // namespace turnsample
