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
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "turnsample/sampler.hpp"

namespace turnsample {

// Line-oriented stream file format, version "SAMPLER-STREAM v1":
//
//   SAMPLER-STREAM v1
//   model=<m1|m2|m3|tensor> n=<int> d=<int> eps=<float> seed=<u64> [C=<float>] [R=<int>]
//   XVEC <floats...>          fixed x (m1: d entries, tensor: d^2 entries)
//   AROW <i> <floats...>      fixed A row (m2 only, d entries)
//   A2ROW <i> <floats...>     fixed A2 row (tensor only, d entries)
//   U <A|X|A1> <i> [<j>] <delta>
//   Q
//
// Initialization lines precede all updates and queries. Queries may appear
// anywhere after initialization.

enum class StreamModel { kM1, kM2, kM3, kTensor };

std::string_view to_string(StreamModel m);

enum class UpdateTarget { kA, kX, kA1 };

struct StreamUpdate {
  UpdateTarget target = UpdateTarget::kA;
  uint64_t i = 0;  // row (A, A1); unused for X
  uint64_t j = 0;  // column (A, A1) or coordinate (X)
  double delta = 0.0;
};

struct StreamEvent {
  enum class Kind { kUpdate, kQuery };
  Kind kind = Kind::kUpdate;
  StreamUpdate update;
};

struct StreamConfig {
  StreamModel model = StreamModel::kM1;
  uint64_t n = 0;
  uint64_t d = 0;
  double eps = 0.25;
  uint64_t seed = 0;
  std::optional<double> c;
  std::optional<uint64_t> r;
  std::optional<uint64_t> rows;
  std::optional<uint64_t> buckets;
  std::optional<uint64_t> ams;

  SamplerConfig sampler_config() const;
};

struct StreamFile {
  StreamConfig config;
  std::vector<double> xvec;  // empty when absent
  std::vector<std::pair<uint64_t, std::vector<double>>> a_rows;
  std::vector<std::pair<uint64_t, std::vector<double>>> a2_rows;
  std::vector<StreamEvent> events;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& reason)
      : std::runtime_error("line " + std::to_string(line) + ": " + reason), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

StreamFile parse_stream(std::string_view text);
std::string emit_stream(const StreamFile& file);

/// %.17g rendering used across emitted files and reports.
std::string format_g17(double v);

struct QueryRecord {
  std::size_t number = 0;
  bool ok = false;
  uint64_t index = 0;
  uint64_t i1 = 0, i2 = 0;  // tensor only
  double estimate = 0.0;
};

std::string format_query_record(const QueryRecord& rec, bool tensor);

struct RunResult {
  std::vector<QueryRecord> records;
  bool any_failed = false;
};

/// Replays the file; one record per Q line, streamed to `out` when given.
RunResult run_stream(const StreamFile& file, std::ostream* out = nullptr);

}  // namespace turnsample
