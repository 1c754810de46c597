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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>
#include <string>

#include "turnsample/experiments.hpp"
#include "turnsample/oracle.hpp"
#include "turnsample/stream.hpp"
#include "turnsample/tensor.hpp"

using namespace turnsample;

namespace {

const char* kSmallM1 =
    "SAMPLER-STREAM v1\n"
    "model=m1 n=8 d=2 eps=0.25 seed=11 C=0.35 R=32\n"
    "XVEC 1 0\n"
    "U A 3 2 -5\n"
    "U A 5 1 7\n"
    "Q\n";

std::string run_to_string(const StreamFile& file) {
  std::ostringstream out;
  run_stream(file, &out);
  return out.str();
}

}  // namespace

TEST_CASE("parse basics and field mapping") {
  const StreamFile file = parse_stream(kSmallM1);
  CHECK(file.config.model == StreamModel::kM1);
  CHECK(file.config.n == 8);
  CHECK(file.config.d == 2);
  CHECK(file.config.eps == 0.25);
  CHECK(file.config.seed == 11);
  CHECK(file.config.c == 0.35);
  CHECK(file.config.r == 32);
  REQUIRE(file.events.size() == 3);
  const StreamUpdate& u = file.events[0].update;
  CHECK(u.target == UpdateTarget::kA);
  CHECK(u.i == 3);
  CHECK(u.j == 2);
  CHECK(u.delta == -5.0);
  CHECK(file.events[2].kind == StreamEvent::Kind::kQuery);
}

TEST_CASE("parse errors carry line numbers and reasons") {
  const char* unknown_target =
      "SAMPLER-STREAM v1\n"
      "model=m3 n=8 d=2 eps=0.25 seed=1\n"
      "U B 1 1 1\n";
  try {
    parse_stream(unknown_target);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("unknown update target 'B'") != std::string::npos);
  }

  CHECK_THROWS_AS(parse_stream("nonsense\n"), ParseError);
  CHECK_THROWS_AS(parse_stream("SAMPLER-STREAM v1\nmodel=m1 n=8 d=2 eps=0.25\n"), ParseError);

  // dimension violations
  const char* oob =
      "SAMPLER-STREAM v1\n"
      "model=m1 n=8 d=2 eps=0.25 seed=1\n"
      "XVEC 1 0\n"
      "U A 9 1 1\n";
  CHECK_THROWS_AS(parse_stream(oob), ParseError);

  // init after updates
  const char* late_init =
      "SAMPLER-STREAM v1\n"
      "model=m2 n=4 d=2 eps=0.25 seed=1\n"
      "U X 1 1\n"
      "AROW 1 1 0\n";
  CHECK_THROWS_AS(parse_stream(late_init), ParseError);

  // model/target mismatch
  const char* wrong_target =
      "SAMPLER-STREAM v1\n"
      "model=m2 n=4 d=2 eps=0.25 seed=1\n"
      "U A 1 1 1\n";
  CHECK_THROWS_AS(parse_stream(wrong_target), ParseError);
}

TEST_CASE("emit(parse(f)) round-trips generated files byte for byte") {
  for (const char* model : {"m1", "m2", "m3", "tensor"}) {
    GenOptions opts;
    opts.kind = "random";
    opts.model = model;
    opts.n = model == std::string("tensor") ? 6 : 24;
    opts.d = 3;
    opts.seed = 99;
    opts.c = 0.35;
    opts.r = 2;
    opts.updates = 400;  // ~1000 lines for the matrix models
    const StreamFile file = generate_stream(opts);
    const std::string text = emit_stream(file);
    CHECK(emit_stream(parse_stream(text)) == text);
  }
}

TEST_CASE("generation is deterministic in the seed") {
  GenOptions opts;
  opts.kind = "random";
  opts.model = "m3";
  opts.n = 16;
  opts.d = 4;
  opts.seed = 123;
  opts.updates = 64;
  CHECK(emit_stream(generate_stream(opts)) == emit_stream(generate_stream(opts)));
  GenOptions other = opts;
  other.seed = 124;
  CHECK(emit_stream(generate_stream(opts)) != emit_stream(generate_stream(other)));
}

TEST_CASE("run: zero updates then query yields a FAIL record") {
  const char* empty =
      "SAMPLER-STREAM v1\n"
      "model=m1 n=8 d=2 eps=0.25 seed=3 C=0.35 R=4\n"
      "XVEC 1 0\n"
      "Q\n";
  const StreamFile file = parse_stream(empty);
  const RunResult result = run_stream(file);
  REQUIRE(result.records.size() == 1);
  CHECK(!result.records[0].ok);
  CHECK(result.any_failed);
  CHECK(format_query_record(result.records[0], false) == "Q 1 FAIL all-repetitions-failed");
}

TEST_CASE("run: a 1-sparse product returns its coordinate") {
  const char* one =
      "SAMPLER-STREAM v1\n"
      "model=m1 n=8 d=2 eps=0.25 seed=5 C=0.35 R=64\n"
      "XVEC 1 0\n"
      "U A 5 1 3\n"
      "Q\n";
  const RunResult result = run_stream(parse_stream(one));
  REQUIRE(result.records.size() == 1);
  REQUIRE(result.records[0].ok);
  CHECK(result.records[0].index == 5);
  CHECK(result.records[0].estimate == doctest::Approx(3.0).epsilon(1e-6));
}

TEST_CASE("run output is byte-identical across replays") {
  GenOptions opts;
  opts.kind = "random";
  opts.model = "m3";
  opts.n = 16;
  opts.d = 4;
  opts.seed = 7;
  opts.c = 0.35;
  opts.r = 16;
  opts.updates = 96;
  const StreamFile file = generate_stream(opts);
  const std::string first = run_to_string(file);
  const std::string second = run_to_string(parse_stream(emit_stream(file)));
  CHECK(first == second);
  CHECK(!first.empty());
}

TEST_CASE("tensor stream runs and reports the pair") {
  GenOptions opts;
  opts.kind = "random";
  opts.model = "tensor";
  opts.n = 4;
  opts.d = 2;
  opts.seed = 13;
  opts.c = 0.35;
  opts.r = 48;
  opts.updates = 24;
  const StreamFile file = generate_stream(opts);
  const RunResult result = run_stream(file);
  REQUIRE(!result.records.empty());
  for (const auto& rec : result.records) {
    if (rec.ok) {
      CHECK(rec.index == kron_flat(rec.i1, rec.i2, 4));
    }
  }
}

TEST_CASE("index stream replays to its planted behavior") {
  GenOptions opts;
  opts.kind = "index";
  opts.d = 16;
  opts.planted = 5;
  opts.bit = 1;
  opts.seed = 21;
  const StreamFile file = generate_stream(opts);
  CHECK(file.config.model == StreamModel::kM3);
  CHECK(file.config.n == 17);
  int hits = 0, runs = 0;
  for (uint64_t t = 0; t < 30; ++t) {
    StreamFile trial = file;
    trial.config.seed = 1000 + t;
    const RunResult result = run_stream(trial);
    REQUIRE(result.records.size() == 1);
    ++runs;
    if (result.records[0].ok && result.records[0].index == 5) ++hits;
  }
  CHECK(hits >= runs * 7 / 10);
}

TEST_CASE("verify-dist reports are stable across reruns and schema-complete") {
  VerifyOptions opts;
  opts.model = "plain";
  opts.n = 16;
  opts.trials = 2000;
  opts.seed = 31;
  opts.tv_threshold = 0.2;
  const DistributionReport a = verify_distribution(opts);
  const DistributionReport b = verify_distribution(opts);
  CHECK(a.serialize(false) == b.serialize(false));

  const std::string text = a.serialize(true);
  for (const char* key :
       {"model", "instance", "trials", "accepted", "tv_distance", "chi2", "tv_threshold",
        "pass", "planted_index", "planted_frequency", "empirical", "exact", "wall_ms"}) {
    CHECK(text.find(key) != std::string::npos);
  }

  // Frequencies over accepted trials sum to one.
  double total = 0.0;
  for (double f : a.empirical) total += f;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("verify-dist on y = (3, 4) stays within TV 0.07") {
  VerifyOptions opts;
  opts.model = "plain";
  opts.explicit_y = {3.0, 4.0};
  opts.n = 2;
  opts.trials = 50000;
  opts.seed = 37;
  opts.c = 0.5;
  opts.buckets = 64;
  opts.ams = 64;
  opts.tv_threshold = 0.07;
  const DistributionReport report = verify_distribution(opts);
  CHECK(report.pass);
  CHECK(report.accepted > 3000);
  CHECK(report.exact[0] == doctest::Approx(9.0 / 25.0));
  CHECK(report.exact[1] == doctest::Approx(16.0 / 25.0));
}

TEST_CASE("exp verify matches the softmax oracle") {
  VerifyOptions opts;
  opts.model = "exp";
  opts.explicit_y = {0.0, std::log(2.0), std::log(3.0)};
  opts.n = 3;
  opts.trials = 40000;
  opts.seed = 41;
  opts.tv_threshold = 0.02;
  const DistributionReport report = verify_distribution(opts);
  CHECK(report.accepted == report.trials);
  CHECK(report.pass);
}
