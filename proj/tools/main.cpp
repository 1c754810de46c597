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

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "turnsample/experiments.hpp"
#include "turnsample/stream.hpp"

namespace {

using namespace turnsample;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInputError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int cmd_run(const std::string& path) {
  const StreamFile file = parse_stream(read_file(path));
  const RunResult result = run_stream(file, &std::cout);
  return result.any_failed ? kExitFail : kExitPass;
}

int cmd_verify(const VerifyOptions& opts) {
  const DistributionReport report = verify_distribution(opts);
  std::cout << report.serialize();
  return report.pass ? kExitPass : kExitFail;
}

int cmd_bench(const BenchOptions& opts) {
  const std::vector<BenchPoint> points = bench_updates(opts);
  std::cout << "BenchReport {\n  model = " << opts.model << "\n";
  for (const BenchPoint& p : points) {
    std::cout << "  n = " << p.n << " ns_per_update = " << format_g17(p.ns_per_update)
              << " storage_words = " << p.storage_words << "\n";
  }
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double ratio = points[i].ns_per_update / points[i - 1].ns_per_update;
    std::cout << "  ratio " << points[i - 1].n << " -> " << points[i].n << " = "
              << format_g17(ratio) << "\n";
  }
  std::cout << "}\n";
  return kExitPass;
}

int cmd_gen(const GenOptions& opts, const std::string& out_path) {
  const std::string text = emit_stream(generate_stream(opts));
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
    out << text;
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"turnstile-stream l2 sampling toolkit"};
  app.require_subcommand(1);

  // run
  std::string run_path;
  CLI::App* run = app.add_subcommand("run", "replay a stream file and answer its queries");
  run->add_option("file", run_path, "stream file")->required();

  // verify-dist
  VerifyOptions vopts;
  std::vector<double> explicit_y;
  CLI::App* verify = app.add_subcommand(
      "verify-dist", "Monte Carlo check of the sampling distribution against the exact one");
  verify->add_option("--model", vopts.model, "plain|m1|m2|m3|tensor|exp")
      ->check(CLI::IsMember({"plain", "m1", "m2", "m3", "tensor", "exp"}));
  verify->add_option("--instance", vopts.instance, "random|index|disjointness")
      ->check(CLI::IsMember({"random", "index", "disjointness"}));
  verify->add_option("--n", vopts.n, "domain size (side length for tensor)");
  verify->add_option("--d", vopts.d, "column count");
  verify->add_option("--eps", vopts.eps, "accuracy parameter in (0,1)");
  verify->add_option("--seed", vopts.seed, "master seed")->envname("TURNSAMPLE_SEED");
  verify->add_option("--c", vopts.c, "threshold constant");
  verify->add_option("--reps", vopts.r, "repetitions per trial");
  verify->add_option("--trials", vopts.trials, "trial budget");
  verify->add_option("--target-samples", vopts.target_samples,
                     "stop once this many accepted samples are collected (0 = run all trials)");
  verify->add_option("--threads", vopts.threads, "worker threads (0 = hardware)");
  verify->add_option("--tv-threshold", vopts.tv_threshold, "pass bound on the TV distance");
  verify->add_option("--y", explicit_y, "explicit target vector (plain/exp)")->delimiter(',');
  verify->add_option("--planted", vopts.planted, "planted coordinate for hard instances");
  verify->add_option("--bit", vopts.bit, "planted bit for hard instances");
  verify->add_option("--rows", vopts.rows, "point-sketch rows override");
  verify->add_option("--buckets", vopts.buckets, "point-sketch buckets override");
  verify->add_option("--ams", vopts.ams, "norm-sketch estimator count override");
  verify->add_option("--density", vopts.density, "nonzero density of random matrices");

  // bench-update
  BenchOptions bopts;
  CLI::App* bench = app.add_subcommand("bench-update", "per-update wall time across sizes");
  bench->add_option("--model", bopts.model, "m1|m2|m3|tensor")
      ->check(CLI::IsMember({"m1", "m2", "m3", "tensor"}));
  bench->add_option("--n", bopts.ns, "domain sizes")->delimiter(',');
  bench->add_option("--d", bopts.d, "column count");
  bench->add_option("--eps", bopts.eps, "accuracy parameter");
  bench->add_option("--seed", bopts.seed, "master seed")->envname("TURNSAMPLE_SEED");
  bench->add_option("--reps", bopts.r, "repetitions");
  bench->add_option("--rows", bopts.rows, "pinned point-sketch rows");
  bench->add_option("--buckets", bopts.buckets, "pinned point-sketch buckets");
  bench->add_option("--ams", bopts.ams, "pinned norm-sketch estimators");
  bench->add_option("--updates", bopts.updates_per_batch, "updates per timing batch");
  bench->add_option("--batches", bopts.batches, "timing batches (median)");

  // gen
  GenOptions gopts;
  std::string gen_out;
  double gen_c = 0.0;
  uint64_t gen_r = 0;
  CLI::App* gen = app.add_subcommand("gen", "generate a stream file");
  gen->add_option("--kind", gopts.kind, "random|index|disjointness")
      ->check(CLI::IsMember({"random", "index", "disjointness"}));
  gen->add_option("--model", gopts.model, "m1|m2|m3|tensor (random kind)")
      ->check(CLI::IsMember({"m1", "m2", "m3", "tensor"}));
  gen->add_option("--n", gopts.n, "domain size");
  gen->add_option("--d", gopts.d, "column count");
  gen->add_option("--eps", gopts.eps, "accuracy parameter");
  gen->add_option("--seed", gopts.seed, "master seed")->envname("TURNSAMPLE_SEED");
  gen->add_option("--c", gen_c, "threshold constant written to the file");
  gen->add_option("--reps", gen_r, "repetition count written to the file");
  gen->add_option("--updates", gopts.updates, "update count");
  gen->add_option("--planted", gopts.planted, "planted coordinate");
  gen->add_option("--bit", gopts.bit, "planted bit");
  gen->add_option("--density", gopts.density, "matrix density");
  gen->add_option("--out", gen_out, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(run_path);
    if (*verify) {
      if (!explicit_y.empty()) vopts.explicit_y = explicit_y;
      return cmd_verify(vopts);
    }
    if (*bench) return cmd_bench(bopts);
    if (*gen) {
      if (gen->count("--c")) gopts.c = gen_c;
      if (gen->count("--reps")) gopts.r = gen_r;
      return cmd_gen(gopts, gen_out);
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
