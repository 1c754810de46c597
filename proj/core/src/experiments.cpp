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

#include "turnsample/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "turnsample/matvec.hpp"
#include "turnsample/oracle.hpp"
#include "turnsample/tensor.hpp"

namespace turnsample {

namespace {

constexpr uint64_t kChunk = 1024;

unsigned effective_threads(unsigned threads) {
  if (threads) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

}  // namespace

TrialCounts run_trials(uint64_t domain, uint64_t max_trials, uint64_t target_accepted,
                       unsigned threads,
                       const std::function<std::optional<uint64_t>(uint64_t)>& fn) {
  TrialCounts result;
  result.counts.assign(domain, 0);
  const unsigned workers = effective_threads(threads);

  uint64_t start = 0;
  while (start < max_trials) {
    if (target_accepted > 0 && result.accepted >= target_accepted) break;
    const uint64_t end = std::min(start + kChunk, max_trials);

    if (workers <= 1 || end - start < 2 * workers) {
      for (uint64_t t = start; t < end; ++t) {
        if (auto outcome = fn(t)) {
          result.counts.at(*outcome - 1) += 1;
          result.accepted += 1;
        }
      }
    } else {
      std::vector<std::vector<uint64_t>> local(workers, std::vector<uint64_t>(domain, 0));
      std::vector<uint64_t> local_accepted(workers, 0);
      std::vector<std::thread> pool;
      pool.reserve(workers);
      const uint64_t span = end - start;
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          const uint64_t lo = start + span * w / workers;
          const uint64_t hi = start + span * (w + 1) / workers;
          for (uint64_t t = lo; t < hi; ++t) {
            if (auto outcome = fn(t)) {
              local[w].at(*outcome - 1) += 1;
              local_accepted[w] += 1;
            }
          }
        });
      }
      for (auto& th : pool) th.join();
      for (unsigned w = 0; w < workers; ++w) {
        result.accepted += local_accepted[w];
        for (uint64_t i = 0; i < domain; ++i) result.counts[i] += local[w][i];
      }
    }
    result.trials = end;
    start = end;
  }
  return result;
}

std::vector<double> random_int_vector(MasterSeed seed, uint64_t n, int lo, int hi,
                                      bool ensure_nonzero) {
  if (hi < lo) throw std::invalid_argument("empty integer range");
  const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
  std::vector<double> v(n);
  uint64_t round = 0;
  for (;;) {
    bool nonzero = false;
    for (uint64_t i = 0; i < n; ++i) {
      const uint64_t w = prf_word(seed, domain_tag::kInstance, round * n + i);
      v[i] = static_cast<double>(lo + static_cast<int64_t>(w % span));
      if (v[i] != 0.0) nonzero = true;
    }
    if (!ensure_nonzero || nonzero) return v;
    ++round;
  }
}

Matrix random_int_matrix(MasterSeed seed, uint64_t rows, uint64_t cols, double density, int lo,
                         int hi) {
  if (hi < lo) throw std::invalid_argument("empty integer range");
  const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
  Matrix m(rows, cols);
  for (uint64_t i = 0; i < rows; ++i) {
    for (uint64_t j = 0; j < cols; ++j) {
      const uint64_t cell = i * cols + j;
      const uint64_t gate = prf_word(seed, domain_tag::kInstance, 2 * cell);
      if ((static_cast<double>(gate) + 1.0) * 0x1p-64 > density) continue;
      const uint64_t w = prf_word(seed, domain_tag::kInstance, 2 * cell + 1);
      m.at(i, j) = static_cast<double>(lo + static_cast<int64_t>(w % span));
    }
  }
  return m;
}

namespace {

std::vector<StreamUpdate> matrix_entry_updates(const Matrix& m, UpdateTarget target) {
  std::vector<StreamUpdate> ups;
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j)
      if (m.at(i, j) != 0.0) ups.push_back({target, i + 1, j + 1, m.at(i, j)});
  return ups;
}

void shuffle_updates(std::vector<StreamUpdate>& ups, MasterSeed seed) {
  for (std::size_t i = ups.size(); i > 1; --i) {
    const uint64_t w = prf_word(seed, domain_tag::kShuffle, i);
    std::swap(ups[i - 1], ups[w % i]);
  }
}

SamplerConfig trial_config(const VerifyOptions& opts, uint64_t n, uint64_t trial) {
  SamplerConfig cfg;
  cfg.n = n;
  cfg.epsilon = opts.eps;
  cfg.threshold_c = opts.c;
  cfg.repetitions = opts.r;
  cfg.seed = derive_seed(MasterSeed{opts.seed}, domain_tag::kTrial, trial);
  cfg.rows = opts.rows;
  cfg.buckets = opts.buckets;
  cfg.ams_estimators = opts.ams;
  return cfg;
}

struct VerifySetup {
  uint64_t domain = 0;
  std::vector<double> exact;
  uint64_t planted = 0;
  std::function<std::optional<uint64_t>(uint64_t)> trial;
};

VerifySetup setup_plain(const VerifyOptions& opts) {
  VerifySetup s;
  auto y = std::make_shared<std::vector<double>>(
      opts.explicit_y.empty()
          ? random_int_vector(derive_seed(MasterSeed{opts.seed}, domain_tag::kInstance, 0), opts.n,
                              opts.lo, opts.hi, true)
          : opts.explicit_y);
  s.domain = y->size();
  s.exact = exact_l2_distribution(*y).p;
  s.trial = [opts, y](uint64_t t) -> std::optional<uint64_t> {
    L2Sampler sampler(trial_config(opts, y->size(), t));
    for (uint64_t i = 1; i <= y->size(); ++i) {
      if ((*y)[i - 1] != 0.0) sampler.update(i, (*y)[i - 1]);
    }
    const auto sample = sampler.try_sample();
    if (!sample) return std::nullopt;
    return sample->index;
  };
  return s;
}

VerifySetup setup_matvec(const VerifyOptions& opts) {
  const MasterSeed inst_seed = derive_seed(MasterSeed{opts.seed}, domain_tag::kInstance, 1);

  MatVecModel model;
  if (opts.model == "m1") model = MatVecModel::kUpdateAFixX;
  else if (opts.model == "m2") model = MatVecModel::kFixAUpdateX;
  else model = MatVecModel::kUpdateBoth;

  auto a = std::make_shared<Matrix>();
  auto x = std::make_shared<std::vector<double>>();
  std::vector<double> y;

  if (opts.instance == "index") {
    const HardInstance inst = gen_index_hard_instance(opts.d, opts.planted, opts.bit);
    *a = inst.a;
    *x = inst.x;
    y = exact_matvec(*a, *x);
  } else {
    for (uint64_t bump = 0;; ++bump) {
      *a = random_int_matrix(derive_seed(inst_seed, domain_tag::kInstance, bump), opts.n, opts.d,
                             opts.density, opts.lo, opts.hi);
      *x = random_int_vector(derive_seed(inst_seed, domain_tag::kInstance, 1000 + bump), opts.d,
                             opts.lo, opts.hi, true);
      y = exact_matvec(*a, *x);
      if (std::any_of(y.begin(), y.end(), [](double v) { return v != 0.0; })) break;
    }
  }

  VerifySetup s;
  s.domain = a->rows;

  auto a_updates = std::make_shared<std::vector<StreamUpdate>>(
      matrix_entry_updates(*a, UpdateTarget::kA));
  if (opts.instance != "index")
    shuffle_updates(*a_updates, derive_seed(inst_seed, domain_tag::kShuffle, 0));

  const uint64_t n = a->rows;
  const uint64_t d = a->cols;
  s.trial = [opts, model, n, d, a, x, a_updates](uint64_t t) -> std::optional<uint64_t> {
    const SamplerConfig cfg = trial_config(opts, n, t);
    std::optional<MatVecSampler> mv;
    switch (model) {
      case MatVecModel::kUpdateAFixX:
        mv.emplace(model, n, d, cfg, nullptr, *x);
        for (const auto& u : *a_updates) mv->update_a(u.i, u.j, u.delta);
        break;
      case MatVecModel::kFixAUpdateX:
        mv.emplace(model, n, d, cfg, a.get());
        for (uint64_t j = 1; j <= d; ++j) mv->update_x(j, (*x)[j - 1]);
        break;
      case MatVecModel::kUpdateBoth:
        mv.emplace(model, n, d, cfg);
        for (const auto& u : *a_updates) mv->update_a(u.i, u.j, u.delta);
        for (uint64_t j = 1; j <= d; ++j) mv->update_x(j, (*x)[j - 1]);
        break;
    }
    const auto sample = mv->try_query();
    if (!sample) return std::nullopt;
    return sample->index;
  };

  if (opts.instance == "index") {
    s.planted = opts.bit ? opts.planted : opts.d + 1;
    // A degenerate l2 distribution: nearly all mass on the planted index.
    s.exact = exact_l2_distribution(y).p;
  } else {
    s.exact = exact_l2_distribution(y).p;
  }
  return s;
}

VerifySetup setup_tensor(const VerifyOptions& opts) {
  const MasterSeed inst_seed = derive_seed(MasterSeed{opts.seed}, domain_tag::kInstance, 2);
  auto a1 = std::make_shared<Matrix>();
  auto a2 = std::make_shared<Matrix>();
  auto x = std::make_shared<std::vector<double>>();
  std::vector<double> y;
  for (uint64_t bump = 0;; ++bump) {
    *a1 = random_int_matrix(derive_seed(inst_seed, domain_tag::kInstance, bump), opts.n, opts.d,
                            opts.density, opts.lo, opts.hi);
    *a2 = random_int_matrix(derive_seed(inst_seed, domain_tag::kInstance, 1000 + bump), opts.n,
                            opts.d, 1.0, opts.lo, opts.hi);
    *x = random_int_vector(derive_seed(inst_seed, domain_tag::kInstance, 2000 + bump),
                           opts.d * opts.d, opts.lo, opts.hi, true);
    y = exact_kron_matvec(*a1, *a2, *x);
    if (std::any_of(y.begin(), y.end(), [](double v) { return v != 0.0; })) break;
  }

  VerifySetup s;
  s.domain = opts.n * opts.n;
  s.exact = exact_l2_distribution(y).p;

  auto a1_updates = std::make_shared<std::vector<StreamUpdate>>(
      matrix_entry_updates(*a1, UpdateTarget::kA1));
  shuffle_updates(*a1_updates, derive_seed(inst_seed, domain_tag::kShuffle, 1));

  const uint64_t side = opts.n;
  const uint64_t d = opts.d;
  s.trial = [opts, side, d, a2, x, a1_updates](uint64_t t) -> std::optional<uint64_t> {
    TensorSampler ts(side, d, trial_config(opts, side * side, t), *a2, *x);
    for (const auto& u : *a1_updates) ts.update_a1(u.i, u.j, u.delta);
    const auto sample = ts.try_query();
    if (!sample) return std::nullopt;
    return kron_flat(sample->i1, sample->i2, side);
  };
  return s;
}

VerifySetup setup_exp(const VerifyOptions& opts) {
  VerifySetup s;
  auto y = std::make_shared<std::vector<double>>();
  if (!opts.explicit_y.empty()) {
    *y = opts.explicit_y;
  } else if (opts.instance == "disjointness") {
    // Random subsets with a planted intersection when bit = 1.
    const MasterSeed set_seed = derive_seed(MasterSeed{opts.seed}, domain_tag::kInstance, 3);
    std::vector<uint64_t> set_a, set_b;
    for (uint64_t i = 1; i <= opts.n; ++i) {
      if (i == opts.planted) continue;
      const uint64_t w = prf_word(set_seed, domain_tag::kInstance, i);
      if (w % 4 == 0) set_a.push_back(i);
      else if (w % 4 == 1) set_b.push_back(i);
    }
    if (opts.bit) {
      set_a.push_back(opts.planted);
      set_b.push_back(opts.planted);
    }
    const HardInstance inst = gen_disjointness_instance(opts.n, set_a, set_b, 1.0);
    *y = inst.y;
    s.planted = inst.planted;
  } else {
    *y = random_int_vector(derive_seed(MasterSeed{opts.seed}, domain_tag::kInstance, 4), opts.n,
                           -3, 3, true);
  }
  s.domain = y->size();
  s.exact = exact_softmax_distribution(*y).p;
  const uint64_t seed = opts.seed;
  s.trial = [y, seed](uint64_t t) -> std::optional<uint64_t> {
    return offline_exp_sample(*y, derive_seed(MasterSeed{seed}, domain_tag::kDraw, t));
  };
  return s;
}

}  // namespace

DistributionReport verify_distribution(const VerifyOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();

  VerifySetup setup;
  if (opts.model == "plain") setup = setup_plain(opts);
  else if (opts.model == "m1" || opts.model == "m2" || opts.model == "m3")
    setup = setup_matvec(opts);
  else if (opts.model == "tensor") setup = setup_tensor(opts);
  else if (opts.model == "exp") setup = setup_exp(opts);
  else throw std::invalid_argument("unknown model '" + opts.model + "'");

  const TrialCounts counts = run_trials(setup.domain, opts.trials, opts.target_samples,
                                        opts.threads, setup.trial);

  DistributionReport report;
  report.model = opts.model;
  report.instance = opts.instance;
  report.trials = counts.trials;
  report.accepted = counts.accepted;
  report.exact = setup.exact;
  report.tv_threshold = opts.tv_threshold;
  report.empirical.assign(setup.domain, 0.0);
  if (counts.accepted > 0) {
    for (uint64_t i = 0; i < setup.domain; ++i)
      report.empirical[i] =
          static_cast<double>(counts.counts[i]) / static_cast<double>(counts.accepted);
  }
  report.tv_distance = counts.accepted > 0 ? tv_distance(report.empirical, report.exact) : 1.0;
  report.chi2 = counts.accepted > 0 ? [&] {
    // Fold zero-probability cells into the statistic guard: exact zeros with
    // observed counts mean a support violation and get a large stat.
    for (uint64_t i = 0; i < setup.domain; ++i)
      if (report.exact[i] == 0.0 && counts.counts[i] > 0) return 1e300;
    return chi2_stat(counts.counts, report.exact);
  }() : 0.0;
  report.pass = report.tv_distance <= report.tv_threshold;
  if (setup.planted) {
    report.planted_index = setup.planted;
    report.planted_frequency = counts.trials > 0
        ? static_cast<double>(counts.counts[setup.planted - 1]) / static_cast<double>(counts.trials)
        : 0.0;
  }
  report.wall_ms = std::chrono::duration<double, std::milli>(
      std::chrono::steady_clock::now() - t0).count();
  return report;
}

namespace {

double time_batch_ns(const std::function<void()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  body();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::nano>(t1 - t0).count();
}

double median_of(std::vector<double> v) {
  return median_destructive(std::span<double>(v));
}

}  // namespace

std::vector<BenchPoint> bench_updates(const BenchOptions& opts) {
  std::vector<BenchPoint> points;
  for (uint64_t n : opts.ns) {
    SamplerConfig cfg;
    cfg.n = n;
    cfg.epsilon = opts.eps;
    cfg.repetitions = opts.r;
    cfg.seed = MasterSeed{opts.seed};
    cfg.rows = opts.rows;
    cfg.buckets = opts.buckets;
    cfg.ams_estimators = opts.ams;

    BenchPoint point;
    point.n = n;
    std::vector<double> batch_ns(static_cast<std::size_t>(opts.batches));

    if (opts.model == "m1" || opts.model == "m3") {
      const uint64_t batch = opts.updates_per_batch ? opts.updates_per_batch : 8192;
      const MatVecModel model =
          opts.model == "m1" ? MatVecModel::kUpdateAFixX : MatVecModel::kUpdateBoth;
      std::vector<double> x(opts.d, 1.0);
      MatVecSampler mv(model, n, opts.d, cfg, nullptr,
                       model == MatVecModel::kUpdateAFixX ? std::span<const double>(x)
                                                          : std::span<const double>());
      uint64_t tick = 0;
      for (int b = 0; b < opts.batches; ++b) {
        batch_ns[b] = time_batch_ns([&] {
          for (uint64_t t = 0; t < batch; ++t, ++tick) {
            const uint64_t i = tick % n + 1;
            const uint64_t j = tick % opts.d + 1;
            mv.update_a(i, j, (tick & 1) ? 1.0 : -1.0);
          }
        }) / static_cast<double>(batch);
      }
      point.storage_words = mv.storage_words();
    } else if (opts.model == "m2") {
      const uint64_t batch = opts.updates_per_batch ? opts.updates_per_batch : 262144;
      const Matrix a = random_int_matrix(MasterSeed{opts.seed}, n, opts.d,
                                         std::min(1.0, 1.0 / static_cast<double>(opts.d)), -5, 5);
      MatVecSampler mv(MatVecModel::kFixAUpdateX, n, opts.d, cfg, &a);
      uint64_t tick = 0;
      for (int b = 0; b < opts.batches; ++b) {
        batch_ns[b] = time_batch_ns([&] {
          for (uint64_t t = 0; t < batch; ++t, ++tick) {
            mv.update_x(tick % opts.d + 1, (tick & 1) ? 1.0 : -1.0);
          }
        }) / static_cast<double>(batch);
      }
      point.storage_words = mv.storage_words();
    } else if (opts.model == "tensor") {
      const uint64_t batch = opts.updates_per_batch ? opts.updates_per_batch : 32;
      const Matrix a2 = random_int_matrix(MasterSeed{opts.seed}, n, opts.d, 1.0, -3, 3);
      const std::vector<double> x =
          random_int_vector(MasterSeed{opts.seed + 1}, opts.d * opts.d, -3, 3, true);
      TensorSampler ts(n, opts.d, cfg, a2, x);
      uint64_t tick = 0;
      for (int b = 0; b < opts.batches; ++b) {
        batch_ns[b] = time_batch_ns([&] {
          for (uint64_t t = 0; t < batch; ++t, ++tick) {
            const uint64_t i = tick % n + 1;
            const uint64_t j = tick % opts.d + 1;
            ts.update_a1(i, j, (tick & 1) ? 1.0 : -1.0);
          }
        }) / static_cast<double>(batch);
      }
      point.storage_words = ts.storage_words();
    } else {
      throw std::invalid_argument("unknown bench model '" + opts.model + "'");
    }

    point.ns_per_update = median_of(batch_ns);
    points.push_back(point);
  }
  return points;
}

StreamFile generate_stream(const GenOptions& opts) {
  const MasterSeed seed{opts.seed};
  StreamFile file;
  file.config.eps = opts.eps;
  file.config.seed = opts.seed;
  file.config.c = opts.c;
  file.config.r = opts.r;

  const auto rand_range = [&](uint64_t tag, uint64_t idx, uint64_t span) {
    return prf_word(seed, tag, idx) % span;
  };
  const auto rand_value = [&](uint64_t idx) {
    const uint64_t span = static_cast<uint64_t>(opts.hi - opts.lo) + 1;
    return static_cast<double>(opts.lo +
                               static_cast<int64_t>(prf_word(seed, domain_tag::kDraw, idx) % span));
  };

  if (opts.kind == "index") {
    const HardInstance inst = gen_index_hard_instance(opts.d, opts.planted, opts.bit);
    file.config.model = StreamModel::kM3;
    file.config.n = opts.d + 1;
    file.config.d = opts.d;
    if (!file.config.c) file.config.c = 0.35;
    if (!file.config.r) file.config.r = 24;
    for (std::size_t i = 0; i < inst.a.rows; ++i)
      for (std::size_t j = 0; j < inst.a.cols; ++j)
        if (inst.a.at(i, j) != 0.0)
          file.events.push_back(
              {StreamEvent::Kind::kUpdate,
               {UpdateTarget::kA, i + 1, j + 1, inst.a.at(i, j)}});
    file.events.push_back(
        {StreamEvent::Kind::kUpdate, {UpdateTarget::kX, 0, opts.planted, 1.0}});
    file.events.push_back({StreamEvent::Kind::kQuery, {}});
    return file;
  }

  if (opts.kind == "disjointness") {
    file.config.model = StreamModel::kM1;
    file.config.n = opts.n;
    file.config.d = 1;
    if (!file.config.c) file.config.c = 0.35;
    if (!file.config.r) file.config.r = 64;
    file.xvec = {1.0};
    std::vector<uint64_t> set_a, set_b;
    for (uint64_t i = 1; i <= opts.n; ++i) {
      if (i == opts.planted) continue;
      const uint64_t w = prf_word(seed, domain_tag::kInstance, i);
      if (w % 4 == 0) set_a.push_back(i);
      else if (w % 4 == 1) set_b.push_back(i);
    }
    if (opts.bit) {
      set_a.push_back(opts.planted);
      set_b.push_back(opts.planted);
    }
    const double scale = 100.0 * std::log(static_cast<double>(opts.n));
    for (uint64_t i : set_a)
      file.events.push_back({StreamEvent::Kind::kUpdate, {UpdateTarget::kA, i, 1, scale}});
    for (uint64_t i : set_b)
      file.events.push_back({StreamEvent::Kind::kUpdate, {UpdateTarget::kA, i, 1, scale}});
    file.events.push_back({StreamEvent::Kind::kQuery, {}});
    return file;
  }

  if (opts.kind != "random") throw std::invalid_argument("unknown gen kind '" + opts.kind + "'");

  file.config.n = opts.n;
  file.config.d = opts.d;
  if (opts.model == "m1") file.config.model = StreamModel::kM1;
  else if (opts.model == "m2") file.config.model = StreamModel::kM2;
  else if (opts.model == "m3") file.config.model = StreamModel::kM3;
  else if (opts.model == "tensor") file.config.model = StreamModel::kTensor;
  else throw std::invalid_argument("unknown model '" + opts.model + "'");

  switch (file.config.model) {
    case StreamModel::kM1: {
      file.xvec.resize(opts.d);
      for (uint64_t j = 0; j < opts.d; ++j) file.xvec[j] = rand_value(j);
      for (uint64_t t = 0; t < opts.updates; ++t) {
        const uint64_t i = rand_range(domain_tag::kShuffle, 2 * t, opts.n) + 1;
        const uint64_t j = rand_range(domain_tag::kShuffle, 2 * t + 1, opts.d) + 1;
        file.events.push_back(
            {StreamEvent::Kind::kUpdate, {UpdateTarget::kA, i, j, rand_value(opts.d + t)}});
      }
      break;
    }
    case StreamModel::kM2: {
      const Matrix a = random_int_matrix(derive_seed(seed, domain_tag::kInstance, 0), opts.n,
                                         opts.d, opts.density, opts.lo, opts.hi);
      for (uint64_t i = 1; i <= opts.n; ++i) {
        std::vector<double> row(opts.d);
        for (uint64_t j = 0; j < opts.d; ++j) row[j] = a.at(i - 1, j);
        file.a_rows.emplace_back(i, std::move(row));
      }
      for (uint64_t t = 0; t < opts.updates; ++t) {
        const uint64_t j = rand_range(domain_tag::kShuffle, t, opts.d) + 1;
        file.events.push_back(
            {StreamEvent::Kind::kUpdate, {UpdateTarget::kX, 0, j, rand_value(t)}});
      }
      break;
    }
    case StreamModel::kM3: {
      for (uint64_t t = 0; t < opts.updates; ++t) {
        if (rand_range(domain_tag::kShuffle, 3 * t, 4) == 0) {
          const uint64_t j = rand_range(domain_tag::kShuffle, 3 * t + 1, opts.d) + 1;
          file.events.push_back(
              {StreamEvent::Kind::kUpdate, {UpdateTarget::kX, 0, j, rand_value(t)}});
        } else {
          const uint64_t i = rand_range(domain_tag::kShuffle, 3 * t + 1, opts.n) + 1;
          const uint64_t j = rand_range(domain_tag::kShuffle, 3 * t + 2, opts.d) + 1;
          file.events.push_back(
              {StreamEvent::Kind::kUpdate, {UpdateTarget::kA, i, j, rand_value(t)}});
        }
      }
      break;
    }
    case StreamModel::kTensor: {
      file.xvec.resize(opts.d * opts.d);
      for (uint64_t j = 0; j < file.xvec.size(); ++j) file.xvec[j] = rand_value(j);
      const Matrix a2 = random_int_matrix(derive_seed(seed, domain_tag::kInstance, 1), opts.n,
                                          opts.d, 1.0, opts.lo, opts.hi);
      for (uint64_t i = 1; i <= opts.n; ++i) {
        std::vector<double> row(opts.d);
        for (uint64_t j = 0; j < opts.d; ++j) row[j] = a2.at(i - 1, j);
        file.a2_rows.emplace_back(i, std::move(row));
      }
      for (uint64_t t = 0; t < opts.updates; ++t) {
        const uint64_t i = rand_range(domain_tag::kShuffle, 2 * t, opts.n) + 1;
        const uint64_t j = rand_range(domain_tag::kShuffle, 2 * t + 1, opts.d) + 1;
        file.events.push_back(
            {StreamEvent::Kind::kUpdate, {UpdateTarget::kA1, i, j, rand_value(t + 7)}});
      }
      break;
    }
  }

  // One mid-stream probe and one final query.
  if (file.events.size() > 1) {
    file.events.insert(file.events.begin() + static_cast<std::ptrdiff_t>(file.events.size() / 2),
                       {StreamEvent::Kind::kQuery, {}});
  }
  file.events.push_back({StreamEvent::Kind::kQuery, {}});
  return file;
}

}  // namespace turnsample
