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

#include "turnsample/sampler.hpp"

#include <algorithm>
#include <cmath>

namespace turnsample {

namespace {
double ln_domain(uint64_t n) { return std::log(static_cast<double>(std::max<uint64_t>(n, 2))); }
}  // namespace

void SamplerConfig::validate() const {
  if (n < 1) throw std::invalid_argument("sampler domain must be nonempty");
  if (!(epsilon > 0.0) || !(epsilon < 1.0))
    throw std::invalid_argument("epsilon must be in (0, 1)");
  if (!(threshold_c > 0.0)) throw std::invalid_argument("threshold constant must be positive");
  if (!(fail_budget > 0.0) || !(fail_budget < 1.0))
    throw std::invalid_argument("fail budget must be in (0, 1)");
  if (tensor_side != 0 && tensor_side * tensor_side != n)
    throw std::invalid_argument("tensor domain must satisfy n = side^2");
  if (ams_group == 0) throw std::invalid_argument("ams group size must be positive");
}

std::size_t SamplerConfig::effective_repetitions() const {
  if (repetitions > 0) return repetitions;
  const double r = std::ceil(40.0 / epsilon * ln_domain(n) * std::log(1.0 / fail_budget));
  return static_cast<std::size_t>(r);
}

SketchParams SamplerConfig::sketch_params() const {
  SketchParams p = SketchParams::defaults(epsilon, n);
  if (rows) p.rows = rows;
  if (buckets) p.buckets = buckets;
  if (ams_estimators) p.ams_estimators = ams_estimators;
  p.ams_group = ams_group;
  if (p.ams_estimators % p.ams_group != 0)
    p.ams_estimators = (p.ams_estimators / p.ams_group + 1) * p.ams_group;
  return p;
}

std::size_t SamplerConfig::heavy_count() const {
  const auto k = static_cast<std::size_t>(std::ceil(1.0 / (epsilon * epsilon)));
  return std::min<std::size_t>(k, n);
}

double SamplerConfig::threshold() const {
  return std::sqrt(threshold_c * ln_domain(n) / epsilon);
}

namespace {

CountSketch make_point_sketch(const SamplerConfig& cfg, const SketchParams& p, MasterSeed seed) {
  if (cfg.tensor_side != 0)
    return CountSketch::tensor(seed, p.rows, p.buckets, cfg.tensor_side, cfg.independence);
  return CountSketch(seed, p.rows, p.buckets, cfg.n, cfg.independence);
}

}  // namespace

SamplerRepetition::SamplerRepetition(const SamplerConfig& cfg, std::size_t rep_index)
    : rep_(rep_index),
      scale_seed_(cfg.seed),
      cs_w_(make_point_sketch(cfg, cfg.sketch_params(),
                              derive_seed(cfg.seed, domain_tag::kRepCountSketch, rep_index))),
      ams_w_(derive_seed(cfg.seed, domain_tag::kRepAmsScaled, rep_index),
             cfg.sketch_params().ams_estimators, cfg.sketch_params().ams_group, cfg.n,
             cfg.independence),
      ams_y_(derive_seed(cfg.seed, domain_tag::kRepAmsPlain, rep_index),
             cfg.sketch_params().ams_estimators, cfg.sketch_params().ams_group, cfg.n,
             cfg.independence) {}

double SamplerRepetition::scale(uint64_t i) const {
  return sampling_scale(scale_seed_, rep_, i);
}

void SamplerRepetition::update(uint64_t i, double delta) {
  if (delta == 0.0) return;
  const double scaled = delta * scale(i);
  cs_w_.update(i, scaled);
  ams_w_.update(i, scaled);
  ams_y_.update(i, delta);
}

SampleOutcome SamplerRepetition::query(const SamplerConfig& cfg) const {
  std::vector<double> ests;
  cs_w_.estimate_all(ests);

  uint64_t best = 1;
  double best_mag = std::fabs(ests[0]);
  for (uint64_t i = 2; i <= cfg.n; ++i) {
    const double mag = std::fabs(ests[i - 1]);
    if (mag > best_mag) {
      best_mag = mag;
      best = i;
    }
  }

  const std::vector<uint64_t> heavy = detail::top_k_by_magnitude(ests, cfg.heavy_count());
  std::vector<double> heavy_est(heavy.size());
  for (std::size_t t = 0; t < heavy.size(); ++t) heavy_est[t] = ests[heavy[t] - 1];

  const double y_norm = ams_y_.estimate();
  const double tail = std::min(cs_w_.residual_norm(heavy, heavy_est), ams_w_.estimate());

  // Thresholds compare against the scaled sketch units (2^16 per w unit).
  const double bound = cfg.threshold() * y_norm * kScaleUnit;
  SampleOutcome out;
  if (tail > bound || best_mag < bound || best_mag == 0.0) return out;  // FAIL
  out.failed = false;
  out.index = best;
  out.estimate = ests[best - 1] / scale(best);
  return out;
}

std::size_t SamplerRepetition::flat_size() const noexcept {
  return cs_w_.cell_count() + ams_w_.estimators() + ams_y_.estimators();
}

void SamplerRepetition::store_flat(std::span<double> out) const {
  const auto table = cs_w_.table();
  const auto w_acc = ams_w_.accumulators();
  const auto y_acc = ams_y_.accumulators();
  std::copy(table.begin(), table.end(), out.begin());
  std::copy(w_acc.begin(), w_acc.end(), out.begin() + table.size());
  std::copy(y_acc.begin(), y_acc.end(), out.begin() + table.size() + w_acc.size());
}

void SamplerRepetition::load_flat(std::span<const double> in) {
  if (in.size() != flat_size()) throw std::invalid_argument("flat state size mismatch");
  const std::size_t cells = cs_w_.cell_count();
  const std::size_t w_accs = ams_w_.estimators();
  cs_w_.load_cells(in.subspan(0, cells));
  ams_w_.load_accumulators(in.subspan(cells, w_accs));
  ams_y_.load_accumulators(in.subspan(cells + w_accs));
}

std::size_t SamplerRepetition::storage_words() const noexcept {
  return cs_w_.storage_words() + ams_w_.storage_words() + ams_y_.storage_words() + 2;
}

L2Sampler::L2Sampler(SamplerConfig cfg) : cfg_(cfg) {
  cfg_.validate();
  const std::size_t r = cfg_.effective_repetitions();
  if (r == 0) throw std::invalid_argument("sampler needs at least one repetition");
  reps_.reserve(r);
  for (std::size_t rep = 0; rep < r; ++rep) reps_.emplace_back(cfg_, rep);
}

void L2Sampler::update(uint64_t i, double delta) {
  if (i < 1 || i > cfg_.n) throw std::out_of_range("sampler coordinate out of range");
  for (auto& rep : reps_) rep.update(i, delta);
}

SampleOutcome L2Sampler::query_repetition(std::size_t rep) const {
  return reps_.at(rep).query(cfg_);
}

std::optional<L2Sampler::Sample> L2Sampler::try_sample() const {
  for (const auto& rep : reps_) {
    const SampleOutcome out = rep.query(cfg_);
    if (!out.failed) return Sample{out.index, out.estimate};
  }
  return std::nullopt;
}

L2Sampler::Sample L2Sampler::sample() const {
  if (auto s = try_sample()) return *s;
  throw AllRepetitionsFailed();
}

std::vector<double> L2Sampler::flatten_state() const {
  const std::size_t per = reps_.empty() ? 0 : reps_.front().flat_size();
  std::vector<double> out(per * reps_.size());
  for (std::size_t r = 0; r < reps_.size(); ++r) {
    reps_[r].store_flat(std::span<double>(out).subspan(r * per, per));
  }
  return out;
}

std::size_t L2Sampler::storage_words() const noexcept {
  std::size_t words = 0;
  for (const auto& rep : reps_) words += rep.storage_words();
  return words;
}

}  // namespace turnsample
