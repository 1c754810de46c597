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

#include "turnsample/matvec.hpp"

#include <stdexcept>

namespace turnsample {

MatVecSampler::MatVecSampler(MatVecModel model, uint64_t n, uint64_t d, SamplerConfig cfg,
                             const Matrix* fixed_a, std::span<const double> fixed_x)
    : model_(model), n_(n), d_(d), cfg_(cfg) {
  if (n_ == 0 || d_ == 0) throw std::invalid_argument("matvec sampler needs n, d >= 1");
  cfg_.n = n_;
  cfg_.tensor_side = 0;
  cfg_.validate();

  const bool wants_x = model_ == MatVecModel::kUpdateAFixX;
  const bool wants_a = model_ == MatVecModel::kFixAUpdateX;
  if (wants_x && fixed_x.empty())
    throw std::invalid_argument("updating-A model requires the fixed x at construction");
  if (wants_a && fixed_a == nullptr)
    throw std::invalid_argument("fixed-A model requires the matrix at construction");
  if (!wants_x && !fixed_x.empty())
    throw std::invalid_argument("fixed x supplied to a model that streams x");
  if (!wants_a && fixed_a != nullptr)
    throw std::invalid_argument("fixed A supplied to a model that streams A");
  if (wants_x && fixed_x.size() != d_) throw std::invalid_argument("fixed x has wrong dimension");
  if (wants_a && (fixed_a->rows != n_ || fixed_a->cols != d_))
    throw std::invalid_argument("fixed A has wrong shape");

  x_.assign(d_, 0.0);
  if (wants_x) std::copy(fixed_x.begin(), fixed_x.end(), x_.begin());

  if (model_ == MatVecModel::kUpdateAFixX) {
    direct_.emplace(cfg_);
    return;
  }

  const std::size_t r = cfg_.effective_repetitions();
  reps_.reserve(r);
  for (std::size_t rep = 0; rep < r; ++rep) reps_.emplace_back(cfg_, rep);
  flat_ = reps_.front().flat_size();
  phi_a_.assign(r * flat_ * d_, 0.0);

  if (wants_a) {
    for (uint64_t i = 1; i <= n_; ++i) {
      for (uint64_t j = 1; j <= d_; ++j) {
        apply_a_entry(i, j, fixed_a->at(i - 1, j - 1));
      }
    }
  }
}

void MatVecSampler::apply_a_entry(uint64_t i, uint64_t j, double delta) {
  if (delta == 0.0) return;
  for (std::size_t rep = 0; rep < reps_.size(); ++rep) {
    double* column = phi_a_.data() + (rep * d_ + (j - 1)) * flat_;
    reps_[rep].for_each_basis_cell(
        i, [&](std::size_t offset, double coeff) { column[offset] += delta * coeff; });
  }
}

void MatVecSampler::update_a(uint64_t i, uint64_t j, double delta) {
  if (model_ == MatVecModel::kFixAUpdateX)
    throw std::logic_error("update_a on a fixed-A sampler");
  if (i < 1 || i > n_ || j < 1 || j > d_) throw std::out_of_range("A index out of range");
  if (model_ == MatVecModel::kUpdateAFixX) {
    const double dy = delta * x_[j - 1];
    if (dy != 0.0) direct_->update(i, dy);
    return;
  }
  apply_a_entry(i, j, delta);
}

void MatVecSampler::update_x(uint64_t j, double delta) {
  if (model_ == MatVecModel::kUpdateAFixX)
    throw std::logic_error("update_x on a fixed-x sampler");
  if (j < 1 || j > d_) throw std::out_of_range("x index out of range");
  x_[j - 1] += delta;
}

std::vector<double> MatVecSampler::materialize_rep(std::size_t rep) const {
  std::vector<double> flat(flat_, 0.0);
  for (uint64_t j = 0; j < d_; ++j) {
    const double xj = x_[j];
    if (xj == 0.0) continue;
    const double* column = phi_a_.data() + (rep * d_ + j) * flat_;
    for (std::size_t t = 0; t < flat_; ++t) flat[t] += xj * column[t];
  }
  return flat;
}

std::optional<L2Sampler::Sample> MatVecSampler::try_query() const {
  if (model_ == MatVecModel::kUpdateAFixX) return direct_->try_sample();
  for (std::size_t rep = 0; rep < reps_.size(); ++rep) {
    SamplerRepetition scratch = reps_[rep];
    scratch.load_flat(materialize_rep(rep));
    const SampleOutcome out = scratch.query(cfg_);
    if (!out.failed) return L2Sampler::Sample{out.index, out.estimate};
  }
  return std::nullopt;
}

L2Sampler::Sample MatVecSampler::query() const {
  if (auto s = try_query()) return *s;
  throw AllRepetitionsFailed();
}

std::vector<double> MatVecSampler::decode_state() const {
  if (model_ == MatVecModel::kUpdateAFixX) return direct_->flatten_state();
  std::vector<double> out;
  out.reserve(reps_.size() * flat_);
  for (std::size_t rep = 0; rep < reps_.size(); ++rep) {
    const std::vector<double> flat = materialize_rep(rep);
    out.insert(out.end(), flat.begin(), flat.end());
  }
  return out;
}

std::size_t MatVecSampler::storage_words() const noexcept {
  std::size_t words = x_.size();
  if (direct_) words += direct_->storage_words();
  for (const auto& rep : reps_) words += rep.storage_words();
  words += phi_a_.size();
  return words;
}

}  // namespace turnsample
