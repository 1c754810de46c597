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

#include <array>
#include <cmath>
#include <cstdint>

namespace turnsample {

/// Root of all randomness. Every derived value is a pure function of
/// (seed, domain tag, index); equal seeds give bit-identical runs.
struct MasterSeed {
  uint64_t value = 0;

  friend bool operator==(MasterSeed a, MasterSeed b) { return a.value == b.value; }
};

namespace domain_tag {
inline constexpr uint64_t kHashCoeff = 1;
inline constexpr uint64_t kSignCoeff = 2;
inline constexpr uint64_t kUniformScale = 3;
inline constexpr uint64_t kRepCountSketch = 4;
inline constexpr uint64_t kRepAmsScaled = 5;
inline constexpr uint64_t kRepAmsPlain = 6;
inline constexpr uint64_t kTrial = 7;
inline constexpr uint64_t kInstance = 8;
inline constexpr uint64_t kDraw = 9;
inline constexpr uint64_t kShuffle = 10;
}  // namespace domain_tag

namespace detail {

inline constexpr uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// SplitMix64 finalizer; bijective on 64-bit words.
constexpr uint64_t mix64(uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline constexpr uint64_t kMersenne61 = (uint64_t{1} << 61) - 1;

constexpr uint64_t add_mod61(uint64_t a, uint64_t b) noexcept {
  const uint64_t s = a + b;  // a, b < 2^61, no overflow
  return s >= kMersenne61 ? s - kMersenne61 : s;
}

inline uint64_t mul_mod61(uint64_t a, uint64_t b) noexcept {
  const unsigned __int128 t = static_cast<unsigned __int128>(a) * b;
  const uint64_t lo = static_cast<uint64_t>(t) & kMersenne61;
  const uint64_t hi = static_cast<uint64_t>(t >> 61);
  const uint64_t s = lo + hi;
  return s >= kMersenne61 ? s - kMersenne61 : s;
}

}  // namespace detail

/// Counter-mode PRF word for (seed, tag, index). Per fixed (seed, tag) this
/// is the SplitMix64 output stream, so the word sequence is statistically
/// uniform at any desk scale.
constexpr uint64_t prf_word(MasterSeed seed, uint64_t tag, uint64_t index) noexcept {
  const uint64_t sub = detail::mix64(seed.value + detail::kGolden * (tag + 1));
  return detail::mix64(sub + detail::kGolden * index);
}

/// Two-index variant, chained the same way.
constexpr uint64_t prf_word(MasterSeed seed, uint64_t tag, uint64_t a, uint64_t b) noexcept {
  uint64_t sub = detail::mix64(seed.value + detail::kGolden * (tag + 1));
  sub = detail::mix64(sub + detail::kGolden * a);
  return detail::mix64(sub + detail::kGolden * b);
}

constexpr MasterSeed derive_seed(MasterSeed seed, uint64_t tag, uint64_t index) noexcept {
  return MasterSeed{prf_word(seed, tag, index)};
}

/// Uniform scalar on the grid {1/2^64, 2/2^64, ..., 1}; never exactly 0.
inline double uniform_scale(MasterSeed seed, uint64_t rep, uint64_t index) noexcept {
  const uint64_t w = prf_word(seed, domain_tag::kUniformScale, rep, index);
  return (static_cast<double>(w) + 1.0) * 0x1p-64;
}

/// One scale unit; sampling_scale() is expressed in multiples of it.
inline constexpr double kScaleUnit = 65536.0;

/// Integer-valued scale factor round(2^16 / sqrt(u)) for the per-coordinate
/// rescaling of the sampler. Keeping the factor an integer makes scaled
/// contributions of integer deltas exact in double arithmetic, so turnstile
/// cancellation and stream permutation leave bit-identical state. Relative
/// quantization against 1/sqrt(u) is below 2^-16.
inline double sampling_scale(MasterSeed seed, uint64_t rep, uint64_t index) noexcept {
  const double u = uniform_scale(seed, rep, index);
  return static_cast<double>(static_cast<int64_t>(kScaleUnit / std::sqrt(u) + 0.5));
}

inline constexpr uint32_t kMaxIndependence = 8;

/// Degree-(k-1) polynomial over GF(2^61 - 1); a k-wise independent family.
class KWisePolynomial {
 public:
  KWisePolynomial() = default;

  KWisePolynomial(MasterSeed seed, uint64_t tag, uint32_t independence) {
    k_ = independence < 1 ? 1 : independence;
    if (k_ > kMaxIndependence) k_ = kMaxIndependence;
    for (uint32_t j = 0; j < k_; ++j) {
      coeff_[j] = prf_word(seed, tag, j) % detail::kMersenne61;
    }
  }

  uint64_t eval(uint64_t x) const noexcept {
    const uint64_t xr = x % detail::kMersenne61;
    uint64_t acc = coeff_[k_ - 1];
    for (uint32_t j = k_ - 1; j-- > 0;) {
      acc = detail::add_mod61(detail::mul_mod61(acc, xr), coeff_[j]);
    }
    return acc;
  }

  uint32_t independence() const noexcept { return k_; }

  /// Words of state held by this family.
  std::size_t storage_words() const noexcept { return k_; }

 private:
  std::array<uint64_t, kMaxIndependence> coeff_{};
  uint32_t k_ = 1;
};

/// k-wise independent hash into [1, range].
class HashFamily {
 public:
  HashFamily() = default;
  HashFamily(MasterSeed seed, uint32_t independence, uint64_t range)
      : poly_(seed, domain_tag::kHashCoeff, independence), range_(range ? range : 1) {}

  uint64_t bucket(uint64_t i) const noexcept { return poly_.eval(i) % range_ + 1; }
  uint64_t bucket0(uint64_t i) const noexcept { return poly_.eval(i) % range_; }
  uint64_t range() const noexcept { return range_; }
  std::size_t storage_words() const noexcept { return poly_.storage_words() + 1; }

 private:
  KWisePolynomial poly_;
  uint64_t range_ = 1;
};

/// k-wise independent random signs.
class SignFamily {
 public:
  SignFamily() = default;
  SignFamily(MasterSeed seed, uint32_t independence)
      : poly_(seed, domain_tag::kSignCoeff, independence) {}

  int sign(uint64_t i) const noexcept { return (poly_.eval(i) & 1) ? 1 : -1; }
  std::size_t storage_words() const noexcept { return poly_.storage_words(); }

 private:
  KWisePolynomial poly_;
};

}  // namespace turnsample
