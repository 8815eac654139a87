/* Copyright 2026 The qkdlab Authors
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
#include <limits>

namespace qkdlab {

// SplitMix64 output finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// A SplitMix64 sequence. Satisfies UniformRandomBitGenerator, but the
// helpers below are what the simulation uses so that results do not depend
// on the standard library's distribution implementations.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit constexpr RandomStream(std::uint64_t state) noexcept : state_(state) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  constexpr result_type operator()() noexcept {
    state_ += kGamma;
    return mix64(state_);
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) noexcept { return uniform() < p; }

  // Uniform integer in [0, n). n must be positive.
  std::uint32_t below(std::uint32_t n) noexcept {
    return static_cast<std::uint32_t>(((*this)() >> 32) * n >> 32);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
  std::uint64_t state_;
};

// Named substreams a master seed expands into.
enum class Substream : std::uint64_t {
  schedule = 1,
  source = 2,
  channel = 3,
  eve = 4,
  bob = 5,
  analysis = 6,
};

// Counter-based family of streams: at(i) depends only on (seed, substream, i),
// never on how many draws other indices made or in which order they ran.
class StreamFamily {
 public:
  constexpr StreamFamily(std::uint64_t seed, Substream substream) noexcept
      : key_(mix64(mix64(seed) ^ (static_cast<std::uint64_t>(substream) *
                                  0xD1B54A32D192ED03ULL))) {}

  constexpr RandomStream at(std::uint64_t index) const noexcept {
    return RandomStream(mix64(key_ + index * 0x9E3779B97F4A7C15ULL));
  }

  constexpr std::uint64_t key() const noexcept { return key_; }

 private:
  std::uint64_t key_;
};

// Seed for an independent child experiment (e.g. episode k of a batch).
constexpr std::uint64_t child_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return mix64(seed ^ mix64(index + 0x632BE59BD9B4E019ULL));
}

}  // namespace qkdlab
