// Copyright 2026 The dpdda Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DPDDA_RANDOM_H_
#define DPDDA_RANDOM_H_

#include <cstdint>
#include <limits>
#include <string_view>

namespace dpdda {

// SplitMix64: a small counter-style generator. Satisfies
// UniformRandomBitGenerator so it can drive <random> distributions, but the
// project samples through the explicit transforms below so that streams are
// identical across standard libraries.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// Purposes for hierarchical substreams. Values are part of the on-disk
// reproducibility contract; append only.
enum class StreamPurpose : std::uint64_t {
  kNoise = 1,
  kNoiseAggregate = 2,
  kCommDelay = 3,
  kFeedbackDelay = 4,
  kTest = 5,
};

// Mixes a key into a hash state (SplitMix64 finaliser).
std::uint64_t MixKey(std::uint64_t state, std::uint64_t key);

// Seed for the substream identified by (master, purpose, a, b). Distinct keys
// give statistically independent streams regardless of the order in which
// they are requested.
std::uint64_t SubstreamSeed(std::uint64_t master, StreamPurpose purpose,
                            std::uint64_t a, std::uint64_t b);

// Stable 64-bit hash of a string (FNV-1a followed by a SplitMix64 finaliser).
std::uint64_t HashString(std::string_view s);

// Uniform double in the open interval (0, 1) from the top 53 bits.
double UniformOpen01(SplitMix64& gen);

// Zero-mean Laplace variate with scale b (density exp(-|z|/b) / 2b), via the
// inverse CDF.
double SampleLaplace(SplitMix64& gen, double scale);

// Uniform integer in [lo, hi], inclusive. Uses rejection so that every value
// is equally likely.
int UniformInt(SplitMix64& gen, int lo, int hi);

}  // namespace dpdda

#endif  // DPDDA_RANDOM_H_
