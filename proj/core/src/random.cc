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

#include "dpdda/random.h"

#include <cmath>

namespace dpdda {

std::uint64_t MixKey(std::uint64_t state, std::uint64_t key) {
  SplitMix64 gen(state ^ (key * 0xd1342543de82ef95ULL));
  return gen();
}

std::uint64_t SubstreamSeed(std::uint64_t master, StreamPurpose purpose,
                            std::uint64_t a, std::uint64_t b) {
  std::uint64_t h = MixKey(master, static_cast<std::uint64_t>(purpose));
  h = MixKey(h, a);
  return MixKey(h, b);
}

std::uint64_t HashString(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return MixKey(h, s.size());
}

double UniformOpen01(SplitMix64& gen) {
  // (k + 0.5) / 2^53 for k in [0, 2^53) never hits 0 or 1.
  const std::uint64_t k = gen() >> 11;
  return (static_cast<double>(k) + 0.5) * 0x1.0p-53;
}

double SampleLaplace(SplitMix64& gen, double scale) {
  const double u = UniformOpen01(gen) - 0.5;
  const double magnitude = -scale * std::log1p(-2.0 * std::abs(u));
  return u < 0.0 ? -magnitude : magnitude;
}

int UniformInt(SplitMix64& gen, int lo, int hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = SplitMix64::max() - SplitMix64::max() % span;
  std::uint64_t draw;
  do {
    draw = gen();
  } while (draw >= limit);
  return lo + static_cast<int>(draw % span);
}

}  // namespace dpdda
