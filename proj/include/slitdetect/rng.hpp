// Copyright 2026 The slitdetect Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SLITDETECT_RNG_HPP
#define SLITDETECT_RNG_HPP

#include <cstdint>

namespace slitdetect {

/// SplitMix64 finalizer applied to seed + (index + 1) * golden gamma.
/// Output i depends only on (seed, i), so streams can be split at any index.
constexpr std::uint64_t counter_u64(std::uint64_t seed, std::uint64_t index) noexcept {
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Uniform double in [0, 1) built from the top 53 bits.
constexpr double counter_uniform(std::uint64_t seed, std::uint64_t index) noexcept {
  return static_cast<double>(counter_u64(seed, index) >> 11) * 0x1.0p-53;
}

}  // namespace slitdetect

#endif  // SLITDETECT_RNG_HPP
