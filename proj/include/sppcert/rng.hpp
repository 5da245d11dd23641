/**
 * Copyright 2026 The sppcert Authors
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

// Seedable random source for the oracle suites. The algorithm is fixed so
// that sampled states are reproducible across platforms and standard
// library implementations:
//   * engine: std::mt19937_64 (output sequence is pinned by the standard)
//   * per-trial seeds: splitmix64(seed ^ splitmix64(trial_index))
//   * uniforms: u = ((x >> 11) + 1) * 2^-53, which lies in (0, 1]
//   * unit exponentials: -log(u)

#include <cmath>
#include <cstdint>
#include <random>

namespace sppcert {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline constexpr std::uint64_t derive_trial_seed(std::uint64_t seed,
                                                 std::uint64_t trial) {
  return splitmix64(seed ^ splitmix64(trial));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform_open_closed() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  double unit_exponential() { return -std::log(uniform_open_closed()); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace sppcert
