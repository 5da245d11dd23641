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

// Test-only brute-force helpers. Everything here works on the raw
// probability vector so expected values never route through the code
// under test.

#include <cmath>
#include <cstdint>
#include <vector>

#include "sppcert/distribution.hpp"
#include "sppcert/families.hpp"

namespace sppcert::testing {

struct BruteForce {
  double mean = 0.0;
  double pairs = 0.0;  // sum n(n-1) p_n
  double p0 = 0.0;
  double p1 = 0.0;
  double q = 0.0;
  double g2() const { return pairs / (mean * mean); }
};

inline BruteForce brute_force(const std::vector<double>& p) {
  BruteForce b;
  for (std::size_t n = 0; n < p.size(); ++n) {
    b.mean += static_cast<double>(n) * p[n];
    b.pairs += static_cast<double>(n) * static_cast<double>(n - (n > 0 ? 1 : 0)) * p[n];
    if (n >= 2) b.q += p[n];
  }
  b.p0 = p.empty() ? 0.0 : p[0];
  b.p1 = p.size() > 1 ? p[1] : 0.0;
  return b;
}

inline BruteForce brute_force(const PhotonDistribution& d) {
  return brute_force(std::vector<double>(d.probs().begin(), d.probs().end()));
}

/// Random states over a spread of cutoffs, for property-style loops.
inline PhotonDistribution sample_state(std::uint64_t i) {
  const std::size_t max_n = 2 + i % 7;  // 2..8
  return random_truncated(max_n, splitmix64(0xC0FFEE + i));
}

}  // namespace sppcert::testing
