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

// Fock-diagonal photon-number distributions and the observables derived
// from them by direct summation.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sppcert/errors.hpp"

namespace sppcert {

/// Entries in [-kClampThreshold, 0) are treated as serialization noise.
inline constexpr double kClampThreshold = 1e-12;
/// Maximum normalization defect that validate() silently repairs.
inline constexpr double kRenormTolerance = 1e-9;

/**
 * Truncated photon-number distribution p_0..p_K.
 *
 * tail_bound is an upper bound on the mass beyond the cutoff K. Point
 * observables ignore the tail; it only feeds tail_error_bars().
 */
class PhotonDistribution {
 public:
  std::span<const double> probs() const { return probs_; }
  double tail_bound() const { return tail_bound_; }
  std::size_t cutoff() const { return probs_.size() - 1; }

  /// p_n, zero beyond the cutoff.
  double operator[](std::size_t n) const {
    return n < probs_.size() ? probs_[n] : 0.0;
  }

  /// Mass not represented in probs(): 1 - sum, clamped to [0, tail_bound].
  double residual() const {
    double sum = 0.0;
    for (double p : probs_) sum += p;
    double r = 1.0 - sum;
    if (r < 0.0) r = 0.0;
    if (r > tail_bound_) r = tail_bound_;
    return r;
  }

  bool operator==(const PhotonDistribution&) const = default;

 private:
  PhotonDistribution(std::vector<double> probs, double tail_bound)
      : probs_(std::move(probs)), tail_bound_(tail_bound) {}

  friend PhotonDistribution validate(std::vector<double> probs,
                                     double tail_bound);

  std::vector<double> probs_;
  double tail_bound_ = 0.0;
};

/**
 * Checks and normalizes a probability vector.
 *
 * Entries below -1e-12 (or above 1, or non-finite) are rejected; entries in
 * [-1e-12, 0) are clamped to zero. The represented mass must satisfy
 * 0 <= 1 - sum <= tail_bound. A defect of at most 1e-9 outside that window
 * is repaired by rescaling; anything larger throws NotADistribution.
 * Defects at the level of summation rounding are left alone, so validating
 * an already valid vector returns it unchanged.
 */
inline PhotonDistribution validate(std::vector<double> probs,
                                   double tail_bound = 0.0) {
  if (probs.empty()) throw NotADistribution("probs must have at least one entry");
  if (!std::isfinite(tail_bound) || tail_bound < 0.0 || tail_bound > 1.0)
    throw NotADistribution("tail_bound must lie in [0, 1]");

  double sum = 0.0;
  for (std::size_t n = 0; n < probs.size(); ++n) {
    double& p = probs[n];
    if (!std::isfinite(p))
      throw NotADistribution("non-finite probability at n=" + std::to_string(n));
    if (p < -kClampThreshold)
      throw NotADistribution("negative probability at n=" + std::to_string(n));
    if (p > 1.0 + kClampThreshold)
      throw NotADistribution("probability above one at n=" + std::to_string(n));
    if (p < 0.0) p = 0.0;
    if (p > 1.0) p = 1.0;
    sum += p;
  }

  const double missing = 1.0 - sum;
  double target = missing;
  if (missing < 0.0) target = 0.0;
  if (missing > tail_bound) target = tail_bound;
  if (std::abs(missing - target) > kRenormTolerance)
    throw NotADistribution("probabilities sum to " + std::to_string(sum) +
                           ", outside 1 - tail_bound tolerance");
  const double rounding =
      static_cast<double>(probs.size()) * std::numeric_limits<double>::epsilon();
  if (std::abs(missing - target) > rounding) {
    if (sum <= 0.0) throw NotADistribution("distribution has no mass");
    const double scale = (1.0 - target) / sum;
    for (double& p : probs) p = std::min(1.0, p * scale);
  }
  return PhotonDistribution(std::move(probs), tail_bound);
}

namespace detail {

// sum_n f(n) p_n over the explicit support.
template <class F>
double weighted_sum(const PhotonDistribution& d, F&& f, std::size_t from = 0) {
  const auto p = d.probs();
  double acc = 0.0;
  for (std::size_t n = from; n < p.size(); ++n)
    acc += f(static_cast<double>(n)) * p[n];
  return acc;
}

inline double pair_moment(const PhotonDistribution& d) {
  return weighted_sum(d, [](double n) { return n * (n - 1.0); }, 2);
}

}  // namespace detail

/// N = sum_n n p_n.
inline double mean_photon_number(const PhotonDistribution& d) {
  return detail::weighted_sum(d, [](double n) { return n; }, 1);
}

/// Zero-delay g2 = <a+^2 a^2> / <a+ a>^2; undefined for the vacuum.
inline std::optional<double> g2_zero_delay(const PhotonDistribution& d) {
  const double mean = mean_photon_number(d);
  if (mean == 0.0) return std::nullopt;
  return detail::pair_moment(d) / (mean * mean);
}

inline double photon_number_variance(const PhotonDistribution& d) {
  const double mean = mean_photon_number(d);
  return detail::weighted_sum(d, [mean](double n) { return (n - mean) * (n - mean); });
}

/// Mandel Q = var/N - 1; undefined for the vacuum.
inline std::optional<double> mandel_q(const PhotonDistribution& d) {
  const double mean = mean_photon_number(d);
  if (mean == 0.0) return std::nullopt;
  return photon_number_variance(d) / mean - 1.0;
}

/// Vacuum, single-photon and multi-photon weights.
struct Projections {
  double p0 = 0.0;
  double p1 = 0.0;
  double q = 0.0;
};

/// The unrepresented tail mass is attributed to q, so p0 + p1 + q = 1.
inline Projections projections(const PhotonDistribution& d) {
  Projections out;
  out.p0 = d[0];
  out.p1 = d[1];
  const auto p = d.probs();
  for (std::size_t n = 2; n < p.size(); ++n) out.q += p[n];
  out.q += d.residual();
  return out;
}

/// Mean photon number n2 and correlation g2 of the normalized n >= 2 part.
struct MultiPhotonObservables {
  double n2 = 0.0;
  double g2_multi = 0.0;
};

inline std::optional<MultiPhotonObservables> multi_photon_observables(
    const PhotonDistribution& d) {
  const auto p = d.probs();
  double q = 0.0;
  for (std::size_t n = 2; n < p.size(); ++n) q += p[n];
  if (q <= 0.0) return std::nullopt;
  MultiPhotonObservables out;
  out.n2 = detail::weighted_sum(d, [](double n) { return n; }, 2) / q;
  out.g2_multi = detail::pair_moment(d) / (q * out.n2 * out.n2);
  return out;
}

/// p1/q. Infinite when q = 0 < p1, undefined when both vanish.
inline std::optional<double> single_to_multi_ratio(const PhotonDistribution& d) {
  const auto pr = projections(d);
  if (pr.q > 0.0) return pr.p1 / pr.q;
  if (pr.p1 > 0.0) return std::numeric_limits<double>::infinity();
  return std::nullopt;
}

/// Incoherent admixture of extra vacuum: p0 -> v + (1-v) p0, p_n -> (1-v) p_n.
inline PhotonDistribution vacuum_mix(const PhotonDistribution& d,
                                     double extra_vacuum) {
  if (!(extra_vacuum >= 0.0 && extra_vacuum < 1.0))
    throw DomainError("extra_vacuum must lie in [0, 1)");
  const double keep = 1.0 - extra_vacuum;
  std::vector<double> probs(d.probs().begin(), d.probs().end());
  for (double& p : probs) p *= keep;
  probs[0] += extra_vacuum;
  return validate(std::move(probs), d.tail_bound() * keep);
}

/// All single-distribution observables in one place.
struct ObservableSet {
  double mean_n = 0.0;
  std::optional<double> g2;
  double variance = 0.0;
  std::optional<double> mandel_q;
  double p0 = 0.0;
  double p1 = 0.0;
  double q_multi = 0.0;
  std::optional<double> n2;
  std::optional<double> g2_multi;
};

inline ObservableSet observables(const PhotonDistribution& d) {
  ObservableSet out;
  out.mean_n = mean_photon_number(d);
  out.g2 = g2_zero_delay(d);
  out.variance = photon_number_variance(d);
  out.mandel_q = mandel_q(d);
  const auto pr = projections(d);
  out.p0 = pr.p0;
  out.p1 = pr.p1;
  out.q_multi = pr.q;
  if (const auto multi = multi_photon_observables(d)) {
    out.n2 = multi->n2;
    out.g2_multi = multi->g2_multi;
  }
  return out;
}

/// Error bars on N and <a+^2 a^2> from the tail, placing all of it at K+1.
struct TailErrorBars {
  double mean_n = 0.0;
  double pair_moment = 0.0;
};

inline TailErrorBars tail_error_bars(const PhotonDistribution& d) {
  const double k1 = static_cast<double>(d.cutoff() + 1);
  return {k1 * d.tail_bound(), k1 * (k1 - 1.0) * d.tail_bound()};
}

}  // namespace sppcert
