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

// Parametric photon-number distributions: coherent (Poisson), thermal
// (geometric), Fock, a single photon with coherent background, and
// uniform samples on the probability simplex.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include "sppcert/distribution.hpp"
#include "sppcert/errors.hpp"
#include "sppcert/rng.hpp"

namespace sppcert {

inline constexpr double kDefaultTailCap = 1e-14;
inline constexpr double kMaxTailCap = 1e-6;
inline constexpr double kMaxCoherentMean = 700.0;
inline constexpr double kMaxThermalMean = 1e4;
inline constexpr std::size_t kMaxFockIndex = 1u << 20;

namespace detail {

inline void check_tail_cap(double tail_cap) {
  if (!(tail_cap > 0.0 && tail_cap <= kMaxTailCap))
    throw DomainError("tail_cap must lie in (0, 1e-6]");
}

inline void check_mean(double mean, double max_mean, const char* what) {
  if (!(mean >= 0.0 && mean <= max_mean))
    throw DomainError(std::string(what) + " mean photon number must lie in [0, " +
                      std::to_string(max_mean) + "]");
}

}  // namespace detail

/**
 * Poissonian weights e^{-N} N^n / n!, truncated at the smallest K whose
 * tail estimate is <= tail_cap.
 *
 * The tail is bounded by the geometric majorant
 * p_{K+1} / (1 - N/(K+2)), valid once K+2 > N.
 */
inline PhotonDistribution coherent(double mean_photons,
                                   double tail_cap = kDefaultTailCap) {
  detail::check_tail_cap(tail_cap);
  detail::check_mean(mean_photons, kMaxCoherentMean, "coherent");
  if (mean_photons == 0.0) return validate({1.0}, 0.0);

  std::vector<double> probs;
  double term = std::exp(-mean_photons);
  for (std::size_t n = 0;; ++n) {
    probs.push_back(term);
    const double next = term * mean_photons / static_cast<double>(n + 1);
    const double ratio = mean_photons / static_cast<double>(n + 2);
    if (ratio < 1.0) {
      const double tail = next / (1.0 - ratio);
      if (tail <= tail_cap) return validate(std::move(probs), tail);
    }
    term = next;
  }
}

/// Geometric weights N^n / (1+N)^{n+1}; the tail beyond K is r^{K+1}, r = N/(1+N).
inline PhotonDistribution thermal(double mean_photons,
                                  double tail_cap = kDefaultTailCap) {
  detail::check_tail_cap(tail_cap);
  detail::check_mean(mean_photons, kMaxThermalMean, "thermal");
  if (mean_photons == 0.0) return validate({1.0}, 0.0);

  const double r = mean_photons / (1.0 + mean_photons);
  std::vector<double> probs;
  double term = 1.0 / (1.0 + mean_photons);
  double tail = r;
  for (;;) {
    probs.push_back(term);
    if (tail <= tail_cap) return validate(std::move(probs), tail);
    term *= r;
    tail *= r;
  }
}

/// Point mass at photon number n.
inline PhotonDistribution fock(std::size_t n) {
  if (n > kMaxFockIndex) throw DomainError("Fock index too large");
  std::vector<double> probs(n + 1, 0.0);
  probs[n] = 1.0;
  return validate(std::move(probs), 0.0);
}

/// p1_tilde |1><1| + (1 - p1_tilde) |alpha><alpha| with |alpha|^2 = n_alpha.
inline PhotonDistribution qd_background(double p1_tilde, double n_alpha,
                                        double tail_cap = kDefaultTailCap) {
  if (!(p1_tilde >= 0.0 && p1_tilde <= 1.0))
    throw DomainError("p1_tilde must lie in [0, 1]");
  const auto background = coherent(n_alpha, tail_cap);
  const double weight = 1.0 - p1_tilde;
  std::vector<double> probs(std::max<std::size_t>(2, background.probs().size()), 0.0);
  for (std::size_t n = 0; n < background.probs().size(); ++n)
    probs[n] = weight * background[n];
  probs[1] += p1_tilde;
  return validate(std::move(probs), weight * background.tail_bound());
}

/**
 * Uniform sample from the simplex over {0..max_n}: max_n + 1 unit
 * exponentials normalized by their sum (a flat Dirichlet draw).
 */
inline PhotonDistribution random_truncated(std::size_t max_n, Rng& rng) {
  if (max_n < 1) throw DomainError("max_n must be at least 1");
  std::vector<double> probs(max_n + 1);
  double sum = 0.0;
  for (double& p : probs) {
    p = rng.unit_exponential();
    sum += p;
  }
  for (double& p : probs) p /= sum;
  return validate(std::move(probs), 0.0);
}

inline PhotonDistribution random_truncated(std::size_t max_n, std::uint64_t seed) {
  Rng rng(seed);
  return random_truncated(max_n, rng);
}

// FamilySpec: one alternative per family, field names match the JSON keys.

struct CoherentFamily {
  double mean_photons = 0.0;
};
struct ThermalFamily {
  double mean_photons = 0.0;
};
struct FockFamily {
  std::size_t n = 0;
};
struct QdBackgroundFamily {
  double p1_tilde = 0.0;
  double n_alpha = 0.0;
};
struct RandomFamily {
  std::size_t max_n = 1;
  std::uint64_t seed = 0;
};

using FamilySpec = std::variant<CoherentFamily, ThermalFamily, FockFamily,
                                QdBackgroundFamily, RandomFamily>;

/// JSON "kind" tag of a family.
inline std::string_view family_kind(const FamilySpec& spec) {
  struct Visitor {
    std::string_view operator()(const CoherentFamily&) const { return "coherent"; }
    std::string_view operator()(const ThermalFamily&) const { return "thermal"; }
    std::string_view operator()(const FockFamily&) const { return "fock"; }
    std::string_view operator()(const QdBackgroundFamily&) const { return "qd"; }
    std::string_view operator()(const RandomFamily&) const { return "random"; }
  };
  return std::visit(Visitor{}, spec);
}

inline PhotonDistribution build(const FamilySpec& spec,
                                double tail_cap = kDefaultTailCap) {
  return std::visit(
      [tail_cap](const auto& f) -> PhotonDistribution {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, CoherentFamily>) {
          return coherent(f.mean_photons, tail_cap);
        } else if constexpr (std::is_same_v<T, ThermalFamily>) {
          return thermal(f.mean_photons, tail_cap);
        } else if constexpr (std::is_same_v<T, FockFamily>) {
          return fock(f.n);
        } else if constexpr (std::is_same_v<T, QdBackgroundFamily>) {
          return qd_background(f.p1_tilde, f.n_alpha, tail_cap);
        } else {
          return random_truncated(f.max_n, f.seed);
        }
      },
      spec);
}

/// Name of the parameter a sweep varies by default for each family.
inline std::string_view default_sweep_parameter(const FamilySpec& spec) {
  struct Visitor {
    std::string_view operator()(const CoherentFamily&) const { return "mean_photons"; }
    std::string_view operator()(const ThermalFamily&) const { return "mean_photons"; }
    std::string_view operator()(const FockFamily&) const { return "n"; }
    std::string_view operator()(const QdBackgroundFamily&) const { return "n_alpha"; }
    std::string_view operator()(const RandomFamily&) const { return "seed"; }
  };
  return std::visit(Visitor{}, spec);
}

/// Copy of spec with the named parameter replaced. Integer parameters must
/// receive non-negative integral values.
inline FamilySpec with_parameter(FamilySpec spec, std::string_view name,
                                 double value) {
  auto as_index = [&](double v) -> std::size_t {
    if (!(v >= 0.0) || std::floor(v) != v || v > 1e18)
      throw DomainError("parameter '" + std::string(name) +
                        "' needs a non-negative integer");
    return static_cast<std::size_t>(v);
  };
  auto unknown = [&]() {
    return DomainError("family '" + std::string(family_kind(spec)) +
                       "' has no parameter '" + std::string(name) + "'");
  };
  std::visit(
      [&](auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, CoherentFamily> ||
                      std::is_same_v<T, ThermalFamily>) {
          if (name != "mean_photons") throw unknown();
          f.mean_photons = value;
        } else if constexpr (std::is_same_v<T, FockFamily>) {
          if (name != "n") throw unknown();
          f.n = as_index(value);
        } else if constexpr (std::is_same_v<T, QdBackgroundFamily>) {
          if (name == "p1_tilde") f.p1_tilde = value;
          else if (name == "n_alpha") f.n_alpha = value;
          else throw unknown();
        } else {
          if (name == "max_n") f.max_n = as_index(value);
          else if (name == "seed") f.seed = as_index(value);
          else throw unknown();
        }
      },
      spec);
  return spec;
}

}  // namespace sppcert
