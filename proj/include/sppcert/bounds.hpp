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

// Certified bounds on the single-photon projection p1 and on the ratio
// p1/q (q: total weight of n >= 2) from g2 together with either the
// vacuum weight p0, the mean photon number N, or nothing else.
//
// Two effective correlation functions drive everything:
//   vacuum-based  g0 = (1 - p0) g2    informative while g0 < 1/2
//   photon-based  gN = N g2 = N + Q   informative while gN < 1

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include "sppcert/errors.hpp"

namespace sppcert {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

namespace detail {

inline void require_g2(double g2) {
  if (!(g2 >= 0.0) || !std::isfinite(g2)) throw DomainError("g2 must be finite and >= 0");
}
inline void require_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError(std::string(name) + " must lie in [0, 1]");
}
inline void require_mean(double n) {
  if (!(n >= 0.0) || !std::isfinite(n)) throw DomainError("mean_n must be finite and >= 0");
}

}  // namespace detail

/**
 * Smallest g2 reachable at mean photon number N:
 *   floor(N) (2N - floor(N) - 1) / N^2.
 *
 * Uses the standard floor. At integer N = m the alternative convention
 * (largest integer strictly below N) gives (m-1)(m)/m^2 as well, so both
 * agree everywhere and the bound stays continuous.
 */
inline double zubizarreta_lower_g2(double mean_n) {
  if (!(mean_n > 0.0) || !std::isfinite(mean_n))
    throw DomainError("mean_n must be finite and > 0");
  const double f = std::floor(mean_n);
  return f * (2.0 * mean_n - f - 1.0) / (mean_n * mean_n);
}

inline double effective_g2_vacuum(double g2, double p0) {
  detail::require_g2(g2);
  detail::require_probability(p0, "p0");
  return (1.0 - p0) * g2;
}

inline double effective_g2_photon(double g2, double mean_n) {
  detail::require_g2(g2);
  detail::require_mean(mean_n);
  return mean_n * g2;
}

/**
 * p1/q >= 2 sqrt(1 - 2 g0) / (1 - sqrt(1 - 2 g0)).
 *
 * Evaluated as s (1 + s) / g0 with s = sqrt(1 - 2 g0), which is the same
 * expression without the cancellation in 1 - s at small g0.
 */
inline double smppr_lower_vacuum(double eff_g2) {
  if (!(eff_g2 >= 0.0)) throw DomainError("effective g2 must be >= 0");
  if (eff_g2 >= 0.5) throw NotApplicable("vacuum-based ratio bound needs (1-p0) g2 < 1/2");
  if (eff_g2 == 0.0) return kInfinity;
  const double s = std::sqrt(1.0 - 2.0 * eff_g2);
  return s * (1.0 + s) / eff_g2;
}

/// p1/q >= 2 (1/gN - 1).
inline double smppr_lower_photon(double eff_g2) {
  if (!(eff_g2 >= 0.0)) throw DomainError("effective g2 must be >= 0");
  if (eff_g2 > 1.0) throw NotApplicable("photon-based ratio bound needs N g2 <= 1");
  if (eff_g2 == 0.0) return kInfinity;
  return 2.0 * (1.0 / eff_g2 - 1.0);
}

enum class ThresholdCriterion { Vacuum, Photon };

/**
 * Largest effective g2 that still guarantees p1/q >= theta.
 *   Vacuum: 2 (theta + 1) / (theta + 2)^2
 *   Photon: 2 (theta + 2) / (theta + 2)^2 = 1 / (theta/2 + 1)
 */
inline double g2_threshold_for_smppr(double theta, ThresholdCriterion criterion) {
  if (!(theta >= 0.0)) throw DomainError("theta must be >= 0");
  if (std::isinf(theta)) return 0.0;
  const double t2 = theta + 2.0;
  switch (criterion) {
    case ThresholdCriterion::Vacuum:
      return 2.0 * (theta + 1.0) / (t2 * t2);
    case ThresholdCriterion::Photon:
      return 2.0 / t2;
  }
  return 0.0;
}

struct SppBounds {
  double lower = 0.0;
  double upper = 1.0;
  /// false when the criterion is out of range and lower carries no information.
  bool applicable = false;
};

/// (1 - p0) >= p1 >= (1 - p0) 2s / (1 + s), s = sqrt(1 - 2 (1 - p0) g2).
inline SppBounds spp_bounds_vacuum(double g2, double p0) {
  const double g0 = effective_g2_vacuum(g2, p0);
  SppBounds out;
  out.upper = 1.0 - p0;
  if (g0 < 0.5) {
    const double s = std::sqrt(1.0 - 2.0 * g0);
    out.lower = out.upper * 2.0 * s / (1.0 + s);
    out.applicable = true;
  }
  return out;
}

/// N >= p1 >= N (1 - N g2), both clamped to [0, 1].
inline SppBounds spp_bounds_photon(double g2, double mean_n) {
  const double gn = effective_g2_photon(g2, mean_n);
  SppBounds out;
  out.upper = std::min(mean_n, 1.0);
  if (gn < 1.0) {
    out.lower = std::min(1.0, mean_n * (1.0 - gn));
    out.applicable = true;
  }
  return out;
}

struct MultiphotonBounds {
  double q_upper = 1.0;
  double p0_plus_p1_lower = 0.0;
};

/// q <= gN / (2 - gN) and p0 + p1 >= 2 (1 - gN) / (2 - gN).
inline MultiphotonBounds multiphoton_upper_and_p0p1_lower(double eff_g2_photon) {
  if (!(eff_g2_photon >= 0.0)) throw DomainError("effective g2 must be >= 0");
  if (eff_g2_photon >= 1.0) throw NotApplicable("multi-photon bound needs N g2 < 1");
  const double denom = 2.0 - eff_g2_photon;
  return {eff_g2_photon / denom, 2.0 * (1.0 - eff_g2_photon) / denom};
}

struct FallbackBounds {
  double smppr_lower = 0.0;
  double p0_plus_p1_lower = 0.0;
  /// p1 >= N * spp_lower_factor.
  double spp_lower_factor = 0.0;
  /// Filled when N was supplied.
  std::optional<double> spp_lower;
};

/// g2-only bounds, obtained by inserting N = 2 (the largest N with g2 <= 1/2).
inline FallbackBounds fallback_bounds_g2_only(double g2,
                                              std::optional<double> mean_n = std::nullopt) {
  detail::require_g2(g2);
  if (g2 >= 0.5) throw NotApplicable("g2-only bounds need g2 < 1/2");
  FallbackBounds out;
  out.smppr_lower = g2 == 0.0 ? kInfinity : 1.0 / g2 - 2.0;
  out.p0_plus_p1_lower = (1.0 - 2.0 * g2) / (1.0 - g2);
  out.spp_lower_factor = 1.0 - 2.0 * g2;
  if (mean_n) {
    detail::require_mean(*mean_n);
    out.spp_lower = std::min(1.0, *mean_n * out.spp_lower_factor);
  }
  return out;
}

/// M1: g2 < 1/2, M2: N g2 < 1, M3: N < 2.
struct SetMembership {
  bool m1 = false;
  bool m2 = false;
  bool m3 = false;
};

inline SetMembership classify_sets(double g2, double mean_n) {
  return {g2 < 0.5, mean_n * g2 < 1.0, mean_n < 2.0};
}

/// p1 = N (1 - N g2 / (n2 g2_multi)), exact for any diagonal state.
inline double exact_p1_from_decomposition(double mean_n, double g2, double n2,
                                          double g2_multi) {
  const double denom = n2 * g2_multi;
  if (denom == 0.0 || !std::isfinite(denom))
    throw DomainError("n2 * g2_multi must be finite and nonzero");
  return mean_n * (1.0 - mean_n * g2 / denom);
}

// ---------------------------------------------------------------------------
// Dispatcher

/// Measured observables handed to analyze(). g2_undefined marks the vacuum,
/// where g2 is 0/0 rather than missing.
struct ObservableInput {
  std::optional<double> g2;
  std::optional<double> mean_n;
  std::optional<double> p0;
  bool g2_undefined = false;
};

enum class Criterion { VacuumBased, PhotonBased, FallbackG2Only, NotApplicable };

inline std::string_view to_string(Criterion c) {
  switch (c) {
    case Criterion::VacuumBased: return "VacuumBased";
    case Criterion::PhotonBased: return "PhotonBased";
    case Criterion::FallbackG2Only: return "FallbackG2Only";
    case Criterion::NotApplicable: return "NotApplicable";
  }
  return "NotApplicable";
}

struct BoundReport {
  std::optional<double> g2;
  std::optional<double> mean_n;
  std::optional<double> p0;
  std::optional<double> eff_g2_vacuum;
  std::optional<double> eff_g2_photon;
  double spp_lower = 0.0;
  double spp_upper = 1.0;
  /// May be kInfinity.
  double smppr_lower = 0.0;
  std::optional<double> q_upper;
  std::optional<double> p0_plus_p1_lower;
  bool set_m1 = false;
  std::optional<bool> set_m2;
  std::optional<bool> set_m3;
  Criterion criterion_used = Criterion::NotApplicable;
  /// Some raw bound fell outside its range and was clamped.
  bool clamped = false;
  /// Why no criterion applies; empty otherwise.
  std::optional<std::string> not_applicable_reason;

  bool operator==(const BoundReport&) const = default;
};

namespace detail {

inline BoundReport vacuum_report(const ObservableInput& in) {
  if (in.mean_n && *in.mean_n != 0.0)
    throw DomainError("undefined g2 requires mean_n = 0");
  if (in.p0 && *in.p0 != 1.0) throw DomainError("undefined g2 requires p0 = 1");
  BoundReport r;
  r.mean_n = in.mean_n;
  r.p0 = in.p0;
  r.spp_lower = 0.0;
  r.spp_upper = 0.0;
  r.smppr_lower = 0.0;
  r.q_upper = 0.0;
  r.p0_plus_p1_lower = 1.0;
  r.set_m1 = false;
  r.set_m3 = true;
  r.criterion_used = Criterion::NotApplicable;
  r.not_applicable_reason = "vacuum state: g2 undefined, no photons present";
  return r;
}

// Intersects a lower bound into the report, tracking clamping.
inline void raise_lower(BoundReport& r, double raw) {
  if (raw > 1.0) r.clamped = true;
  r.spp_lower = std::max(r.spp_lower, std::clamp(raw, 0.0, 1.0));
}

inline void lower_upper(BoundReport& r, double raw) {
  if (raw > 1.0) r.clamped = true;
  r.spp_upper = std::min(r.spp_upper, std::clamp(raw, 0.0, 1.0));
}

}  // namespace detail

/**
 * Evaluates every bound the supplied observables allow.
 *
 * With p0 the vacuum-based bounds are used, with N the photon-based ones,
 * and with both the two intervals are intersected. The g2-only fallback is
 * always folded in when g2 < 1/2. criterion_used names the basis giving
 * the larger SPP lower bound (ties go to the larger ratio bound, then to
 * PhotonBased).
 *
 * Throws InsufficientData without g2, DomainError on out-of-range or
 * mutually inconsistent inputs.
 */
inline BoundReport analyze(const ObservableInput& in) {
  if (in.g2_undefined) return detail::vacuum_report(in);
  if (!in.g2) throw InsufficientData("g2 is required");

  const double g2 = *in.g2;
  detail::require_g2(g2);
  if (in.p0) detail::require_probability(*in.p0, "p0");
  if (in.mean_n) detail::require_mean(*in.mean_n);

  BoundReport r;
  r.g2 = g2;
  r.mean_n = in.mean_n;
  r.p0 = in.p0;
  r.spp_lower = 0.0;
  r.spp_upper = 1.0;
  r.smppr_lower = 0.0;

  std::optional<double> q_upper;
  std::optional<double> p0p1_lower;
  auto tighten_q = [&](double v) { q_upper = q_upper ? std::min(*q_upper, v) : v; };
  auto tighten_p0p1 = [&](double v) { p0p1_lower = p0p1_lower ? std::max(*p0p1_lower, v) : v; };

  bool vacuum_ok = false;
  bool photon_ok = false;
  double vacuum_lower = 0.0, photon_lower = 0.0;
  double vacuum_ratio = 0.0, photon_ratio = 0.0;

  if (in.p0) {
    const double g0 = effective_g2_vacuum(g2, *in.p0);
    r.eff_g2_vacuum = g0;
    const auto b = spp_bounds_vacuum(g2, *in.p0);
    detail::lower_upper(r, b.upper);
    if (b.applicable) {
      vacuum_ok = true;
      vacuum_lower = b.lower;
      vacuum_ratio = smppr_lower_vacuum(g0);
      detail::raise_lower(r, b.lower);
      r.smppr_lower = std::max(r.smppr_lower, vacuum_ratio);
    }
  } else if (g2 < 0.5) {
    // Unknown vacuum weight: the bound is monotone in g0 <= g2.
    r.smppr_lower = std::max(r.smppr_lower, smppr_lower_vacuum(g2));
  }

  if (in.mean_n) {
    const double gn = effective_g2_photon(g2, *in.mean_n);
    r.eff_g2_photon = gn;
    const auto b = spp_bounds_photon(g2, *in.mean_n);
    detail::lower_upper(r, *in.mean_n);
    if (b.applicable) {
      photon_ok = true;
      const double raw = *in.mean_n * (1.0 - gn);
      photon_lower = std::clamp(raw, 0.0, 1.0);
      detail::raise_lower(r, raw);
      photon_ratio = smppr_lower_photon(gn);
      r.smppr_lower = std::max(r.smppr_lower, photon_ratio);
      const auto m = multiphoton_upper_and_p0p1_lower(gn);
      tighten_q(m.q_upper);
      tighten_p0p1(m.p0_plus_p1_lower);
    }
    const auto sets = classify_sets(g2, *in.mean_n);
    r.set_m2 = sets.m2;
    r.set_m3 = sets.m3;
  }
  r.set_m1 = g2 < 0.5;

  if (g2 < 0.5) {
    const auto fb = fallback_bounds_g2_only(g2, in.mean_n);
    r.smppr_lower = std::max(r.smppr_lower, fb.smppr_lower);
    tighten_p0p1(fb.p0_plus_p1_lower);
    tighten_q(1.0 - fb.p0_plus_p1_lower);
    if (fb.spp_lower) detail::raise_lower(r, *fb.spp_lower);
  }

  constexpr double kConsistencySlack = 1e-12;
  if (r.spp_lower > r.spp_upper) {
    if (r.spp_lower > r.spp_upper + kConsistencySlack)
      throw DomainError("inconsistent observables: SPP lower bound exceeds upper bound");
    r.spp_lower = r.spp_upper;
  }

  if (in.p0) {
    // Completeness: q = 1 - p0 - p1 with p1 >= spp_lower.
    tighten_p0p1(std::min(1.0, *in.p0 + r.spp_lower));
    tighten_q(std::max(0.0, 1.0 - *in.p0 - r.spp_lower));
  }
  r.q_upper = q_upper;
  r.p0_plus_p1_lower = p0p1_lower;

  if (vacuum_ok && photon_ok) {
    if (vacuum_lower != photon_lower)
      r.criterion_used = vacuum_lower > photon_lower ? Criterion::VacuumBased
                                                     : Criterion::PhotonBased;
    else
      r.criterion_used = vacuum_ratio > photon_ratio ? Criterion::VacuumBased
                                                     : Criterion::PhotonBased;
  } else if (vacuum_ok) {
    r.criterion_used = Criterion::VacuumBased;
  } else if (photon_ok) {
    r.criterion_used = Criterion::PhotonBased;
  } else if (g2 < 0.5) {
    r.criterion_used = Criterion::FallbackG2Only;
  } else {
    r.criterion_used = Criterion::NotApplicable;
    std::string why = "g2 >= 1/2";
    if (r.eff_g2_vacuum) why += ", (1-p0) g2 >= 1/2";
    if (r.eff_g2_photon) why += ", N g2 >= 1";
    r.not_applicable_reason = why;
  }
  return r;
}

}  // namespace sppcert
