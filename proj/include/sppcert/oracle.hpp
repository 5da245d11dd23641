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

// Brute-force verification of every bound against exact quantities of
// sampled or constructed states.
//
// exact_quantities() is written against the raw probability vector on
// purpose and must not call into bounds.hpp (nor reuse the distribution.hpp
// observable helpers), so a formula error cannot cancel on both sides.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sppcert/bounds.hpp"
#include "sppcert/distribution.hpp"
#include "sppcert/families.hpp"
#include "sppcert/rng.hpp"

namespace sppcert::oracle {

/// Violations below this (scaled) slack are failures; above it, noise.
inline constexpr double kViolationSlack = 1e-10;
inline constexpr std::size_t kMaxCounterexamples = 16;
inline constexpr std::size_t kDefaultSoundnessMaxN = 6;
inline constexpr std::size_t kDefaultInclusionMaxN = 8;

/// Every observable by direct summation over p_n.
inline ObservableSet exact_quantities(const PhotonDistribution& d) {
  const auto p = d.probs();
  double s1 = 0.0, pairs = 0.0, sq = 0.0, s1_multi = 0.0;
  for (std::size_t n = 0; n < p.size(); ++n) {
    const double k = static_cast<double>(n);
    s1 += k * p[n];
    pairs += k * (k - 1.0) * p[n];
    if (n >= 2) {
      sq += p[n];
      s1_multi += k * p[n];
    }
  }

  ObservableSet out;
  out.mean_n = s1;
  out.p0 = p[0];
  out.p1 = p.size() > 1 ? p[1] : 0.0;
  out.q_multi = sq;
  double var = 0.0;
  for (std::size_t n = 0; n < p.size(); ++n) {
    const double dev = static_cast<double>(n) - s1;
    var += dev * dev * p[n];
  }
  out.variance = var;
  if (s1 > 0.0) {
    out.g2 = pairs / (s1 * s1);
    out.mandel_q = var / s1 - 1.0;
  }
  if (sq > 0.0) {
    const double n2 = s1_multi / sq;
    out.n2 = n2;
    out.g2_multi = pairs / (sq * n2 * n2);
  }
  return out;
}

struct Counterexample {
  std::uint64_t trial = 0;
  std::string check;
  double margin = 0.0;
  std::vector<double> probs;
  double tail_bound = 0.0;
  std::map<std::string, double> values;
};

struct VerificationReport {
  std::string suite;
  std::uint64_t trials = 0;
  std::uint64_t violations = 0;
  /// Checks that failed by less than kViolationSlack.
  std::uint64_t noise = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
  std::uint64_t seed = 0;
  std::vector<Counterexample> counterexamples;

  bool passed() const { return violations == 0; }
};

namespace detail {

inline double scale_of(double x) { return std::max(1.0, std::abs(x)); }

class Recorder {
 public:
  Recorder(std::string suite, std::uint64_t seed) {
    report_.suite = std::move(suite);
    report_.seed = seed;
  }

  void begin_trial(std::uint64_t trial, const PhotonDistribution* d) {
    trial_ = trial;
    state_ = d;
    ++report_.trials;
  }

  /// margin >= 0 means the check holds.
  void check(const char* name, double margin, std::map<std::string, double> values = {}) {
    if (std::isnan(margin)) margin = -std::numeric_limits<double>::infinity();
    report_.worst_margin = std::min(report_.worst_margin, margin);
    if (margin >= 0.0) return;
    if (margin >= -kViolationSlack) {
      ++report_.noise;
      return;
    }
    ++report_.violations;
    if (report_.counterexamples.size() < kMaxCounterexamples) {
      Counterexample c;
      c.trial = trial_;
      c.check = name;
      c.margin = margin;
      if (state_) {
        c.probs.assign(state_->probs().begin(), state_->probs().end());
        c.tail_bound = state_->tail_bound();
      }
      c.values = std::move(values);
      report_.counterexamples.push_back(std::move(c));
    }
  }

  /// Boolean checks (set inclusions) count as violations without a margin.
  void require(const char* name, bool ok, double margin, std::map<std::string, double> values = {}) {
    if (ok) {
      report_.worst_margin = std::min(report_.worst_margin, margin);
      return;
    }
    check(name, -std::numeric_limits<double>::infinity(), std::move(values));
  }

  VerificationReport finish() && {
    if (std::isinf(report_.worst_margin) && report_.worst_margin > 0.0)
      report_.worst_margin = 0.0;
    return std::move(report_);
  }

 private:
  VerificationReport report_;
  std::uint64_t trial_ = 0;
  const PhotonDistribution* state_ = nullptr;
};

// lower <= exact, scaled by the size of exact.
inline double lower_margin(double lower, double exact) {
  if (std::isinf(exact) && exact > 0) return 0.0;
  if (std::isinf(lower)) return -std::numeric_limits<double>::infinity();
  return (exact - lower) / scale_of(exact);
}

inline double equality_margin(double a, double b) {
  if (a == b) return 0.0;
  return -std::abs(a - b) / scale_of(b);
}

inline void check_report(Recorder& rec, const BoundReport& r, const ObservableSet& ex,
                         const char* tag) {
  const std::map<std::string, double> ctx = {
      {"g2", *ex.g2}, {"mean_n", ex.mean_n}, {"p0", ex.p0}, {"p1", ex.p1}, {"q", ex.q_multi},
      {"spp_lower", r.spp_lower}, {"spp_upper", r.spp_upper}, {"smppr_lower", r.smppr_lower}};
  const std::string t(tag);
  rec.check((t + ":spp_lower").c_str(), lower_margin(r.spp_lower, ex.p1), ctx);
  rec.check((t + ":spp_upper").c_str(), (r.spp_upper - ex.p1) / scale_of(ex.p1), ctx);
  if (ex.q_multi > 0.0)
    rec.check((t + ":smppr_lower").c_str(), lower_margin(r.smppr_lower, ex.p1 / ex.q_multi), ctx);
  if (r.q_upper) rec.check((t + ":q_upper").c_str(), *r.q_upper - ex.q_multi, ctx);
  if (r.p0_plus_p1_lower)
    rec.check((t + ":p0_plus_p1_lower").c_str(), ex.p0 + ex.p1 - *r.p0_plus_p1_lower, ctx);
}

}  // namespace detail

inline PhotonDistribution trial_state(std::size_t max_n, std::uint64_t seed,
                                      std::uint64_t trial) {
  return random_truncated(max_n, derive_trial_seed(seed, trial));
}

/**
 * Samples random states and checks that every bound produced by analyze()
 * (for the input combinations g2+N+p0, g2+N, g2+p0, g2) brackets the exact
 * value, along with the exact decomposition identity for p1. For
 * max_n <= 2 the photon-based bounds must additionally be equalities.
 */
inline VerificationReport run_soundness_suite(std::uint64_t trials, std::size_t max_n,
                                              std::uint64_t seed) {
  detail::Recorder rec("soundness", seed);
  for (std::uint64_t t = 0; t < trials; ++t) {
    const auto d = trial_state(max_n, seed, t);
    rec.begin_trial(t, &d);
    const auto ex = exact_quantities(d);
    if (!ex.g2) continue;
    const double g2 = *ex.g2;

    detail::check_report(rec, analyze({g2, ex.mean_n, ex.p0}), ex, "full");
    detail::check_report(rec, analyze({g2, ex.mean_n, std::nullopt}), ex, "photon");
    detail::check_report(rec, analyze({g2, std::nullopt, ex.p0}), ex, "vacuum");
    detail::check_report(rec, analyze({g2, std::nullopt, std::nullopt}), ex, "g2_only");

    if (ex.n2) {
      const double p1 = exact_p1_from_decomposition(ex.mean_n, g2, *ex.n2, *ex.g2_multi);
      rec.check("decomposition_identity", detail::equality_margin(p1, ex.p1),
                {{"p1", ex.p1}, {"reconstructed", p1}});
    }
    if (max_n <= 2 && ex.q_multi > 0.0) {
      const double gn = ex.mean_n * g2;
      rec.check("exact_spp_lower", detail::equality_margin(spp_bounds_photon(g2, ex.mean_n).lower, ex.p1));
      rec.check("exact_smppr_lower",
                detail::equality_margin(smppr_lower_photon(gn), ex.p1 / ex.q_multi));
    }
  }
  return std::move(rec).finish();
}

/// States supported on {0, 1, 2}: photon-based SPP and ratio bounds are exact.
inline VerificationReport run_exactness_suite(std::uint64_t trials, std::uint64_t seed) {
  detail::Recorder rec("exactness", seed);
  for (std::uint64_t t = 0; t < trials; ++t) {
    const auto d = trial_state(2, seed, t);
    rec.begin_trial(t, &d);
    const auto ex = exact_quantities(d);
    if (!ex.g2 || ex.q_multi <= 0.0) continue;
    const double gn = ex.mean_n * *ex.g2;
    const std::map<std::string, double> ctx = {{"g2", *ex.g2}, {"mean_n", ex.mean_n}, {"p1", ex.p1}};
    rec.check("spp_lower_exact",
              detail::equality_margin(spp_bounds_photon(*ex.g2, ex.mean_n).lower, ex.p1), ctx);
    rec.check("smppr_lower_exact",
              detail::equality_margin(smppr_lower_photon(gn), ex.p1 / ex.q_multi), ctx);
  }
  return std::move(rec).finish();
}

/// M1 => M2 => M3, and no state with (1-p0) g2 < 1/2 but N g2 >= 1.
inline VerificationReport run_set_inclusion_suite(std::uint64_t trials, std::size_t max_n,
                                                  std::uint64_t seed) {
  detail::Recorder rec("set-inclusion", seed);
  for (std::uint64_t t = 0; t < trials; ++t) {
    const auto d = trial_state(max_n, seed, t);
    rec.begin_trial(t, &d);
    const auto ex = exact_quantities(d);
    if (!ex.g2) continue;
    const double g2 = *ex.g2;
    const double gn = ex.mean_n * g2;
    const double g0 = (1.0 - ex.p0) * g2;
    const auto sets = classify_sets(g2, ex.mean_n);
    const std::map<std::string, double> ctx = {{"g2", g2}, {"mean_n", ex.mean_n}, {"p0", ex.p0}};
    if (sets.m1) rec.require("m1_implies_m2", sets.m2, 1.0 - gn, ctx);
    if (sets.m2) rec.require("m2_implies_m3", sets.m3, 2.0 - ex.mean_n, ctx);
    if (g0 < 0.5) rec.require("vacuum_criterion_implies_photon_criterion", gn < 1.0, 1.0 - gn, ctx);
  }
  return std::move(rec).finish();
}

/// Two-level states mixing |floor N> and |floor N + 1> sit exactly on the
/// g2 floor at every N in the grid.
inline VerificationReport run_saturation_suite(std::span<const double> n_grid) {
  detail::Recorder rec("saturation", 0);
  std::uint64_t t = 0;
  for (double n : n_grid) {
    if (!(n > 0.0)) throw DomainError("saturation grid values must be > 0");
    const auto f = static_cast<std::size_t>(n);  // truncation == floor for n > 0
    std::vector<double> probs(f + 2, 0.0);
    probs[f] = static_cast<double>(f) + 1.0 - n;
    probs[f + 1] = n - static_cast<double>(f);
    const auto d = validate(std::move(probs));
    rec.begin_trial(t++, &d);
    const auto ex = exact_quantities(d);
    const double bound = zubizarreta_lower_g2(n);
    rec.check("saturates_g2_floor", detail::equality_margin(*ex.g2, bound),
              {{"N", n}, {"g2", *ex.g2}, {"bound", bound}});
  }
  return std::move(rec).finish();
}

/// Random states never undercut the g2 floor at their own N.
inline VerificationReport run_g2_floor_suite(std::uint64_t trials, std::size_t max_n,
                                             std::uint64_t seed) {
  detail::Recorder rec("g2-floor", seed);
  for (std::uint64_t t = 0; t < trials; ++t) {
    const auto d = trial_state(max_n, seed, t);
    rec.begin_trial(t, &d);
    const auto ex = exact_quantities(d);
    if (!ex.g2) continue;
    const double bound = zubizarreta_lower_g2(ex.mean_n);
    rec.check("g2_above_floor", *ex.g2 - bound, {{"N", ex.mean_n}, {"g2", *ex.g2}, {"bound", bound}});
  }
  return std::move(rec).finish();
}

/// A family and the values its sweep parameter takes.
struct FamilyGrid {
  FamilySpec base;
  std::string parameter;
  std::vector<double> values;
};

/// Evenly spaced (0, upper] with the given step, computed as i * step.
inline std::vector<double> open_grid(double upper, double step) {
  std::vector<double> g;
  const auto count = static_cast<std::size_t>(std::llround(upper / step));
  for (std::size_t i = 1; i <= count; ++i) g.push_back(static_cast<double>(i) * step);
  return g;
}

/// Coherent N in (0, 1] step 0.005 and thermal N in (0, 1/2] step 0.0025.
inline std::vector<FamilyGrid> default_comparison_families() {
  return {{CoherentFamily{}, "mean_photons", open_grid(1.0, 0.005)},
          {ThermalFamily{}, "mean_photons", open_grid(0.5, 0.0025)}};
}

inline constexpr double kLowExcitation = 0.1;

/**
 * Orderings between the vacuum- and photon-based criteria:
 *   (a) photon-based ratio bound >= vacuum-based ratio bound
 *   (b) 1 - p0 <= N
 *   (c) for N <= 0.1, vacuum-based SPP lower >= photon-based SPP lower
 * States without multi-photon weight are skipped.
 */
inline VerificationReport run_comparison_suite(std::span<const FamilyGrid> families,
                                               double tail_cap = kDefaultTailCap) {
  detail::Recorder rec("comparison", 0);
  std::uint64_t t = 0;
  for (const auto& fam : families) {
    for (double v : fam.values) {
      const auto d = build(with_parameter(fam.base, fam.parameter, v), tail_cap);
      rec.begin_trial(t++, &d);
      const auto ex = exact_quantities(d);
      if (!ex.g2 || ex.q_multi <= 0.0) continue;
      const double g2 = *ex.g2;
      const double g0 = (1.0 - ex.p0) * g2;
      const double gn = ex.mean_n * g2;
      const std::map<std::string, double> ctx = {{"param", v}, {"g2", g2}, {"mean_n", ex.mean_n}, {"p0", ex.p0}};

      const double ratio_vac = g0 < 0.5 ? smppr_lower_vacuum(g0) : 0.0;
      const double ratio_ph = gn <= 1.0 ? smppr_lower_photon(gn) : 0.0;
      if (!(std::isinf(ratio_vac) && std::isinf(ratio_ph)))
        rec.check("photon_ratio_bound_tighter", (ratio_ph - ratio_vac) / detail::scale_of(ratio_ph), ctx);

      rec.check("vacuum_upper_tighter", ex.mean_n - (1.0 - ex.p0), ctx);

      if (ex.mean_n <= kLowExcitation) {
        const double lv = spp_bounds_vacuum(g2, ex.p0).lower;
        const double lp = spp_bounds_photon(g2, ex.mean_n).lower;
        rec.check("vacuum_lower_tighter_at_low_excitation", lv - lp, ctx);
      }
    }
  }
  return std::move(rec).finish();
}

/**
 * Bisection for the crossing of a monotone function f through level on
 * [lo, hi]. f(lo) and f(hi) must straddle the level.
 */
inline double locate_crossing(const std::function<double(double)>& f, double level,
                              double lo, double hi, double tol = 1e-12) {
  double flo = f(lo) - level;
  const double fhi = f(hi) - level;
  if ((flo < 0.0) == (fhi < 0.0)) throw DomainError("bracket does not straddle the level");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid) - level;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace sppcert::oracle
