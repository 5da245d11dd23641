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

// Quantum-dot emission with a coherent laser background,
//   rho = p1_tilde |1><1| + (1 - p1_tilde) |alpha><alpha|,  N_alpha = |alpha|^2,
// for which N = p1_tilde + a N_alpha and g2 = a N_alpha^2 / N^2 with
// a = 1 - p1_tilde.

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "sppcert/bounds.hpp"
#include "sppcert/distribution.hpp"
#include "sppcert/errors.hpp"
#include "sppcert/families.hpp"

namespace sppcert::qd {

inline constexpr double kResidualTolerance = 1e-10;

namespace detail {
inline void require_p1_tilde(double p1_tilde) {
  if (!(p1_tilde >= 0.0 && p1_tilde < 1.0))
    throw DomainError("p1_tilde must lie in [0, 1)");
}

// g2 divides the truncated pair moment by N^2, so at weak backgrounds the
// probability cap is tightened by N_alpha^2 before moments are taken.
inline double moment_tail_cap(double tail_cap, double n_alpha) {
  return std::max(tail_cap * std::min(1.0, n_alpha * n_alpha), 1e-300);
}
}  // namespace detail

/// Largest background N_alpha keeping g2 < 1/2:
/// p/(1+p) (1 + sqrt(2/(1-p))).
inline double background_limit_g2_criterion(double p1_tilde) {
  detail::require_p1_tilde(p1_tilde);
  return p1_tilde / (1.0 + p1_tilde) * (1.0 + std::sqrt(2.0 / (1.0 - p1_tilde)));
}

/// Largest background N_alpha keeping N g2 < 1:
/// (1 + sqrt((1 + 3p)/(1 - p))) / 2.
inline double background_limit_photon_criterion(double p1_tilde) {
  detail::require_p1_tilde(p1_tilde);
  return 0.5 * (1.0 + std::sqrt((1.0 + 3.0 * p1_tilde) / (1.0 - p1_tilde)));
}

/// Full single-photon weight p1_tilde + a N_alpha exp(-N_alpha).
inline double exact_spp(double p1_tilde, double n_alpha) {
  return p1_tilde + (1.0 - p1_tilde) * n_alpha * std::exp(-n_alpha);
}

/// Vacuum weight a exp(-N_alpha).
inline double exact_vacuum(double p1_tilde, double n_alpha) {
  return (1.0 - p1_tilde) * std::exp(-n_alpha);
}

struct BackgroundSolution {
  double n_alpha = 0.0;
  /// p1_tilde = 0: the only root is N_alpha = 0, i.e. the vacuum.
  bool degenerate = false;
};

/**
 * Background N_alpha at which the mixture reaches g2 = target.
 *
 * g2(x) = a x^2 / (p + a x)^2 grows monotonically from 0 to 1/a, so a root
 * exists iff a * target < 1. Taking square roots of
 * a x^2 = t (p + a x)^2 gives the positive root of the quadratic
 * (a - t a^2) x^2 - 2 t a p x - t p^2 = 0 directly:
 *
 *   x = sqrt(t) p / (sqrt(a) (1 - sqrt(a t))).
 *
 * The state is rebuilt and its g2 must match target to 1e-10, otherwise
 * NoSolution is thrown.
 */
inline BackgroundSolution solve_background_for_g2_target(
    double p1_tilde, double target_g2, double tail_cap = kDefaultTailCap) {
  detail::require_p1_tilde(p1_tilde);
  if (!(target_g2 > 0.0) || !std::isfinite(target_g2))
    throw DomainError("target_g2 must be finite and > 0");
  if (p1_tilde == 0.0) return {0.0, true};

  const double a = 1.0 - p1_tilde;
  const double sat = std::sqrt(a * target_g2);
  if (sat >= 1.0)
    throw NoSolution("g2 of the mixture never reaches the target (needs (1-p1_tilde) g2 < 1)");
  const double x = std::sqrt(target_g2) * p1_tilde / (std::sqrt(a) * (1.0 - sat));
  if (!(x > 0.0) || !std::isfinite(x)) throw NoSolution("no positive background root");

  const auto state = qd_background(p1_tilde, x, detail::moment_tail_cap(tail_cap, x));
  const auto g2 = g2_zero_delay(state);
  if (!g2 || std::abs(*g2 - target_g2) > kResidualTolerance)
    throw NoSolution("background root failed the g2 residual check");
  return {x, false};
}

struct QdScenarioRecord {
  double p1_tilde = 0.0;
  double n_alpha = 0.0;
  double g2 = 0.0;
  double mean_n = 0.0;
  double exact_p1 = 0.0;
  double lower_photon = 0.0;
  double lower_vacuum = 0.0;
  bool degenerate = false;
};

/// One scenario row: background tuned to g2 = target, bounds evaluated from
/// the constructed state's measured g2, N and p0.
inline QdScenarioRecord scenario(double p1_tilde, double target_g2 = 0.5,
                                 double tail_cap = kDefaultTailCap) {
  const auto sol = solve_background_for_g2_target(p1_tilde, target_g2, tail_cap);
  QdScenarioRecord rec;
  rec.p1_tilde = p1_tilde;
  rec.n_alpha = sol.n_alpha;
  if (sol.degenerate) {
    // Vacuum limit; g2 stays at target along the curve as p1_tilde -> 0.
    rec.g2 = target_g2;
    rec.degenerate = true;
    return rec;
  }
  const auto state =
      qd_background(p1_tilde, sol.n_alpha, detail::moment_tail_cap(tail_cap, sol.n_alpha));
  rec.g2 = *g2_zero_delay(state);
  rec.mean_n = mean_photon_number(state);
  rec.exact_p1 = exact_spp(p1_tilde, sol.n_alpha);
  rec.lower_photon = spp_bounds_photon(rec.g2, rec.mean_n).lower;
  rec.lower_vacuum = spp_bounds_vacuum(rec.g2, exact_vacuum(p1_tilde, sol.n_alpha)).lower;
  return rec;
}

/// p1_tilde = 0.00, 0.01, ..., 0.99 (computed as i/100).
inline std::vector<double> figure5_default_grid() {
  std::vector<double> grid;
  for (int i = 0; i < 100; ++i) grid.push_back(i / 100.0);
  return grid;
}

inline std::vector<QdScenarioRecord> figure5_sweep(std::span<const double> grid,
                                                   double tail_cap = kDefaultTailCap) {
  std::vector<QdScenarioRecord> rows;
  rows.reserve(grid.size());
  for (double p : grid) rows.push_back(scenario(p, 0.5, tail_cap));
  return rows;
}

}  // namespace sppcert::qd
