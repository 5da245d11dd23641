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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "sppcert/bounds.hpp"
#include "sppcert/figures.hpp"
#include "sppcert/oracle.hpp"
#include "sppcert/qd.hpp"

namespace {

using namespace sppcert;
using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
  std::printf("%s criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
  if (!ok) ++failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string summary(const oracle::VerificationReport& r) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s: %llu trials, %llu violations, worst margin %.3g", r.suite.c_str(),
                static_cast<unsigned long long>(r.trials), static_cast<unsigned long long>(r.violations),
                r.worst_margin);
  return buf;
}

void validity_edges() {
  const auto t0 = Clock::now();
  auto vac = [](const PhotonDistribution& d) {
    const auto ex = oracle::exact_quantities(d);
    return (1.0 - ex.p0) * *ex.g2;
  };
  auto ph = [](const PhotonDistribution& d) {
    const auto ex = oracle::exact_quantities(d);
    return ex.mean_n * *ex.g2;
  };
  const double c0 = oracle::locate_crossing([&](double n) { return vac(coherent(n)); }, 0.5, 0.1, 3.0);
  const double t0v = oracle::locate_crossing([&](double n) { return vac(thermal(n)); }, 0.5, 0.01, 3.0);
  const double cn = oracle::locate_crossing([&](double n) { return ph(coherent(n)); }, 1.0, 0.1, 3.0);
  const double tn = oracle::locate_crossing([&](double n) { return ph(thermal(n)); }, 1.0, 0.01, 3.0);
  const double dt = seconds_since(t0);
  const double err = std::max({std::abs(c0 - std::log(2.0)), std::abs(t0v - 1.0 / 3.0), std::abs(cn - 1.0),
                               std::abs(tn - 0.5)});
  report(1, err <= 1e-6 && dt < 1.0, "validity edges ln2, 1/3, 1, 1/2",
         fmt("max deviation %.3g", err) + fmt(", %.3f s", dt));
}

void saturation() {
  const auto t0 = Clock::now();
  const auto grid = oracle::open_grid(8.0, 0.01);
  const auto sat = oracle::run_saturation_suite(grid);
  const auto floor = oracle::run_g2_floor_suite(100000, 8, 2);
  const double dt = seconds_since(t0);
  const bool ok = sat.passed() && sat.worst_margin >= -1e-10 && floor.passed() &&
                  floor.noise == 0 && dt < 10.0;
  report(2, ok, "g2 floor saturation and random states above it",
         summary(sat) + "; " + summary(floor) + fmt("; %.2f s", dt));
}

void soundness() {
  const auto t0 = Clock::now();
  const auto r = oracle::run_soundness_suite(100000, oracle::kDefaultSoundnessMaxN, 42);
  const double dt = seconds_since(t0);
  report(3, r.passed() && r.worst_margin > -1e-10 && dt < 10.0, "soundness of every bound",
         summary(r) + fmt("; %.2f s", dt));
}

void exactness() {
  const auto r = oracle::run_exactness_suite(10000, 4);
  report(4, r.passed() && r.worst_margin >= -1e-10, "exactness on support {0,1,2}", summary(r));
}

void set_inclusion() {
  const auto r = oracle::run_set_inclusion_suite(100000, 8, 1);
  report(5, r.passed(), "M1 in M2 in M3, vacuum criterion implies photon criterion", summary(r));
}

void orderings() {
  double worst_ratio = 0.0;
  std::size_t points = 0;
  for (Figure f : {Figure::CoherentRelative, Figure::ThermalRelative}) {
    const auto t = figure_table(f);
    for (const auto& row : t.rows) {
      ++points;
      const double r = row[4];
      // nan marks a vanishing photon-based bound: the vacuum one vanishes too.
      if (std::isnan(r)) {
        if (row[2] != 0.0) worst_ratio = INFINITY;
        continue;
      }
      worst_ratio = std::max(worst_ratio, r);
    }
  }
  bool low_ok = true;
  for (Figure f : {Figure::CoherentAbsolute, Figure::ThermalAbsolute}) {
    const auto t = figure_table(f);
    for (const auto& row : t.rows) {
      if (row[0] > oracle::kLowExcitation) continue;
      low_ok = low_ok && row[2] >= row[4] && row[3] <= row[5];
    }
  }
  const auto fams = oracle::default_comparison_families();
  const auto r = oracle::run_comparison_suite(fams);
  report(6, worst_ratio <= 1.0 && low_ok && r.passed(), "vacuum vs photon bound orderings",
         fmt("%.0f grid points", static_cast<double>(points)) + fmt(", max ratio %.9f", worst_ratio) +
             "; " + summary(r));
}

void qd_endpoints() {
  const bool exact = qd::background_limit_photon_criterion(0.0) == 1.0 &&
                     qd::background_limit_g2_criterion(0.5) == 1.0;
  const auto rows = qd::figure5_sweep(qd::figure5_default_grid());
  double worst_g2 = 0.0;
  bool ordered = true;
  for (const auto& r : rows) {
    if (r.degenerate) continue;
    worst_g2 = std::max(worst_g2, std::abs(r.g2 - 0.5));
    ordered = ordered && r.exact_p1 >= r.p1_tilde && r.lower_photon <= r.exact_p1 && r.lower_vacuum <= r.exact_p1;
  }
  report(7, exact && worst_g2 <= 1e-10 && ordered, "background limits and designed-state invariants",
         std::string(exact ? "endpoints exact" : "endpoints inexact") + fmt(", max |g2 - 1/2| %.3g", worst_g2));
}

void expansion() {
  double worst = INFINITY;
  double worst_naive = INFINITY;
  for (int i = 1; i < 4999; ++i) {
    const double x = i * 1e-4;
    const double rhs = 2.0 / x - 3.0 - x / 2.0;
    worst = std::min(worst, rhs - smppr_lower_vacuum(x));
    const double s = std::sqrt(1.0 - 2.0 * x);
    worst_naive = std::min(worst_naive, rhs - 2.0 * s / (1.0 - s));
  }
  report(8, worst >= -1e-12, "expansion inequality on (1e-4, 0.4999)",
         fmt("min slack %.3g", worst) + fmt(", naive 1 - s form would give %.3g", worst_naive));
}

}  // namespace

int main() {
  validity_edges();
  saturation();
  soundness();
  exactness();
  set_inclusion();
  orderings();
  qd_endpoints();
  expansion();
  std::printf("%s: %d of 8 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
