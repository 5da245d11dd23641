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

// Tabular sweep data for plotting: the coherent/thermal bound comparisons,
// the quantum-dot background scenario, and free-form family sweeps.
// Numbers are written with 12 significant digits via std::to_chars, so the
// output does not depend on the locale.

#include <array>
#include <charconv>
#include <cmath>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sppcert/bounds.hpp"
#include "sppcert/distribution.hpp"
#include "sppcert/errors.hpp"
#include "sppcert/families.hpp"
#include "sppcert/oracle.hpp"
#include "sppcert/qd.hpp"

namespace sppcert {

inline constexpr int kCsvDigits = 12;

inline std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x,
                                 std::chars_format::general, kCsvDigits);
  return std::string(buf.data(), res.ptr);
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

inline void write_csv(std::ostream& out, const CsvTable& table) {
  for (std::size_t i = 0; i < table.header.size(); ++i)
    out << (i ? "," : "") << table.header[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << '\n';
  }
}

enum class Figure { CoherentAbsolute, CoherentRelative, ThermalAbsolute, ThermalRelative, QdScenario };

inline std::optional<Figure> parse_figure(std::string_view name) {
  if (name == "fig1") return Figure::CoherentAbsolute;
  if (name == "fig2") return Figure::CoherentRelative;
  if (name == "fig3") return Figure::ThermalAbsolute;
  if (name == "fig4") return Figure::ThermalRelative;
  if (name == "fig5") return Figure::QdScenario;
  return std::nullopt;
}

inline constexpr double kCoherentGridStep = 0.005;
inline constexpr double kThermalGridStep = 0.0025;
inline constexpr double kQdGridStep = 0.01;

namespace detail {

// Vacuum- and photon-based bounds of one family member, from its
// numerically summed observables.
struct ComparisonPoint {
  double mean_n = 0.0;
  double exact_p1 = 0.0;
  double exact_ratio = 0.0;
  SppBounds vacuum;
  SppBounds photon;
  double ratio_vacuum = 0.0;
  double ratio_photon = 0.0;
};

inline ComparisonPoint comparison_point(const PhotonDistribution& d) {
  const auto obs = observables(d);
  ComparisonPoint pt;
  pt.mean_n = obs.mean_n;
  pt.exact_p1 = obs.p1;
  pt.exact_ratio = obs.q_multi > 0.0 ? obs.p1 / obs.q_multi : kInfinity;
  const double g2 = obs.g2.value_or(0.0);
  pt.vacuum = spp_bounds_vacuum(g2, obs.p0);
  pt.photon = spp_bounds_photon(g2, obs.mean_n);
  const double g0 = effective_g2_vacuum(g2, obs.p0);
  const double gn = effective_g2_photon(g2, obs.mean_n);
  pt.ratio_vacuum = g0 < 0.5 ? smppr_lower_vacuum(g0) : 0.0;
  pt.ratio_photon = gn <= 1.0 ? smppr_lower_photon(gn) : 0.0;
  return pt;
}

}  // namespace detail

/// Row of fig1/fig3: N, exact_p1, lower_vacuum, upper_vacuum, lower_photon,
/// upper_photon, diff_lower (photon - vacuum).
inline std::vector<double> absolute_row(double x, const PhotonDistribution& d) {
  const auto pt = detail::comparison_point(d);
  return {x, pt.exact_p1, pt.vacuum.lower, pt.vacuum.upper, pt.photon.lower,
          pt.photon.upper, pt.photon.lower - pt.vacuum.lower};
}

/// Row of fig2/fig4: N, exact_ratio, lower_vacuum, lower_photon,
/// ratio_vacuum_over_photon (nan where the photon bound vanishes).
inline std::vector<double> relative_row(double x, const PhotonDistribution& d) {
  const auto pt = detail::comparison_point(d);
  double ratio = std::nan("");
  if (pt.ratio_photon > 0.0 && std::isfinite(pt.ratio_photon)) ratio = pt.ratio_vacuum / pt.ratio_photon;
  return {x, pt.exact_ratio, pt.ratio_vacuum, pt.ratio_photon, ratio};
}

inline CsvTable figure_table(Figure which, std::optional<double> grid_step = std::nullopt,
                             double tail_cap = kDefaultTailCap) {
  if (grid_step && !(*grid_step > 0.0)) throw DomainError("grid step must be > 0");
  CsvTable t;
  switch (which) {
    case Figure::CoherentAbsolute:
    case Figure::ThermalAbsolute: {
      const bool coh = which == Figure::CoherentAbsolute;
      t.header = {"N", "exact_p1", "lower_vacuum", "upper_vacuum", "lower_photon", "upper_photon", "diff_lower"};
      const auto grid = oracle::open_grid(coh ? 1.0 : 0.5,
                                          grid_step.value_or(coh ? kCoherentGridStep : kThermalGridStep));
      for (double n : grid) t.rows.push_back(absolute_row(n, coh ? coherent(n, tail_cap) : thermal(n, tail_cap)));
      break;
    }
    case Figure::CoherentRelative:
    case Figure::ThermalRelative: {
      const bool coh = which == Figure::CoherentRelative;
      t.header = {"N", "exact_ratio", "lower_vacuum", "lower_photon", "ratio_vacuum_over_photon"};
      const auto grid = oracle::open_grid(coh ? 1.0 : 0.5,
                                          grid_step.value_or(coh ? kCoherentGridStep : kThermalGridStep));
      for (double n : grid) t.rows.push_back(relative_row(n, coh ? coherent(n, tail_cap) : thermal(n, tail_cap)));
      break;
    }
    case Figure::QdScenario: {
      t.header = {"p1_tilde", "n_alpha", "g2", "mean_n", "exact_p1", "lower_photon", "lower_vacuum"};
      std::vector<double> grid;
      if (grid_step) {
        for (std::size_t i = 0;; ++i) {
          const double p = static_cast<double>(i) * *grid_step;
          if (p > 0.99 + 1e-12) break;
          grid.push_back(p);
        }
      } else {
        grid = qd::figure5_default_grid();
      }
      for (const auto& r : qd::figure5_sweep(grid, tail_cap))
        t.rows.push_back({r.p1_tilde, r.n_alpha, r.g2, r.mean_n, r.exact_p1, r.lower_photon, r.lower_vacuum});
      break;
    }
  }
  return t;
}

// --- free-form sweeps -------------------------------------------------------

/// Quantities available to a sweep column, evaluated once per grid point.
struct SweepPoint {
  double x = 0.0;
  ObservableSet obs;
};

using ColumnFn = std::function<double(const SweepPoint&)>;

namespace detail {

inline double or_nan(const std::optional<double>& v) { return v ? *v : std::nan(""); }

inline const std::vector<std::pair<std::string, ColumnFn>>& sweep_columns() {
  static const std::vector<std::pair<std::string, ColumnFn>> cols = {
      {"x", [](const SweepPoint& s) { return s.x; }},
      {"mean_n", [](const SweepPoint& s) { return s.obs.mean_n; }},
      {"g2", [](const SweepPoint& s) { return or_nan(s.obs.g2); }},
      {"variance", [](const SweepPoint& s) { return s.obs.variance; }},
      {"mandel_q", [](const SweepPoint& s) { return or_nan(s.obs.mandel_q); }},
      {"p0", [](const SweepPoint& s) { return s.obs.p0; }},
      {"p1", [](const SweepPoint& s) { return s.obs.p1; }},
      {"q", [](const SweepPoint& s) { return s.obs.q_multi; }},
      {"n2", [](const SweepPoint& s) { return or_nan(s.obs.n2); }},
      {"g2_multi", [](const SweepPoint& s) { return or_nan(s.obs.g2_multi); }},
      {"smppr_exact",
       [](const SweepPoint& s) {
         if (s.obs.q_multi > 0.0) return s.obs.p1 / s.obs.q_multi;
         return s.obs.p1 > 0.0 ? kInfinity : std::nan("");
       }},
      {"eff_g2_vacuum",
       [](const SweepPoint& s) { return s.obs.g2 ? effective_g2_vacuum(*s.obs.g2, s.obs.p0) : std::nan(""); }},
      {"eff_g2_photon",
       [](const SweepPoint& s) { return s.obs.g2 ? effective_g2_photon(*s.obs.g2, s.obs.mean_n) : std::nan(""); }},
      {"spp_lower_vacuum",
       [](const SweepPoint& s) { return s.obs.g2 ? spp_bounds_vacuum(*s.obs.g2, s.obs.p0).lower : 0.0; }},
      {"spp_upper_vacuum", [](const SweepPoint& s) { return 1.0 - s.obs.p0; }},
      {"spp_lower_photon",
       [](const SweepPoint& s) { return s.obs.g2 ? spp_bounds_photon(*s.obs.g2, s.obs.mean_n).lower : 0.0; }},
      {"spp_upper_photon", [](const SweepPoint& s) { return std::min(s.obs.mean_n, 1.0); }},
      {"smppr_lower_vacuum",
       [](const SweepPoint& s) {
         if (!s.obs.g2) return 0.0;
         const double g0 = effective_g2_vacuum(*s.obs.g2, s.obs.p0);
         return g0 < 0.5 ? smppr_lower_vacuum(g0) : 0.0;
       }},
      {"smppr_lower_photon",
       [](const SweepPoint& s) {
         if (!s.obs.g2) return 0.0;
         const double gn = effective_g2_photon(*s.obs.g2, s.obs.mean_n);
         return gn <= 1.0 ? smppr_lower_photon(gn) : 0.0;
       }},
      {"g2_floor",
       [](const SweepPoint& s) { return s.obs.mean_n > 0.0 ? zubizarreta_lower_g2(s.obs.mean_n) : std::nan(""); }},
      {"m1", [](const SweepPoint& s) { return s.obs.g2 && *s.obs.g2 < 0.5 ? 1.0 : 0.0; }},
      {"m2",
       [](const SweepPoint& s) { return s.obs.g2 && s.obs.mean_n * *s.obs.g2 < 1.0 ? 1.0 : 0.0; }},
      {"m3", [](const SweepPoint& s) { return s.obs.mean_n < 2.0 ? 1.0 : 0.0; }},
  };
  return cols;
}

}  // namespace detail

inline std::vector<std::string> sweep_column_names() {
  std::vector<std::string> names;
  for (const auto& [name, _] : detail::sweep_columns()) names.push_back(name);
  return names;
}

/// from, from + step, ..., up to `to` (inclusive within 1e-9 of a step).
inline std::vector<double> linear_grid(double from, double to, double step) {
  if (!(step > 0.0) || !std::isfinite(from) || !std::isfinite(to) || to < from)
    throw DomainError("grid needs from <= to and step > 0");
  const auto count = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9));
  std::vector<double> g;
  for (std::size_t i = 0; i <= count; ++i) g.push_back(from + static_cast<double>(i) * step);
  return g;
}

/**
 * One row per grid value of `parameter`, with the requested columns.
 * Undefined quantities (g2 of the vacuum, ...) are written as nan.
 * Throws DomainError for an unknown column or parameter.
 */
inline CsvTable sweep_table(const FamilySpec& base, std::string_view parameter,
                            std::span<const double> grid, std::span<const std::string> columns,
                            double tail_cap = kDefaultTailCap) {
  std::vector<const ColumnFn*> fns;
  for (const auto& c : columns) {
    const ColumnFn* found = nullptr;
    for (const auto& [name, fn] : detail::sweep_columns())
      if (name == c) found = &fn;
    if (!found) throw DomainError("unknown column '" + c + "'");
    fns.push_back(found);
  }
  CsvTable t;
  t.header.assign(columns.begin(), columns.end());
  for (double x : grid) {
    const auto d = build(with_parameter(base, parameter, x), tail_cap);
    const SweepPoint pt{x, observables(d)};
    std::vector<double> row;
    for (const auto* fn : fns) row.push_back((*fn)(pt));
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace sppcert
