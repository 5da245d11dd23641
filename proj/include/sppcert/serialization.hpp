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

// JSON wire formats.
//
//   distribution  {"probs": [p0, p1, ...], "tail_bound": x}
//                 tail_bound may be omitted and then defaults to 0.
//   observables   {"g2": x, "mean_n": x, "p0": x}
//                 g2 required; "g2": null marks the vacuum (g2 undefined).
//   family        {"kind": "coherent"|"thermal"|"fock"|"qd"|"random",
//                  "params": {...}}, see docs/formats.md for the keys.
//   report        BoundReport fields by name; unknown values are null and
//                 an infinite ratio bound is the string "inf".

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "sppcert/bounds.hpp"
#include "sppcert/distribution.hpp"
#include "sppcert/errors.hpp"
#include "sppcert/families.hpp"
#include "sppcert/oracle.hpp"

namespace sppcert {

using json = nlohmann::ordered_json;

/// Malformed JSON document (wrong types, missing or unknown keys).
class FormatError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline json number_or_string(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

template <class T>
json optional_value(const std::optional<T>& v) {
  if (!v) return nullptr;
  if constexpr (std::is_same_v<T, double>) {
    return number_or_string(*v);
  } else {
    return *v;
  }
}

inline double read_number(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf") return kInfinity;
  }
  throw FormatError(std::string("field '") + key + "' must be a number");
}

inline std::optional<double> read_optional_number(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return read_number(j, key);
}

inline std::uint64_t read_index(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0)
    return static_cast<std::uint64_t>(v.get<std::int64_t>());
  throw FormatError(std::string("field '") + key + "' must be a non-negative integer");
}

inline void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed,
                                const char* what) {
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw FormatError(std::string(what) + ": unknown field '" + key + "'");
  }
}

}  // namespace detail

// --- distribution ----------------------------------------------------------

inline json to_json(const PhotonDistribution& d) {
  json j;
  j["probs"] = std::vector<double>(d.probs().begin(), d.probs().end());
  j["tail_bound"] = d.tail_bound();
  return j;
}

inline PhotonDistribution distribution_from_json(const json& j) {
  if (!j.is_object() || !j.contains("probs") || !j.at("probs").is_array())
    throw FormatError("distribution needs a 'probs' array");
  detail::reject_unknown_keys(j, {"probs", "tail_bound"}, "distribution");
  std::vector<double> probs;
  for (const auto& v : j.at("probs")) {
    if (!v.is_number()) throw FormatError("probs entries must be numbers");
    probs.push_back(v.get<double>());
  }
  const double tail = j.contains("tail_bound") ? detail::read_number(j, "tail_bound") : 0.0;
  return validate(std::move(probs), tail);
}

// --- observables -----------------------------------------------------------

inline ObservableInput observables_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("observables must be a JSON object");
  detail::reject_unknown_keys(j, {"g2", "mean_n", "p0"}, "observables");
  ObservableInput in;
  if (j.contains("g2") && j.at("g2").is_null()) in.g2_undefined = true;
  in.g2 = detail::read_optional_number(j, "g2");
  in.mean_n = detail::read_optional_number(j, "mean_n");
  in.p0 = detail::read_optional_number(j, "p0");
  return in;
}

/// Observables of a state, as analyze() expects them.
inline ObservableInput observable_input(const ObservableSet& obs) {
  ObservableInput in;
  in.g2 = obs.g2;
  in.g2_undefined = !obs.g2.has_value();
  in.mean_n = obs.mean_n;
  in.p0 = obs.p0;
  return in;
}

// --- family ----------------------------------------------------------------

inline json to_json(const FamilySpec& spec) {
  json params = json::object();
  std::visit(
      [&](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, CoherentFamily> || std::is_same_v<T, ThermalFamily>) {
          params["mean_photons"] = f.mean_photons;
        } else if constexpr (std::is_same_v<T, FockFamily>) {
          params["n"] = f.n;
        } else if constexpr (std::is_same_v<T, QdBackgroundFamily>) {
          params["p1_tilde"] = f.p1_tilde;
          params["n_alpha"] = f.n_alpha;
        } else {
          params["max_n"] = f.max_n;
          params["seed"] = f.seed;
        }
      },
      spec);
  json j;
  j["kind"] = std::string(family_kind(spec));
  j["params"] = params;
  return j;
}

/// Missing params keep their defaults (0, or max_n = 1).
inline FamilySpec family_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    throw FormatError("family needs a string 'kind'");
  detail::reject_unknown_keys(j, {"kind", "params"}, "family");
  const auto kind = j.at("kind").get<std::string>();
  const json params = j.contains("params") ? j.at("params") : json::object();
  if (!params.is_object()) throw FormatError("family 'params' must be an object");
  auto num = [&](const char* key, double fallback) {
    return params.contains(key) ? detail::read_number(params, key) : fallback;
  };
  if (kind == "coherent") {
    detail::reject_unknown_keys(params, {"mean_photons"}, "coherent params");
    return CoherentFamily{num("mean_photons", 0.0)};
  }
  if (kind == "thermal") {
    detail::reject_unknown_keys(params, {"mean_photons"}, "thermal params");
    return ThermalFamily{num("mean_photons", 0.0)};
  }
  if (kind == "fock") {
    detail::reject_unknown_keys(params, {"n"}, "fock params");
    return FockFamily{params.contains("n") ? detail::read_index(params, "n") : 0};
  }
  if (kind == "qd") {
    detail::reject_unknown_keys(params, {"p1_tilde", "n_alpha"}, "qd params");
    return QdBackgroundFamily{num("p1_tilde", 0.0), num("n_alpha", 0.0)};
  }
  if (kind == "random") {
    detail::reject_unknown_keys(params, {"max_n", "seed"}, "random params");
    RandomFamily f;
    if (params.contains("max_n")) f.max_n = detail::read_index(params, "max_n");
    if (params.contains("seed")) f.seed = detail::read_index(params, "seed");
    return f;
  }
  throw FormatError("unknown family kind '" + kind + "'");
}

// --- report ----------------------------------------------------------------

inline json to_json(const BoundReport& r) {
  json j;
  j["g2"] = detail::optional_value(r.g2);
  j["mean_n"] = detail::optional_value(r.mean_n);
  j["p0"] = detail::optional_value(r.p0);
  j["eff_g2_vacuum"] = detail::optional_value(r.eff_g2_vacuum);
  j["eff_g2_photon"] = detail::optional_value(r.eff_g2_photon);
  j["spp_lower"] = r.spp_lower;
  j["spp_upper"] = r.spp_upper;
  j["smppr_lower"] = detail::number_or_string(r.smppr_lower);
  j["q_upper"] = detail::optional_value(r.q_upper);
  j["p0_plus_p1_lower"] = detail::optional_value(r.p0_plus_p1_lower);
  j["set_m1"] = r.set_m1;
  j["set_m2"] = detail::optional_value(r.set_m2);
  j["set_m3"] = detail::optional_value(r.set_m3);
  j["criterion_used"] = std::string(to_string(r.criterion_used));
  j["clamped"] = r.clamped;
  j["not_applicable_reason"] = detail::optional_value(r.not_applicable_reason);
  return j;
}

// --- verification ----------------------------------------------------------

inline json to_json(const oracle::VerificationReport& r, bool with_counterexamples = false) {
  json j;
  j["suite"] = r.suite;
  j["trials"] = r.trials;
  j["violations"] = r.violations;
  j["noise"] = r.noise;
  j["worst_margin"] = detail::number_or_string(r.worst_margin);
  j["seed"] = r.seed;
  if (with_counterexamples) {
    json list = json::array();
    for (const auto& c : r.counterexamples) {
      json e;
      e["trial"] = c.trial;
      e["check"] = c.check;
      e["margin"] = detail::number_or_string(c.margin);
      e["distribution"] = json{{"probs", c.probs}, {"tail_bound", c.tail_bound}};
      json values = json::object();
      for (const auto& [k, v] : c.values) values[k] = detail::number_or_string(v);
      e["values"] = values;
      list.push_back(std::move(e));
    }
    j["counterexamples"] = list;
  }
  return j;
}

/// Writes the report and its counterexamples. Throws Error on IO failure.
inline void write_diagnostics(const oracle::VerificationReport& r,
                              const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open diagnostics file " + path.string());
  out << to_json(r, true).dump(2) << '\n';
  if (!out) throw Error("failed writing diagnostics file " + path.string());
}

}  // namespace sppcert
