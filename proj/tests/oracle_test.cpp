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

#include "sppcert/oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "sppcert/serialization.hpp"
#include "test_support.hpp"

namespace sppcert::oracle {
namespace {

TEST(ExactQuantities, Examples) {
  const auto a = exact_quantities(validate({0.25, 0.5, 0.25}));
  EXPECT_DOUBLE_EQ(a.mean_n, 1.0);
  EXPECT_DOUBLE_EQ(*a.g2, 0.5);
  EXPECT_DOUBLE_EQ(a.p0, 0.25);
  EXPECT_DOUBLE_EQ(a.p1, 0.5);
  EXPECT_DOUBLE_EQ(a.q_multi, 0.25);

  const auto f = exact_quantities(fock(3));
  EXPECT_DOUBLE_EQ(f.mean_n, 3.0);
  EXPECT_NEAR(*f.g2, 2.0 / 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(*f.n2, 3.0);
  EXPECT_NEAR(*f.g2_multi, 2.0 / 3.0, 1e-15);

  const auto v = exact_quantities(fock(0));
  EXPECT_FALSE(v.g2);
  EXPECT_FALSE(v.n2);
  EXPECT_EQ(v.p0, 1.0);
}

TEST(ExactQuantities, AgreesWithLibraryObservables) {
  for (int i = 0; i < 2000; ++i) {
    const auto d = testing::sample_state(i);
    const auto ex = exact_quantities(d);
    const auto ob = observables(d);
    EXPECT_NEAR(ex.mean_n, ob.mean_n, 1e-12);
    EXPECT_NEAR(*ex.g2, *ob.g2, 1e-10 * *ex.g2);
    EXPECT_NEAR(ex.variance, ob.variance, 1e-12);
    EXPECT_NEAR(*ex.n2, *ob.n2, 1e-12);
    EXPECT_NEAR(*ex.g2_multi, *ob.g2_multi, 1e-12);
  }
}

TEST(ExactQuantities, AccurateAtWeakExcitation) {
  // The cap bounds probability mass; g2 divides by N^2, so weak states need
  // the cap scaled down accordingly to keep coherent g2 at 1.
  for (double n : {1e-6, 1e-4, 1e-2})
    EXPECT_NEAR(*exact_quantities(coherent(n, 1e-14 * n * n)).g2, 1.0, 1e-9) << n;
}

TEST(Suites, SoundnessPasses) {
  const auto r = run_soundness_suite(20000, kDefaultSoundnessMaxN, 42);
  EXPECT_TRUE(r.passed()) << to_json(r, true).dump(1);
  EXPECT_EQ(r.trials, 20000u);
  EXPECT_EQ(r.suite, "soundness");
}

TEST(Suites, SoundnessAtSupportTwoIsExact) {
  const auto r = run_soundness_suite(5000, 2, 7);
  EXPECT_TRUE(r.passed()) << to_json(r, true).dump(1);
}

TEST(Suites, ExactnessPasses) {
  const auto r = run_exactness_suite(10000, 3);
  EXPECT_TRUE(r.passed()) << to_json(r, true).dump(1);
  EXPECT_GE(r.worst_margin, -1e-10);
}

TEST(Suites, SetInclusionPasses) {
  const auto r = run_set_inclusion_suite(20000, kDefaultInclusionMaxN, 1);
  EXPECT_TRUE(r.passed()) << to_json(r, true).dump(1);
}

TEST(Suites, G2FloorPasses) {
  const auto r = run_g2_floor_suite(20000, 8, 5);
  EXPECT_TRUE(r.passed()) << to_json(r, true).dump(1);
}

TEST(Suites, Deterministic) {
  const auto a = run_soundness_suite(500, 6, 99);
  const auto b = run_soundness_suite(500, 6, 99);
  EXPECT_EQ(a.worst_margin, b.worst_margin);
  EXPECT_EQ(a.noise, b.noise);
  EXPECT_EQ(trial_state(6, 99, 17), trial_state(6, 99, 17));
  EXPECT_FALSE(trial_state(6, 99, 17) == trial_state(6, 99, 18));
}

TEST(Saturation, Examples) {
  const std::vector<double> grid = {0.5, 1.0, 1.5, 2.0, 7.99};
  const auto r = run_saturation_suite(grid);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.trials, grid.size());
  EXPECT_GE(r.worst_margin, -1e-10);
  const std::vector<double> bad = {0.0};
  EXPECT_THROW(run_saturation_suite(bad), DomainError);
}

TEST(Saturation, FullGrid) {
  const auto grid = open_grid(8.0, 0.01);
  ASSERT_EQ(grid.size(), 800u);
  EXPECT_EQ(grid.back(), 8.0);
  const auto r = run_saturation_suite(grid);
  EXPECT_TRUE(r.passed());
  EXPECT_GE(r.worst_margin, -1e-10);
}

TEST(Comparison, DefaultFamiliesPass) {
  const auto fams = default_comparison_families();
  ASSERT_EQ(fams.size(), 2u);
  EXPECT_EQ(fams[0].values.size(), 200u);
  EXPECT_EQ(fams[1].values.size(), 200u);
  const auto r = run_comparison_suite(fams);
  EXPECT_TRUE(r.passed()) << to_json(r, true).dump(1);
}

TEST(Comparison, FlagsABrokenOrdering) {
  // Fock |2> has N g2 = 1: photon ratio bound 0, vacuum bound undefined.
  // A two-photon-heavy state still keeps 1 - p0 <= N.
  const std::vector<FamilyGrid> fams = {{FockFamily{}, "n", {2.0, 3.0}}};
  const auto r = run_comparison_suite(fams);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.trials, 2u);
}

TEST(LocateCrossing, MembershipEdges) {
  auto coherent_vac = [](double n) {
    const auto ex = exact_quantities(coherent(n));
    return (1.0 - ex.p0) * *ex.g2;
  };
  auto thermal_vac = [](double n) {
    const auto ex = exact_quantities(thermal(n));
    return (1.0 - ex.p0) * *ex.g2;
  };
  auto coherent_ph = [](double n) {
    const auto ex = exact_quantities(coherent(n));
    return ex.mean_n * *ex.g2;
  };
  auto thermal_ph = [](double n) {
    const auto ex = exact_quantities(thermal(n));
    return ex.mean_n * *ex.g2;
  };
  EXPECT_NEAR(locate_crossing(coherent_vac, 0.5, 0.1, 3.0), std::log(2.0), 1e-6);
  EXPECT_NEAR(locate_crossing(thermal_vac, 0.5, 0.01, 3.0), 1.0 / 3.0, 1e-6);
  EXPECT_NEAR(locate_crossing(coherent_ph, 1.0, 0.1, 3.0), 1.0, 1e-6);
  EXPECT_NEAR(locate_crossing(thermal_ph, 1.0, 0.01, 3.0), 0.5, 1e-6);
  auto mean = [](double n) { return exact_quantities(coherent(n)).mean_n; };
  EXPECT_NEAR(locate_crossing(mean, 2.0, 0.5, 5.0), 2.0, 1e-6);
}

TEST(LocateCrossing, RejectsBadBracket) {
  EXPECT_THROW(locate_crossing([](double x) { return x; }, 5.0, 0.0, 1.0), DomainError);
}

TEST(Diagnostics, RoundTripsCounterexamples) {
  VerificationReport r;
  r.suite = "soundness";
  r.trials = 3;
  r.violations = 1;
  r.worst_margin = -0.25;
  r.seed = 9;
  r.counterexamples.push_back({2, "full:spp_lower", -0.25, {0.5, 0.5}, 0.0, {{"g2", 0.0}}});
  const auto path = std::filesystem::temp_directory_path() / "sppcert_oracle_test_diag.json";
  write_diagnostics(r, path);
  std::ifstream in(path);
  const auto j = json::parse(in);
  EXPECT_EQ(j["suite"], "soundness");
  EXPECT_EQ(j["violations"], 1);
  ASSERT_EQ(j["counterexamples"].size(), 1u);
  EXPECT_EQ(j["counterexamples"][0]["check"], "full:spp_lower");
  EXPECT_EQ(j["counterexamples"][0]["distribution"]["probs"][1], 0.5);
  std::filesystem::remove(path);
  EXPECT_THROW(write_diagnostics(r, "/nonexistent-dir/x.json"), Error);
}

TEST(Recorder, NoiseIsNotAViolation) {
  detail::Recorder rec("t", 0);
  rec.begin_trial(0, nullptr);
  rec.check("tiny", -1e-12);
  rec.check("ok", 0.5);
  auto r = std::move(rec).finish();
  EXPECT_EQ(r.violations, 0u);
  EXPECT_EQ(r.noise, 1u);
  EXPECT_EQ(r.worst_margin, -1e-12);
}

}  // namespace
}  // namespace sppcert::oracle
