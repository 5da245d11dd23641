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

#include "sppcert/commands.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "test_support.hpp"

namespace sppcert::cli {
namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run analyze_text(const std::string& text) {
  std::istringstream in(text);
  std::ostringstream out, err;
  const int code = run_analyze(in, out, err);
  return {code, out.str(), err.str()};
}

TEST(Analyze, FockOne) {
  const auto r = analyze_text(R"({"probs":[0,1]})");
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["spp_lower"], 1.0);
  EXPECT_EQ(j["spp_upper"], 1.0);
}

TEST(Analyze, PhotonObservables) {
  const auto r = analyze_text(R"({"g2":0.4,"mean_n":0.5})");
  ASSERT_EQ(r.code, kOk);
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["criterion_used"], "PhotonBased");
  EXPECT_NEAR(j["spp_lower"].get<double>(), 0.4, 1e-15);
}

TEST(Analyze, G2AboveHalf) {
  const auto r = analyze_text(R"({"g2":0.6})");
  ASSERT_EQ(r.code, kOk);
  EXPECT_EQ(json::parse(r.out)["criterion_used"], "NotApplicable");
}

TEST(Analyze, VacuumDistribution) {
  const auto r = analyze_text(R"({"probs":[1]})");
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_TRUE(j["g2"].is_null());
  EXPECT_EQ(j["spp_upper"], 0.0);
}

TEST(Analyze, ExitCodes) {
  EXPECT_EQ(analyze_text(R"({"mean_n":0.5})").code, kInsufficientData);
  EXPECT_EQ(analyze_text(R"({"probs":[0.5,0.6]})").code, kUsage);
  EXPECT_EQ(analyze_text("{not json").code, kUsage);
  EXPECT_EQ(analyze_text(R"({"g2":"high"})").code, kUsage);
  const auto r = analyze_text(R"({"g2":0.1,"mean_n":0.9,"p0":0.95})");
  EXPECT_EQ(r.code, kUsage);
  EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
}

TEST(Analyze, RoundTripMatchesLibrary) {
  for (int i = 0; i < 200; ++i) {
    const auto d = testing::sample_state(i);
    const auto r = analyze_text(to_json(d).dump());
    ASSERT_EQ(r.code, kOk) << r.err;
    const auto expected = to_json(analyze(observable_input(oracle::exact_quantities(d))));
    EXPECT_EQ(json::parse(r.out), expected);
  }
}

TEST(WithOutput, IoFailureIsExitThree) {
  std::ostringstream fallback, err;
  const auto body = [](std::ostream& o) {
    o << "x\n";
    return static_cast<int>(kOk);
  };
  EXPECT_EQ(with_output(std::filesystem::path("/nonexistent-dir/out.csv"), fallback, err, body), kIoError);
  EXPECT_EQ(with_output(std::nullopt, fallback, err, body), kOk);
  EXPECT_EQ(fallback.str(), "x\n");
  const auto path = std::filesystem::temp_directory_path() / "sppcert_commands_test.csv";
  EXPECT_EQ(with_output(path, fallback, err, body), kOk);
  EXPECT_TRUE(std::filesystem::exists(path));
  std::filesystem::remove(path);
}

TEST(Figure, UnknownAndKnown) {
  std::ostringstream out, err;
  EXPECT_EQ(run_figure("fig9", std::nullopt, kDefaultTailCap, out, err), kUsage);
  EXPECT_EQ(run_figure("fig5", std::nullopt, kDefaultTailCap, out, err), kOk);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')),
            "p1_tilde,n_alpha,g2,mean_n,exact_p1,lower_photon,lower_vacuum");
}

TEST(Sweep, ParsesFamilies) {
  EXPECT_TRUE(std::holds_alternative<ThermalFamily>(parse_family_argument("thermal")));
  const auto qd = parse_family_argument(R"({"kind":"qd","params":{"p1_tilde":0.5}})");
  EXPECT_EQ(std::get<QdBackgroundFamily>(qd).p1_tilde, 0.5);
  EXPECT_THROW(parse_family_argument("laser"), FormatError);
}

TEST(Sweep, RunsAndReportsBadColumns) {
  SweepOptions opt;
  opt.family = "fock";
  opt.from = 0;
  opt.to = 5;
  opt.step = 1;
  opt.columns = {"x", "g2"};
  std::ostringstream out, err;
  ASSERT_EQ(run_sweep(opt, out, err), kOk) << err.str();
  EXPECT_EQ(out.str(), "x,g2\n0,nan\n1,0\n2,0.5\n3,0.666666666667\n4,0.75\n5,0.8\n");

  opt.columns = {"x", "bogus"};
  EXPECT_EQ(run_sweep(opt, out, err), kUsage);
  opt.columns = {"x"};
  opt.family = "{";
  EXPECT_EQ(run_sweep(opt, out, err), kUsage);
}

TEST(Verify, SuitesAndExitCodes) {
  VerifyOptions opt;
  opt.trials = 2000;
  std::ostringstream out, err;
  for (const auto& name : suite_names()) {
    opt.suite = name;
    out.str("");
    EXPECT_EQ(run_verify(opt, out, err), kOk) << name << err.str();
    EXPECT_EQ(json::parse(out.str())["violations"], 0) << name;
  }
  opt.suite = "nosuchsuite";
  EXPECT_EQ(run_verify(opt, out, err), kUsage);
}

}  // namespace
}  // namespace sppcert::cli
