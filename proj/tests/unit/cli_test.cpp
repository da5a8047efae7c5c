// Copyright 2026 The povmlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "app.hpp"
#include "report.hpp"

namespace {

using povmlab::cli::Json;
using povmlab::cli::run;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

Json as_json(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("json");
  const Result r = invoke(args);
  EXPECT_EQ(r.code, 0) << r.err;
  return Json::parse(r.out);
}

const Json& check(const Json& report, const std::string& name) {
  for (const Json& c : report["checks"]) {
    if (c["name"] == name) return c;
  }
  ADD_FAILURE() << "no check named " << name;
  static const Json missing = Json::object();
  return missing;
}

class ScopedEnv {
 public:
  ScopedEnv(const char* name, const char* value) : name_(name) { setenv(name, value, 1); }
  ~ScopedEnv() { unsetenv(name_); }

 private:
  const char* name_;
};

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

TEST(cli_format, numbers_keep_fifteen_digits_and_a_dot) {
  using povmlab::cli::format_number;
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333333");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(0.5), "0.5");
  EXPECT_EQ(format_number(1e-17), "1e-17");
  EXPECT_EQ(format_number(std::numbers::pi), "3.14159265358979");
}

TEST(cli_mzi_scan, one_row_per_step_with_unit_row_sums) {
  const Json j = as_json({"mzi-scan", "--eps1", "0.3", "--eps2", "0.8", "--delta-steps", "11"});
  ASSERT_EQ(j["rows"].size(), 11u);
  EXPECT_DOUBLE_EQ(j["rows"][0]["delta"].get<double>(), 0.0);
  EXPECT_DOUBLE_EQ(j["rows"][10]["delta"].get<double>(), 2.0 * std::numbers::pi);
  for (const Json& row : j["rows"]) {
    EXPECT_NEAR(row["row_sum"].get<double>(), 1.0, 1e-9);
    EXPECT_LE(row["abs_diff"].get<double>(), 1e-9);
  }
  for (const char* key : {"config", "rows", "checks"}) EXPECT_TRUE(j.contains(key));
  EXPECT_EQ(j.size(), 3u);
}

TEST(cli_mzi_scan, realised_regime_modulation_depth) {
  const Json j = as_json({"mzi-scan", "--eps1", "0.5", "--eps2", "0.994", "--delta-steps", "37"});
  EXPECT_NEAR(check(j, "fit_depth")["value"].get<double>(), 0.154, 5e-4);
  EXPECT_NEAR(check(j, "fit_offset")["value"].get<double>(), 0.5, 1e-12);
}

TEST(cli_mzi_scan, flat_lines) {
  // eps1 = 1 with eps2 = 1/2 sits at 1/2; eps2 = 1 reproduces eps1.
  for (const Json& row :
       as_json({"mzi-scan", "--eps1", "1", "--eps2", "0.5", "--delta-steps", "9"})["rows"]) {
    EXPECT_NEAR(row["p10"].get<double>(), 0.5, 1e-12);
  }
  for (const Json& row :
       as_json({"mzi-scan", "--eps1", "0.27", "--eps2", "1", "--delta-steps", "9"})["rows"]) {
    EXPECT_NEAR(row["p10"].get<double>(), 0.27, 1e-12);
  }
}

TEST(cli_mzi_scan, csv_header_and_trailing_checks) {
  const Result r = invoke({"mzi-scan", "--delta-steps", "4"});
  ASSERT_EQ(r.code, 0);
  const auto lines = split_lines(r.out);
  ASSERT_GE(lines.size(), 5u);
  EXPECT_EQ(lines[0], "delta,p10,p01,p_other,eps_analytic,abs_diff,row_sum");
  for (std::size_t i = 1; i <= 4; ++i) {
    EXPECT_EQ(std::count(lines[i].begin(), lines[i].end(), ','), 6) << lines[i];
  }
  for (std::size_t i = 5; i < lines.size(); ++i) EXPECT_EQ(lines[i].rfind("# check ", 0), 0u);
}

TEST(cli_kerr, tradeoff_examples) {
  const Json j = as_json({"kerr-tradeoff", "--amp", "0,1,2,4", "--lambda", "0.5"});
  ASSERT_EQ(j["rows"].size(), 4u);
  EXPECT_EQ(j["rows"][0]["path_confidence"].get<double>(), 0.5);
  EXPECT_EQ(check(j, "monotone")["value"].get<double>(), 1.0);
  // exp(-16 (1 - cos 0.5)) = 0.141 is not small enough; at lambda = 1 it is.
  const Json far = as_json({"kerr-tradeoff", "--amp", "4", "--lambda", "1"});
  const double damping = std::exp(-16.0 * (1.0 - std::cos(1.0)));
  ASSERT_LT(damping, 0.01);
  EXPECT_LT(far["rows"][0]["visibility"].get<double>(), 0.01);
  for (const Json& row : j["rows"]) EXPECT_NEAR(row["row_sum"].get<double>(), 1.0, 1e-9);
}

TEST(cli_kerr, number_probe_is_uninformative) {
  for (const char* lambda : {"0.1", "0.5", "1", "2.5"}) {
    const Json j = as_json({"kerr-tradeoff", "--probe", "number", "--amp", "0,1,1.5,2",
                            "--lambda", lambda});
    for (const Json& row : j["rows"]) EXPECT_EQ(row["path_confidence"].get<double>(), 0.5);
  }
}

TEST(cli_kerr, fixed_truncation_that_leaks_is_rejected) {
  const Result r = invoke({"kerr-tradeoff", "--amp", "3", "--nmax", "10"});
  EXPECT_EQ(r.code, povmlab::cli::kExitUsage);
  EXPECT_NE(r.err.find("leaks"), std::string::npos);
}

TEST(cli_spin, examples) {
  const Json xy = as_json({"spin", "--a1", "1,0,0", "--a2", "0,1,0"});
  EXPECT_NEAR(check(xy, "criterion")["value"].get<double>(), 2.0 * std::sqrt(2.0), 1e-14);
  EXPECT_EQ(check(xy, "coexistent")["value"].get<double>(), 0.0);
  EXPECT_EQ(xy["rows"].size(), 2u);

  const Json unsharp = as_json({"spin", "--a1", "0.6,0,0", "--a2", "0,0.6,0"});
  EXPECT_EQ(check(unsharp, "coexistent")["value"].get<double>(), 1.0);
  EXPECT_EQ(check(unsharp, "oracle_coexistent")["value"].get<double>(), 1.0);
  EXPECT_EQ(unsharp["rows"].size(), 6u);
  EXPECT_EQ(check(unsharp, "witness_min_eigenvalue")["status"], "pass");

  const Json zz = as_json({"spin", "--a1", "0,0,1", "--a2", "0,0,1"});
  EXPECT_EQ(check(zz, "coexistent")["value"].get<double>(), 1.0);
  EXPECT_EQ(check(zz, "witness_completeness")["status"], "pass");
}

TEST(cli_spin, negative_components_parse) {
  const Json j = as_json({"spin", "--a1", "-0.5,0,0", "--a2", "0,-0.5,0.1"});
  EXPECT_DOUBLE_EQ(j["config"]["a2"][1].get<double>(), -0.5);
}

TEST(cli_spin_phase, half_spin_half_circle) {
  const Json j = as_json({"spin-phase", "--spin", "0.5", "--interval", "0,3.141592653589793"});
  EXPECT_NEAR(check(j, "X0.eigenvalue_min")["value"].get<double>(), 0.5 - 1.0 / std::numbers::pi,
              1e-12);
  EXPECT_NEAR(check(j, "X0.eigenvalue_max")["value"].get<double>(), 0.5 + 1.0 / std::numbers::pi,
              1e-12);
  EXPECT_EQ(j["rows"].size(), 4u);
  for (const Json& c : j["checks"]) EXPECT_NE(c["status"], "fail") << c.dump();
}

TEST(cli_spin_phase, larger_spin_several_intervals) {
  const Json j = as_json({"spin-phase", "--spin", "2.5", "--interval", "0.3,1.2", "--interval",
                          "4,6", "--interval", "0,6.283185307179586", "--seed", "4"});
  EXPECT_EQ(j["rows"].size(), 3u * 36u);
  EXPECT_LT(check(j, "X1.uniformity_residual")["value"].get<double>(), 1e-12);
  EXPECT_LT(check(j, "X0.covariance_residual")["value"].get<double>(), 1e-10);
  EXPECT_EQ(check(j, "X2.identity_residual")["value"].get<double>(), 0.0);
}

TEST(cli_phase_space, marginals_match_convolutions) {
  const Json j = as_json({"phase-space", "--grid-d", "7", "--seed", "11"});
  EXPECT_EQ(j["rows"].size(), 14u);
  for (const Json& c : j["checks"]) EXPECT_NE(c["status"], "fail") << c.dump();
}

TEST(cli_exit, usage_errors_are_64) {
  using povmlab::cli::kExitUsage;
  EXPECT_EQ(invoke({}).code, kExitUsage);
  EXPECT_EQ(invoke({"no-such-command"}).code, kExitUsage);
  EXPECT_EQ(invoke({"mzi-scan", "--eps1", "1.5"}).code, kExitUsage);
  EXPECT_EQ(invoke({"mzi-scan", "--delta-min", "2", "--delta-max", "1"}).code, kExitUsage);
  EXPECT_EQ(invoke({"mzi-scan", "--format", "xml"}).code, kExitUsage);
  EXPECT_EQ(invoke({"spin", "--a1", "1,0", "--a2", "0,1,0"}).code, kExitUsage);
  EXPECT_EQ(invoke({"spin", "--a1", "0.8,0.8,0", "--a2", "0,1,0"}).code, kExitUsage);
  EXPECT_EQ(invoke({"spin-phase", "--interval", "2,1"}).code, kExitUsage);
  EXPECT_EQ(invoke({"spin-phase", "--interval", "0,1,2"}).code, kExitUsage);
  EXPECT_EQ(invoke({"spin-phase", "--spin", "0.3"}).code, kExitUsage);
  EXPECT_EQ(invoke({"kerr-tradeoff", "--amp", "-1"}).code, kExitUsage);
  EXPECT_EQ(invoke({"mzi-scan", "--out", "/nonexistent-dir/out.csv"}).code, kExitUsage);
  EXPECT_EQ(invoke({"--help"}).code, 0);
}

TEST(cli_exit, verify_fails_with_two_under_tight_tolerance) {
  const std::vector<std::string> args{"mzi-scan", "--eps1", "0.3", "--eps2", "0.7", "--verify"};
  EXPECT_EQ(invoke(args).code, 0);
  {
    ScopedEnv env("POVMLAB_TOL", "1e-30");
    const Result r = invoke(args);
    EXPECT_EQ(r.code, povmlab::cli::kExitVerifyFailed);
    EXPECT_NE(r.err.find("max_abs_diff"), std::string::npos);
    // Without --verify the same run reports but succeeds.
    EXPECT_EQ(invoke({"mzi-scan", "--eps1", "0.3", "--eps2", "0.7"}).code, 0);
  }
  {
    ScopedEnv env("POVMLAB_TOL", "not-a-number");
    EXPECT_EQ(invoke(args).code, povmlab::cli::kExitUsage);
  }
}

TEST(cli_output, file_matches_stdout_and_runs_repeat_exactly) {
  const auto dir = std::filesystem::temp_directory_path() / "povmlab_cli_test";
  std::filesystem::create_directories(dir);
  const std::vector<std::vector<std::string>> commands{
      {"mzi-scan", "--eps1", "0.4", "--delta-steps", "17"},
      {"kerr-tradeoff", "--amp", "0,0.5,2"},
      {"spin", "--a1", "0.6,0,0", "--a2", "0,0.6,0"},
      {"spin-phase", "--spin", "1.5", "--interval", "0.5,2", "--seed", "9"},
      {"phase-space", "--grid-d", "5", "--seed", "9"},
  };
  for (const auto& cmd : commands) {
    for (const char* format : {"csv", "json"}) {
      auto args = cmd;
      args.insert(args.end(), {"--format", format});
      const Result a = invoke(args);
      const Result b = invoke(args);
      ASSERT_EQ(a.code, 0) << a.err;
      EXPECT_EQ(a.out, b.out) << cmd[0];

      const auto path = (dir / (cmd[0] + "." + format)).string();
      args.insert(args.end(), {"--out", path});
      ASSERT_EQ(invoke(args).code, 0);
      std::ifstream in(path, std::ios::binary);
      const std::string file((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
      EXPECT_EQ(file, a.out) << cmd[0];
    }
  }
  std::filesystem::remove_all(dir);
}

}  // namespace
