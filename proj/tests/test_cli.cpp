// Copyright 2026 The slitdetect Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "slitdetect/cli.hpp"

using namespace slitdetect;
using io::json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "slitdetect");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("slitdetect_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string write(const std::string& name, const json& j) {
    const auto path = (dir_ / name).string();
    std::ofstream(path) << j.dump();
    return path;
  }

  std::filesystem::path dir_;
};

TEST_F(CliTest, ReproduceIdealFixture) {
  const auto r = run({"reproduce", "--fixture", "sec2.3", "--tol", "1e-12"});
  EXPECT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["G_I"]["rows"], 6);
  EXPECT_TRUE(j["report"]["passed"].get<bool>());
}

TEST_F(CliTest, ReproduceFourPropertyFixture) {
  const auto r = run({"reproduce", "--fixture", "sec5"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_FALSE(json::parse(r.out)["report"]["correlations"].empty());
}

TEST_F(CliTest, OutOfRangeParamsExitTwo) {
  const auto params = write("bad.json", {{"p", 0.1}});
  const auto r = run({"generate3", "--params", params});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("outside"), std::string::npos);
}

TEST_F(CliTest, TamperedBundleExitOne) {
  const auto gen = run({"generate3"});
  ASSERT_EQ(gen.code, 0);
  json bundle = json::parse(gen.out);
  const auto good = write("good.json", bundle);
  EXPECT_EQ(run({"verify", "--bundle", good}).code, 0);
  bundle["G"]["data"][5][0] = bundle["G"]["data"][5][0].get<double>() + 1e-3;
  const auto r = run({"verify", "--bundle", write("tampered.json", bundle)});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("C.3"), std::string::npos);
  EXPECT_FALSE(json::parse(r.out)["passed"].get<bool>());
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"reproduce", "--fixture", "sec2.3", "--unknown"}).code, 2);
  EXPECT_EQ(run({"reproduce", "--fixture", "sec9"}).code, 2);
  EXPECT_EQ(run({"generate3", "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"verify", "--bundle", (dir_ / "missing.json").string()}).code, 2);
  EXPECT_EQ(run({"simulate"}).code, 2);
}

TEST_F(CliTest, OutputFileAndCsv) {
  const auto out = (dir_ / "report.csv").string();
  const auto r = run({"generate4", "--format", "csv", "--out", out});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(out);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "name,kind,value,threshold,pass");
}

TEST_F(CliTest, EnvironmentTolerance) {
  ::setenv(cli::kTolEnv, "1e-20", 1);
  const auto strict = run({"generate3"});
  ::setenv(cli::kTolEnv, "nonsense", 1);
  const auto bad = run({"generate3"});
  ::unsetenv(cli::kTolEnv);
  EXPECT_EQ(strict.code, 1);
  EXPECT_EQ(json::parse(strict.out)["report"]["tolerance"], 1e-20);
  EXPECT_EQ(bad.code, 2);
  // An explicit flag wins over the environment.
  ::setenv(cli::kTolEnv, "1e-20", 1);
  EXPECT_EQ(run({"generate3", "--tol", "1e-12"}).code, 0);
  ::unsetenv(cli::kTolEnv);
}

TEST_F(CliTest, SimulateIsReproducible) {
  const auto a = run({"simulate", "--fixture", "sec2.3", "--samples", "20000", "--seed", "11"});
  const auto b = run({"simulate", "--fixture", "sec2.3", "--samples", "20000", "--seed", "11"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const json j = json::parse(a.out);
  EXPECT_EQ(j["p_E1_given_T1"], 1.0);
  EXPECT_EQ(j["cells"].size(), 8u);
}

TEST_F(CliTest, SimulateFromFiles) {
  const auto psi = write("psi.json", io::to_json(fixtures::ideal_psi()));
  const auto space = write("space.json", io::to_json(fixtures::ideal_space()));
  const auto r = run({"simulate", "--psi", psi, "--space", space, "--samples", "1000",
                      "--format", "csv"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("slit,block,count", 0), 0u);
}

TEST_F(CliTest, SolveFixture) {
  const auto r = run({"solve", "--fixture", "sec2.3", "--draws", "20"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  ASSERT_EQ(j["operators"].size(), 1u);
  EXPECT_LT(j["operators"][0]["residual"].get<double>(), 1e-10);
  EXPECT_EQ(j["operators"][0]["nullity"], 4);
  EXPECT_EQ(j["operators"][0]["candidates"], 20);
}

TEST_F(CliTest, SolveRejectsBadState) {
  const auto psi = write("psi.json", io::to_json(CVector::basis(24, 2)));
  const auto space = write("space.json", io::to_json(fixtures::ideal_space()));
  const auto r = run({"solve", "--psi", psi, "--space", space});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("T psi = E psi"), std::string::npos);
}

}  // namespace
