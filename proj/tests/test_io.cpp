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

#include "slitdetect/fixtures.hpp"
#include "slitdetect/io.hpp"
#include "testing.hpp"

using namespace slitdetect;
using io::json;

namespace {

TEST(MatrixJson, RoundTrip) {
  tu::Rand rng(61);
  const CMatrix m = rng.matrix(3, 4);
  const json j = io::to_json(m);
  EXPECT_EQ(j["rows"], 3);
  EXPECT_EQ(j["data"].size(), 12u);
  const CMatrix back = io::matrix_from_json(json::parse(j.dump()));
  EXPECT_LE(max_abs(back - m), 1e-15);
}

TEST(MatrixJson, RejectsMalformed) {
  EXPECT_THROW(io::matrix_from_json(json{{"rows", 2}, {"cols", 2}, {"data", {1, 2, 3}}}),
               DimensionError);
  EXPECT_THROW(io::matrix_from_json(json{{"rows", 1}}), FormatError);
  EXPECT_THROW(io::matrix_from_json(json{{"rows", 1}, {"cols", 1}, {"data", {"x"}}}),
               FormatError);
}

TEST(VectorJson, ObjectAndBareArray) {
  const CVector v{1, Complex(0, -2)};
  EXPECT_EQ(io::vector_from_json(io::to_json(v)), v);
  EXPECT_EQ(io::vector_from_json(json::parse("[1, [0, -2]]")), v);
  EXPECT_THROW(io::vector_from_json(json::parse(R"({"dim": 3, "data": [1, 2]})")), FormatError);
}

TEST(SpaceJson, RoundTripAndValidation) {
  const ProductSpace sp(10, BlockPartition({1, 1, 2, 1, 1, 1, 1, 3}));
  const json j = io::to_json(sp);
  EXPECT_EQ(j["rank_e"], 5);
  EXPECT_EQ(io::space_from_json(j), sp);
  EXPECT_THROW(io::space_from_json(json::parse(R"({"dim_i": 6, "rank_e": 2, "partition": [1,1,1,1]})")),
               DimensionError);
  EXPECT_THROW(io::space_from_json(json::parse(R"({"dim_i": 6, "partition": [1,1,1]})")),
               ModeError);
}

TEST(ParamsJson, Family3DefaultsAndComplexForms) {
  const auto p = io::family3_params_from_json(json::parse(R"({"p": 0.6, "mu2": [1, 2]})"));
  EXPECT_EQ(p.p, 0.6);
  EXPECT_EQ(p.mu2, Complex(1, 2));
  EXPECT_EQ(p.lambda3, Family3Params::ideal_experiment().lambda3);
  const auto ideal = Family3Params::ideal_experiment();
  EXPECT_EQ(io::family3_params_from_json(io::to_json(ideal)), ideal);
  EXPECT_THROW(io::family3_params_from_json(json::parse("[1]")), FormatError);
}

TEST(ParamsJson, Family4RoundTrip) {
  auto p = Family4Params::particular_choice();
  p.alpha3 = Complex(0.5, -0.25);
  p.seed_theta4 = CVector{1, 2};
  EXPECT_EQ(io::family4_params_from_json(io::to_json(p)), p);
}

TEST(BundleJson, VerifiesStoredOperators) {
  const auto b = family3::build(Family3Params::ideal_experiment());
  json j = json::parse(io::to_json(b).dump());
  EXPECT_TRUE(io::verify_bundle_json(j, {}).passed());
  j["G"]["data"][0][0] = j["G"]["data"][0][0].get<double>() + 1e-3;
  const auto r = io::verify_bundle_json(j, {});
  EXPECT_FALSE(r.passed());
  EXPECT_FALSE(r.find("C.3")->pass);
  j["kind"] = "family9";
  EXPECT_THROW(io::verify_bundle_json(j, {}), FormatError);
}

TEST(BundleJson, FourPropertyBundle) {
  const auto b = family4::build(Family4Params::particular_choice());
  const json j = json::parse(io::to_json(b).dump());
  const auto r = io::verify_bundle_json(j, {});
  EXPECT_TRUE(r.passed());
  EXPECT_FALSE(r.correlations.empty());
  EXPECT_NEAR(j["derived"]["x"]["Gamma"].get<double>(), 8.0, 1e-15);
}

TEST(ReportJson, CsvHasOneLinePerCondition) {
  const auto r = check(family3::build(Family3Params::ideal_experiment()));
  const std::string csv = io::to_csv(r);
  EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')),
            r.conditions.size() + 1);
  const json j = io::to_json(r);
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_EQ(j["conditions"].size(), r.conditions.size());
}

TEST(Files, MissingFileIsIoError) {
  EXPECT_THROW(io::read_json_file("/nonexistent/params.json"), IoError);
}

}  // namespace
