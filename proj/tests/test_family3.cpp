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

#include <cmath>
#include <numbers>

#include "slitdetect/family3.hpp"
#include "slitdetect/fixtures.hpp"
#include "slitdetect/verifier.hpp"
#include "testing.hpp"

using namespace slitdetect;

namespace {

constexpr double kS3 = std::numbers::sqrt3;

Family3Params random_params(tu::Rand& rng) {
  Family3Params p;
  p.mu2 = rng.polar(3.0);
  p.mu3 = rng.polar(3.0);
  p.lambda2 = rng.polar(3.0);
  p.lambda3 = rng.polar(3.0);
  p.theta = rng.uniform(0.0, 2 * std::numbers::pi);
  const auto [lo, hi] = family3::p_interval(p);
  p.p = lo + (hi - lo) * rng.uniform(0.001, 0.999);
  return p;
}

TEST(DeriveU, IdealPoint) {
  // Radicand (1/6 - 5/36) / 5 = 1/180.
  EXPECT_NEAR(family3::derive_u(Family3Params::ideal_experiment()).real(), std::sqrt(1.0 / 180.0), 1e-15);
  EXPECT_NEAR(family3::derive_u(Family3Params::ideal_experiment()).imag(), 0.0, 1e-15);
  auto p = Family3Params::ideal_experiment();
  p.theta = std::numbers::pi;
  EXPECT_NEAR(family3::derive_u(p).real(), -1.0 / (6 * std::sqrt(5.0)), 1e-15);
}

TEST(DeriveU, VanishesAtLowerBoundary) {
  auto p = Family3Params::ideal_experiment();
  const double lo = family3::p_interval(p).first;
  p.p = lo + 1e-12;
  EXPECT_LT(std::abs(family3::derive_u(p)), 1e-5);
}

TEST(DeriveU, OutOfRangeThrows) {
  auto p = Family3Params::ideal_experiment();
  const auto [lo, hi] = family3::p_interval(p);
  EXPECT_DOUBLE_EQ(lo, 0.5);
  EXPECT_DOUBLE_EQ(hi, 0.7);
  for (double bad : {lo, hi, 0.1, 0.9}) {
    p.p = bad;
    EXPECT_THROW(family3::derive_u(p), ParamRangeError);
    EXPECT_THROW(family3::derive_q(p), ParamRangeError);
    EXPECT_THROW(family3::build(p), ParamRangeError);
  }
}

TEST(DeriveQ, TraceOracleAtIdealPoint) {
  // trace(G_I) = rank = 3 and trace(P) = 11/6 force trace(Q) = 7/6 = 5q - 3/2.
  const auto b = family3::build(Family3Params::ideal_experiment());
  const double trace_p = (b.G_I(0, 0) + b.G_I(1, 1) + b.G_I(2, 2)).real();
  EXPECT_NEAR(trace_p, 11.0 / 6.0, 1e-15);
  const double q_from_trace = ((3.0 - trace_p) + 1.5) / 5.0;
  EXPECT_NEAR(family3::derive_q(Family3Params::ideal_experiment()), q_from_trace, 1e-15);
  EXPECT_NEAR(q_from_trace, 8.0 / 15.0, 1e-15);
}

TEST(DeriveQ, PrintedFormulaFailsIdealPoint) {
  const auto p = Family3Params::ideal_experiment();
  EXPECT_NEAR(family3::derive_q_as_printed(p), 1.0 / 30.0, 1e-15);
  EXPECT_GT(std::abs(family3::derive_q_as_printed(p) - fixtures::ideal_g()(3, 3).real()), 0.4);
}

TEST(DeriveQ, RealSubfamilyWithoutThirdCoefficient) {
  Family3Params p;
  p.mu2 = p.lambda2 = 1.0;
  p.mu3 = p.lambda3 = 0.0;
  for (double f : {0.1, 0.5, 0.9}) {
    const auto [lo, hi] = family3::p_interval(p);
    p.p = lo + f * (hi - lo);
    const CMatrix g = family3::build_g(p);
    EXPECT_TRUE(is_idempotent(g)) << "p = " << p.p;
  }
}

TEST(Build, ReproducesIdealMatrix) {
  const auto b = family3::build(Family3Params::ideal_experiment());
  EXPECT_LE(max_abs(b.G_I - fixtures::ideal_g()), 1e-12);
  EXPECT_NEAR(b.G_I(0, 0).real(), 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(b.G_I(0, 1).real(), -1.0 / (2 * kS3), 1e-12);
  EXPECT_NEAR(b.G_I(0, 3).real(), 1.0 / (6 * std::sqrt(5.0)), 1e-12);
  EXPECT_NEAR(b.G_I(3, 3).real(), 8.0 / 15.0, 1e-12);
  EXPECT_NEAR(b.G_I(5, 5).real(), 8.0 / 15.0, 1e-12);
}

TEST(Build, StateIsProportionalToIdealState) {
  const auto b = family3::build(Family3Params::ideal_experiment());
  const CVector ref = fixtures::ideal_psi();
  EXPECT_NEAR(std::abs(inner(ref, b.psi)), norm(ref) * norm(b.psi), 1e-14);
  EXPECT_NEAR(norm(b.psi), 1.0, 1e-15);
}

TEST(Build, LiteralStateDisagreesWithFamily) {
  const auto b = family3::build(Family3Params::ideal_experiment());
  const CVector lit = fixtures::literal_ideal_psi();
  EXPECT_GT(norm(b.Y * lit - b.G * lit), 0.1);
  EXPECT_LT(std::abs(inner(lit, b.psi)), 0.9);
}

TEST(Build, InternalLambdaCoefficient) {
  tu::Rand rng(21);
  for (int t = 0; t < 50; ++t) {
    const auto p = random_params(rng);
    const auto b = family3::build(p);
    const BlockVector bv = decompose(b.psi, b.space);
    const Complex lam = -p.lambda2 * std::conj(p.lambda3) / (1.0 + std::norm(p.lambda3));
    // delta_3 = lambda * delta_2 on the y side.
    EXPECT_LE(std::abs(bv.y_blocks[2][3][0] - lam * bv.y_blocks[1][3][0]), 1e-14);
  }
}

TEST(Build, RandomDrawsSatisfyConditions) {
  tu::Rand rng(22);
  for (int t = 0; t < 200; ++t) {
    const auto p = random_params(rng);
    const auto b = family3::build(p);
    ASSERT_TRUE(is_projector(b.G_I)) << "draw " << t;
    const auto r = check(b);
    ASSERT_TRUE(r.passed()) << "draw " << t;
    EXPECT_GT(frobenius_norm(commutator(slit_projector(b.space), b.G_I)), 0.0);
    EXPECT_TRUE(detect_correlations(b).empty());
  }
}

TEST(Build, VectorSeedsWidenTheBlocks) {
  auto p = Family3Params::ideal_experiment();
  p.seed_a3 = CVector{1, Complex(0, 2)};
  p.seed_delta2 = CVector{0.5, 0.5, 1};
  const auto b = family3::build(p);
  EXPECT_EQ(b.space.partition().dims(), (std::vector<std::size_t>{2, 1, 1, 3}));
  EXPECT_EQ(b.psi.dim(), 6u * 7u);
  EXPECT_TRUE(check(b).passed());
}

TEST(Build, ZeroSeedThrows) {
  auto p = Family3Params::ideal_experiment();
  p.seed_b2 = CVector{0, 0};
  EXPECT_THROW(family3::build(p), SeedError);
}

}  // namespace
