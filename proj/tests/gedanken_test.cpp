// Copyright 2026 The planckangle Authors
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

#include "planckangle/gedanken.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "gtest/gtest.h"

using namespace planckangle::gedanken;

TEST(DeviceConfig, RejectsNonPositive) {
  EXPECT_THROW(DeviceConfig(0, 1, 1), std::domain_error);
  EXPECT_THROW(DeviceConfig(1, -1, 1), std::domain_error);
  EXPECT_THROW(DeviceConfig(1, 1, INFINITY), std::domain_error);
}

TEST(UncertaintyFloor, ReferenceValues) {
  EXPECT_NEAR(uncertainty_floor({1, 1, 1}), 0.7071067811865476, 1e-15);
  EXPECT_DOUBLE_EQ(uncertainty_floor({4, 1, 2}), 0.5);
  EXPECT_NEAR(uncertainty_floor({1e6, 1e6, 1e6}), 1.0 / (std::numbers::sqrt2 * 1e6), 1e-20);
}

TEST(CheckFeasible, Flags) {
  auto a = check_feasible({1, 2, 3});
  EXPECT_TRUE(a.hoop_ok && a.causal_ok && a.feasible);
  auto b = check_feasible({2, 1, 3});
  EXPECT_FALSE(b.hoop_ok);
  EXPECT_FALSE(b.feasible);
  auto c = check_feasible({1, 3, 2});
  EXPECT_TRUE(c.hoop_ok);
  EXPECT_FALSE(c.causal_ok);
  EXPECT_FALSE(c.feasible);
  // Hoop is strict, causality is not.
  EXPECT_FALSE(check_feasible({1, 1, 1}).hoop_ok);
  EXPECT_TRUE(check_feasible({0.5, 1, 1}).causal_ok);
}

TEST(CheckFeasible, CoefficientOverrides) {
  const Constraints c{2.0, 3.0};
  EXPECT_FALSE(check_feasible({1, 2, 10}, c).hoop_ok);  // needs r > 2m
  EXPECT_FALSE(check_feasible({1, 3, 8}, c).causal_ok);  // needs t >= 3r
  EXPECT_TRUE(check_feasible({1, 3, 9}, c).feasible);
}

TEST(MinAngle, ReferenceValues) {
  const auto b1 = min_angle(1.0);
  EXPECT_NEAR(b1.delta_phi, 0.7071067811865476, 1e-15);
  EXPECT_EQ(b1.argmin_m, 1.0);
  EXPECT_EQ(b1.argmin_t, 1.0);
  EXPECT_NEAR(min_angle(10.0).delta_phi, 0.07071067811865475, 1e-16);
  EXPECT_THROW(min_angle(0.0), std::domain_error);
  EXPECT_THROW(min_angle(-3.0), std::domain_error);
}

TEST(MinAngle, OneMetreDevice) {
  const double r = from_si(1.0, UnitKind::kLength);
  EXPECT_NEAR(r, 1e35 / 1.616255, 1e35 * 1e-12);
  const double phi = min_angle(r).delta_phi;
  EXPECT_NEAR(phi, 1.1428e-35, 0.001e-35);
  // Order l_P / r in SI.
  EXPECT_NEAR(phi / to_si(1.0, UnitKind::kLength), 1.0 / std::numbers::sqrt2, 1e-9);
}

TEST(MinAngle, ScalingLaw) {
  for (double r : {0.5, 1.0, 3.0, 1e10}) {
    for (double k : {2.0, 10.0, 0.25}) {
      EXPECT_NEAR(min_angle(k * r).delta_phi, min_angle(r).delta_phi / k, 1e-15 * min_angle(r).delta_phi);
    }
  }
}

TEST(MinAngle, IsLowerBoundOnFeasibleRegion) {
  std::mt19937_64 rng(201);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (double r : {1.0, 10.0, 100.0}) {
    const double bound = min_angle(r).delta_phi;
    for (int i = 0; i < 100000; ++i) {
      const double m = r * (1.0 - u01(rng));  // (0, r]
      const double t = r * std::exp(5.0 * u01(rng));
      const DeviceConfig cfg(m, r, t);
      if (!check_feasible(cfg).feasible) continue;
      ASSERT_GE(uncertainty_floor(cfg), bound - 1e-12);
    }
  }
}

TEST(MinAngleScan, MatchesAnalyticWithinOnePercent) {
  // Frozen from an independent numpy scan over the same log grids.
  const double expected[] = {0.7103064960284637, 0.07103064960284637, 0.0071030649602846375};
  int i = 0;
  for (double r : {1.0, 10.0, 100.0}) {
    const auto s = min_angle_scan(r, 256, 256, 1.0, 10.0);
    EXPECT_NEAR(s.delta_phi, expected[i], 1e-12 * expected[i]);
    EXPECT_LE(std::abs(s.delta_phi / min_angle(r).delta_phi - 1.0), 0.01);
    EXPECT_GE(s.delta_phi, min_angle(r).delta_phi);
    EXPECT_NEAR(s.argmin_m, 0.9910109002566694 * r, 1e-9 * r);
    EXPECT_EQ(s.argmin_t, r);
    ++i;
  }
}

TEST(MinAngleScan, WideMassRangeReachesSameCell) {
  // Mass grid over [r/10, 10r]: its first point below r coincides with the narrow scan's.
  const double expected[] = {0.7103064960284637, 0.07103064960284637, 0.0071030649602846375};
  int i = 0;
  for (double r : {1.0, 10.0, 100.0}) {
    const auto s = min_angle_scan(r, 256, 256, 10.0, 10.0);
    EXPECT_NEAR(s.delta_phi, expected[i], 1e-12 * expected[i]);
    EXPECT_NEAR(s.argmin_m / r, 0.9910109002566692, 1e-12);
    const auto fine = min_angle_scan(r, 512, 512, 10.0, 10.0);
    EXPECT_NEAR(fine.delta_phi / min_angle(r).delta_phi - 1.0, 0.002255558635744004, 1e-9);
    ++i;
  }
}

TEST(MinAngleScan, RefinementHalvesGap) {
  for (double r : {1.0, 10.0, 100.0}) {
    const double a = min_angle(r).delta_phi;
    const double g1 = min_angle_scan(r, 256, 256, 1.0, 10.0).delta_phi - a;
    const double g2 = min_angle_scan(r, 512, 512, 1.0, 10.0).delta_phi - a;
    EXPECT_GT(g1, 0.0);
    EXPECT_LE(g2, 0.5 * g1);
  }
}

TEST(MinAngleScan, RestrictedMassRaisesMinimum) {
  const auto s = min_angle_scan(1.0, 256, 256, 0.5, 10.0);
  EXPECT_NEAR(s.delta_phi, 1.0, 1e-12);
  EXPECT_NEAR(s.argmin_m, 0.5, 1e-15);
  EXPECT_GT(s.delta_phi, min_angle(1.0).delta_phi);
}

TEST(MinAngleScan, Preconditions) {
  EXPECT_THROW(min_angle_scan(1.0, 8, 256, 1, 10), std::domain_error);
  EXPECT_THROW(min_angle_scan(0.0, 256, 256, 1, 10), std::domain_error);
  EXPECT_THROW(min_angle_scan(1.0, 256, 256, 1, 0.5), std::domain_error);
  // Every scanned mass collapses: empty feasible set.
  EXPECT_THROW(min_angle_scan(1.0, 32, 32, 1.0, 10.0, Constraints{20.0, 1.0}), std::domain_error);
}

TEST(MinAngleScan, GeneralizedCoefficients) {
  const Constraints c{2.0, 3.0};
  const auto exact = min_angle(5.0, c);
  EXPECT_NEAR(exact.delta_phi, std::sqrt(3.0 * 2.0 / 2.0) / 5.0, 1e-15);
  const auto s = min_angle_scan(5.0, 512, 512, 1.0, 10.0, c);
  EXPECT_GE(s.delta_phi, exact.delta_phi);
  EXPECT_LE(s.delta_phi / exact.delta_phi - 1.0, 0.01);
}

TEST(Units, PlanckLengthToTwoFigures) {
  const double lp = to_si(1.0, UnitKind::kLength);
  EXPECT_NEAR(lp, 1.6e-35, 0.05e-35);
  EXPECT_EQ(lp, 1.616255e-35);
}

TEST(Units, PlanckTimeAndMass) {
  EXPECT_NEAR(to_si(1.0, UnitKind::kTime), 5.391246e-44, 1e-50);
  EXPECT_NEAR(to_si(1.0, UnitKind::kMass), 2.176434e-8, 1e-14);
  EXPECT_EQ(to_si(0.5, UnitKind::kAngle), 0.5);
}

TEST(Units, PlanckLengthAgreesWithHbarGOverC3) {
  const auto& k = planckangle::constants();
  const double derived = std::sqrt(k.reduced_planck * k.newton_g / std::pow(k.speed_of_light, 3));
  EXPECT_NEAR(derived / k.planck_length, 1.0, 1e-6);
}

TEST(Units, RoundTrip) {
  std::mt19937_64 rng(203);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  for (auto kind : {UnitKind::kLength, UnitKind::kTime, UnitKind::kMass, UnitKind::kAngle}) {
    for (int i = 0; i < 1000; ++i) {
      const double v = std::pow(10.0, u(rng));
      ASSERT_NEAR(from_si(to_si(v, kind), kind) / v, 1.0, 1e-12);
    }
  }
}

TEST(Units, UnknownKind) {
  EXPECT_EQ(parse_unit_kind("time"), UnitKind::kTime);
  EXPECT_THROW(parse_unit_kind("furlong"), std::domain_error);
  EXPECT_THROW(to_si(NAN, UnitKind::kLength), std::domain_error);
}

TEST(ConstantsTable, EmbeddedTextMatchesDataFile) {
  std::ifstream in(PLANCKANGLE_CONSTANTS_FILE, std::ios::binary);
  ASSERT_TRUE(in) << PLANCKANGLE_CONSTANTS_FILE;
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), planckangle::kConstantsTable);
  EXPECT_EQ(planckangle::constants().version, "codata-2018.1");
  EXPECT_EQ(planckangle::constants_hash().size(), 16u);
}

TEST(ClassicalAngle, ReferenceValues) {
  EXPECT_EQ(classical_angle(0.0, 5.0, 1.0), 1.0);
  EXPECT_NEAR(classical_angle(std::numbers::pi, 2.0, 0.0), 0.0, 1e-15);
  EXPECT_NEAR(classical_angle(0.1, 3.0, 0.2), 0.5, 1e-15);
  EXPECT_NEAR(classical_angle(-1.0, 1.0, 0.0), 2 * std::numbers::pi - 1.0, 1e-15);
}
