// Copyright 2026 The svrapd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "svrapd/schedule.h"

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "svrapd/rng.h"

namespace svrapd {
namespace {

// Reference decimals below come from a one-off 30-digit evaluation of the
// schedule and condition formulas.

LipschitzProfile example_profile() {
  LipschitzProfile p;
  p.L_xx = 1;
  p.L_xy = 2;
  p.L_yx = 2;
  p.L_yy = 0;
  return p;
}

LipschitzProfile bilinear_profile() {
  LipschitzProfile p;
  p.L_xx = 0;
  p.L_xy = 1;
  p.L_yx = 1;
  p.L_yy = 0;
  return p;
}

TEST(ConstantScheduleTest, PinnedExample) {
  const auto s = ParameterSchedule::Constant(example_profile(), 100, 1.0, 0.5, 0.5);
  EXPECT_NEAR(s.L_x(), 6.78232998312526813906455632663, 1e-14);
  EXPECT_NEAR(s.L_y(), 4.89897948556635619639456814941, 1e-14);
  EXPECT_DOUBLE_EQ(s.L_x(), std::sqrt(46.0));
  EXPECT_DOUBLE_EQ(s.L_y(), std::sqrt(24.0));
  const EpochParameters e = s.at(1);
  EXPECT_NEAR(e.tau, 0.0147441956154897133457925137535, 1e-16);
  EXPECT_NEAR(e.sigma, 0.0204124145231931508183107006225, 1e-16);
  EXPECT_DOUBLE_EQ(e.gamma_x, 0.005);
  EXPECT_DOUBLE_EQ(e.gamma_y, 0.005);
  EXPECT_EQ(e.inner_steps, 100);
  ASSERT_TRUE(e.eta.has_value());
  EXPECT_NEAR(*e.eta, 0.0147441956154897133457925137535, 1e-16);
  EXPECT_EQ(s.alpha(), 2.0);
  EXPECT_EQ(s.beta(), 0.0);
  EXPECT_EQ(s.at(37).tau, e.tau);
}

TEST(ConstantScheduleTest, SingleComponent) {
  const auto s = ParameterSchedule::Constant(example_profile(), 1, 2.5, 0.4, 0.3);
  const EpochParameters e = s.at(1);
  EXPECT_EQ(e.inner_steps, 3);
  EXPECT_DOUBLE_EQ(e.gamma_x, 0.4);
  EXPECT_DOUBLE_EQ(e.gamma_y, 0.3);
  // With n = 1 the b coefficients are negative, so the quadratic defining
  // eta has no real root.
  EXPECT_FALSE(e.eta.has_value());
  const ValidationReport r = validate(s, example_profile(), 1);
  EXPECT_FALSE(r.eta_feasible);
  EXPECT_FALSE(r.passed());
}

TEST(ConstantScheduleTest, ConstructionErrors) {
  EXPECT_THROW(ParameterSchedule::Constant(example_profile(), 0, 1.0, 0.5, 0.5), std::invalid_argument);
  EXPECT_THROW(ParameterSchedule::Constant(example_profile(), 10, 0.0, 0.5, 0.5), std::invalid_argument);
  EXPECT_THROW(ParameterSchedule::Constant(example_profile(), 10, 1.0, 1.0, 0.5), std::invalid_argument);
  EXPECT_THROW(ParameterSchedule::Constant(example_profile(), 10, 1.0, 0.5, 0.0), std::invalid_argument);
}

TEST(PolynomialScheduleTest, PinnedExample) {
  const auto s = ParameterSchedule::Polynomial(example_profile(), 100, 2.0, 0.5, 0.5);
  const EpochParameters e = s.at(3);
  EXPECT_EQ(e.inner_steps, 32);
  EXPECT_NEAR(e.tau, 0.0491473187182990444859750458451, 1e-16);
  EXPECT_NEAR(e.sigma, 0.0680413817439771693943690020752, 1e-16);
  EXPECT_NEAR(e.gamma_x, 0.0555555555555555555555555555556, 1e-17);
  ASSERT_TRUE(e.eta.has_value());
  EXPECT_NEAR(*e.eta, 0.0245736593591495222429875229226, 1e-16);
}

TEST(PolynomialScheduleTest, FormulaInstantiation) {
  const auto s = ParameterSchedule::Polynomial(example_profile(), 10, 1.0, 0.5, 0.5);
  EXPECT_DOUBLE_EQ(s.at(1).gamma_x, 0.5);
  EXPECT_DOUBLE_EQ(s.at(10).gamma_x, 0.005);
  const auto t2 = ParameterSchedule::Polynomial(example_profile(), 10, 2.0, 0.5, 0.5);
  EXPECT_EQ(t2.at(3).inner_steps, 32);
}

TEST(PolynomialScheduleTest, Monotonicity) {
  const auto s = ParameterSchedule::Polynomial(example_profile(), 50, 1.0, 0.5, 0.7);
  for (std::int64_t k = 1; k < 200; ++k) {
    const EpochParameters a = s.at(k), b = s.at(k + 1);
    ASSERT_GT(a.gamma_x, b.gamma_x);
    ASSERT_GT(a.gamma_y, b.gamma_y);
    ASSERT_LT(a.inner_steps, b.inner_steps);
  }
}

TEST(PolynomialScheduleTest, TauEventuallyNonIncreasing) {
  SplitMix64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    LipschitzProfile p;
    p.L_xx = std::exp(rng.uniform(-4.6, 4.6));
    p.L_xy = std::exp(rng.uniform(-4.6, 4.6));
    p.L_yx = std::exp(rng.uniform(-4.6, 4.6));
    p.L_yy = std::exp(rng.uniform(-4.6, 4.6));
    const auto s = ParameterSchedule::Polynomial(p, 10, 1.0, 0.5, 0.5);
    std::int64_t k0 = 1;
    while (k0 < 1000 && 1.0 / (s.L_x() * static_cast<double>(k0)) > s.at(k0).tau) ++k0;
    for (std::int64_t k = k0; k < 1000; ++k) ASSERT_GE(s.at(k).tau, s.at(k + 1).tau);
  }
}

TEST(ScheduleTest, DoublingConstantsHalvesTheSqrtNBranch) {
  LipschitzProfile p = example_profile();
  p.L_xx = 50;  // keeps the 1/(L_x sqrt n) branch active
  const auto a = ParameterSchedule::Constant(p, 100, 1.0, 0.5, 0.5);
  const auto b = ParameterSchedule::Constant(p.scaled(2.0), 100, 1.0, 0.5, 0.5);
  EXPECT_DOUBLE_EQ(a.at(1).tau, 1.0 / (a.L_x() * 10.0));
  EXPECT_DOUBLE_EQ(b.at(1).tau, 0.5 * a.at(1).tau);
}

TEST(ScheduleTest, StepScaleMultipliesStepsOnly) {
  const auto s = ParameterSchedule::Constant(example_profile(), 100, 1.0, 0.5, 0.5);
  const auto t = s.with_step_scale(10.0, 3.0);
  EXPECT_DOUBLE_EQ(t.at(1).tau, 10.0 * s.at(1).tau);
  EXPECT_DOUBLE_EQ(t.at(1).sigma, 3.0 * s.at(1).sigma);
  EXPECT_EQ(t.at(1).gamma_x, s.at(1).gamma_x);
  EXPECT_EQ(t.at(1).inner_steps, s.at(1).inner_steps);
  EXPECT_EQ(t.tau_scale(), 10.0);
  EXPECT_EQ(t.sigma_scale(), 3.0);
}

TEST(ScheduleTest, KindNames) {
  EXPECT_EQ(to_string(ScheduleKind::kConstant), "constant");
  EXPECT_EQ(parse_schedule_kind("polynomial"), ScheduleKind::kPolynomial);
  EXPECT_THROW(parse_schedule_kind("cubic"), std::invalid_argument);
}

TEST(ValidateTest, PinnedChecksForExampleProfile) {
  const auto s = ParameterSchedule::Constant(example_profile(), 100, 1.0, 0.5, 0.5);
  const ValidationReport r = validate(s, example_profile(), 1);
  ASSERT_TRUE(r.eta_feasible);
  EXPECT_NEAR(r.M_x, -1.89939593254487251409334333897, 1e-12);
  EXPECT_NEAR(r.M_y, -21.0784539498674372365196101796, 1e-12);
  EXPECT_NEAR(r.checks[0].lhs, 0.56027943338860910714011552263427, 1e-14);
  EXPECT_NEAR(r.checks[0].rhs, 0.339116499156263406953227816331284, 1e-14);
  EXPECT_NEAR(r.checks[1].lhs, 0.353860694771753120299020330084797, 1e-14);
  EXPECT_NEAR(r.checks[1].rhs, 0.244948974278317809819728407470591, 1e-14);
  EXPECT_NEAR(r.checks[2].lhs, 2.1179535649239177067663401100281, 1e-13);
  EXPECT_EQ(r.checks[3].lhs, 0.0);
  // The printed schedule does not meet the step-size conditions here.
  for (const auto& c : r.checks) EXPECT_FALSE(c.passed) << c.name;
  EXPECT_FALSE(r.passed());
  EXPECT_NE(r.failure_summary().find("gamma_x/tau"), std::string::npos);
}

TEST(ValidateTest, ClosedFormSlackForPureBilinearProfile) {
  const auto s = ParameterSchedule::Constant(bilinear_profile(), 10, 1.0, 0.5, 0.5);
  const ValidationReport r = validate(s, bilinear_profile(), 1);
  ASSERT_TRUE(r.eta_feasible);
  EXPECT_NEAR(*r.params.eta, 0.1, 1e-15);
  EXPECT_NEAR(r.M_x, -1.3, 1e-13);
  EXPECT_NEAR(r.M_y, -3.64133164220590791815939574041, 1e-13);
  EXPECT_NEAR(r.checks[0].slack(), 0.5 - 0.8, 1e-14);
  EXPECT_NEAR(r.checks[1].slack(), 0.387298334620741688517926539978251 - 0.6, 1e-14);
  EXPECT_NEAR(r.checks[2].slack(), -1.3 - 1.2, 1e-13);
}

TEST(ValidateTest, ZeroLyyUsesZeroOverZeroConvention) {
  const auto s = ParameterSchedule::Polynomial(example_profile(), 100, 2.0, 0.5, 0.5);
  const ValidationReport r = validate(s, example_profile(), 3);
  EXPECT_EQ(s.beta(), 0.0);
  EXPECT_EQ(r.checks[3].lhs, 0.0);
  EXPECT_TRUE(std::isfinite(r.checks[3].rhs));
}

TEST(ValidateTest, TenfoldTauFails) {
  SplitMix64 rng(32);
  for (int trial = 0; trial < 20; ++trial) {
    LipschitzProfile p;
    p.L_xx = std::exp(rng.uniform(-4.6, 4.6));
    p.L_xy = std::exp(rng.uniform(-4.6, 4.6));
    p.L_yx = std::exp(rng.uniform(-4.6, 4.6));
    p.L_yy = std::exp(rng.uniform(-4.6, 4.6));
    for (std::int64_t n : {1, 10, 100}) {
      const auto s = ParameterSchedule::Constant(p, n, 1.0, 0.5, 0.5).with_step_scale(10.0, 1.0);
      ASSERT_FALSE(validate(s, p, 1).passed());
      const auto q = ParameterSchedule::Polynomial(p, n, 1.0, 0.5, 0.5).with_step_scale(10.0, 1.0);
      ASSERT_FALSE(validate(q, p, 5).passed());
    }
  }
}

}  // namespace
}  // namespace svrapd
