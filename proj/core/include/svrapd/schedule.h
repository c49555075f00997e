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

#ifndef SVRAPD_SCHEDULE_H_
#define SVRAPD_SCHEDULE_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "svrapd/problem.h"

namespace svrapd {

enum class ScheduleKind { kConstant, kPolynomial };

std::string to_string(ScheduleKind kind);
ScheduleKind parse_schedule_kind(const std::string& name);

// Parameters in effect during epoch k.
struct EpochParameters {
  double tau = 0.0;
  double sigma = 0.0;
  double gamma_x = 0.0;
  double gamma_y = 0.0;
  std::int64_t inner_steps = 0;
  // Design parameter for the step-size conditions. Empty when the quadratic
  // that defines it has a negative discriminant.
  std::optional<double> eta;
};

// Step sizes, momentum weights and inner-loop lengths.
//
// Constant (per epoch k, all identical):
//   T_bar = ceil(T n), gamma_x = gbar_x / n, gamma_y = gbar_y / n,
//   tau   = min{1 / (L_x sqrt n), (1 - gbar_x/n) / (L_xx + L_yx + 2 L_x)},
//   sigma = min{1 / (L_y sqrt n), (1 - gbar_y/n) / (L_yy + L_xy + L_y)},
//   eta   = min{1/(L_x sqrt n), 1/(L_y sqrt n), r(b_x, L_x), r(b_y, L_y)},
//   b_x = (1 - 1/n)/tau - (L_xx + L_yx),  b_y = (1 - 1/n)/sigma - (L_yy + L_xy).
// Polynomial:
//   T_k = ceil(T (k+1)^2), gamma_x^k = gbar_x / k^2, gamma_y^k = gbar_y / k^2,
//   tau_k = min{1/(L_x k), (1 - gbar_x/k^2) / (L_xx + L_yx + 2 L_x)}, sigma_k alike,
//   eta_k = min{gbar_x/(L_x k), gbar_y/(L_y k), r(b_x^k, L_x), r(b_y^k, L_y)},
//   b_x^k = (1 - gamma_x^k)/tau_k - (L_xx + L_yx), b_y^k alike.
// where r(b, L) = (b + sqrt(b^2 - 4 L^2)) / (2 L^2),
// L_x = sqrt(6 C_X L_xx^2 + 10 C_Y L_yx^2), L_y = sqrt(6 C_X L_xy^2 + 10 C_Y L_yy^2),
// alpha = L_yx and beta = L_yy.
class ParameterSchedule {
 public:
  static ParameterSchedule Constant(const LipschitzProfile& profile, std::int64_t n, double T,
                                    double gbar_x, double gbar_y);
  static ParameterSchedule Polynomial(const LipschitzProfile& profile, std::int64_t n, double T,
                                      double gbar_x, double gbar_y);

  // k >= 1.
  EpochParameters at(std::int64_t k) const;

  ScheduleKind kind() const { return kind_; }
  const LipschitzProfile& profile() const { return profile_; }
  std::int64_t n() const { return n_; }
  double T() const { return T_; }
  double gbar_x() const { return gbar_x_; }
  double gbar_y() const { return gbar_y_; }
  double L_x() const { return L_x_; }
  double L_y() const { return L_y_; }
  double alpha() const { return profile_.L_yx; }
  double beta() const { return profile_.L_yy; }

  // Multiplies every tau_k / sigma_k by the given factors (user overrides).
  // eta is recomputed from the scaled steps.
  ParameterSchedule with_step_scale(double tau_factor, double sigma_factor) const;
  double tau_scale() const { return tau_scale_; }
  double sigma_scale() const { return sigma_scale_; }

 private:
  ParameterSchedule(ScheduleKind kind, const LipschitzProfile& profile, std::int64_t n, double T,
                    double gbar_x, double gbar_y);

  ScheduleKind kind_;
  LipschitzProfile profile_;
  std::int64_t n_;
  double T_;
  double gbar_x_;
  double gbar_y_;
  double L_x_;
  double L_y_;
  double tau_scale_ = 1.0;
  double sigma_scale_ = 1.0;
};

struct InequalityCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool passed = false;

  double slack() const { return rhs - lhs; }
};

// Step-size conditions for epoch k:
//   (6 C_X L_xx^2 + 8 C_Y L_yx^2) eta <= gamma_x / tau
//   (6 C_X L_xy^2 + 8 C_Y L_yy^2) eta <= gamma_y / sigma
//   L_yx^2 / alpha + 2 C_Y L_yx^2 eta <= M_x
//   L_yy^2 / beta  + 2 C_Y L_yy^2 eta <= M_y        (0^2/0 := 0)
// with M_x = (1 - gamma_x)/tau - L_xx - (6 C_X L_xx^2 + 8 C_Y L_yx^2) eta - 1/eta,
//      M_y = (1 - gamma_y)/sigma - (alpha + beta) - 8 C_Y L_yy^2 eta - 1/eta.
struct ValidationReport {
  std::int64_t epoch = 0;
  EpochParameters params;
  bool eta_feasible = false;
  double M_x = 0.0;
  double M_y = 0.0;
  std::array<InequalityCheck, 4> checks;

  bool passed() const;
  std::string failure_summary() const;
};

ValidationReport validate(const ParameterSchedule& schedule, const LipschitzProfile& profile,
                          std::int64_t k);

}  // namespace svrapd

#endif  // SVRAPD_SCHEDULE_H_
