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

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace svrapd {

namespace {

// Larger root of L^2 e^2 - b e + 1 = 0; empty when the discriminant is negative.
std::optional<double> upper_root(double b, double L) {
  const double disc = b * b - 4.0 * L * L;
  if (!(disc >= 0.0)) return std::nullopt;
  return (b + std::sqrt(disc)) / (2.0 * L * L);
}

void check_gamma_bar(double g, const char* name) {
  if (!(g > 0.0 && g < 1.0)) {
    throw std::invalid_argument(std::string("ParameterSchedule: ") + name + " must lie in (0, 1)");
  }
}

double safe_inverse(double v) { return v > 0.0 ? 1.0 / v : std::numeric_limits<double>::infinity(); }

}  // namespace

std::string to_string(ScheduleKind kind) {
  return kind == ScheduleKind::kConstant ? "constant" : "polynomial";
}

ScheduleKind parse_schedule_kind(const std::string& name) {
  if (name == "constant") return ScheduleKind::kConstant;
  if (name == "polynomial") return ScheduleKind::kPolynomial;
  throw std::invalid_argument("unknown schedule '" + name + "' (expected constant or polynomial)");
}

ParameterSchedule::ParameterSchedule(ScheduleKind kind, const LipschitzProfile& profile,
                                     std::int64_t n, double T, double gbar_x, double gbar_y)
    : kind_(kind), profile_(profile), n_(n), T_(T), gbar_x_(gbar_x), gbar_y_(gbar_y) {
  profile_.check();
  if (n_ < 1) throw std::invalid_argument("ParameterSchedule: n must be >= 1");
  if (!(T_ > 0.0) || !std::isfinite(T_)) {
    throw std::invalid_argument("ParameterSchedule: T must be positive and finite");
  }
  check_gamma_bar(gbar_x_, "gamma_bar_x");
  check_gamma_bar(gbar_y_, "gamma_bar_y");
  const auto& p = profile_;
  L_x_ = std::sqrt(6.0 * p.C_X * p.L_xx * p.L_xx + 10.0 * p.C_Y * p.L_yx * p.L_yx);
  L_y_ = std::sqrt(6.0 * p.C_X * p.L_xy * p.L_xy + 10.0 * p.C_Y * p.L_yy * p.L_yy);
  if (!(L_x_ > 0.0) || !(L_y_ > 0.0)) {
    throw std::invalid_argument("ParameterSchedule: L_x and L_y must be positive (L_yx, L_xy > 0)");
  }
}

ParameterSchedule ParameterSchedule::Constant(const LipschitzProfile& profile, std::int64_t n,
                                              double T, double gbar_x, double gbar_y) {
  return ParameterSchedule(ScheduleKind::kConstant, profile, n, T, gbar_x, gbar_y);
}

ParameterSchedule ParameterSchedule::Polynomial(const LipschitzProfile& profile, std::int64_t n,
                                                double T, double gbar_x, double gbar_y) {
  return ParameterSchedule(ScheduleKind::kPolynomial, profile, n, T, gbar_x, gbar_y);
}

ParameterSchedule ParameterSchedule::with_step_scale(double tau_factor,
                                                     double sigma_factor) const {
  if (!(tau_factor > 0.0) || !(sigma_factor > 0.0) || !std::isfinite(tau_factor) ||
      !std::isfinite(sigma_factor)) {
    throw std::invalid_argument("ParameterSchedule: step scale factors must be positive");
  }
  ParameterSchedule copy = *this;
  copy.tau_scale_ *= tau_factor;
  copy.sigma_scale_ *= sigma_factor;
  return copy;
}

EpochParameters ParameterSchedule::at(std::int64_t k) const {
  if (k < 1) throw std::invalid_argument("ParameterSchedule::at: epoch must be >= 1");
  const auto& p = profile_;
  const double kx = static_cast<double>(k);
  EpochParameters e;
  double eta_x_cap = 0.0;
  double eta_y_cap = 0.0;
  double retain_x = 0.0;
  double retain_y = 0.0;
  if (kind_ == ScheduleKind::kConstant) {
    const double n = static_cast<double>(n_);
    const double sn = std::sqrt(n);
    e.inner_steps = static_cast<std::int64_t>(std::ceil(T_ * n));
    e.gamma_x = gbar_x_ / n;
    e.gamma_y = gbar_y_ / n;
    e.tau = std::min(1.0 / (L_x_ * sn), (1.0 - gbar_x_ / n) / (p.L_xx + p.L_yx + 2.0 * L_x_));
    e.sigma = std::min(1.0 / (L_y_ * sn), (1.0 - gbar_y_ / n) / (p.L_yy + p.L_xy + L_y_));
    eta_x_cap = 1.0 / (L_x_ * sn);
    eta_y_cap = 1.0 / (L_y_ * sn);
    retain_x = 1.0 - 1.0 / n;
    retain_y = 1.0 - 1.0 / n;
  } else {
    const double k2 = kx * kx;
    e.inner_steps = static_cast<std::int64_t>(std::ceil(T_ * (kx + 1.0) * (kx + 1.0)));
    e.gamma_x = gbar_x_ / k2;
    e.gamma_y = gbar_y_ / k2;
    e.tau = std::min(1.0 / (L_x_ * kx), (1.0 - gbar_x_ / k2) / (p.L_xx + p.L_yx + 2.0 * L_x_));
    e.sigma = std::min(1.0 / (L_y_ * kx), (1.0 - gbar_y_ / k2) / (p.L_yy + p.L_xy + L_y_));
    eta_x_cap = gbar_x_ / (L_x_ * kx);
    eta_y_cap = gbar_y_ / (L_y_ * kx);
    retain_x = 1.0 - e.gamma_x;
    retain_y = 1.0 - e.gamma_y;
  }
  e.inner_steps = std::max<std::int64_t>(e.inner_steps, 1);
  e.tau *= tau_scale_;
  e.sigma *= sigma_scale_;

  const double b_x = retain_x / e.tau - (p.L_xx + p.L_yx);
  const double b_y = retain_y / e.sigma - (p.L_yy + p.L_xy);
  const auto r_x = upper_root(b_x, L_x_);
  const auto r_y = upper_root(b_y, L_y_);
  if (r_x && r_y) e.eta = std::min({eta_x_cap, eta_y_cap, *r_x, *r_y});
  return e;
}

bool ValidationReport::passed() const {
  if (!eta_feasible) return false;
  return std::all_of(checks.begin(), checks.end(), [](const InequalityCheck& c) { return c.passed; });
}

std::string ValidationReport::failure_summary() const {
  std::ostringstream os;
  if (!eta_feasible) os << "eta infeasible (negative radicand); reduce tau/sigma. ";
  for (const auto& c : checks) {
    if (!c.passed) os << c.name << " violated by " << -c.slack() << ". ";
  }
  std::string s = os.str();
  if (!s.empty()) s.pop_back();
  return s;
}

ValidationReport validate(const ParameterSchedule& schedule, const LipschitzProfile& profile,
                          std::int64_t k) {
  ValidationReport r;
  r.epoch = k;
  r.params = schedule.at(k);
  r.eta_feasible = r.params.eta.has_value();
  const auto& p = profile;
  const auto& e = r.params;
  const double eta = e.eta.value_or(std::numeric_limits<double>::quiet_NaN());
  const double alpha = schedule.alpha();
  const double beta = schedule.beta();
  const double cx = 6.0 * p.C_X * p.L_xx * p.L_xx + 8.0 * p.C_Y * p.L_yx * p.L_yx;
  const double cy = 6.0 * p.C_X * p.L_xy * p.L_xy + 8.0 * p.C_Y * p.L_yy * p.L_yy;
  r.M_x = (1.0 - e.gamma_x) / e.tau - p.L_xx - cx * eta - 1.0 / eta;
  r.M_y = (1.0 - e.gamma_y) / e.sigma - (alpha + beta) - 8.0 * p.C_Y * p.L_yy * p.L_yy * eta -
          1.0 / eta;
  auto ratio = [](double num_sq, double den) { return num_sq == 0.0 ? 0.0 : num_sq * safe_inverse(den); };

  r.checks[0] = {"gamma_x/tau", cx * eta, e.gamma_x / e.tau, false};
  r.checks[1] = {"gamma_y/sigma", cy * eta, e.gamma_y / e.sigma, false};
  r.checks[2] = {"M_x", ratio(p.L_yx * p.L_yx, alpha) + 2.0 * p.C_Y * p.L_yx * p.L_yx * eta, r.M_x,
                 false};
  r.checks[3] = {"M_y", ratio(p.L_yy * p.L_yy, beta) + 2.0 * p.C_Y * p.L_yy * p.L_yy * eta, r.M_y,
                 false};
  for (auto& c : r.checks) c.passed = r.eta_feasible && std::isfinite(c.lhs) && c.lhs <= c.rhs;
  return r;
}

}  // namespace svrapd
