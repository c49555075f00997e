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

#include "svrapd/bilinear.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "svrapd/linalg.h"
#include "svrapd/rng.h"

namespace svrapd {

namespace {

double frobenius(const std::vector<double>& a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return std::sqrt(s);
}

constexpr double kReferenceTolerance = 1e-13;
constexpr int kReferenceMaxIterations = 2'000'000;

}  // namespace

BilinearProblem::BilinearProblem(std::size_t primal_dim, std::size_t dual_dim,
                                 std::vector<BilinearComponent> components, Box box)
    : p_(primal_dim),
      q_(dual_dim),
      components_(std::move(components)),
      box_(std::move(box)),
      simplex_{dual_dim} {
  if (components_.empty()) throw std::invalid_argument("BilinearProblem: no components");
  if (p_ == 0 || q_ == 0) throw std::invalid_argument("BilinearProblem: zero dimension");
  box_.check();
  linalg::require_same_size(box_.dim(), p_, "BilinearProblem box");
  mean_ = BilinearComponent{std::vector<double>(p_ * q_, 0.0), Vector(p_, 0.0), Vector(q_, 0.0)};
  const double w = 1.0 / static_cast<double>(components_.size());
  for (const auto& comp : components_) {
    linalg::require_same_size(comp.A.size(), p_ * q_, "BilinearProblem A_i");
    linalg::require_same_size(comp.c.size(), p_, "BilinearProblem c_i");
    linalg::require_same_size(comp.d.size(), q_, "BilinearProblem d_i");
    linalg::axpy(w, comp.A, mean_.A);
    linalg::axpy(w, comp.c, mean_.c);
    linalg::axpy(w, comp.d, mean_.d);
  }
  solve_reference();
}

void BilinearProblem::add_gx(const BilinearComponent& comp, std::size_t q, ConstSpan y,
                             double scale, MutableSpan out) {
  for (std::size_t r = 0; r < out.size(); ++r) {
    double s = comp.c[r];
    for (std::size_t k = 0; k < q; ++k) s += comp.A[r * q + k] * y[k];
    out[r] += scale * s;
  }
}

void BilinearProblem::add_gy(const BilinearComponent& comp, std::size_t p, std::size_t q,
                             ConstSpan x, double scale, MutableSpan out) {
  for (std::size_t k = 0; k < q; ++k) {
    double s = -comp.d[k];
    for (std::size_t r = 0; r < p; ++r) s += comp.A[r * q + k] * x[r];
    out[k] += scale * s;
  }
}

double BilinearProblem::component_value(std::size_t i, ConstSpan x, ConstSpan y) const {
  const auto& comp = components_[i];
  double v = linalg::dot(comp.c, x) - linalg::dot(comp.d, y);
  for (std::size_t r = 0; r < p_; ++r) {
    for (std::size_t k = 0; k < q_; ++k) v += x[r] * comp.A[r * q_ + k] * y[k];
  }
  return v;
}

void BilinearProblem::add_grad_x_component(std::size_t i, ConstSpan, ConstSpan y, double scale,
                                           MutableSpan out) const {
  add_gx(components_[i], q_, y, scale, out);
}

void BilinearProblem::add_grad_y_component(std::size_t i, ConstSpan x, ConstSpan, double scale,
                                           MutableSpan out) const {
  add_gy(components_[i], p_, q_, x, scale, out);
}

void BilinearProblem::add_grad_x_full(ConstSpan, ConstSpan y, double scale,
                                      MutableSpan out) const {
  add_gx(mean_, q_, y, scale, out);
}

void BilinearProblem::add_grad_y_full(ConstSpan x, ConstSpan, double scale,
                                      MutableSpan out) const {
  add_gy(mean_, p_, q_, x, scale, out);
}

LipschitzProfile BilinearProblem::lipschitz() const {
  double worst = 0.0;
  for (const auto& comp : components_) worst = std::max(worst, frobenius(comp.A));
  LipschitzProfile prof;
  prof.L_xx = 0.0;
  prof.L_yy = 0.0;
  prof.L_xy = std::max(worst, 1e-12);
  prof.L_yx = prof.L_xy;
  return prof;
}

LipschitzProfile BilinearProblem::aggregate_lipschitz() const {
  LipschitzProfile prof;
  prof.L_xx = 0.0;
  prof.L_yy = 0.0;
  prof.L_xy = std::max(frobenius(mean_.A), 1e-12);
  prof.L_yx = prof.L_xy;
  return prof;
}

// Projected extragradient on the averaged game; the last iterate converges
// linearly for bilinear games over polytopes.
void BilinearProblem::solve_reference() {
  const double norm_a = frobenius(mean_.A);
  const double step = norm_a > 0.0 ? 0.5 / norm_a : 1.0;
  Vector x = box_.center();
  Vector y = simplex_.uniform();
  Vector gx(p_), gy(q_), xh(p_), yh(q_);

  auto grads = [&](ConstSpan xs, ConstSpan ys) {
    linalg::fill(gx, 0.0);
    linalg::fill(gy, 0.0);
    add_gx(mean_, q_, ys, 1.0, gx);
    add_gy(mean_, p_, q_, xs, 1.0, gy);
  };
  auto step_from = [&](ConstSpan x0, ConstSpan y0, Vector& xo, Vector& yo) {
    xo = prox_box(x0, gx, step, box_.lower, box_.upper);
    Vector shifted(y0.begin(), y0.end());
    linalg::axpy(step, gy, shifted);
    yo = project_simplex(shifted);
  };

  reference_ = PrimalDualPoint{x, y};
  reference_residual_ = fixed_point_residual(*this, reference_);
  for (int it = 0; it < kReferenceMaxIterations && reference_residual_ > kReferenceTolerance;
       ++it) {
    grads(x, y);
    step_from(x, y, xh, yh);
    grads(xh, yh);
    step_from(x, y, x, y);
    if (it % 64 == 63) {
      reference_ = PrimalDualPoint{x, y};
      reference_residual_ = fixed_point_residual(*this, reference_);
    }
  }
  reference_ = PrimalDualPoint{x, y};
  reference_residual_ = fixed_point_residual(*this, reference_);
}

std::uint64_t BilinearProblem::fingerprint() const {
  Fingerprint fp;
  fp.add(std::string("bilinear")).add(static_cast<std::uint64_t>(p_)).add(static_cast<std::uint64_t>(q_));
  for (const auto& comp : components_) fp.add(comp.A).add(comp.c).add(comp.d);
  fp.add(box_.lower).add(box_.upper);
  return fp.value();
}

std::string BilinearProblem::describe() const {
  std::ostringstream os;
  os << "bilinear(n=" << components_.size() << ", p=" << p_ << ", q=" << q_ << ")";
  return os.str();
}

BilinearProblem synthetic_bilinear(std::size_t n, std::size_t primal_dim, std::size_t dual_dim,
                                   std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("synthetic_bilinear: n must be positive");
  SplitMix64 rng(splitmix64(seed ^ 0xb111eaULL));
  std::vector<BilinearComponent> comps(n);
  for (auto& comp : comps) {
    comp.A.resize(primal_dim * dual_dim);
    comp.c.resize(primal_dim);
    comp.d.resize(dual_dim);
    for (double& v : comp.A) v = rng.uniform(-1.0, 1.0);
    for (double& v : comp.c) v = rng.uniform(-1.0, 1.0);
    for (double& v : comp.d) v = rng.uniform(-1.0, 1.0);
  }
  return BilinearProblem(primal_dim, dual_dim, std::move(comps),
                         Box::Uniform(primal_dim, -1.0, 1.0));
}

}  // namespace svrapd
