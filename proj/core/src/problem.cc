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

#include "svrapd/problem.h"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "svrapd/linalg.h"

namespace svrapd {

void LipschitzProfile::check() const {
  for (double v : {L_xx, L_xy, L_yx, L_yy, C_X, C_Y}) {
    if (!std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument("LipschitzProfile: constants must be finite and nonnegative");
    }
  }
  if (!(L_xy > 0.0) || !(L_yx > 0.0)) {
    throw std::invalid_argument("LipschitzProfile: L_xy and L_yx must be positive");
  }
  if (C_X < 1.0 || C_Y < 1.0) throw std::invalid_argument("LipschitzProfile: C_X, C_Y must be >= 1");
}

LipschitzProfile LipschitzProfile::scaled(double factor) const {
  LipschitzProfile p = *this;
  p.L_xx *= factor;
  p.L_xy *= factor;
  p.L_yx *= factor;
  p.L_yy *= factor;
  return p;
}

void SaddlePointProblem::check_index(std::size_t i) const {
  if (i >= num_components()) {
    throw std::out_of_range("component index " + std::to_string(i) + " out of range [0, " +
                            std::to_string(num_components()) + ")");
  }
}

void SaddlePointProblem::check_dims(ConstSpan x, ConstSpan y) const {
  linalg::require_same_size(x.size(), primal_dim(), "primal vector");
  linalg::require_same_size(y.size(), dual_dim(), "dual vector");
}

double SaddlePointProblem::coupling_value(ConstSpan x, ConstSpan y) const {
  double s = 0.0;
  for (std::size_t i = 0; i < num_components(); ++i) s += component_value(i, x, y);
  return s / static_cast<double>(num_components());
}

void SaddlePointProblem::add_grad_x_full(ConstSpan x, ConstSpan y, double scale,
                                         MutableSpan out) const {
  const double w = scale / static_cast<double>(num_components());
  for (std::size_t i = 0; i < num_components(); ++i) add_grad_x_component(i, x, y, w, out);
}

void SaddlePointProblem::add_grad_y_full(ConstSpan x, ConstSpan y, double scale,
                                         MutableSpan out) const {
  const double w = scale / static_cast<double>(num_components());
  for (std::size_t i = 0; i < num_components(); ++i) add_grad_y_component(i, x, y, w, out);
}

PrimalDualPoint SaddlePointProblem::initial_point() const {
  return PrimalDualPoint{primal_domain().center(), dual_domain().uniform()};
}

Vector grad_x_component(const SaddlePointProblem& p, std::size_t i, ConstSpan x, ConstSpan y) {
  p.check_index(i);
  p.check_dims(x, y);
  Vector out(p.primal_dim(), 0.0);
  p.add_grad_x_component(i, x, y, 1.0, out);
  return out;
}

Vector grad_y_component(const SaddlePointProblem& p, std::size_t i, ConstSpan x, ConstSpan y) {
  p.check_index(i);
  p.check_dims(x, y);
  Vector out(p.dual_dim(), 0.0);
  p.add_grad_y_component(i, x, y, 1.0, out);
  return out;
}

Vector grad_x_full(const SaddlePointProblem& p, ConstSpan x, ConstSpan y) {
  p.check_dims(x, y);
  Vector out(p.primal_dim(), 0.0);
  p.add_grad_x_full(x, y, 1.0, out);
  return out;
}

Vector grad_y_full(const SaddlePointProblem& p, ConstSpan x, ConstSpan y) {
  p.check_dims(x, y);
  Vector out(p.dual_dim(), 0.0);
  p.add_grad_y_full(x, y, 1.0, out);
  return out;
}

double lagrangian(const SaddlePointProblem& p, ConstSpan x, ConstSpan y) {
  p.check_dims(x, y);
  if (!p.primal_domain().contains(x)) return std::numeric_limits<double>::infinity();
  if (!p.dual_domain().contains(y)) return -std::numeric_limits<double>::infinity();
  return p.coupling_value(x, y);
}

bool is_feasible(const SaddlePointProblem& p, const PrimalDualPoint& z, double sum_tol) {
  return p.primal_domain().contains(z.x) && p.dual_domain().contains(z.y, sum_tol);
}

double fixed_point_residual(const SaddlePointProblem& p, const PrimalDualPoint& z) {
  p.check_dims(z.x, z.y);
  Vector gx = grad_x_full(p, z.x, z.y);
  Vector gy = grad_y_full(p, z.x, z.y);
  const Box& box = p.primal_domain();
  double rx = 0.0;
  for (std::size_t i = 0; i < z.x.size(); ++i) {
    const double moved = std::clamp(z.x[i] - gx[i], box.lower[i], box.upper[i]);
    rx = std::max(rx, std::abs(z.x[i] - moved));
  }
  Vector shifted = z.y;
  linalg::axpy(1.0, gy, shifted);
  const Vector projected = project_simplex(shifted);
  return rx + linalg::dist_inf(z.y, projected);
}

GeometryPair default_geometries(const SaddlePointProblem& p) {
  return GeometryPair{BregmanGeometry::Euclidean(p.primal_domain()),
                      BregmanGeometry::Entropy(p.dual_domain())};
}

double FullBatchView::component_value(std::size_t i, ConstSpan x, ConstSpan y) const {
  check_index(i);
  return inner_.coupling_value(x, y);
}

void FullBatchView::add_grad_x_component(std::size_t i, ConstSpan x, ConstSpan y, double scale,
                                         MutableSpan out) const {
  check_index(i);
  inner_.add_grad_x_full(x, y, scale, out);
}

void FullBatchView::add_grad_y_component(std::size_t i, ConstSpan x, ConstSpan y, double scale,
                                         MutableSpan out) const {
  check_index(i);
  inner_.add_grad_y_full(x, y, scale, out);
}

std::uint64_t FullBatchView::fingerprint() const {
  return Fingerprint().add(std::string("full-batch")).add(inner_.fingerprint()).value();
}

void Fingerprint::mix_byte(unsigned char b) {
  hash_ ^= b;
  hash_ *= 1099511628211ULL;
}

Fingerprint& Fingerprint::add(std::uint64_t v) {
  for (int k = 0; k < 8; ++k) mix_byte(static_cast<unsigned char>(v >> (8 * k)));
  return *this;
}

Fingerprint& Fingerprint::add(double v) { return add(std::bit_cast<std::uint64_t>(v)); }

Fingerprint& Fingerprint::add(ConstSpan v) {
  add(static_cast<std::uint64_t>(v.size()));
  for (double d : v) add(d);
  return *this;
}

Fingerprint& Fingerprint::add(const std::string& s) {
  add(static_cast<std::uint64_t>(s.size()));
  for (char c : s) mix_byte(static_cast<unsigned char>(c));
  return *this;
}

}  // namespace svrapd
