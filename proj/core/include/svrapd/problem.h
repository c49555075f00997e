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

#ifndef SVRAPD_PROBLEM_H_
#define SVRAPD_PROBLEM_H_

#include <cstdint>
#include <string>

#include "svrapd/geometry.h"
#include "svrapd/types.h"

namespace svrapd {

// Component Lipschitz constants of the partial gradients:
//   ||grad_x Phi_i(x,y) - grad_x Phi_i(x',y')|| <= L_xx ||x-x'|| + L_xy ||y-y'||
//   ||grad_y Phi_i(x,y) - grad_y Phi_i(x',y')|| <= L_yy ||y-y'|| + L_yx ||x-x'||
// plus the norm-compatibility constants C_X, C_Y (both 1 for euclidean norms).
struct LipschitzProfile {
  double L_xx = 0.0;
  double L_xy = 1.0;
  double L_yx = 1.0;
  double L_yy = 0.0;
  double C_X = 1.0;
  double C_Y = 1.0;

  // Throws std::invalid_argument if a constant is negative or non-finite,
  // L_xy or L_yx is not positive, or C_X / C_Y is below 1.
  void check() const;
  LipschitzProfile scaled(double factor) const;
};

// Finite-sum saddle-point problem
//   min_{x in X} max_{y in Y}  f(x) + (1/n) sum_i Phi_i(x, y) - h(y)
// where f is the indicator of a box X and h is the indicator of the
// probability simplex Y.
//
// Gradient evaluations are accumulated ("add_*") so that sparse components
// and full-gradient overrides stay cheap; callers zero the output first.
class SaddlePointProblem {
 public:
  virtual ~SaddlePointProblem() = default;

  virtual std::size_t num_components() const = 0;
  virtual const Box& primal_domain() const = 0;
  virtual const Simplex& dual_domain() const = 0;

  std::size_t primal_dim() const { return primal_domain().dim(); }
  std::size_t dual_dim() const { return dual_domain().dim; }

  // Phi_i(x, y).
  virtual double component_value(std::size_t i, ConstSpan x, ConstSpan y) const = 0;
  // out += scale * grad_x Phi_i(x, y)
  virtual void add_grad_x_component(std::size_t i, ConstSpan x, ConstSpan y, double scale,
                                    MutableSpan out) const = 0;
  // out += scale * grad_y Phi_i(x, y)
  virtual void add_grad_y_component(std::size_t i, ConstSpan x, ConstSpan y, double scale,
                                    MutableSpan out) const = 0;

  // Phi(x, y); the default averages component_value.
  virtual double coupling_value(ConstSpan x, ConstSpan y) const;
  // out += scale * grad Phi(x, y); the defaults average the components.
  virtual void add_grad_x_full(ConstSpan x, ConstSpan y, double scale, MutableSpan out) const;
  virtual void add_grad_y_full(ConstSpan x, ConstSpan y, double scale, MutableSpan out) const;

  // Analytic component constants, valid uniformly over the feasible set.
  virtual LipschitzProfile lipschitz() const = 0;
  // Constants of Phi itself (n = 1 view), used by the full-gradient engine.
  virtual LipschitzProfile aggregate_lipschitz() const = 0;

  // Default start: box center for x, uniform vector for y.
  virtual PrimalDualPoint initial_point() const;

  // Stable 64-bit content hash of the problem data.
  virtual std::uint64_t fingerprint() const = 0;
  virtual std::string describe() const = 0;

  void check_index(std::size_t i) const;
  void check_dims(ConstSpan x, ConstSpan y) const;
};

Vector grad_x_component(const SaddlePointProblem& p, std::size_t i, ConstSpan x, ConstSpan y);
Vector grad_y_component(const SaddlePointProblem& p, std::size_t i, ConstSpan x, ConstSpan y);
Vector grad_x_full(const SaddlePointProblem& p, ConstSpan x, ConstSpan y);
Vector grad_y_full(const SaddlePointProblem& p, ConstSpan x, ConstSpan y);

// L(x, y) = f(x) + Phi(x, y) - h(y). Returns +inf when x is outside the box and
// -inf when y is off the simplex (x is checked first).
double lagrangian(const SaddlePointProblem& p, ConstSpan x, ConstSpan y);

bool is_feasible(const SaddlePointProblem& p, const PrimalDualPoint& z, double sum_tol = 1e-9);

// Natural (projected-gradient) residual with unit step:
//   ||x - P_X(x - grad_x Phi)||_inf + ||y - P_Y(y + grad_y Phi)||_inf.
// Zero exactly at saddle points; independent of the Bregman geometry.
double fixed_point_residual(const SaddlePointProblem& p, const PrimalDualPoint& z);

// Euclidean primal geometry on the box, entropy dual geometry on the simplex.
GeometryPair default_geometries(const SaddlePointProblem& p);

// Presents Phi as a single component (n = 1). Full gradients of the wrapped
// problem become component 0.
class FullBatchView final : public SaddlePointProblem {
 public:
  explicit FullBatchView(const SaddlePointProblem& inner) : inner_(inner) {}

  std::size_t num_components() const override { return 1; }
  const Box& primal_domain() const override { return inner_.primal_domain(); }
  const Simplex& dual_domain() const override { return inner_.dual_domain(); }
  double component_value(std::size_t i, ConstSpan x, ConstSpan y) const override;
  void add_grad_x_component(std::size_t i, ConstSpan x, ConstSpan y, double scale,
                            MutableSpan out) const override;
  void add_grad_y_component(std::size_t i, ConstSpan x, ConstSpan y, double scale,
                            MutableSpan out) const override;
  LipschitzProfile lipschitz() const override { return inner_.aggregate_lipschitz(); }
  LipschitzProfile aggregate_lipschitz() const override { return inner_.aggregate_lipschitz(); }
  PrimalDualPoint initial_point() const override { return inner_.initial_point(); }
  std::uint64_t fingerprint() const override;
  std::string describe() const override { return "full-batch(" + inner_.describe() + ")"; }

 private:
  const SaddlePointProblem& inner_;
};

// FNV-1a helpers for fingerprints.
class Fingerprint {
 public:
  Fingerprint& add(std::uint64_t v);
  Fingerprint& add(double v);
  Fingerprint& add(ConstSpan v);
  Fingerprint& add(const std::string& s);
  std::uint64_t value() const { return hash_; }

 private:
  void mix_byte(unsigned char b);
  std::uint64_t hash_ = 14695981039346656037ULL;
};

}  // namespace svrapd

#endif  // SVRAPD_PROBLEM_H_
