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

#ifndef SVRAPD_BILINEAR_H_
#define SVRAPD_BILINEAR_H_

#include <cstdint>
#include <vector>

#include "svrapd/problem.h"

namespace svrapd {

// Phi_i(x, y) = x^T A_i y + c_i^T x - d_i^T y
struct BilinearComponent {
  std::vector<double> A;  // row-major primal_dim x dual_dim
  Vector c;
  Vector d;
};

// Small bilinear test instance over a box and the simplex. A reference saddle
// point is computed at construction with projected extragradient on the
// averaged game.
class BilinearProblem final : public SaddlePointProblem {
 public:
  BilinearProblem(std::size_t primal_dim, std::size_t dual_dim,
                  std::vector<BilinearComponent> components, Box box);

  std::size_t num_components() const override { return components_.size(); }
  const Box& primal_domain() const override { return box_; }
  const Simplex& dual_domain() const override { return simplex_; }

  double component_value(std::size_t i, ConstSpan x, ConstSpan y) const override;
  void add_grad_x_component(std::size_t i, ConstSpan x, ConstSpan y, double scale,
                            MutableSpan out) const override;
  void add_grad_y_component(std::size_t i, ConstSpan x, ConstSpan y, double scale,
                            MutableSpan out) const override;
  void add_grad_x_full(ConstSpan x, ConstSpan y, double scale, MutableSpan out) const override;
  void add_grad_y_full(ConstSpan x, ConstSpan y, double scale, MutableSpan out) const override;

  LipschitzProfile lipschitz() const override;
  LipschitzProfile aggregate_lipschitz() const override;
  std::uint64_t fingerprint() const override;
  std::string describe() const override;

  const PrimalDualPoint& reference_saddle() const { return reference_; }
  double reference_residual() const { return reference_residual_; }
  const BilinearComponent& mean_component() const { return mean_; }

 private:
  static void add_gx(const BilinearComponent& comp, std::size_t q, ConstSpan y, double scale,
                     MutableSpan out);
  static void add_gy(const BilinearComponent& comp, std::size_t p, std::size_t q, ConstSpan x,
                     double scale, MutableSpan out);
  void solve_reference();

  std::size_t p_;
  std::size_t q_;
  std::vector<BilinearComponent> components_;
  BilinearComponent mean_;
  Box box_;
  Simplex simplex_;
  PrimalDualPoint reference_;
  double reference_residual_ = 0.0;
};

// Entries of A_i, c_i, d_i drawn uniformly from [-1, 1]; box [-1, 1]^p.
// Dimensions are meant to be small (<= 10).
BilinearProblem synthetic_bilinear(std::size_t n, std::size_t primal_dim, std::size_t dual_dim,
                                   std::uint64_t seed);

}  // namespace svrapd

#endif  // SVRAPD_BILINEAR_H_
