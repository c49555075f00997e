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

#ifndef SVRAPD_DRO_H_
#define SVRAPD_DRO_H_

#include <cstdint>
#include <vector>

#include "svrapd/problem.h"

namespace svrapd {

// Chi-square distributionally robust logistic regression,
//   min_{u in [-w, w]^m, 0 <= lambda <= lambda_max} max_{y in simplex}
//     sum_i y_i l_i(u) - (lambda / n) (0.5 ||n y - 1||^2 - rho),
// written as a finite sum with components
//   Phi_i(x, y) = n y_i l_i(u) - lambda (0.5 (n y_i - 1)^2 - rho / n),
// x = [u; lambda], l_i(u) = log(1 + exp(-b_i a_i^T u)).
struct DroOptions {
  double rho = 50.0;
  double lambda_max = 100.0;
  double box_halfwidth = 10.0;
};

class DroProblem final : public SaddlePointProblem {
 public:
  // features: row-major n x m; labels in {-1, +1}.
  DroProblem(std::vector<double> features, std::size_t num_features, std::vector<double> labels,
             DroOptions options = {});

  std::size_t num_components() const override { return n_; }
  std::size_t num_features() const { return m_; }
  const Box& primal_domain() const override { return box_; }
  const Simplex& dual_domain() const override { return simplex_; }
  const DroOptions& options() const { return options_; }

  std::span<const double> feature_row(std::size_t i) const {
    return {features_.data() + i * m_, m_};
  }
  double label(std::size_t i) const { return labels_[i]; }

  // l_i(u), evaluated in the overflow-safe softplus form.
  double loss(std::size_t i, ConstSpan u) const;

  double component_value(std::size_t i, ConstSpan x, ConstSpan y) const override;
  void add_grad_x_component(std::size_t i, ConstSpan x, ConstSpan y, double scale,
                            MutableSpan out) const override;
  void add_grad_y_component(std::size_t i, ConstSpan x, ConstSpan y, double scale,
                            MutableSpan out) const override;
  double coupling_value(ConstSpan x, ConstSpan y) const override;
  void add_grad_y_full(ConstSpan x, ConstSpan y, double scale, MutableSpan out) const override;

  LipschitzProfile lipschitz() const override;
  LipschitzProfile aggregate_lipschitz() const override;

  // Box center with lambda = 0, uniform y.
  PrimalDualPoint initial_point() const override;

  std::uint64_t fingerprint() const override;
  std::string describe() const override;

 private:
  double margin(std::size_t i, ConstSpan u) const;

  std::size_t n_;
  std::size_t m_;
  std::vector<double> features_;
  std::vector<double> labels_;
  DroOptions options_;
  Box box_;
  Simplex simplex_;
};

// Analytic component profile of a DRO instance (see DroProblem::lipschitz).
LipschitzProfile lipschitz_estimate(const DroProblem& p);

// Gaussian features a_i ~ N(0, I/m), labels from a planted logistic model
// with 10% label noise. Deterministic in seed.
DroProblem synthetic_dro(std::size_t n, std::size_t m, std::uint64_t seed, DroOptions options = {});

// Numerically stable log(1 + exp(t)) and logistic sigmoid.
double softplus(double t);
double sigmoid(double t);

}  // namespace svrapd

#endif  // SVRAPD_DRO_H_
