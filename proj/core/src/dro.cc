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

#include "svrapd/dro.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "svrapd/linalg.h"
#include "svrapd/rng.h"

namespace svrapd {

double softplus(double t) {
  // log(1 + e^t) = max(t, 0) + log1p(e^{-|t|})
  return std::max(t, 0.0) + std::log1p(std::exp(-std::abs(t)));
}

double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

DroProblem::DroProblem(std::vector<double> features, std::size_t num_features,
                       std::vector<double> labels, DroOptions options)
    : n_(labels.size()),
      m_(num_features),
      features_(std::move(features)),
      labels_(std::move(labels)),
      options_(options) {
  if (n_ == 0) throw std::invalid_argument("DroProblem: no samples");
  if (m_ == 0) throw std::invalid_argument("DroProblem: no features");
  if (features_.size() != n_ * m_) {
    throw std::invalid_argument("DroProblem: feature matrix has " +
                                std::to_string(features_.size()) + " entries, expected " +
                                std::to_string(n_ * m_));
  }
  for (double b : labels_) {
    if (b != 1.0 && b != -1.0) throw std::invalid_argument("DroProblem: labels must be -1 or +1");
  }
  if (!std::isfinite(options_.rho) || options_.rho < 0.0) {
    throw std::invalid_argument("DroProblem: rho must be finite and nonnegative");
  }
  if (!std::isfinite(options_.lambda_max) || !(options_.lambda_max > 0.0)) {
    throw std::invalid_argument("DroProblem: lambda_max must be finite and positive");
  }
  if (!std::isfinite(options_.box_halfwidth) || !(options_.box_halfwidth > 0.0)) {
    throw std::invalid_argument("DroProblem: box half-width must be finite and positive");
  }
  box_ = Box::Uniform(m_ + 1, -options_.box_halfwidth, options_.box_halfwidth);
  box_.lower[m_] = 0.0;
  box_.upper[m_] = options_.lambda_max;
  simplex_ = Simplex{n_};
}

double DroProblem::margin(std::size_t i, ConstSpan u) const {
  return labels_[i] * linalg::dot(feature_row(i), u.first(m_));
}

double DroProblem::loss(std::size_t i, ConstSpan u) const { return softplus(-margin(i, u)); }

double DroProblem::component_value(std::size_t i, ConstSpan x, ConstSpan y) const {
  const double n = static_cast<double>(n_);
  const double lambda = x[m_];
  const double dev = n * y[i] - 1.0;
  return n * y[i] * loss(i, x) - lambda * (0.5 * dev * dev - options_.rho / n);
}

void DroProblem::add_grad_x_component(std::size_t i, ConstSpan x, ConstSpan y, double scale,
                                      MutableSpan out) const {
  const double n = static_cast<double>(n_);
  const double ny = n * y[i];
  if (ny != 0.0) {
    // grad l_i(u) = -b_i sigmoid(-b_i a_i^T u) a_i
    const double coeff = -scale * ny * labels_[i] * sigmoid(-margin(i, x));
    linalg::axpy(coeff, feature_row(i), out.first(m_));
  }
  const double dev = ny - 1.0;
  out[m_] -= scale * (0.5 * dev * dev - options_.rho / n);
}

void DroProblem::add_grad_y_component(std::size_t i, ConstSpan x, ConstSpan y, double scale,
                                      MutableSpan out) const {
  const double n = static_cast<double>(n_);
  const double lambda = x[m_];
  out[i] += scale * (n * loss(i, x) - lambda * n * (n * y[i] - 1.0));
}

double DroProblem::coupling_value(ConstSpan x, ConstSpan y) const {
  const double n = static_cast<double>(n_);
  const double lambda = x[m_];
  double weighted_loss = 0.0;
  double penalty = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    weighted_loss += y[i] * loss(i, x);
    const double dev = n * y[i] - 1.0;
    penalty += 0.5 * dev * dev;
  }
  return weighted_loss - lambda / n * penalty + lambda * options_.rho / n;
}

void DroProblem::add_grad_y_full(ConstSpan x, ConstSpan y, double scale, MutableSpan out) const {
  const double n = static_cast<double>(n_);
  const double lambda = x[m_];
  for (std::size_t i = 0; i < n_; ++i) {
    out[i] += scale * (loss(i, x) - lambda * (n * y[i] - 1.0));
  }
}

namespace {

double max_row_norm(const DroProblem& p) {
  double a = 0.0;
  for (std::size_t i = 0; i < p.num_components(); ++i) a = std::max(a, linalg::norm2(p.feature_row(i)));
  return a;
}

}  // namespace

// Component bounds, with A = max_i ||a_i|| and c = max(1, n - 1) bounding
// |n y_i - 1| on the simplex:
//   L_xx = n A^2 / 4                  (logistic curvature <= 1/4, y_i <= 1)
//   L_xy = L_yx = n sqrt(A^2 + c^2)   (loss and chi-square cross terms)
//   L_yy = lambda_max n^2
LipschitzProfile DroProblem::lipschitz() const {
  const double n = static_cast<double>(n_);
  const double a = max_row_norm(*this);
  const double c = std::max(1.0, n - 1.0);
  LipschitzProfile p;
  p.L_xx = n * a * a / 4.0;
  p.L_xy = n * std::sqrt(a * a + c * c);
  p.L_yx = p.L_xy;
  p.L_yy = options_.lambda_max * n * n;
  p.C_X = 1.0;
  p.C_Y = 1.0;
  return p;
}

// Bounds for Phi itself, with F = ||[a_1 ... a_n]||_F and
// sup_simplex ||n y - 1|| = sqrt(n (n - 1)).
LipschitzProfile DroProblem::aggregate_lipschitz() const {
  const double n = static_cast<double>(n_);
  const double a = max_row_norm(*this);
  double frob2 = 0.0;
  for (double v : features_) frob2 += v * v;
  LipschitzProfile p;
  p.L_xx = a * a / 4.0;
  p.L_xy = std::max(std::sqrt(frob2 + n * (n - 1.0)), 1e-12);
  p.L_yx = p.L_xy;
  p.L_yy = options_.lambda_max * n;
  return p;
}

LipschitzProfile lipschitz_estimate(const DroProblem& p) { return p.lipschitz(); }

PrimalDualPoint DroProblem::initial_point() const {
  Vector x = box_.center();
  x[m_] = 0.0;
  return PrimalDualPoint{std::move(x), simplex_.uniform()};
}

std::uint64_t DroProblem::fingerprint() const {
  return Fingerprint()
      .add(std::string("dro"))
      .add(static_cast<std::uint64_t>(n_))
      .add(static_cast<std::uint64_t>(m_))
      .add(features_)
      .add(labels_)
      .add(options_.rho)
      .add(options_.lambda_max)
      .add(options_.box_halfwidth)
      .value();
}

std::string DroProblem::describe() const {
  std::ostringstream os;
  os << "dro(n=" << n_ << ", m=" << m_ << ", rho=" << options_.rho
     << ", lambda_max=" << options_.lambda_max << ", box=" << options_.box_halfwidth << ")";
  return os.str();
}

DroProblem synthetic_dro(std::size_t n, std::size_t m, std::uint64_t seed, DroOptions options) {
  if (n == 0 || m == 0) throw std::invalid_argument("synthetic_dro: n and m must be positive");
  SplitMix64 rng(splitmix64(seed ^ 0x5d3c9a1fULL));
  Vector planted(m);
  for (double& v : planted) v = rng.normal();
  const double feature_scale = 1.0 / std::sqrt(static_cast<double>(m));
  std::vector<double> features(n * m);
  std::vector<double> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    double z = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double a = feature_scale * rng.normal();
      features[i * m + j] = a;
      z += a * planted[j];
    }
    double b = z >= 0.0 ? 1.0 : -1.0;
    if (rng.uniform() < 0.1) b = -b;
    labels[i] = b;
  }
  return DroProblem(std::move(features), m, std::move(labels), options);
}

}  // namespace svrapd
