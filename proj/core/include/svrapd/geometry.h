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

#ifndef SVRAPD_GEOMETRY_H_
#define SVRAPD_GEOMETRY_H_

#include <variant>

#include "svrapd/types.h"

// Distance-generating functions, mirror maps and Bregman proximal steps for
// the two geometries used by the solvers:
//
//   euclidean:        psi(u) = 0.5 * ||u||^2,      grad psi = identity
//   negative-entropy: psi(u) = sum_i u_i ln u_i,    grad psi = 1 + ln u
//
// The entropy function lives on the positive orthant. Its conjugate map
// grad psi*(g) = exp(g - 1) is therefore *not* renormalized onto the simplex;
// the simplex constraint is only enforced by the proximal step.
namespace svrapd {

enum class GeometryKind { kEuclidean, kEntropy };

using Domain = std::variant<Box, Simplex>;

// Point in the mirror (gradient) space of a geometry.
struct DualVector {
  Vector coefficients;

  std::size_t size() const { return coefficients.size(); }
};

class BregmanGeometry {
 public:
  // Mirror-map inputs above this value make exp(g - 1) overflow-prone.
  static constexpr double kDefaultOverflowThreshold = 700.0;

  static BregmanGeometry Euclidean(Domain domain);
  static BregmanGeometry Entropy(Simplex simplex);

  GeometryKind kind() const { return kind_; }
  std::size_t dimension() const { return dimension_; }
  const Domain& domain() const { return domain_; }
  double overflow_threshold() const { return overflow_threshold_; }
  void set_overflow_threshold(double t) { overflow_threshold_ = t; }

 private:
  BregmanGeometry(GeometryKind kind, Domain domain);

  GeometryKind kind_;
  std::size_t dimension_;
  Domain domain_;
  double overflow_threshold_ = kDefaultOverflowThreshold;
};

// Primal geometry first, dual geometry second.
struct GeometryPair {
  BregmanGeometry primal;
  BregmanGeometry dual;
};

// Dual coordinates are floored here after each entropy prox.
inline constexpr double kEntropyFloor = 1e-15;

double divergence(const BregmanGeometry& geom, ConstSpan u, ConstSpan ubar);

DualVector grad_map(const BregmanGeometry& geom, ConstSpan u);
void grad_map_into(const BregmanGeometry& geom, ConstSpan u, MutableSpan out);

Vector grad_map_inverse(const BregmanGeometry& geom, const DualVector& g);
void grad_map_inverse_into(const BregmanGeometry& geom, ConstSpan g, MutableSpan out);

// grad psi*((1 - gamma) grad psi(current) + gamma * memory)
Vector momentum_combine(const BregmanGeometry& geom, ConstSpan current,
                        const DualVector& memory, double gamma);
void momentum_combine_into(const BregmanGeometry& geom, ConstSpan current,
                           ConstSpan memory, double gamma, MutableSpan out);

// argmin_{lower <= x <= upper} <linear, x> + ||x - xhat||^2 / (2 tau)
Vector prox_box(ConstSpan xhat, ConstSpan linear, double tau, ConstSpan lower,
                ConstSpan upper);

// argmin_{y in simplex} -<ascent, y> + D_entropy(y, yhat) / sigma, i.e.
// y_i proportional to yhat_i * exp(sigma * ascent_i). yhat needs to be
// positive but need not sum to one.
Vector prox_simplex_entropy(ConstSpan yhat, ConstSpan ascent, double sigma);
void prox_simplex_entropy_into(ConstSpan yhat, ConstSpan ascent, double sigma,
                               MutableSpan out);

// Euclidean projection onto the probability simplex (sort-based).
Vector project_simplex(ConstSpan v);

// Generic Bregman proximal step over the geometry's domain:
//   argmin_u <linear, u> + D(u, center) / step.
// Supports euclidean/box, euclidean/simplex and entropy/simplex.
void prox_step_into(const BregmanGeometry& geom, ConstSpan center, ConstSpan linear,
                    double step, MutableSpan out);
Vector prox_step(const BregmanGeometry& geom, ConstSpan center, ConstSpan linear,
                 double step);

// Projection of an arbitrary point onto the geometry's domain (euclidean).
Vector project_onto_domain(const Domain& domain, ConstSpan v);
bool domain_contains(const Domain& domain, ConstSpan v, double sum_tol = 1e-9);

}  // namespace svrapd

#endif  // SVRAPD_GEOMETRY_H_
