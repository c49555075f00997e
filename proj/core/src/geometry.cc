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

#include "svrapd/geometry.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>

#include "svrapd/linalg.h"

namespace svrapd {

using linalg::require_same_size;

bool Box::contains(ConstSpan x) const {
  if (x.size() != dim()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= lower[i] && x[i] <= upper[i])) return false;
  }
  return true;
}

Vector Box::center() const {
  Vector c(dim());
  for (std::size_t i = 0; i < dim(); ++i) c[i] = 0.5 * (lower[i] + upper[i]);
  return c;
}

void Box::check() const {
  require_same_size(lower.size(), upper.size(), "Box");
  if (lower.empty()) throw std::invalid_argument("Box: empty box");
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (!std::isfinite(lower[i]) || !std::isfinite(upper[i])) {
      throw std::invalid_argument("Box: bounds must be finite");
    }
    if (lower[i] > upper[i]) {
      throw std::invalid_argument("Box: lower > upper at coordinate " + std::to_string(i));
    }
  }
}

bool Simplex::contains(ConstSpan y, double sum_tol) const {
  if (y.size() != dim) return false;
  double s = 0.0;
  for (double v : y) {
    if (!(v >= 0.0)) return false;
    s += v;
  }
  return std::abs(s - 1.0) <= sum_tol;
}

namespace {

std::size_t domain_dim(const Domain& d) {
  return std::visit(
      [](const auto& dom) -> std::size_t {
        using T = std::decay_t<decltype(dom)>;
        if constexpr (std::is_same_v<T, Box>) {
          return dom.dim();
        } else {
          return dom.dim;
        }
      },
      d);
}

void require_positive(ConstSpan u, const char* what) {
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!(u[i] > 0.0)) {
      throw std::domain_error(std::string(what) + ": coordinate " + std::to_string(i) +
                              " is not strictly positive");
    }
  }
}

}  // namespace

BregmanGeometry::BregmanGeometry(GeometryKind kind, Domain domain)
    : kind_(kind), dimension_(domain_dim(domain)), domain_(std::move(domain)) {
  if (dimension_ == 0) throw std::invalid_argument("BregmanGeometry: zero dimension");
  if (const Box* box = std::get_if<Box>(&domain_)) box->check();
}

BregmanGeometry BregmanGeometry::Euclidean(Domain domain) {
  return BregmanGeometry(GeometryKind::kEuclidean, std::move(domain));
}

BregmanGeometry BregmanGeometry::Entropy(Simplex simplex) {
  return BregmanGeometry(GeometryKind::kEntropy, simplex);
}

double divergence(const BregmanGeometry& geom, ConstSpan u, ConstSpan ubar) {
  require_same_size(u.size(), ubar.size(), "divergence");
  require_same_size(u.size(), geom.dimension(), "divergence");
  double d = 0.0;
  if (geom.kind() == GeometryKind::kEuclidean) {
    for (std::size_t i = 0; i < u.size(); ++i) d += 0.5 * (u[i] - ubar[i]) * (u[i] - ubar[i]);
    return d;
  }
  require_positive(ubar, "divergence (entropy)");
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] < 0.0) throw std::domain_error("divergence (entropy): negative coordinate in u");
    // u ln(u / ubar) - u + ubar, with 0 ln 0 = 0.
    const double t = u[i] > 0.0 ? u[i] * std::log(u[i] / ubar[i]) : 0.0;
    d += t - u[i] + ubar[i];
  }
  return std::max(d, 0.0);
}

void grad_map_into(const BregmanGeometry& geom, ConstSpan u, MutableSpan out) {
  require_same_size(u.size(), geom.dimension(), "grad_map");
  require_same_size(out.size(), u.size(), "grad_map");
  if (geom.kind() == GeometryKind::kEuclidean) {
    linalg::copy(u, out);
    return;
  }
  require_positive(u, "grad_map (entropy)");
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = 1.0 + std::log(u[i]);
}

DualVector grad_map(const BregmanGeometry& geom, ConstSpan u) {
  DualVector g{Vector(u.size())};
  grad_map_into(geom, u, g.coefficients);
  return g;
}

void grad_map_inverse_into(const BregmanGeometry& geom, ConstSpan g, MutableSpan out) {
  require_same_size(g.size(), geom.dimension(), "grad_map_inverse");
  require_same_size(out.size(), g.size(), "grad_map_inverse");
  if (geom.kind() == GeometryKind::kEuclidean) {
    linalg::copy(g, out);
    return;
  }
  const double limit = geom.overflow_threshold();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!(g[i] <= limit)) {
      throw std::range_error("grad_map_inverse (entropy): coordinate " + std::to_string(i) +
                             " exceeds the overflow threshold");
    }
    out[i] = std::exp(g[i] - 1.0);
  }
}

Vector grad_map_inverse(const BregmanGeometry& geom, const DualVector& g) {
  Vector out(g.size());
  grad_map_inverse_into(geom, g.coefficients, out);
  return out;
}

void momentum_combine_into(const BregmanGeometry& geom, ConstSpan current, ConstSpan memory,
                           double gamma, MutableSpan out) {
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("momentum_combine: gamma must lie in (0, 1]");
  }
  require_same_size(current.size(), memory.size(), "momentum_combine");
  require_same_size(current.size(), out.size(), "momentum_combine");
  if (geom.kind() == GeometryKind::kEuclidean) {
    for (std::size_t i = 0; i < current.size(); ++i) {
      out[i] = (1.0 - gamma) * current[i] + gamma * memory[i];
    }
    return;
  }
  grad_map_into(geom, current, out);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (1.0 - gamma) * out[i] + gamma * memory[i];
  grad_map_inverse_into(geom, out, out);
}

Vector momentum_combine(const BregmanGeometry& geom, ConstSpan current, const DualVector& memory,
                        double gamma) {
  Vector out(current.size());
  momentum_combine_into(geom, current, memory.coefficients, gamma, out);
  return out;
}

Vector prox_box(ConstSpan xhat, ConstSpan linear, double tau, ConstSpan lower, ConstSpan upper) {
  if (!(tau > 0.0)) throw std::invalid_argument("prox_box: tau must be positive");
  require_same_size(xhat.size(), linear.size(), "prox_box");
  require_same_size(xhat.size(), lower.size(), "prox_box");
  require_same_size(xhat.size(), upper.size(), "prox_box");
  Vector out(xhat.size());
  for (std::size_t i = 0; i < xhat.size(); ++i) {
    out[i] = std::clamp(xhat[i] - tau * linear[i], lower[i], upper[i]);
  }
  return out;
}

void prox_simplex_entropy_into(ConstSpan yhat, ConstSpan ascent, double sigma, MutableSpan out) {
  if (!(sigma > 0.0)) throw std::invalid_argument("prox_simplex_entropy: sigma must be positive");
  require_same_size(yhat.size(), ascent.size(), "prox_simplex_entropy");
  require_same_size(yhat.size(), out.size(), "prox_simplex_entropy");
  require_positive(yhat, "prox_simplex_entropy");

  // Log-sum-exp shift: w_i = ln yhat_i + sigma * ascent_i.
  double shift = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < yhat.size(); ++i) {
    out[i] = std::log(yhat[i]) + sigma * ascent[i];
    shift = std::max(shift, out[i]);
  }
  double total = 0.0;
  for (double& v : out) {
    v = std::exp(v - shift);
    total += v;
  }
  double floored_total = 0.0;
  for (double& v : out) {
    v = std::max(v / total, kEntropyFloor);
    floored_total += v;
  }
  if (floored_total != 1.0) {
    for (double& v : out) v /= floored_total;
  }
}

Vector prox_simplex_entropy(ConstSpan yhat, ConstSpan ascent, double sigma) {
  Vector out(yhat.size());
  prox_simplex_entropy_into(yhat, ascent, sigma, out);
  return out;
}

Vector project_simplex(ConstSpan v) {
  if (v.empty()) throw std::invalid_argument("project_simplex: empty vector");
  Vector sorted(v.begin(), v.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    cumulative += sorted[k];
    const double candidate = (cumulative - 1.0) / static_cast<double>(k + 1);
    if (sorted[k] - candidate > 0.0) theta = candidate;
  }
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::max(v[i] - theta, 0.0);
  return out;
}

void prox_step_into(const BregmanGeometry& geom, ConstSpan center, ConstSpan linear, double step,
                    MutableSpan out) {
  require_same_size(center.size(), geom.dimension(), "prox_step");
  if (geom.kind() == GeometryKind::kEntropy) {
    // Minimizing <linear, y> is ascent along -linear.
    Vector ascent(linear.size());
    for (std::size_t i = 0; i < linear.size(); ++i) ascent[i] = -linear[i];
    prox_simplex_entropy_into(center, ascent, step, out);
    return;
  }
  if (const Box* box = std::get_if<Box>(&geom.domain())) {
    Vector r = prox_box(center, linear, step, box->lower, box->upper);
    linalg::copy(r, out);
    return;
  }
  if (!(step > 0.0)) throw std::invalid_argument("prox_step: step must be positive");
  Vector shifted(center.begin(), center.end());
  linalg::axpy(-step, linear, shifted);
  Vector r = project_simplex(shifted);
  linalg::copy(r, out);
}

Vector prox_step(const BregmanGeometry& geom, ConstSpan center, ConstSpan linear, double step) {
  Vector out(center.size());
  prox_step_into(geom, center, linear, step, out);
  return out;
}

Vector project_onto_domain(const Domain& domain, ConstSpan v) {
  if (const Box* box = std::get_if<Box>(&domain)) {
    require_same_size(v.size(), box->dim(), "project_onto_domain");
    Vector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::clamp(v[i], box->lower[i], box->upper[i]);
    return out;
  }
  require_same_size(v.size(), std::get<Simplex>(domain).dim, "project_onto_domain");
  return project_simplex(v);
}

bool domain_contains(const Domain& domain, ConstSpan v, double sum_tol) {
  if (const Box* box = std::get_if<Box>(&domain)) return box->contains(v);
  return std::get<Simplex>(domain).contains(v, sum_tol);
}

}  // namespace svrapd
