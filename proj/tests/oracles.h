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

#ifndef SVRAPD_TESTS_ORACLES_H_
#define SVRAPD_TESTS_ORACLES_H_

// Reference computations that share no code with the library routines they
// check.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include "svrapd/problem.h"
#include "svrapd/rng.h"
#include "svrapd/schedule.h"

namespace svrapd::oracle {

using Vec = std::vector<double>;

inline double max_abs_diff(const Vec& a, const Vec& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double norm2(const Vec& a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return std::sqrt(s);
}

// Entropy Bregman divergence straight from psi(u) - psi(v) - <grad psi(v), u - v>
// in long double.
inline long double entropy_divergence(const Vec& u, const Vec& v) {
  long double psi_u = 0, psi_v = 0, inner = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const long double ui = u[i], vi = v[i];
    if (ui > 0) psi_u += ui * std::log(ui);
    psi_v += vi * std::log(vi);
    inner += (1.0L + std::log(vi)) * (ui - vi);
  }
  return psi_u - psi_v - inner;
}

// Euclidean projection onto the simplex by bisection on the shift.
inline Vec simplex_projection(const Vec& v) {
  double lo = *std::min_element(v.begin(), v.end()) - 1.0;
  double hi = *std::max_element(v.begin(), v.end());
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    double s = 0.0;
    for (double x : v) s += std::max(0.0, x - mid);
    (s > 1.0 ? lo : hi) = mid;
  }
  const double theta = 0.5 * (lo + hi);
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::max(0.0, v[i] - theta);
  const double s = std::accumulate(out.begin(), out.end(), 0.0);
  for (double& x : out) x /= s;
  return out;
}

struct PgResult {
  Vec point;
  double stationarity = 0.0;
  int iterations = 0;
};

// Projected gradient on min <linear, x> + ||x - xhat||^2 / (2 tau) over a box.
inline PgResult projected_gradient_box(const Vec& xhat, const Vec& linear, double tau,
                                       const Vec& lo, const Vec& hi, double tol = 1e-10) {
  const std::size_t d = xhat.size();
  Vec x = xhat;
  const double step = 0.5 * tau;
  PgResult r;
  for (r.iterations = 0; r.iterations < 100000; ++r.iterations) {
    Vec next(d);
    double res = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      const double g = linear[i] + (x[i] - xhat[i]) / tau;
      next[i] = std::clamp(x[i] - step * g, lo[i], hi[i]);
      res = std::max(res, std::abs(next[i] - x[i]) / step);
    }
    x = std::move(next);
    r.stationarity = res;
    if (res <= tol) break;
  }
  r.point = x;
  return r;
}

// Projected gradient with backtracking on
//   min -<ascent, y> + (1/sigma) sum_i (y_i ln(y_i / yhat_i) - y_i + yhat_i)
// over the simplex, started from the uniform vector. The sufficient-decrease
// test compares the exact second-order remainder (1/sigma) sum_i y_i phi(c_i/y_i),
// phi(r) = r ln r - r + 1, with ||c - y||^2 / (2 step); both sides are formed
// without cancellation, so the test stays meaningful near the solution.
// Stationarity is the sup-norm of the projected-gradient map with unit step.
inline PgResult projected_gradient_entropy(const Vec& yhat, const Vec& ascent, double sigma,
                                           double tol = 1e-10) {
  const std::size_t d = yhat.size();
  auto gradient = [&](const Vec& y) {
    Vec g(d);
    for (std::size_t i = 0; i < d; ++i) g[i] = -ascent[i] + std::log(y[i] / yhat[i]) / sigma;
    return g;
  };
  Vec y(d, 1.0 / static_cast<double>(d));
  double step = sigma;
  PgResult r;
  for (r.iterations = 0; r.iterations < 1000000; ++r.iterations) {
    const Vec g = gradient(y);
    Vec u(d);
    for (std::size_t i = 0; i < d; ++i) u[i] = y[i] - g[i];
    const Vec pu = simplex_projection(u);
    r.stationarity = max_abs_diff(pu, y);
    if (r.stationarity <= tol) break;
    step *= 2.0;
    for (;;) {
      Vec v(d);
      for (std::size_t i = 0; i < d; ++i) v[i] = y[i] - step * g[i];
      const Vec c = simplex_projection(v);
      if (std::all_of(c.begin(), c.end(), [](double t) { return t > 0.0; })) {
        long double remainder = 0.0L, dist2 = 0.0L;
        for (std::size_t i = 0; i < d; ++i) {
          const long double diff = static_cast<long double>(c[i]) - y[i];
          const long double rel = diff / y[i];
          remainder += y[i] * ((1.0L + rel) * std::log1p(rel) - rel);
          dist2 += diff * diff;
        }
        if (remainder / sigma <= dist2 / (2.0L * step)) {
          y = c;
          break;
        }
      }
      step *= 0.5;
    }
  }
  r.point = y;
  return r;
}

// Central differences of f at z with step h.
inline Vec central_difference(const std::function<double(const Vec&)>& f, Vec z, double h) {
  Vec g(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double keep = z[i];
    z[i] = keep + h;
    const double fp = f(z);
    z[i] = keep - h;
    const double fm = f(z);
    z[i] = keep;
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

// Random interior point of the probability simplex.
inline Vec random_simplex_point(SplitMix64& rng, std::size_t d) {
  Vec y(d);
  double s = 0.0;
  for (double& v : y) {
    v = -std::log(rng.uniform(1e-3, 1.0));
    s += v;
  }
  for (double& v : y) v /= s;
  return y;
}

inline Vec random_box_point(SplitMix64& rng, const Box& box) {
  Vec x(box.dim());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = rng.uniform(box.lower[i], box.upper[i]);
  return x;
}

// Straight-line transcription of the variance-reduced primal-dual loop for a
// single-component problem with euclidean box primal and entropy simplex dual
// geometry. With n = 1 both variance corrections cancel, so the dual ascent
// is 2 grad_y(z_t) - grad_y(z_{t-1}) and the primal step uses grad_x(x_t, y_{t+1}).
// Returns the last iterate after `steps` inner steps.
struct StraightLineTrace {
  std::vector<Vec> x;
  std::vector<Vec> y;
};

inline StraightLineTrace straight_line_reference(const SaddlePointProblem& p,
                                                 const ParameterSchedule& schedule,
                                                 std::int64_t steps) {
  const Box& box = p.primal_domain();
  const std::size_t dp = p.primal_dim();
  const std::size_t dq = p.dual_dim();
  const PrimalDualPoint start = p.initial_point();
  Vec x = start.x, y = start.y, x_prev = x, y_prev = y;
  Vec r = x;
  Vec s(dq);
  for (std::size_t i = 0; i < dq; ++i) s[i] = 1.0 + std::log(y[i]);

  auto gy = [&](const Vec& xx, const Vec& yy) {
    Vec g(dq, 0.0);
    p.add_grad_y_component(0, xx, yy, 1.0, g);
    return g;
  };
  auto gx = [&](const Vec& xx, const Vec& yy) {
    Vec g(dp, 0.0);
    p.add_grad_x_component(0, xx, yy, 1.0, g);
    return g;
  };

  StraightLineTrace trace;
  std::int64_t done = 0;
  for (std::int64_t k = 1; done < steps; ++k) {
    const EpochParameters e = schedule.at(k);
    Vec sum_x(dp, 0.0), sum_y(dq, 0.0), sum_lx(dp, 0.0), sum_ly(dq, 0.0);
    std::int64_t taken = 0;
    for (std::int64_t t = 0; t < e.inner_steps && done < steps; ++t, ++done, ++taken) {
      // Dual: mirror momentum, then the entropy step.
      const Vec g_now = gy(x, y);
      const Vec g_before = gy(x_prev, y_prev);
      Vec y_new(dq);
      double z = 0.0;
      for (std::size_t i = 0; i < dq; ++i) {
        const double yh = std::exp((1.0 - e.gamma_y) * (1.0 + std::log(y[i])) + e.gamma_y * s[i] - 1.0);
        y_new[i] = yh * std::exp(e.sigma * (2.0 * g_now[i] - g_before[i]));
        z += y_new[i];
      }
      for (double& v : y_new) v /= z;
      // Primal: euclidean momentum, then a clipped gradient step.
      const Vec g_x = gx(x, y_new);
      Vec x_new(dp);
      for (std::size_t i = 0; i < dp; ++i) {
        const double xh = (1.0 - e.gamma_x) * x[i] + e.gamma_x * r[i];
        x_new[i] = std::clamp(xh - e.tau * g_x[i], box.lower[i], box.upper[i]);
      }
      x_prev = x;
      y_prev = y;
      x = x_new;
      y = y_new;
      trace.x.push_back(x);
      trace.y.push_back(y);
      for (std::size_t i = 0; i < dp; ++i) sum_x[i] += x[i];
      for (std::size_t i = 0; i < dq; ++i) {
        sum_y[i] += y[i];
        sum_ly[i] += 1.0 + std::log(y[i]);
      }
    }
    for (std::size_t i = 0; i < dp; ++i) r[i] = sum_x[i] / static_cast<double>(taken);
    for (std::size_t i = 0; i < dq; ++i) s[i] = sum_ly[i] / static_cast<double>(taken);
  }
  return trace;
}

}  // namespace svrapd::oracle

#endif  // SVRAPD_TESTS_ORACLES_H_
