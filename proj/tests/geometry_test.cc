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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "oracles.h"
#include "svrapd/rng.h"

namespace svrapd {
namespace {

using oracle::Vec;

BregmanGeometry entropy2() { return BregmanGeometry::Entropy(Simplex{2}); }
BregmanGeometry euclid2() { return BregmanGeometry::Euclidean(Box::Uniform(2, -10, 10)); }

TEST(DivergenceTest, EuclideanExamples) {
  EXPECT_EQ(divergence(euclid2(), Vec{1, 2}, Vec{1, 2}), 0.0);
  EXPECT_DOUBLE_EQ(divergence(euclid2(), Vec{3, 0}, Vec{0, 0}), 4.5);
}

TEST(DivergenceTest, EntropyMatchesLongDoubleDefinition) {
  const Vec u{0.5, 0.5}, v{0.25, 0.75};
  const double oracle = static_cast<double>(oracle::entropy_divergence(u, v));
  EXPECT_NEAR(oracle, 0.143841, 5e-7);
  EXPECT_NEAR(divergence(entropy2(), u, v), oracle, 1e-15);
}

TEST(DivergenceTest, RejectsBoundaryCenterAndMismatch) {
  EXPECT_THROW(divergence(entropy2(), Vec{0.5, 0.5}, Vec{1.0, 0.0}), std::domain_error);
  EXPECT_THROW(divergence(euclid2(), Vec{1, 2, 3}, Vec{1, 2}), std::invalid_argument);
}

TEST(DivergenceTest, EntropyAllowsZeroInFirstArgument) {
  EXPECT_NEAR(divergence(entropy2(), Vec{1.0, 0.0}, Vec{0.5, 0.5}), std::log(2.0), 1e-15);
}

TEST(GradMapTest, Examples) {
  EXPECT_EQ(grad_map(euclid2(), Vec{2, -3}).coefficients, (Vec{2, -3}));
  EXPECT_EQ(grad_map(entropy2(), Vec{1, 1}).coefficients, (Vec{1, 1}));
  const double e = std::numbers::e;
  const Vec g = grad_map(entropy2(), Vec{e, e * e}).coefficients;
  EXPECT_NEAR(g[0], 2.0, 1e-15);
  EXPECT_NEAR(g[1], 3.0, 1e-15);
}

TEST(GradMapTest, EntropyMatchesFiniteDifferenceOfPsi) {
  auto psi = [](const Vec& u) {
    double s = 0;
    for (double v : u) s += v * std::log(v);
    return s;
  };
  const double e = std::numbers::e;
  const Vec fd = oracle::central_difference(psi, Vec{e, e * e}, 1e-6);
  EXPECT_NEAR(fd[0], 2.0, 1e-8);
  EXPECT_NEAR(fd[1], 3.0, 1e-8);
}

TEST(GradMapTest, EntropyRejectsNonpositive) {
  EXPECT_THROW(grad_map(entropy2(), Vec{0.0, 1.0}), std::domain_error);
  EXPECT_THROW(grad_map(entropy2(), Vec{-0.1, 1.1}), std::domain_error);
}

TEST(GradMapInverseTest, Examples) {
  EXPECT_EQ(grad_map_inverse(euclid2(), DualVector{{0.5, -1}}), (Vec{0.5, -1}));
  const Vec one = grad_map_inverse(entropy2(), DualVector{{1, 1}});
  EXPECT_NEAR(one[0], 1.0, 1e-15);
  EXPECT_NEAR(one[1], 1.0, 1e-15);
  const Vec back = grad_map_inverse(entropy2(), grad_map(entropy2(), Vec{0.2, 0.8}));
  EXPECT_NEAR(back[0], 0.2, 1e-15);
  EXPECT_NEAR(back[1], 0.8, 1e-15);
}

TEST(GradMapInverseTest, NotRenormalized) {
  const Vec v = grad_map_inverse(entropy2(), DualVector{{1, 1}});
  EXPECT_NEAR(v[0] + v[1], 2.0, 1e-15);
}

TEST(GradMapInverseTest, OverflowGuard) {
  EXPECT_THROW(grad_map_inverse(entropy2(), DualVector{{800, 0}}), std::range_error);
  BregmanGeometry g = entropy2();
  g.set_overflow_threshold(5.0);
  EXPECT_THROW(grad_map_inverse(g, DualVector{{6, 0}}), std::range_error);
}

TEST(MomentumCombineTest, Examples) {
  const Vec mid = momentum_combine(euclid2(), Vec{1, 3}, DualVector{{5, -1}}, 0.5);
  EXPECT_EQ(mid, (Vec{3, 1}));

  for (const auto& g : {euclid2(), entropy2()}) {
    const Vec cur{0.3, 0.7};
    const Vec out = momentum_combine(g, cur, DualVector{{0.1, 2.0}}, 1e-12);
    EXPECT_LE(oracle::max_abs_diff(out, cur), 1e-9);
  }

  const Vec target{0.35, 0.65};
  const Vec full = momentum_combine(entropy2(), Vec{0.5, 0.5}, grad_map(entropy2(), target), 1.0);
  EXPECT_LE(oracle::max_abs_diff(full, target), 1e-15);
}

TEST(MomentumCombineTest, RejectsGammaOutOfRange) {
  EXPECT_THROW(momentum_combine(euclid2(), Vec{0, 0}, DualVector{{0, 0}}, 0.0),
               std::invalid_argument);
  EXPECT_THROW(momentum_combine(euclid2(), Vec{0, 0}, DualVector{{0, 0}}, 1.5),
               std::invalid_argument);
}

TEST(ProxBoxTest, Examples) {
  const Vec lo{-10, -10}, hi{10, 10};
  EXPECT_EQ(prox_box(Vec{0, 0}, Vec{0, 0}, 0.7, lo, hi), (Vec{0, 0}));
  EXPECT_EQ(prox_box(Vec{0, 0}, Vec{1, -1}, 0.5, lo, hi), (Vec{-0.5, 0.5}));
  EXPECT_EQ(prox_box(Vec{9, 9}, Vec{-10, 0}, 1.0, lo, hi), (Vec{10, 9}));
}

TEST(ProxBoxTest, ExamplesAgreeWithProjectedGradientOracle) {
  const Vec lo{-10, -10}, hi{10, 10};
  const auto a = oracle::projected_gradient_box(Vec{0, 0}, Vec{1, -1}, 0.5, lo, hi);
  const auto b = oracle::projected_gradient_box(Vec{9, 9}, Vec{-10, 0}, 1.0, lo, hi);
  EXPECT_LE(a.stationarity, 1e-10);
  EXPECT_LE(oracle::max_abs_diff(a.point, Vec{-0.5, 0.5}), 1e-10);
  EXPECT_LE(oracle::max_abs_diff(b.point, Vec{10, 9}), 1e-10);
}

TEST(ProxBoxTest, Errors) {
  const Vec lo{-1, -1}, hi{1, 1};
  EXPECT_THROW(prox_box(Vec{0, 0}, Vec{0, 0}, 0.0, lo, hi), std::invalid_argument);
  EXPECT_THROW(prox_box(Vec{0, 0}, Vec{0}, 1.0, lo, hi), std::invalid_argument);
}

TEST(ProxSimplexEntropyTest, Examples) {
  const Vec same = prox_simplex_entropy(Vec{0.5, 0.5}, Vec{0, 0}, 1.0);
  EXPECT_NEAR(same[0], 0.5, 1e-15);
  const Vec tilted = prox_simplex_entropy(Vec{0.5, 0.5}, Vec{std::log(4.0), 0}, 1.0);
  EXPECT_NEAR(tilted[0], 0.8, 1e-15);
  EXPECT_NEAR(tilted[1], 0.2, 1e-15);
  const Vec renorm = prox_simplex_entropy(Vec{0.2, 0.3}, Vec{0, 0}, 5.0);
  EXPECT_NEAR(renorm[0], 0.4, 1e-15);
  EXPECT_NEAR(renorm[1], 0.6, 1e-15);
}

TEST(ProxSimplexEntropyTest, ExamplesAgreeWithProjectedGradientOracle) {
  const auto a = oracle::projected_gradient_entropy(Vec{0.5, 0.5}, Vec{std::log(4.0), 0}, 1.0);
  EXPECT_LE(a.stationarity, 1e-10);
  EXPECT_LE(oracle::max_abs_diff(a.point, Vec{0.8, 0.2}), 1e-9);
  const auto b = oracle::projected_gradient_entropy(Vec{0.2, 0.3}, Vec{0, 0}, 5.0);
  EXPECT_LE(oracle::max_abs_diff(b.point, Vec{0.4, 0.6}), 1e-9);
}

TEST(ProxSimplexEntropyTest, LargeAscentStaysFinite) {
  const Vec y = prox_simplex_entropy(Vec{0.5, 0.5}, Vec{1e4, -1e4}, 1.0);
  EXPECT_NEAR(y[0], 1.0, 1e-12);
  EXPECT_NEAR(y[1], kEntropyFloor, 1e-29);
  EXPECT_TRUE(std::isfinite(y[1]));
}

TEST(ProxSimplexEntropyTest, Errors) {
  EXPECT_THROW(prox_simplex_entropy(Vec{0.5, 0.5}, Vec{0, 0}, 0.0), std::invalid_argument);
  EXPECT_THROW(prox_simplex_entropy(Vec{0.0, 1.0}, Vec{0, 0}, 1.0), std::domain_error);
}

TEST(GeometryPropertyTest, ThreePointIdentityAndRoundTrip) {
  SplitMix64 rng(11);
  const std::size_t d = 6;
  const BregmanGeometry ent = BregmanGeometry::Entropy(Simplex{d});
  const BregmanGeometry euc = BregmanGeometry::Euclidean(Box::Uniform(d, -10, 10));
  const Box box = Box::Uniform(d, -10, 10);
  for (int s = 0; s < 1000; ++s) {
    for (const auto* g : {&ent, &euc}) {
      auto draw = [&] {
        return g == &ent ? oracle::random_simplex_point(rng, d) : oracle::random_box_point(rng, box);
      };
      const Vec x = draw(), y = draw(), z = draw();
      const Vec gz = grad_map(*g, z).coefficients, gy = grad_map(*g, y).coefficients;
      double lhs = 0;
      for (std::size_t i = 0; i < d; ++i) lhs += (gz[i] - gy[i]) * (x[i] - z[i]);
      const double rhs = divergence(*g, x, y) - divergence(*g, x, z) - divergence(*g, z, y);
      ASSERT_LE(std::abs(lhs - rhs), 1e-10);
      ASSERT_LE(oracle::max_abs_diff(grad_map_inverse(*g, grad_map(*g, x)), x), 1e-12);
    }
  }
}

TEST(GeometryPropertyTest, StrongConvexity) {
  SplitMix64 rng(12);
  const std::size_t d = 5;
  const BregmanGeometry ent = BregmanGeometry::Entropy(Simplex{d});
  for (int s = 0; s < 1000; ++s) {
    const Vec u = oracle::random_simplex_point(rng, d), v = oracle::random_simplex_point(rng, d);
    double l1 = 0, l2 = 0;
    for (std::size_t i = 0; i < d; ++i) {
      l1 += std::abs(u[i] - v[i]);
      l2 += (u[i] - v[i]) * (u[i] - v[i]);
    }
    const double D = divergence(ent, u, v);
    ASSERT_GE(D, 0.5 * l1 * l1 - 1e-12);
    ASSERT_GE(D, 0.5 * l2 - 1e-12);
  }
}

TEST(GeometryPropertyTest, ProxDirectionalOptimality) {
  SplitMix64 rng(13);
  const std::size_t d = 4;
  const Box box = Box::Uniform(d, -1, 1);
  for (int s = 0; s < 20; ++s) {
    const Vec xhat = oracle::random_box_point(rng, box);
    Vec lin(d), asc(d);
    for (std::size_t i = 0; i < d; ++i) {
      lin[i] = rng.uniform(-3, 3);
      asc[i] = rng.uniform(-3, 3);
    }
    const double tau = rng.uniform(0.1, 2), sigma = rng.uniform(0.1, 2);
    const Vec x = prox_box(xhat, lin, tau, box.lower, box.upper);
    const Vec yhat = oracle::random_simplex_point(rng, d);
    const Vec y = prox_simplex_entropy(yhat, asc, sigma);
    for (int t = 0; t < 1000 / 20; ++t) {
      const Vec xf = oracle::random_box_point(rng, box);
      const Vec yf = oracle::random_simplex_point(rng, d);
      double dx = 0, dy = 0;
      for (std::size_t i = 0; i < d; ++i) {
        dx += (lin[i] + (x[i] - xhat[i]) / tau) * (xf[i] - x[i]);
        dy += (-asc[i] + std::log(y[i] / yhat[i]) / sigma) * (yf[i] - y[i]);
      }
      ASSERT_GE(dx, -1e-8);
      ASSERT_GE(dy, -1e-8);
    }
  }
}

TEST(ProxStepTest, DispatchesByGeometry) {
  const BregmanGeometry euc = BregmanGeometry::Euclidean(Box::Uniform(2, -10, 10));
  EXPECT_EQ(prox_step(euc, Vec{0, 0}, Vec{1, -1}, 0.5), (Vec{-0.5, 0.5}));
  const Vec y = prox_step(entropy2(), Vec{0.5, 0.5}, Vec{-std::log(4.0), 0}, 1.0);
  EXPECT_NEAR(y[0], 0.8, 1e-15);
  const BregmanGeometry euc_simplex = BregmanGeometry::Euclidean(Simplex{3});
  const Vec p = prox_step(euc_simplex, Vec{0.2, 0.3, 0.5}, Vec{0, 0, 0}, 1.0);
  EXPECT_LE(oracle::max_abs_diff(p, Vec{0.2, 0.3, 0.5}), 1e-15);
}

TEST(ProjectSimplexTest, MatchesBisectionOracle) {
  SplitMix64 rng(14);
  for (int s = 0; s < 200; ++s) {
    Vec v(7);
    for (double& x : v) x = rng.uniform(-2, 2);
    EXPECT_LE(oracle::max_abs_diff(project_simplex(v), oracle::simplex_projection(v)), 1e-12);
  }
}

}  // namespace
}  // namespace svrapd
