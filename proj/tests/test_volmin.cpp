/*
 * Copyright 2026 The reebvolmin Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <chrono>

using namespace reebvolmin;

namespace {

const double kRoot = 9.0 / 16.0 * (std::sqrt(33.0) - 1.0);

/// (m+1) * a random convex combination of the normals: on the slice and
/// strictly interior.
std::vector<double> random_slice_point(const ToricDiagram& d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<double> w;
  double s = 0;
  for (std::size_t j = 0; j < d.normals.size(); ++j) s += w.emplace_back(u(rng));
  std::vector<double> xi(d.dim(), 0.0);
  for (std::size_t j = 0; j < d.normals.size(); ++j)
    for (std::size_t i = 0; i < d.dim(); ++i) xi[i] += static_cast<double>(d.m + 1) * w[j] / s * to_double(d.normals[j][i]);
  return xi;
}

/// Grid search over {(a, b)} for the smallest S-tilde of xi(a, b).
template <class F>
std::pair<double, double> grid_min(F&& xi_of, const ToricDiagram& d, double lo, double hi, double step) {
  VolumeFan fan(d);
  double best = 1e300, ba = 0, bb = 0;
  for (double a = lo; a <= hi; a += step)
    for (double b = lo; b <= hi; b += step) {
      auto xi = xi_of(a, b);
      if (!fan.in_interior(xi)) continue;
      double v = fan.volume(xi);
      if (v < best) {
        best = v;
        ba = a;
        bb = b;
      }
    }
  return {ba, bb};
}

}  // namespace

TEST(InitialPoint, PentagonOnSliceAndInterior) {
  auto d = oracle::pentagon();
  auto xi = initial_point(d, *detect_height(d));
  EXPECT_DOUBLE_EQ(xi[0], 3.0);
  EXPECT_TRUE(in_interior(d, xi));
}

TEST(InitialPoint, OrthantSymmetric) {
  auto d = oracle::orthant();
  auto xi = initial_point(d, *detect_height(d));
  for (double x : xi) EXPECT_DOUBLE_EQ(x, 1.0);
}

TEST(InitialPoint, DegenerateConeThrows) {
  EXPECT_THROW(initial_point(oracle::diagram(1, {{1, 0}, {1, 0}}), Height{1, {1, 0}, identity(2)}), InputError);
}

TEST(Minimize, PentagonClosedForm) {
  auto t0 = std::chrono::steady_clock::now();
  auto r = minimize(oracle::pentagon());
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  ASSERT_TRUE(r.converged);
  EXPECT_NEAR(r.xi_min[0], 3.0, 1e-6);
  EXPECT_NEAR(r.xi_min[1], kRoot, 1e-6);
  EXPECT_NEAR(r.xi_min[2], kRoot, 1e-6);
  EXPECT_LT(secs, 1.0);
}

TEST(Minimize, OrthantMatchesGridSearch) {
  auto d = oracle::orthant();
  auto r = minimize(d);
  ASSERT_TRUE(r.converged);
  for (double x : r.xi_min) EXPECT_NEAR(x, 1.0, 1e-9);
  auto [a, b] = grid_min([](double a, double b) { return std::vector<double>{a, b, 3 - a - b}; }, d, 0.05, 2.95, 0.01);
  EXPECT_NEAR(a, r.xi_min[0], 0.011);
  EXPECT_NEAR(b, r.xi_min[1], 0.011);
}

TEST(Minimize, PentagonMatchesGridSearch) {
  auto d = oracle::pentagon();
  auto r = minimize(d);
  auto [a, b] = grid_min([](double a, double b) { return std::vector<double>{3, a, b}; }, d, 1.0, 4.0, 0.01);
  EXPECT_NEAR(a, r.xi_min[1], 0.011);
  EXPECT_NEAR(b, r.xi_min[2], 0.011);
}

TEST(Minimize, TriangleFixedBySymmetry) {
  auto d = oracle::diagram(2, {{1, 0, 0}, {1, 1, 0}, {1, 0, 1}});
  auto r = minimize(d);
  ASSERT_TRUE(r.converged);
  EXPECT_NEAR(r.xi_min[0], 3, 1e-9);
  EXPECT_NEAR(r.xi_min[1], 1, 1e-9);
  EXPECT_NEAR(r.xi_min[2], 1, 1e-9);
}

TEST(Minimize, SquareFixedBySymmetry) {
  auto d = oracle::diagram(2, {{1, 0, 0}, {1, 1, 0}, {1, 1, 1}, {1, 0, 1}});
  auto r = minimize(d);
  ASSERT_TRUE(r.converged);
  EXPECT_NEAR(r.xi_min[1], 1.5, 1e-9);
  EXPECT_NEAR(r.xi_min[2], 1.5, 1e-9);
}

TEST(Minimize, UniqueFromRandomStarts) {
  auto d = oracle::pentagon();
  auto ref = minimize(d).xi_min;
  std::mt19937_64 rng(42);
  for (int t = 0; t < 20; ++t) {
    MinimizeOptions o;
    o.start = random_slice_point(d, rng);
    auto r = minimize(d, o);
    ASSERT_TRUE(r.converged);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(r.xi_min[i], ref[i], 1e-8);
  }
}

TEST(Minimize, MonotoneDescent) {
  auto d = oracle::pentagon();
  std::mt19937_64 rng(8);
  for (int t = 0; t < 10; ++t) {
    MinimizeOptions o;
    o.start = random_slice_point(d, rng);
    auto r = minimize(d, o);
    // strict up to double rounding, which the last steps can hit
    for (std::size_t i = 1; i < r.history.size(); ++i) EXPECT_LE(r.history[i], r.history[i - 1] * (1 + 1e-13));
  }
}

TEST(Minimize, FirstOrderOptimality) {
  for (const auto& d : {oracle::pentagon(), oracle::orthant()}) {
    auto r = minimize(d);
    EXPECT_LE(r.grad_norm, 1e-10 * r.s_tilde_min);
  }
}

TEST(Minimize, Equivariance) {
  auto d = oracle::pentagon();
  auto base = minimize(d);
  std::mt19937_64 rng(77);
  for (int t = 0; t < 20; ++t) {
    auto g = oracle::random_unimodular(3, rng);
    auto r = minimize(transform(d, g));
    ASSERT_TRUE(r.converged);
    for (int i = 0; i < 3; ++i) {
      double expect = 0;
      for (int j = 0; j < 3; ++j) expect += to_double(g[i][j]) * base.xi_min[j];
      EXPECT_NEAR(r.xi_min[i], expect, 1e-8 * std::max(1.0, std::abs(expect)));
    }
    EXPECT_NEAR(r.s_tilde_min, base.s_tilde_min, 1e-9 * base.s_tilde_min);
  }
}

TEST(Minimize, SliceMidpointConvexity) {
  auto d = oracle::pentagon();
  VolumeFan fan(d);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    auto a = random_slice_point(d, rng), b = random_slice_point(d, rng);
    std::vector<double> mid(3);
    for (int i = 0; i < 3; ++i) mid[i] = 0.5 * (a[i] + b[i]);
    EXPECT_LE(fan.volume(mid), 0.5 * (fan.volume(a) + fan.volume(b)) * (1 + 1e-12));
  }
}

TEST(Minimize, RejectsBadInputs) {
  EXPECT_THROW(minimize(oracle::diagram(2, {{1, 0, 0}, {1, 2, 0}, {1, 0, 1}})), NotGoodError);
  EXPECT_THROW(minimize(oracle::diagram(2, {{1, 0, 0}, {0, 1, 0}, {1, 0, 1}, {0, 2, 1}})), NoHeightError);
  MinimizeOptions o;
  o.start = std::vector<double>{2, 1, 1};
  EXPECT_THROW(minimize(oracle::pentagon(), o), InputError);
}

TEST(Futaki, RegularReebDoesNotVanish) {
  auto f = futaki_obstruction(oracle::pentagon(), {3, 3, 3});
  EXPECT_FALSE(f.vanishes);
  EXPECT_GT(f.norm, 1e-3 * f.s_tilde);
}

TEST(Futaki, VanishesAtMinimizer) {
  for (const auto& d : {oracle::pentagon(), oracle::orthant()}) {
    auto r = minimize(d);
    EXPECT_TRUE(futaki_obstruction(d, r.xi_min).vanishes);
  }
}

TEST(Futaki, OffSliceThrows) { EXPECT_THROW(futaki_obstruction(oracle::pentagon(), {4, 3, 3}), InputError); }

TEST(EinsteinVerdict, Examples) {
  auto d = oracle::pentagon();
  EXPECT_FALSE(einstein_verdict(d, {3, 3, 3}).admits);
  EXPECT_TRUE(einstein_verdict(d, {3, kRoot, kRoot}).admits);
  auto tri = oracle::diagram(2, {{1, 0, 0}, {1, 1, 0}, {1, 0, 1}});
  EXPECT_TRUE(einstein_verdict(tri, {3, 1, 1}).admits);
}
