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

using namespace reebvolmin;

namespace {

const double kPi3 = std::pow(std::numbers::pi, 3);
const double kRoot = 9.0 / 16.0 * (std::sqrt(33.0) - 1.0);
const std::vector<double> kPentagonMin{3, kRoot, kRoot};

}  // namespace

TEST(LatticePoints, OrthantSmall) {
  auto pts = lattice_points(oracle::orthant(), RatVec{1, 1, 1}, Rational(2));
  EXPECT_EQ(pts.size(), 10u);
}

TEST(LatticePoints, OrthantStarsAndBars) {
  for (int k = 0; k <= 10; ++k)
    EXPECT_EQ(count_lattice_points(oracle::orthant(), RatVec{1, 1, 1}, Rational(k)),
              static_cast<std::uint64_t>(oracle::binom(k + 3, 3)));
}

TEST(LatticePoints, PentagonMatchesBoxScan) {
  auto d = oracle::pentagon();
  for (const RatVec& xi : {RatVec{3, 3, 3}, RatVec{3, Rational(5, 2), Rational(8, 3)}}) {
    auto pts = lattice_points(d, xi, Rational(6));
    std::set<std::vector<long long>> lib;
    for (const auto& p : pts) lib.insert(oracle::to_long({p})[0]);
    auto ref = oracle::box_scan(d, xi, Rational(6), 12);
    EXPECT_EQ(lib, std::set<std::vector<long long>>(ref.begin(), ref.end()));
  }
  EXPECT_EQ(lattice_points(d, RatVec{3, 3, 3}, Rational(6)).size(), 31u);
}

TEST(LatticePoints, FloatAndExactAgree) {
  auto d = oracle::pentagon();
  for (int r = 1; r <= 12; ++r)
    EXPECT_EQ(count_lattice_points(d, std::vector<double>{3, 3, 3}, double(r)),
              count_lattice_points(d, RatVec{3, 3, 3}, Rational(r)));
}

TEST(LatticePoints, BoundaryReebThrows) {
  EXPECT_THROW(lattice_points(oracle::orthant(), RatVec{1, 0, 1}, Rational(3)), InputError);
}

TEST(ChargeSpectrum, OrthantMultiplicities) {
  auto s = charge_spectrum(oracle::orthant(), RatVec{1, 1, 1}, Rational(8));
  ASSERT_EQ(s.entries.size(), 9u);
  for (int k = 0; k <= 8; ++k) {
    EXPECT_EQ(s.entries[k].first, Rational(k));
    EXPECT_EQ(s.entries[k].second, static_cast<std::uint64_t>(oracle::binom(k + 2, 2)));
  }
}

// Regular Reeb vector: charge 3k eigenspace has the Ehrhart count of the
// k-th dilate of the slice polygon (area 7/2, 7 boundary points).
TEST(ChargeSpectrum, PentagonRegularCaseEhrhart) {
  auto d = oracle::pentagon();
  auto s = charge_spectrum(d, RatVec{3, 3, 3}, Rational(15));
  ASSERT_EQ(s.entries.size(), 6u);
  for (int k = 0; k <= 5; ++k) {
    EXPECT_EQ(s.entries[k].first, Rational(3 * k));
    EXPECT_EQ(s.entries[k].second, static_cast<std::uint64_t>(1 + 7 * k * (k + 1) / 2));
    auto below = oracle::box_scan(d, RatVec{3, 3, 3}, Rational(3 * k), 20).size();
    auto below_prev = k ? oracle::box_scan(d, RatVec{3, 3, 3}, Rational(3 * k - 1), 20).size() : 0;
    EXPECT_EQ(s.entries[k].second, below - below_prev);
  }
}

TEST(ChargeSpectrum, IrregularIsNonnegativeWithSimpleZero) {
  auto s = charge_spectrum(oracle::pentagon(), kPentagonMin, 12.0);
  ASSERT_FALSE(s.entries.empty());
  EXPECT_EQ(s.entries[0].first, 0.0);
  EXPECT_EQ(s.entries[0].second, 1u);
  for (std::size_t i = 1; i < s.entries.size(); ++i) {
    EXPECT_GT(s.entries[i].first, s.entries[i - 1].first);
    EXPECT_GT(s.entries[i].first, 0.0);
  }
}

TEST(Laplacian, Formula) {
  EXPECT_EQ(laplacian_eigenvalue(Rational(1), 2), Rational(5));
  EXPECT_EQ(laplacian_eigenvalue(Rational(0), 2), Rational(0));
  EXPECT_EQ(laplacian_eigenvalue(Rational(4), 2), Rational(32));
  EXPECT_THROW(laplacian_eigenvalue(Rational(-1), 2), InputError);
}

TEST(HeatTrace, RequiredCutoff) {
  double r = required_cutoff(2, 0.025);
  double x = 0.025 * r;
  EXPECT_LE(std::exp(-x) * (1 + x + x * x / 2), 1e-6);
  double y = 0.025 * (r - 1);
  EXPECT_GT(std::exp(-y) * (1 + y + y * y / 2), 1e-6);
}

TEST(HeatTrace, OrthantPartialsMatchClosedForm) {
  auto h = heat_trace_volume(oracle::orthant(), {1, 1, 1});
  for (std::size_t i = 0; i < h.t_grid.size(); ++i)
    EXPECT_NEAR(h.partial_values[i], oracle::orthant_heat(h.t_grid[i]), 2e-6 * h.partial_values[i]);
  EXPECT_NEAR(h.extrapolated, kPi3, 1e-3 * kPi3);
  EXPECT_GT(h.truncation_bound, 0);
  EXPECT_LT(h.truncation_bound, 1e-5 * h.partial_values.back());
}

TEST(HeatTrace, ScalingByTwo) {
  auto d = oracle::pentagon();
  auto a = heat_trace_volume(d, {3, 3, 3});
  auto b = heat_trace_volume(d, {6, 6, 6});
  EXPECT_NEAR(b.extrapolated, a.extrapolated / 8, 0.01 * a.extrapolated / 8);
}

TEST(HeatTrace, PentagonFinitePositive) {
  auto h = heat_trace_volume(oracle::pentagon(), kPentagonMin);
  EXPECT_TRUE(std::isfinite(h.extrapolated));
  EXPECT_GT(h.extrapolated, 0);
}

TEST(HeatTrace, InsufficientCutoffReportsRequired) {
  try {
    heat_trace_volume(oracle::orthant(), {1, 1, 1}, 100.0);
    FAIL();
  } catch (const InsufficientCutoff& e) {
    EXPECT_EQ(e.required, required_cutoff(2, 0.025));
  }
}

TEST(HeatTrace, ThreadCountDoesNotChangeBits) {
  auto d = oracle::pentagon();
  auto a = heat_trace_volume(d, kPentagonMin, required_cutoff(2, 0.025), default_t_grid(), 1);
  auto b = heat_trace_volume(d, kPentagonMin, required_cutoff(2, 0.025), default_t_grid(), 3);
  EXPECT_EQ(a.partial_values, b.partial_values);
  EXPECT_EQ(a.extrapolated, b.extrapolated);
}

TEST(Calibration, SingleConstantEighth) {
  const double rho = calibrate_volume_constant(oracle::orthant(), {1, 1, 1});
  EXPECT_NEAR(rho, 0.125, 0.00125);
  for (const auto& xi : {std::vector<double>{2, 1, 1}, std::vector<double>{1, 2, 3}, std::vector<double>{0.5, 0.5, 0.5}})
    EXPECT_NEAR(calibrate_volume_constant(oracle::orthant(), xi), rho, 0.01 * rho);
  EXPECT_NEAR(calibrate_volume_constant(oracle::pentagon(), kPentagonMin), rho, 0.02 * rho);
  EXPECT_NEAR(calibrate_volume_constant(oracle::pentagon(), {3, 3, 3}), rho, 0.02 * rho);
}

TEST(LatticeLimit, ApproachesPolytopeVolume) {
  for (const auto& [d, xi] : {std::pair{oracle::orthant(), std::vector<double>{1, 1, 1}},
                              std::pair{oracle::pentagon(), kPentagonMin}}) {
    auto lim = lattice_count_limit(d, xi);
    double vol = vol_fn(d, xi).vol_delta;
    EXPECT_NEAR(lim.extrapolated, vol, 0.02 * vol);
  }
}
