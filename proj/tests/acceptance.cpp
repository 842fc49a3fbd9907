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

// Acceptance suite. Prints one PASS/FAIL line per criterion.
//
//   acceptance [--only ID] [--known-failure ID]...
//
// Exit status is 0 iff the set of failing criteria equals the set passed
// with --known-failure (empty by default). A known failure still prints
// FAIL; it only stops the binary from reporting it as a regression.

#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <set>
#include <sstream>
#include <string>

using namespace reebvolmin;

namespace {

// Tolerances pinned here, not read from anywhere else.
constexpr double kCoordTol = 1e-6;
constexpr double kRuntimeSecs = 1.0;
constexpr double kFutakiFraction = 1e-3;
constexpr double kHeatRel = 0.01;
constexpr double kRhoRel = 0.02;
constexpr double kFdRel = 1e-6;
constexpr double kEquivariance = 1e-8;
constexpr double kLatticeRel = 0.02;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (!pass) detail << "; ";
      else detail.str("");
      pass = false;
      detail << what;
    }
  }
};

const double kRoot = 9.0 / 16.0 * (std::sqrt(33.0) - 1.0);

void criterion_1(Outcome& o) {
  auto t0 = std::chrono::steady_clock::now();
  auto r = minimize(oracle::pentagon());
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double target[3] = {3.0, kRoot, kRoot};
  double worst = 0;
  for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(r.xi_min[i] - target[i]));
  o.detail << "xi_min=(" << r.xi_min[0] << ", " << r.xi_min[1] << ", " << r.xi_min[2] << ") max dev " << worst
           << ", " << secs << " s";
  o.require(r.converged, "did not converge");
  o.require(worst < kCoordTol, "coordinate deviation too large");
  o.require(secs < kRuntimeSecs, "too slow");
}

void criterion_2(Outcome& o) {
  auto d = oracle::pentagon();
  auto f = futaki_obstruction(d, {3, 3, 3});
  auto v = einstein_verdict(d, {3, 3, 3});
  o.detail << "norm/S=" << f.norm / f.s_tilde << ", vanishes=" << f.vanishes << ", admits=" << v.admits;
  o.require(!f.vanishes, "reported vanishing");
  o.require(f.norm > kFutakiFraction * f.s_tilde, "gradient too small");
  o.require(!v.admits, "verdict admits");
}

BrieskornExponents two_two_two(int k) {
  BrieskornExponents e;
  e.a = {2, 2, 2, BigInt(k)};
  return e;
}

void criterion_3a(Outcome& o) {
  const bool pass[] = {true, true, true, false, false};
  const bool boundary[] = {false, false, true, false, false};
  std::string row;
  for (int k = 2; k <= 6; ++k) {
    auto r = brieskorn_tests(two_two_two(k));
    row += r.lichnerowicz_pass ? (r.lichnerowicz_boundary ? "B" : "P") : "F";
    o.require(r.lichnerowicz_pass == pass[k - 2] && r.lichnerowicz_boundary == boundary[k - 2],
              "Lichnerowicz mismatch at k=" + std::to_string(k));
    if (k <= 5) o.require(r.bishop_pass, "Bishop fails at k=" + std::to_string(k));
  }
  o.detail << "Lichnerowicz k=2..6: " << row;
}

void criterion_3b(Outcome& o) {
  // Stated targets for the Bishop left side, compared with zero tolerance.
  const Rational stated[] = {16, 20, 22, Rational(116, 5)};
  std::string got;
  for (int k = 2; k <= 5; ++k) {
    auto mg = brieskorn_margins(two_two_two(k));
    got += (k > 2 ? ", " : "") + to_string(mg.bishop_lhs);
    o.require(mg.bishop_lhs == stated[k - 2], "k=" + std::to_string(k) + " value " + to_string(mg.bishop_lhs) +
                                                  " != " + to_string(stated[k - 2]));
    o.require(mg.bishop_lhs <= mg.bishop_rhs, "k=" + std::to_string(k) + " above 27");
  }
  if (o.pass) o.detail << "values " << got;
}

void criterion_4(Outcome& o) {
  const double pi3 = std::pow(std::numbers::pi, 3);
  auto h = heat_trace_volume(oracle::orthant(), {1, 1, 1});
  double rel = std::abs(h.extrapolated - pi3) / pi3;
  double rho_o = calibrate_volume_constant(oracle::orthant(), {1, 1, 1});
  auto pent = oracle::pentagon();
  double rho_p = calibrate_volume_constant(pent, minimize(pent).xi_min);
  double rho_rel = std::abs(rho_p - rho_o) / rho_o;
  o.detail << "orthant " << h.extrapolated << " vs pi^3 (rel " << rel << "), rho0 " << rho_o << " / " << rho_p
           << " (rel " << rho_rel << ")";
  o.require(rel < kHeatRel, "heat trace off");
  o.require(rho_rel < kRhoRel, "rho0 disagrees");
}

void criterion_5(Outcome& o) {
  std::mt19937_64 rng(20260);
  std::uniform_int_distribution<int> c(-5, 5), count(3, 12);
  int done = 0, disagree = 0;
  while (done < 200) {
    std::vector<oracle::P2> pts;
    int n = count(rng);
    for (int i = 0; i < n; ++i) pts.push_back({c(rng), c(rng)});
    auto h = oracle::convex_hull(pts);
    if (h.size() < 3 || h.size() > 8) continue;
    PolygonDiagram p;
    for (auto [a, b] : h) p.vertices.push_back({BigInt(a), BigInt(b)});
    if (polygon_is_good(p) != is_good(polygon_to_cone(p)).verdict) ++disagree;
    ++done;
  }
  o.detail << done << " polygons, " << disagree << " disagreements";
  o.require(disagree == 0, "disagreements");
}

RatVec random_interior(const ToricDiagram& d, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(1, 9), den(1, 5);
  RatVec xi(d.dim(), Rational(0));
  for (const auto& l : d.normals) {
    Rational c(num(rng), den(rng));
    for (std::size_t i = 0; i < xi.size(); ++i) xi[i] += c * Rational(l[i]);
  }
  return xi;
}

std::vector<double> random_slice_point(const ToricDiagram& d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<double> w;
  double s = 0;
  for (std::size_t j = 0; j < d.normals.size(); ++j) s += w.emplace_back(u(rng));
  std::vector<double> xi(d.dim(), 0.0);
  for (std::size_t j = 0; j < d.normals.size(); ++j)
    for (std::size_t i = 0; i < d.dim(); ++i)
      xi[i] += static_cast<double>(d.m + 1) * w[j] / s * to_double(d.normals[j][i]);
  return xi;
}

void criterion_6(Outcome& o) {
  auto d = oracle::pentagon();
  VolumeFan fan(d);
  std::mt19937_64 rng(606);
  int homog = 0, euler = 0, fd = 0, convex = 0, equiv = 0;
  for (int t = 0; t < 50; ++t) {
    auto xi = random_interior(d, rng);
    auto xi2 = xi;
    for (auto& x : xi2) x *= 2;
    if (fan.volume(xi2) * 8 != fan.volume(xi)) ++homog;
    if (dot(xi, fan.gradient(xi)) != Rational(-3) * fan.volume(xi)) ++euler;
  }
  for (int t = 0; t < 20; ++t) {
    auto xi = to_doubles(random_interior(d, rng));
    auto g = fan.gradient(xi);
    auto num = oracle::fd_gradient([&](const std::vector<double>& x) { return fan.volume(x); }, xi, 1e-6 * norm(xi));
    for (int i = 0; i < 3; ++i)
      if (std::abs(g[i] - num[i]) > kFdRel * norm(g)) {
        ++fd;
        break;
      }
  }
  for (int t = 0; t < 100; ++t) {
    auto a = random_slice_point(d, rng), b = random_slice_point(d, rng);
    std::vector<double> mid(3);
    for (int i = 0; i < 3; ++i) mid[i] = 0.5 * (a[i] + b[i]);
    if (fan.volume(mid) > 0.5 * (fan.volume(a) + fan.volume(b)) * (1 + 1e-12)) ++convex;
  }
  auto base = minimize(d);
  for (int t = 0; t < 20; ++t) {
    auto g = oracle::random_unimodular(3, rng);
    auto r = minimize(transform(d, g));
    bool ok = r.converged;
    for (int i = 0; i < 3 && ok; ++i) {
      double expect = 0;
      for (int j = 0; j < 3; ++j) expect += to_double(g[i][j]) * base.xi_min[j];
      ok = std::abs(r.xi_min[i] - expect) <= kEquivariance * std::max(1.0, std::abs(expect));
    }
    if (!ok) ++equiv;
  }
  o.detail << "failures: homogeneity " << homog << "/50, Euler " << euler << "/50, gradient " << fd
           << "/20, convexity " << convex << "/100, equivariance " << equiv << "/20";
  o.require(homog + euler + fd + convex + equiv == 0, "property failures");
}

LatticePolytopeAction interval(long b) {
  LatticePolytopeAction c;
  c.vertices = {{0}, {BigInt(b)}};
  c.alpha = {1};
  return c;
}

void criterion_7(Outcome& o) {
  auto f01 = donaldson_futaki(toric_product_config(interval(1), 6)).F1;
  auto f02 = donaldson_futaki(toric_product_config(interval(2), 6)).F1;
  o.require(f01 == 0, "[0,1] F1=" + to_string(f01));
  o.require(f02 == 0, "[0,2] F1=" + to_string(f02));
  LatticePolytopeAction trap;
  trap.vertices = {{0, 0}, {2, 0}, {1, 1}, {0, 1}};
  trap.alpha = {1, 0};
  auto base = toric_product_config(trap, 8);
  auto f_ref = donaldson_futaki(base).F1;
  for (int c = -2; c <= 2; ++c) {
    auto s = base;
    for (auto& p : s.samples) p.w += BigInt(c) * p.k * p.d;
    o.require(donaldson_futaki(s).F1 == f_ref, "shift c=" + std::to_string(c) + " changed F1");
  }
  auto bad = toric_product_config(interval(1), 6);
  bad.samples[2].w += 1;
  bool fired = false;
  try {
    fit_polynomials(bad);
  } catch (const NotPolynomialError& e) {
    fired = e.failing_k == bad.samples[2].k;
  }
  o.require(fired, "corruption not detected");
  o.detail << "F1 " << to_string(f01) << ", " << to_string(f02) << "; trapezoid F1 " << to_string(f_ref)
           << " under shifts; corrupted k named";
}

void criterion_8(Outcome& o) {
  auto pent = oracle::pentagon();
  for (const auto& [name, d, xi] : {std::tuple{"orthant", oracle::orthant(), std::vector<double>{1, 1, 1}},
                                    std::tuple{"pentagon", pent, minimize(pent).xi_min}}) {
    auto lim = lattice_count_limit(d, xi);
    double vol = vol_fn(d, xi).vol_delta;
    double rel = std::abs(lim.extrapolated - vol) / vol;
    o.detail << name << " rel " << rel << " ";
    o.require(rel < kLatticeRel, std::string(name) + " off by " + std::to_string(rel));
  }
}

struct Criterion {
  const char* id;
  const char* title;
  std::function<void(Outcome&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {"1", "pentagon minimizer closed form", criterion_1},
      {"2", "regular Reeb vector rejected", criterion_2},
      {"3a", "Brieskorn (2,2,2,k) Lichnerowicz table", criterion_3a},
      {"3b", "Brieskorn (2,2,2,k) stated Bishop values", criterion_3b},
      {"4", "heat-trace calibration", criterion_4},
      {"5", "polygon goodness equivalence", criterion_5},
      {"6", "volume property suite", criterion_6},
      {"7", "Donaldson-Futaki exactness", criterion_7},
      {"8", "lattice-count limit", criterion_8},
  };
  std::string only;
  std::set<std::string> known;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--only") && i + 1 < argc) only = argv[++i];
    else if (!std::strcmp(argv[i], "--known-failure") && i + 1 < argc) known.insert(argv[++i]);
    else {
      std::fprintf(stderr, "usage: %s [--only ID] [--known-failure ID]...\n", argv[0]);
      return 2;
    }
  }
  std::set<std::string> failed, ran;
  for (const auto& c : all) {
    if (!only.empty() && only != c.id) continue;
    ran.insert(c.id);
    Outcome o;
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    if (!o.pass) failed.insert(c.id);
    std::printf("%s criterion %s (%s): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.detail.str().c_str());
  }
  if (ran.empty()) {
    std::fprintf(stderr, "unknown criterion %s\n", only.c_str());
    return 2;
  }
  std::set<std::string> expected;
  for (const auto& k : known)
    if (ran.count(k)) expected.insert(k);
  return failed == expected ? 0 : 1;
}
