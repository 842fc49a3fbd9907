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

#pragma once

// End-to-end pipeline: goodness -> height -> volume minimization ->
// optional Futaki and charge cross-checks -> verdict.

#include "io.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace reebvolmin {

enum ExitCode : int { exit_ok = 0, exit_input = 1, exit_not_good = 2, exit_no_height = 3, exit_no_convergence = 4 };

/// Best rational approximation with denominator <= max_den via continued
/// fractions, accepted only if within tol of x.
inline std::optional<Rational> rational_reconstruction(double x, long max_den = 1000, double tol = 1e-9) {
  if (!std::isfinite(x)) return std::nullopt;
  BigInt p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double r = x;
  for (int it = 0; it < 64; ++it) {
    double a = std::floor(r);
    if (std::abs(a) > 1e15) break;
    BigInt ai(static_cast<long long>(a));
    BigInt p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    if (std::abs(to_double(Rational(p1, q1)) - x) <= tol) return Rational(p1, q1);
    double frac = r - a;
    if (frac < 1e-300) break;
    r = 1 / frac;
  }
  return std::nullopt;
}

/// Heuristic: xi lies on a rational ray iff every coordinate is close to a
/// small-denominator rational (the slice level is rational, so the scale
/// factor is fixed).
inline bool looks_irrational(const std::vector<double>& xi, long max_den = 1000, double tol = 1e-9) {
  for (double x : xi)
    if (!rational_reconstruction(x, max_den, tol)) return true;
  return false;
}

struct AnalysisOptions {
  double tolerance = 1e-10;
  std::optional<std::vector<double>> reeb;  // Futaki check at this point
  bool charges = false;
  double cutoff = 10;  // spectrum summary cutoff
  bool heat_trace = false;
};

struct ChargeSummary {
  double cutoff = 0;
  std::uint64_t lattice_points = 0;
  std::size_t distinct_charges = 0;
  double lambda1 = 0;  // smallest positive charge
  double laplacian_lambda1 = 0;
  std::optional<HeatTraceEstimate> heat;
  double rho0 = 0;
};

struct Verdict {
  bool admits = false;
  bool irregular = false;
  std::string statement;
  std::vector<std::string> citations;
};

struct AnalysisReport {
  Json input;
  std::optional<bool> polygon_good;
  std::optional<GoodnessReport> goodness;
  std::optional<Height> height;
  std::optional<MinimizationResult> minimization;
  std::optional<FutakiReport> futaki_at_input;
  std::optional<ChargeSummary> charges;
  std::optional<Verdict> verdict;
  int exit_code = exit_ok;
  std::string error;
};

inline ChargeSummary summarize_charges(const ToricDiagram& d, const std::vector<double>& xi,
                                       const AnalysisOptions& opt) {
  ChargeSummary s;
  s.cutoff = opt.cutoff;
  auto spectrum = charge_spectrum<double>(d, xi, opt.cutoff);
  for (const auto& [q, mult] : spectrum.entries) s.lattice_points += mult;
  s.distinct_charges = spectrum.entries.size();
  if (spectrum.entries.size() > 1) {
    s.lambda1 = spectrum.entries[1].first;
    s.laplacian_lambda1 = laplacian_eigenvalue(s.lambda1, d.m);
  }
  if (opt.heat_trace) {
    s.heat = heat_trace_volume(d, xi);
    s.rho0 = s.heat->extrapolated / vol_fn(d, xi).vol_riemannian;
  }
  return s;
}

inline AnalysisReport run_full_analysis(const ConeInput& in, const AnalysisOptions& opt = {}) {
  AnalysisReport rep;
  rep.input = to_json(in);
  if (auto* p = std::get_if<PolygonDiagram>(&in)) rep.polygon_good = polygon_is_good(*p);
  const ToricDiagram d = to_diagram(in);
  try {
    rep.goodness = is_good(d);
  } catch (const NotMinimalError& e) {
    GoodnessReport g;
    g.reason = GoodnessFailure::not_minimal;
    g.failing_face = e.indices;
    g.reduced = d.reduced;
    rep.goodness = g;
  }
  if (!rep.goodness->verdict) {
    rep.exit_code = exit_not_good;
    rep.error = std::string("not a good diagram: ") + to_string(rep.goodness->reason);
    return rep;
  }
  rep.height = detect_height(d);
  if (!rep.height) {
    rep.exit_code = exit_no_height;
    rep.error = "no height: normals do not lie on a common affine level";
    return rep;
  }
  MinimizeOptions mo;
  mo.tolerance = opt.tolerance;
  rep.minimization = minimize(d, mo);
  if (opt.reeb) rep.futaki_at_input = futaki_obstruction(d, *opt.reeb);
  if (!rep.minimization->converged) {
    rep.exit_code = exit_no_convergence;
    rep.error = "minimization did not converge: " + rep.minimization->diagnostics;
    return rep;
  }
  if (opt.charges || opt.heat_trace) rep.charges = summarize_charges(d, rep.minimization->xi_min, opt);
  Verdict v;
  v.admits = true;
  v.irregular = looks_irrational(rep.minimization->xi_min);
  v.statement = v.irregular ? "Sasaki–Einstein exists at ξ_min (irregular: ξ_min irrational)"
                            : "Sasaki–Einstein exists at ξ_min (quasi-regular: ξ_min rational)";
  v.citations = {"good-cone-smoothness", "height-normalized-slice", "volume-functional-strict-convexity",
                 "futaki-equals-slice-gradient", "toric-sasaki-einstein-existence-at-minimizer"};
  rep.verdict = v;
  return rep;
}

inline Json to_json(const ChargeSummary& s) {
  Json j;
  j["arithmetic"] = "float";
  j["cutoff"] = num(s.cutoff);
  j["lattice_points"] = s.lattice_points;
  j["distinct_charges"] = s.distinct_charges;
  j["lambda1"] = num(s.lambda1);
  j["laplacian_lambda1"] = num(s.laplacian_lambda1);
  if (s.heat) {
    j["heat_trace"] = to_json(*s.heat);
    j["rho0"] = num(s.rho0);
  }
  return j;
}

inline Json to_json(const AnalysisReport& r) {
  Json j;
  j["input"] = r.input;
  if (r.polygon_good) j["polygon_good"] = *r.polygon_good;
  j["goodness"] = r.goodness ? to_json(*r.goodness) : Json(nullptr);
  j["height"] = r.height ? to_json(*r.height) : Json(nullptr);
  if (r.minimization) {
    Json m = to_json(*r.minimization);
    m["arithmetic"] = "float";
    j["minimization"] = m;
  } else {
    j["minimization"] = nullptr;
  }
  if (r.futaki_at_input) {
    Json f = to_json(*r.futaki_at_input);
    f["arithmetic"] = "float";
    j["futaki_at_input"] = f;
  }
  if (r.charges) j["charges"] = to_json(*r.charges);
  if (r.verdict) {
    Json v;
    v["admits"] = r.verdict->admits;
    v["irregular"] = r.verdict->irregular;
    v["irregularity_test"] = "heuristic: continued fractions, denominator <= 1000, tolerance 1e-9";
    v["statement"] = r.verdict->statement;
    v["citations"] = list(r.verdict->citations);
    j["verdict"] = v;
  } else {
    j["verdict"] = nullptr;
  }
  j["exit_code"] = r.exit_code;
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

}  // namespace reebvolmin
