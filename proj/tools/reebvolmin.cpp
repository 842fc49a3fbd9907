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

// reebvolmin: command-line front end. Every subcommand writes one JSON
// document to stdout. Exit codes: 0 ok, 1 input error, 2 not a good
// diagram, 3 no height, 4 minimization did not converge.

#include "reebvolmin.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

using namespace reebvolmin;

namespace {

struct Common {
  std::string input = "-";
  bool pretty = false;
  bool compact = false;
  bool exact = false;
  double tolerance = 1e-10;
};

Json read_json_source(const std::string& path) {
  if (path == "-") return parse_json(std::cin);
  std::ifstream f(path);
  if (!f) throw InputError("cannot open " + path);
  return parse_json(f);
}

/// --reeb accepts "3,3,3", "3,5/2,3", a JSON file, or inline JSON.
ParsedReeb read_reeb(const std::string& arg) {
  if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) return parse_reeb(parse_json(arg));
  if (std::filesystem::exists(arg)) return parse_reeb(read_json_source(arg));
  return parse_reeb_list(arg);
}

void require_dim(const ToricDiagram& d, const ParsedReeb& r) {
  if (r.values.size() != d.dim())
    throw InputError("Reeb vector has " + std::to_string(r.values.size()) + " entries, expected " +
                     std::to_string(d.dim()));
}

void add_common(CLI::App* sub, Common& c, bool with_input = true) {
  if (with_input) sub->add_option("input", c.input, "diagram or polygon JSON file ('-' for stdin)");
  sub->add_flag("--pretty", c.pretty, "indent JSON output");
  sub->add_flag("--json", c.compact, "compact JSON output (default)");
  sub->add_flag("--exact", c.exact, "exact rational arithmetic where supported");
  sub->add_option("--tolerance", c.tolerance, "relative gradient tolerance");
}

int emit(const Json& j, const Common& c, int code = exit_ok) {
  std::cout << dump(j, c.pretty && !c.compact) << "\n";
  return code;
}

int cmd_check_good(const Common& c, bool drop) {
  auto in = parse_cone_input(read_json_source(c.input));
  ToricDiagram d = to_diagram(in);
  Json out;
  out["input"] = to_json(in);
  if (auto* p = std::get_if<PolygonDiagram>(&in)) out["polygon_good"] = polygon_is_good(*p);
  auto redundant = check_minimal(d);
  if (!redundant.empty() && drop) {
    IntMatrix kept;
    for (std::size_t i = 0; i < d.normals.size(); ++i)
      if (std::find(redundant.begin(), redundant.end(), i) == redundant.end()) kept.push_back(d.normals[i]);
    out["dropped"] = list(redundant);
    d = ToricDiagram::from_normals(d.m, kept);
    out["normals"] = nums(d.normals);
    redundant.clear();
  }
  GoodnessReport g;
  if (!redundant.empty()) {
    g.reason = GoodnessFailure::not_minimal;
    g.failing_face = redundant;
    g.reduced = d.reduced;
  } else {
    g = is_good(d);
  }
  out["goodness"] = to_json(g);
  return emit(out, c, g.verdict ? exit_ok : exit_not_good);
}

int cmd_normalize(const Common& c) {
  auto in = parse_cone_input(read_json_source(c.input));
  ToricDiagram d = to_diagram(in);
  Json out;
  out["input"] = to_json(in);
  auto h = detect_height(d);
  if (!h) {
    out["height"] = nullptr;
    out["error"] = "no height: normals do not lie on a common affine level";
    return emit(out, c, exit_no_height);
  }
  out["height"] = to_json(*h);
  out["normals"] = nums(transform(d, h->g).normals);
  return emit(out, c);
}

template <class Scalar>
Json volume_block(const ToricDiagram& d, const std::vector<Scalar>& xi) {
  VolumeFan fan(d);
  if (!fan.in_interior(xi)) throw InputError("Reeb vector is not in the interior of the dual cone");
  Json out;
  out["arithmetic"] = mode_of<Scalar>();
  out["xi"] = nums(xi);
  out["volume"] = to_json(vol_fn(fan, xi));
  auto g = grad_vol(fan, xi);
  out["grad_vol_delta"] = nums(g);
  auto p = truncate(d, fan, xi);
  Json verts = Json::array();
  for (const auto& v : p.vertices) verts.push_back(nums(v));
  out["polytope"]["vertices"] = verts;
  out["polytope"]["simplices"] = p.simplices.size();
  return out;
}

int cmd_volume(const Common& c, const std::string& reeb) {
  if (reeb.empty()) throw InputError("--reeb is required");
  auto in = parse_cone_input(read_json_source(c.input));
  ToricDiagram d = to_diagram(in);
  auto r = read_reeb(reeb);
  require_dim(d, r);
  Json out;
  out["input"] = to_json(in);
  Json v = (c.exact || r.is_exact) ? volume_block(d, r.exact) : volume_block(d, r.values);
  for (auto& [k, val] : v.items()) out[k] = val;
  return emit(out, c);
}

int cmd_minimize(const Common& c, const std::string& reeb) {
  auto in = parse_cone_input(read_json_source(c.input));
  ToricDiagram d = to_diagram(in);
  MinimizeOptions mo;
  mo.tolerance = c.tolerance;
  auto res = minimize(d, mo);
  Json out = to_json(res);
  out["arithmetic"] = "float";
  std::vector<double> at = res.xi_min;
  bool admits = res.converged;
  if (!reeb.empty()) {
    auto r = read_reeb(reeb);
    require_dim(d, r);
    at = r.values;
    auto v = einstein_verdict(d, at);
    admits = v.admits;
  }
  out["admits_SE_at"]["xi"] = nums(at);
  out["admits_SE_at"]["admits"] = admits;
  return emit(out, c, res.converged ? exit_ok : exit_no_convergence);
}

int cmd_charges(const Common& c, const std::string& reeb, double cutoff, bool heat,
                std::optional<double> heat_cutoff) {
  if (reeb.empty()) throw InputError("--reeb is required");
  auto in = parse_cone_input(read_json_source(c.input));
  ToricDiagram d = to_diagram(in);
  auto r = read_reeb(reeb);
  require_dim(d, r);
  Json out;
  out["input"] = to_json(in);
  out["xi"] = (c.exact || r.is_exact) ? nums(r.exact) : nums(r.values);
  if (c.exact || r.is_exact)
    out["charges"] = to_json(charge_spectrum<Rational>(d, r.exact, to_rational(cutoff)));
  else
    out["charges"] = to_json(charge_spectrum<double>(d, r.values, cutoff));
  if (heat) {
    double rc = heat_cutoff ? *heat_cutoff : required_cutoff(d.m, default_t_grid().back());
    auto est = heat_trace_volume(d, r.values, rc);
    Json h = to_json(est);
    double vr = vol_fn(d, r.values).vol_riemannian;
    h["vol_riemannian"] = num(vr);
    h["rho0"] = num(est.extrapolated / vr);
    out["heat_trace"] = h;
  }
  return emit(out, c);
}

int cmd_obstruct(const Common& c, const std::string& weights, const std::string& degree,
                 const std::string& exponents, bool no_smooth) {
  Json out;
  if (!exponents.empty()) {
    if (!weights.empty() || !degree.empty()) throw InputError("give either --exponents or --weights/--degree");
    BrieskornExponents e{parse_int_list(exponents)};
    auto mg = brieskorn_margins(e);
    auto rep = brieskorn_tests(e);
    rep.smooth_claim = !no_smooth;
    out["exponents"] = nums(e.a);
    out["report"] = to_json(rep);
    out["exponent_form"]["excess"] = num(mg.excess);
    out["exponent_form"]["lichnerowicz_lhs"] = num(mg.lichnerowicz_lhs);
    out["exponent_form"]["bishop_lhs"] = num(mg.bishop_lhs);
    out["exponent_form"]["bishop_rhs"] = num(mg.bishop_rhs);
    return emit(out, c);
  }
  if (weights.empty() || degree.empty()) throw InputError("--weights and --degree are required");
  WeightedHypersurface h;
  h.w = parse_int_list(weights);
  auto dv = parse_int_list(degree);
  if (dv.size() != 1) throw InputError("--degree takes one integer");
  h.d = dv[0];
  if (h.w.size() < 2) throw InputError("need at least two weights");
  h.m = h.w.size() - 2;
  h.smooth_claim = !no_smooth;
  out["weights"] = nums(h.w);
  out["degree"] = num(h.d);
  out["report"] = to_json(obstruction_report(h));
  return emit(out, c);
}

int cmd_dfutaki(const Common& c, const std::string& samples, const std::string& polytope, const std::string& alpha,
                std::size_t kmax) {
  Json out;
  HilbertSamples s;
  if (!samples.empty()) {
    if (!polytope.empty()) throw InputError("give either --samples or --polytope");
    s = parse_samples(read_json_source(samples));
  } else if (!polytope.empty()) {
    auto cfg = parse_polytope(read_json_source(polytope));
    if (!alpha.empty()) cfg.alpha = parse_int_list(alpha);
    if (cfg.alpha.empty()) throw InputError("--alpha (or \"alpha\" in the polytope file) is required");
    const std::size_t n = cfg.vertices.front().size();
    s = toric_product_config(cfg, kmax ? kmax : n + 4);
    out["polytope"]["vertices"] = nums(cfg.vertices);
    out["polytope"]["alpha"] = nums(cfg.alpha);
  } else {
    throw InputError("--samples or --polytope is required");
  }
  out["samples"] = to_json(s);
  out["result"] = to_json(donaldson_futaki(s));
  return emit(out, c);
}

int cmd_analyze(const Common& c, const std::string& reeb, bool charges, double cutoff, bool heat) {
  auto in = parse_cone_input(read_json_source(c.input));
  AnalysisOptions opt;
  opt.tolerance = c.tolerance;
  opt.charges = charges;
  opt.heat_trace = heat;
  opt.cutoff = cutoff;
  if (!reeb.empty()) {
    auto r = read_reeb(reeb);
    require_dim(to_diagram(in), r);
    opt.reeb = r.values;
  }
  auto rep = run_full_analysis(in, opt);
  return emit(to_json(rep), c, rep.exit_code);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reebvolmin: toric Sasaki-Einstein analysis"};
  app.require_subcommand(1);
  Common c;
  std::string reeb, weights, degree, exponents, samples, polytope, alpha;
  double cutoff = 10;
  std::optional<double> heat_cutoff;
  bool heat = false, drop = false, charges = false, no_smooth = false;
  std::size_t kmax = 0;

  auto* check = app.add_subcommand("check-good", "goodness (smoothness) of the cone");
  add_common(check, c);
  check->add_flag("--drop-redundant", drop, "drop implied normals before testing");

  auto* norm = app.add_subcommand("normalize-height", "height and SL(n,Z) normalization");
  add_common(norm, c);

  auto* vol = app.add_subcommand("volume", "volume of the truncated polytope at a Reeb vector");
  add_common(vol, c);
  vol->add_option("--reeb", reeb, "Reeb vector: list, JSON file or inline JSON");

  auto* mini = app.add_subcommand("minimize", "minimize the volume functional on the Reeb slice");
  add_common(mini, c);
  mini->add_option("--reeb", reeb, "also test whether this Reeb vector is the minimizer");

  auto* chg = app.add_subcommand("charges", "charge spectrum and heat-trace volume");
  add_common(chg, c);
  chg->add_option("--reeb", reeb, "Reeb vector");
  chg->add_option("--cutoff", cutoff, "enumerate charges <= cutoff");
  chg->add_flag("--heat-trace", heat, "add the heat-trace volume estimate");
  chg->add_option("--heat-cutoff", heat_cutoff, "cutoff for the heat-trace sum (default: minimal sufficient)");

  auto* obs = app.add_subcommand("obstruct", "Lichnerowicz and Bishop obstructions");
  add_common(obs, c, false);
  obs->add_option("--weights", weights, "weights w_0,...,w_{m+1}");
  obs->add_option("--degree", degree, "degree d");
  obs->add_option("--exponents", exponents, "Brieskorn exponents a_0,...,a_{m+1}");
  obs->add_flag("--no-smooth-claim", no_smooth, "do not assert smoothness away from the origin");

  auto* df = app.add_subcommand("dfutaki", "Donaldson-Futaki invariant from Hilbert data");
  add_common(df, c, false);
  df->add_option("--samples", samples, "JSON file of (k, d_k, w_k) samples");
  df->add_option("--polytope", polytope, "JSON file of a lattice polytope");
  df->add_option("--alpha", alpha, "torus weight functional");
  df->add_option("--kmax", kmax, "largest dilation for --polytope (default n+4)");

  auto* an = app.add_subcommand("analyze", "full pipeline report");
  add_common(an, c);
  an->add_option("--reeb", reeb, "also report the Futaki obstruction at this Reeb vector");
  an->add_flag("--charges", charges, "add a charge spectrum summary at the minimizer");
  an->add_option("--cutoff", cutoff, "charge summary cutoff");
  an->add_flag("--heat-trace", heat, "add the heat-trace cross-check at the minimizer");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : exit_input;
  }

  try {
    if (*check) return cmd_check_good(c, drop);
    if (*norm) return cmd_normalize(c);
    if (*vol) return cmd_volume(c, reeb);
    if (*mini) return cmd_minimize(c, reeb);
    if (*chg) return cmd_charges(c, reeb, cutoff, heat, heat_cutoff);
    if (*obs) return cmd_obstruct(c, weights, degree, exponents, no_smooth);
    if (*df) return cmd_dfutaki(c, samples, polytope, alpha, kmax);
    if (*an) return cmd_analyze(c, reeb, charges, cutoff, heat);
  } catch (const NotGoodError& e) {
    return emit(error_json("not-good", e.what()), c, exit_not_good);
  } catch (const NotMinimalError& e) {
    return emit(error_json("not-good", e.what()), c, exit_not_good);
  } catch (const NoHeightError& e) {
    return emit(error_json("no-height", e.what()), c, exit_no_height);
  } catch (const InputError& e) {
    return emit(error_json("input", e.what()), c, exit_input);
  } catch (const std::exception& e) {
    return emit(error_json("internal", e.what()), c, exit_input);
  }
  return exit_input;
}
