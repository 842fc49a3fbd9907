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

// JSON input validation (errors carry JSON-pointer paths) and deterministic
// serialization: stable key order, floats rounded to 12 significant digits,
// exact values as integers or "p/q" strings.

#include "charges.hpp"
#include "cone.hpp"
#include "dfutaki.hpp"
#include "obstructions.hpp"
#include "reeb_volume.hpp"
#include "volmin.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <limits>
#include <string>
#include <variant>
#include <vector>

namespace reebvolmin {

using Json = nlohmann::ordered_json;

class SchemaError : public InputError {
public:
  SchemaError(std::string ptr, const std::string& msg)
      : InputError((ptr.empty() ? std::string("/") : ptr) + ": " + msg), pointer(std::move(ptr)) {}
  std::string pointer;
};

inline Json parse_json(std::istream& in) {
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

inline Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------- reading

namespace detail {

inline std::string child(const std::string& ptr, const std::string& key) {
  std::string k;
  for (char c : key) {
    if (c == '~')
      k += "~0";
    else if (c == '/')
      k += "~1";
    else
      k += c;
  }
  return ptr + "/" + k;
}

inline std::string child(const std::string& ptr, std::size_t i) { return ptr + "/" + std::to_string(i); }

inline const Json& require(const Json& j, const std::string& ptr, const std::string& key) {
  if (!j.is_object()) throw SchemaError(ptr, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(child(ptr, key), "missing required field");
  return *it;
}

inline const Json& require_array(const Json& j, const std::string& ptr) {
  if (!j.is_array()) throw SchemaError(ptr, "expected an array");
  return j;
}

inline BigInt read_int(const Json& j, const std::string& ptr) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return BigInt(j.get<std::uint64_t>());
    return BigInt(j.get<std::int64_t>());
  }
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    bool ok = i < s.size();
    for (std::size_t k = i; k < s.size(); ++k) ok = ok && s[k] >= '0' && s[k] <= '9';
    if (ok) return BigInt(s[0] == '+' ? s.substr(1) : s);
  }
  if (j.is_number_float()) {
    double v = j.get<double>();
    if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 9e15) return BigInt(static_cast<long long>(v));
  }
  throw SchemaError(ptr, "expected an integer");
}

inline Rational read_rational(const Json& j, const std::string& ptr) {
  if (j.is_number_integer()) return Rational(read_int(j, ptr));
  if (j.is_string()) {
    try {
      return parse_rational(j.get_ref<const std::string&>());
    } catch (const InputError& e) {
      throw SchemaError(ptr, e.what());
    }
  }
  if (j.is_number_float()) {
    double v = j.get<double>();
    if (!std::isfinite(v)) throw SchemaError(ptr, "expected a finite number");
    return to_rational(v);
  }
  throw SchemaError(ptr, "expected a number or \"p/q\" string");
}

inline double read_double(const Json& j, const std::string& ptr) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return to_double(read_rational(j, ptr));
  throw SchemaError(ptr, "expected a number");
}

inline IntVec read_int_vec(const Json& j, const std::string& ptr) {
  require_array(j, ptr);
  IntVec v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(read_int(j[i], child(ptr, i)));
  return v;
}

inline std::size_t read_size(const Json& j, const std::string& ptr) {
  BigInt v = read_int(j, ptr);
  if (v < 0 || v > 1000000) throw SchemaError(ptr, "expected a small nonnegative integer");
  return v.convert_to<std::size_t>();
}

}  // namespace detail

/// {"m": 2, "normals": [[1,0,0], ...]}; "m" may be omitted.
inline ToricDiagram parse_diagram(const Json& j, const std::string& ptr = "") {
  const Json& nj = detail::require_array(detail::require(j, ptr, "normals"), detail::child(ptr, "normals"));
  if (nj.empty()) throw SchemaError(detail::child(ptr, "normals"), "need at least one normal");
  std::optional<std::size_t> m;
  if (j.contains("m")) {
    m = detail::read_size(j["m"], detail::child(ptr, "m"));
  }
  IntMatrix normals;
  for (std::size_t i = 0; i < nj.size(); ++i) {
    auto p = detail::child(detail::child(ptr, "normals"), i);
    IntVec v = detail::read_int_vec(nj[i], p);
    if (!m) {
      if (v.empty()) throw SchemaError(p, "normal must be nonempty");
      m = v.size() - 1;
    }
    if (v.size() != *m + 1)
      throw SchemaError(p, "normal has length " + std::to_string(v.size()) + ", expected " + std::to_string(*m + 1));
    bool zero = std::all_of(v.begin(), v.end(), [](const BigInt& x) { return x == 0; });
    if (zero) throw SchemaError(p, "zero normal");
    normals.push_back(std::move(v));
  }
  return ToricDiagram::from_normals(*m, normals);
}

/// {"vertices": [[p, q], ...]} in counterclockwise order.
inline PolygonDiagram parse_polygon(const Json& j, const std::string& ptr = "") {
  auto vp = detail::child(ptr, "vertices");
  const Json& vj = detail::require_array(detail::require(j, ptr, "vertices"), vp);
  PolygonDiagram p;
  for (std::size_t i = 0; i < vj.size(); ++i) {
    auto ip = detail::child(vp, i);
    IntVec v = detail::read_int_vec(vj[i], ip);
    if (v.size() != 2) throw SchemaError(ip, "polygon vertex must have 2 entries");
    p.vertices.push_back({v[0], v[1]});
  }
  try {
    validate(p);
  } catch (const InputError& e) {
    throw SchemaError(vp, e.what());
  }
  return p;
}

using ConeInput = std::variant<ToricDiagram, PolygonDiagram>;

/// Diagram if "normals" is present, polygon if "vertices" is.
inline ConeInput parse_cone_input(const Json& j, const std::string& ptr = "") {
  if (!j.is_object()) throw SchemaError(ptr, "expected an object");
  if (j.contains("normals")) return parse_diagram(j, ptr);
  if (j.contains("vertices")) return parse_polygon(j, ptr);
  throw SchemaError(ptr, "expected \"normals\" (diagram) or \"vertices\" (polygon)");
}

inline ToricDiagram to_diagram(const ConeInput& in) {
  if (auto* d = std::get_if<ToricDiagram>(&in)) return *d;
  return polygon_to_cone(std::get<PolygonDiagram>(in));
}

struct ParsedReeb {
  RatVec exact;
  std::vector<double> values;
  bool is_exact = false;
};

/// {"xi": [3, "5/2", 3], "exact": true}, or a bare array.
inline ParsedReeb parse_reeb(const Json& j, const std::string& ptr = "") {
  const Json* arr = &j;
  std::string ap = ptr;
  ParsedReeb r;
  if (j.is_object()) {
    arr = &detail::require(j, ptr, "xi");
    ap = detail::child(ptr, "xi");
    if (j.contains("exact")) {
      if (!j["exact"].is_boolean()) throw SchemaError(detail::child(ptr, "exact"), "expected a boolean");
      r.is_exact = j["exact"].get<bool>();
    }
  }
  detail::require_array(*arr, ap);
  if (arr->empty()) throw SchemaError(ap, "Reeb vector must be nonempty");
  for (std::size_t i = 0; i < arr->size(); ++i) {
    auto ip = detail::child(ap, i);
    const Json& e = (*arr)[i];
    if (r.is_exact && e.is_number_float())
      throw SchemaError(ip, "exact Reeb vector entries must be integers or \"p/q\" strings");
    r.exact.push_back(detail::read_rational(e, ip));
    r.values.push_back(e.is_number_float() ? e.get<double>() : to_double(r.exact.back()));
  }
  return r;
}

/// Comma list such as "3,5/2,3" (decimal entries allowed).
inline ParsedReeb parse_reeb_list(const std::string& s) {
  Json arr = Json::array();
  std::size_t start = 0;
  while (start <= s.size()) {
    auto end = s.find(',', start);
    if (end == std::string::npos) end = s.size();
    std::string tok = s.substr(start, end - start);
    while (!tok.empty() && tok.front() == ' ') tok.erase(tok.begin());
    while (!tok.empty() && tok.back() == ' ') tok.pop_back();
    if (tok.empty()) throw InputError("empty entry in list \"" + s + "\"");
    if (tok.find_first_of(".eE") != std::string::npos) {
      char* stop = nullptr;
      double v = std::strtod(tok.c_str(), &stop);
      if (*stop != '\0') throw InputError("bad number \"" + tok + "\"");
      arr.push_back(v);
    } else {
      arr.push_back(tok);
    }
    start = end + 1;
  }
  return parse_reeb(arr);
}

inline IntVec parse_int_list(const std::string& s) {
  auto r = parse_reeb_list(s);
  IntVec v;
  for (const auto& q : r.exact) {
    if (denominator(q) != 1) throw InputError("expected integers in \"" + s + "\"");
    v.push_back(numerator(q));
  }
  return v;
}

/// {"n": 1, "samples": [{"k": 1, "d": 2, "w": 1}, ...]}; samples may also
/// be [k, d, w] triples.
inline HilbertSamples parse_samples(const Json& j, const std::string& ptr = "") {
  HilbertSamples s;
  s.n = detail::read_size(detail::require(j, ptr, "n"), detail::child(ptr, "n"));
  auto sp = detail::child(ptr, "samples");
  const Json& arr = detail::require_array(detail::require(j, ptr, "samples"), sp);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    auto ip = detail::child(sp, i);
    const Json& e = arr[i];
    HilbertSample h;
    if (e.is_array()) {
      if (e.size() != 3) throw SchemaError(ip, "expected [k, d_k, w_k]");
      h.k = detail::read_int(e[0], detail::child(ip, 0));
      h.d = detail::read_int(e[1], detail::child(ip, 1));
      h.w = detail::read_int(e[2], detail::child(ip, 2));
    } else {
      h.k = detail::read_int(detail::require(e, ip, "k"), detail::child(ip, "k"));
      h.d = detail::read_int(detail::require(e, ip, "d"), detail::child(ip, "d"));
      h.w = detail::read_int(detail::require(e, ip, "w"), detail::child(ip, "w"));
    }
    s.samples.push_back(std::move(h));
  }
  return s;
}

/// {"vertices": [[...], ...], "alpha": [...]}; alpha may come from elsewhere.
inline LatticePolytopeAction parse_polytope(const Json& j, const std::string& ptr = "") {
  LatticePolytopeAction cfg;
  auto vp = detail::child(ptr, "vertices");
  const Json& arr = detail::require_array(detail::require(j, ptr, "vertices"), vp);
  if (arr.empty()) throw SchemaError(vp, "need at least one vertex");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    auto ip = detail::child(vp, i);
    cfg.vertices.push_back(detail::read_int_vec(arr[i], ip));
    if (cfg.vertices.back().size() != cfg.vertices.front().size())
      throw SchemaError(ip, "vertices of mixed dimension");
  }
  if (j.contains("alpha")) cfg.alpha = detail::read_int_vec(j["alpha"], detail::child(ptr, "alpha"));
  return cfg;
}

// ---------------------------------------------------------------- writing

/// Rounds to 12 significant digits; non-finite values become null.
inline Json num(double x) {
  if (!std::isfinite(x)) return nullptr;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  double r = std::strtod(buf, nullptr);
  if (r == 0) r = 0;  // no negative zero
  return r;
}

inline Json num(const BigInt& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return x.convert_to<std::int64_t>();
  return x.str();
}

inline Json num(const Rational& q) {
  if (denominator(q) == 1) return num(BigInt(numerator(q)));
  return to_string(q);
}

template <class T>
Json nums(const std::vector<T>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(num(x));
  return a;
}

inline Json nums(const IntMatrix& m) {
  Json a = Json::array();
  for (const auto& r : m) a.push_back(nums(r));
  return a;
}

template <class T>
Json list(const std::vector<T>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x);
  return a;
}

template <class Scalar>
const char* mode_of() {
  return is_exact_v<Scalar> ? "exact" : "float";
}

/// Value with its arithmetic-mode tag.
template <class T>
Json tagged(const T& v, const char* mode) {
  Json j;
  j["mode"] = mode;
  j["value"] = num(v);
  return j;
}

inline Json to_json(const ToricDiagram& d) {
  Json j;
  j["m"] = d.m;
  j["normals"] = nums(d.normals);
  return j;
}

inline Json to_json(const PolygonDiagram& p) {
  Json v = Json::array();
  for (const auto& x : p.vertices) v.push_back(Json::array({num(x[0]), num(x[1])}));
  Json j;
  j["vertices"] = v;
  return j;
}

inline Json to_json(const ConeInput& in) {
  return std::visit([](const auto& x) { return to_json(x); }, in);
}

inline Json to_json(const GoodnessReport& g) {
  Json j;
  j["good"] = g.verdict;
  j["reason"] = g.verdict ? Json(nullptr) : Json(to_string(g.reason));
  j["failing_face"] = g.failing_face ? list(*g.failing_face) : Json(nullptr);
  j["divisors"] = nums(g.divisors);
  j["reduced_normals"] = list(g.reduced);
  return j;
}

inline Json to_json(const Height& h) {
  Json j;
  j["level"] = num(h.level);
  j["covector"] = nums(h.covector);
  j["g"] = nums(h.g);
  return j;
}

inline Json to_json(const MinimizationResult& r) {
  Json j;
  j["xi_min"] = nums(r.xi_min);
  j["s_tilde"] = num(r.s_tilde_min);
  j["vol_delta"] = num(r.vol_delta_min);
  j["grad_norm"] = num(r.grad_norm);
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  j["bfgs_steps"] = r.bfgs_steps;
  if (!r.diagnostics.empty()) j["diagnostics"] = r.diagnostics;
  return j;
}

inline Json to_json(const FutakiReport& f) {
  Json j;
  j["slice_gradient"] = nums(f.slice_gradient);
  j["norm"] = num(f.norm);
  j["s_tilde"] = num(f.s_tilde);
  j["vanishes"] = f.vanishes;
  return j;
}

template <class Scalar>
Json to_json(const VolumeValue<Scalar>& v) {
  Json j;
  j["arithmetic"] = mode_of<Scalar>();
  j["vol_delta"] = num(v.vol_delta);
  j["s_tilde_over_pi_power"] = num(v.s_tilde_pi_coeff);
  j["s_tilde"] = num(v.s_tilde);
  j["vol_riemannian"] = num(v.vol_riemannian);
  return j;
}

template <class Scalar>
Json to_json(const ChargeSpectrum<Scalar>& s) {
  Json j;
  j["arithmetic"] = mode_of<Scalar>();
  j["cutoff"] = num(s.cutoff);
  Json e = Json::array();
  for (const auto& [q, mult] : s.entries) e.push_back(Json::array({num(q), mult}));
  j["spectrum"] = e;
  return j;
}

inline Json to_json(const HeatTraceEstimate& h) {
  Json j;
  j["arithmetic"] = "float";
  j["cutoff"] = num(h.cutoff);
  j["t_grid"] = nums(h.t_grid);
  j["partial_values"] = nums(h.partial_values);
  j["extrapolated"] = num(h.extrapolated);
  j["truncation_bound"] = num(h.truncation_bound);
  return j;
}

inline Json to_json(const ObstructionReport& r) {
  Json j;
  j["arithmetic"] = "exact";
  j["reeb"] = num(r.reeb);
  j["lambda1"] = num(r.lambda1);
  j["lichnerowicz_pass"] = r.lichnerowicz_pass;
  j["lichnerowicz_boundary"] = r.lichnerowicz_boundary;
  j["vol_ratio"] = num(r.vol_ratio);
  j["bishop_pass"] = r.bishop_pass;
  j["bishop_boundary"] = r.bishop_boundary;
  j["smooth_claim"] = r.smooth_claim;
  j["necessary_conditions_only"] = r.necessary_conditions_only;
  return j;
}

inline Json to_json(const HilbertSamples& s) {
  Json j;
  j["n"] = s.n;
  Json a = Json::array();
  for (const auto& p : s.samples) {
    Json e;
    e["k"] = num(p.k);
    e["d"] = num(p.d);
    e["w"] = num(p.w);
    a.push_back(e);
  }
  j["samples"] = a;
  return j;
}

inline Json to_json(const DFResult& r) {
  Json j;
  j["arithmetic"] = "exact";
  j["a0"] = num(r.a0);
  j["a1"] = num(r.a1);
  j["b0"] = num(r.b0);
  j["b1"] = num(r.b1);
  j["F0"] = num(r.F0);
  j["F1"] = num(r.F1);
  j["consistency_residual"] = num(r.consistency_residual);
  j["verdict"] = to_string(ksemistable_verdict(r));
  return j;
}

inline std::string dump(const Json& j, bool pretty) { return pretty ? j.dump(2) : j.dump(); }

inline Json error_json(const std::string& kind, const std::string& message) {
  Json j;
  j["error"]["kind"] = kind;
  j["error"]["message"] = message;
  return j;
}

}  // namespace reebvolmin
