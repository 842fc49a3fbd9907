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

// Lichnerowicz and Bishop obstructions for links of weighted homogeneous
// hypersurface singularities. Both are necessary conditions only: they
// assume the normalized Reeb field is the volume minimizer.

#include "arith.hpp"

#include <algorithm>
#include <vector>

namespace reebvolmin {

struct WeightedHypersurface {
  std::size_t m = 0;       // link has real dimension 2m+1
  std::vector<BigInt> w;   // m+2 positive weights
  BigInt d;                // degree
  bool smooth_claim = true;  // caller asserts {F = 0} is smooth off 0
};

struct BrieskornExponents {
  std::vector<BigInt> a;  // z_0^{a_0} + ... + z_{m+1}^{a_{m+1}}
};

struct ObstructionReport {
  Rational lambda1;
  Rational vol_ratio;  // Vol / gamma_{2m+1}
  bool lichnerowicz_pass = false;
  bool lichnerowicz_boundary = false;
  bool bishop_pass = false;
  bool bishop_boundary = false;
  Rational reeb;  // (m+1)/(|w|-d)
  bool necessary_conditions_only = true;
  bool smooth_claim = true;
};

namespace detail {

inline void validate(const WeightedHypersurface& h) {
  if (h.w.size() != h.m + 2) throw InputError("expected m+2 weights");
  for (const auto& x : h.w)
    if (x < 1) throw InputError("weights must be positive");
  if (h.d < 1) throw InputError("degree must be positive");
  BigInt s = 0;
  for (const auto& x : h.w) s += x;
  if (s <= h.d) throw InputError("not Fano: sum of weights must exceed the degree");
}

inline BigInt weight_sum(const WeightedHypersurface& h) {
  BigInt s = 0;
  for (const auto& x : h.w) s += x;
  return s;
}

inline Rational rpow(const Rational& x, std::size_t k) {
  Rational r = 1;
  for (std::size_t i = 0; i < k; ++i) r *= x;
  return r;
}

}  // namespace detail

/// (m+1)/(|w|-d): the factor taking the weight field to the Reeb field.
inline Rational normalized_reeb(const WeightedHypersurface& h) {
  detail::validate(h);
  return Rational(BigInt(static_cast<long>(h.m + 1)), detail::weight_sum(h) - h.d);
}

struct TestValue {
  Rational value;
  bool pass = false;
  bool boundary = false;
};

/// First positive charge (m+1) min w / (|w|-d); pass iff >= 1.
inline TestValue lichnerowicz_test(const WeightedHypersurface& h) {
  Rational r = normalized_reeb(h);
  TestValue t;
  t.value = r * Rational(*std::min_element(h.w.begin(), h.w.end()));
  t.pass = t.value >= 1;
  t.boundary = t.value == 1;
  return t;
}

/// d (|w|-d)^{m+1} / ((m+1)^{m+1} prod w); pass iff <= 1.
inline TestValue bishop_test(const WeightedHypersurface& h) {
  Rational r = normalized_reeb(h);
  BigInt prod = 1;
  for (const auto& x : h.w) prod *= x;
  TestValue t;
  t.value = Rational(h.d, prod) / detail::rpow(r, h.m + 1);
  t.pass = t.value <= 1;
  t.boundary = t.value == 1;
  return t;
}

inline ObstructionReport obstruction_report(const WeightedHypersurface& h) {
  ObstructionReport rep;
  rep.reeb = normalized_reeb(h);
  auto l = lichnerowicz_test(h);
  auto b = bishop_test(h);
  rep.lambda1 = l.value;
  rep.lichnerowicz_pass = l.pass;
  rep.lichnerowicz_boundary = l.boundary;
  rep.vol_ratio = b.value;
  rep.bishop_pass = b.pass;
  rep.bishop_boundary = b.boundary;
  rep.smooth_claim = h.smooth_claim;
  return rep;
}

/// Weighted form w_j = D/a_j, d = D with D = scale * lcm(a).
inline WeightedHypersurface brieskorn_to_weighted(const BrieskornExponents& e, const BigInt& scale = 1) {
  if (e.a.size() < 2) throw InputError("need at least two exponents");
  for (const auto& x : e.a)
    if (x < 1) throw InputError("exponents must be positive");
  if (scale < 1) throw InputError("scale must be positive");
  BigInt D = 1;
  for (const auto& x : e.a) D = lcm(D, x);
  D *= scale;
  WeightedHypersurface h;
  h.m = e.a.size() - 2;
  h.d = D;
  for (const auto& x : e.a) h.w.push_back(D / x);
  return h;
}

/// Exponent-form margins: Lichnerowicz (m+1) min 1/a_j - (sum 1/a_j - 1),
/// Bishop (m+1)^{m+1} - prod a_j (sum 1/a_j - 1)^{m+1}.
struct BrieskornMargins {
  Rational excess;           // sum 1/a_j - 1
  Rational lichnerowicz_lhs;  // (m+1) min 1/a_j
  Rational bishop_lhs;        // prod a_j * excess^{m+1}
  Rational bishop_rhs;        // (m+1)^{m+1}
};

inline BrieskornMargins brieskorn_margins(const BrieskornExponents& e) {
  auto h = brieskorn_to_weighted(e);
  BrieskornMargins mg;
  mg.excess = -1;
  BigInt prod = 1;
  BigInt amax = 0;
  for (const auto& x : e.a) {
    mg.excess += Rational(BigInt(1), x);
    prod *= x;
    amax = std::max(amax, x);
  }
  if (mg.excess <= 0) throw InputError("not Fano: sum of 1/a_j must exceed 1");
  const long mp1 = static_cast<long>(h.m + 1);
  mg.lichnerowicz_lhs = Rational(BigInt(mp1), amax);
  mg.bishop_lhs = Rational(prod) * detail::rpow(mg.excess, h.m + 1);
  mg.bishop_rhs = detail::rpow(Rational(mp1), h.m + 1);
  return mg;
}

/// Tests a Brieskorn-Pham link directly in exponent form; the verdicts are
/// cross-checked against the weighted form and an Error is thrown on any
/// disagreement.
inline ObstructionReport brieskorn_tests(const BrieskornExponents& e) {
  auto mg = brieskorn_margins(e);
  auto rep = obstruction_report(brieskorn_to_weighted(e));
  const bool lpass = mg.lichnerowicz_lhs >= mg.excess;
  const bool bpass = mg.bishop_lhs <= mg.bishop_rhs;
  if (lpass != rep.lichnerowicz_pass || bpass != rep.bishop_pass ||
      (mg.lichnerowicz_lhs == mg.excess) != rep.lichnerowicz_boundary ||
      (mg.bishop_lhs == mg.bishop_rhs) != rep.bishop_boundary)
    throw Error("exponent and weighted obstruction forms disagree");
  return rep;
}

}  // namespace reebvolmin
