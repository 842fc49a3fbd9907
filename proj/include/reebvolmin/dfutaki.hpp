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

// Donaldson-Futaki invariant of a test configuration from its Hilbert data:
// d_k = a0 k^n + a1 k^{n-1} + ..., w_k = b0 k^{n+1} + b1 k^n + ...,
// w_k / (k d_k) = F0 + F1 / k + O(k^-2).

#include "cone.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

namespace reebvolmin {

struct HilbertSample {
  BigInt k;
  BigInt d;  // dim H^0(X_0, L^k)
  BigInt w;  // total weight of the action on it
};

struct HilbertSamples {
  std::size_t n = 0;  // complex dimension
  std::vector<HilbertSample> samples;
};

class NotPolynomialError : public InputError {
public:
  NotPolynomialError(const char* which, BigInt k)
      : InputError(std::string("not polynomial of stated degree: ") + which + " sample at k=" + k.str() +
                   " is inconsistent"),
        failing_k(std::move(k)) {}
  BigInt failing_k;
};

/// Coefficients in descending powers: d = (a0..an), w = (b0..b_{n+1}).
struct HilbertFit {
  std::size_t n = 0;
  RatVec d;
  RatVec w;
};

namespace detail {

/// Monomial coefficients (descending powers) of the interpolant through
/// (x_i, y_i), via Newton divided differences.
inline RatVec interpolate(const RatVec& x, RatVec y) {
  const std::size_t n = x.size();
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) {
      y[i] = (y[i] - y[i - 1]) / (x[i] - x[i - j]);
      if (i == j) break;
    }
  // Horner expansion of sum y_j prod_{i<j} (t - x_i), ascending coefficients.
  RatVec c(n, Rational(0));
  for (std::size_t jj = n; jj-- > 0;) {
    RatVec next(n, Rational(0));
    for (std::size_t p = 0; p + 1 < n; ++p) {
      next[p + 1] += c[p];
      next[p] -= c[p] * x[jj];
    }
    next[0] += y[jj];
    c = std::move(next);
  }
  std::reverse(c.begin(), c.end());
  return c;
}

inline Rational evaluate(const RatVec& desc, const Rational& t) {
  Rational v = 0;
  for (const auto& c : desc) v = v * t + c;
  return v;
}

/// Interpolates on the first deg+1 points; returns the indices of the
/// remaining samples that disagree with the fit.
inline std::vector<std::size_t> misfits(const RatVec& x, const RatVec& y, std::size_t deg, RatVec* coeffs) {
  RatVec xs(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(deg + 1));
  RatVec ys(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(deg + 1));
  RatVec c = interpolate(xs, ys);
  std::vector<std::size_t> bad;
  for (std::size_t i = deg + 1; i < x.size(); ++i)
    if (evaluate(c, x[i]) != y[i]) bad.push_back(i);
  if (coeffs) *coeffs = std::move(c);
  return bad;
}

/// Exact fit with all spares reproduced; otherwise names the sample whose
/// removal makes the remainder consistent (or the first misfit).
inline RatVec fit_one(const char* which, const RatVec& x, const RatVec& y, std::size_t deg,
                      const std::vector<BigInt>& ks) {
  RatVec c;
  auto bad = misfits(x, y, deg, &c);
  if (bad.empty()) return c;
  if (x.size() >= deg + 3) {
    for (std::size_t drop = 0; drop < x.size(); ++drop) {
      RatVec xs, ys;
      for (std::size_t i = 0; i < x.size(); ++i)
        if (i != drop) {
          xs.push_back(x[i]);
          ys.push_back(y[i]);
        }
      if (misfits(xs, ys, deg, nullptr).empty()) throw NotPolynomialError(which, ks[drop]);
    }
  }
  throw NotPolynomialError(which, ks[bad.front()]);
}

}  // namespace detail

/// Exact interpolation of d_k (degree n) and w_k (degree n+1); needs at
/// least n+4 samples so w has two spare checks.
inline HilbertFit fit_polynomials(const HilbertSamples& s) {
  if (s.n < 1) throw InputError("dimension must be positive");
  if (s.samples.size() < s.n + 4) throw InputError("need at least n+4 samples");
  std::set<BigInt> seen;
  RatVec x, dy, wy;
  std::vector<BigInt> ks;
  for (const auto& p : s.samples) {
    if (p.k < 1) throw InputError("k must be positive");
    if (!seen.insert(p.k).second) throw InputError("duplicate k=" + p.k.str());
    ks.push_back(p.k);
    x.emplace_back(p.k);
    dy.emplace_back(p.d);
    wy.emplace_back(p.w);
  }
  HilbertFit f;
  f.n = s.n;
  f.d = detail::fit_one("d_k", x, dy, s.n, ks);
  f.w = detail::fit_one("w_k", x, wy, s.n + 1, ks);
  return f;
}

struct DFResult {
  Rational a0, a1, b0, b1;
  Rational F0, F1;
  Rational consistency_residual;
};

inline DFResult donaldson_futaki(const HilbertFit& f) {
  if (f.d.size() != f.n + 1 || f.w.size() != f.n + 2) throw InputError("fit has wrong shape");
  DFResult r;
  r.a0 = f.d[0];
  r.a1 = f.d[1];
  r.b0 = f.w[0];
  r.b1 = f.w[1];
  if (r.a0 <= 0) throw InputError("leading Hilbert coefficient a0 must be positive");
  r.F0 = r.b0 / r.a0;
  r.F1 = (r.a0 * r.b1 - r.a1 * r.b0) / (r.a0 * r.a0);
  r.consistency_residual = 0;
  return r;
}

/// Residual max |fit(k) - sample| over all samples (zero after a
/// successful exact fit).
inline Rational fit_residual(const HilbertFit& f, const HilbertSamples& s) {
  Rational worst = 0;
  for (const auto& p : s.samples) {
    Rational k(p.k);
    Rational e1 = detail::evaluate(f.d, k) - Rational(p.d);
    Rational e2 = detail::evaluate(f.w, k) - Rational(p.w);
    worst = std::max({worst, Rational(abs(e1)), Rational(abs(e2))});
  }
  return worst;
}

inline DFResult donaldson_futaki(const HilbertSamples& s) {
  auto f = fit_polynomials(s);
  auto r = donaldson_futaki(f);
  r.consistency_residual = fit_residual(f, s);
  return r;
}

enum class KVerdict { SemistableConsistent, Destabilized };

inline const char* to_string(KVerdict v) {
  return v == KVerdict::Destabilized ? "destabilized" : "semistable-consistent";
}

/// One configuration with F1 > 0 destabilizes; F1 <= 0 certifies nothing.
inline KVerdict ksemistable_verdict(const DFResult& r) {
  return r.F1 > 0 ? KVerdict::Destabilized : KVerdict::SemistableConsistent;
}

struct LatticePolytopeAction {
  IntMatrix vertices;  // lattice points in Z^n
  IntVec alpha;        // weight functional
};

/// Facet inequalities c + <a, x> >= 0 of conv(vertices), as rows (c, a).
inline IntMatrix polytope_facets(const IntMatrix& vertices, std::size_t n) {
  IntMatrix lifted;
  for (const auto& v : vertices) {
    if (v.size() != n) throw InputError("vertex has wrong dimension");
    IntVec row{BigInt(1)};
    row.insert(row.end(), v.begin(), v.end());
    lifted.push_back(std::move(row));
  }
  auto g = extreme_rays(lifted, n + 1);
  if (!g.lineality.empty() || g.rays.size() < n + 1) throw InputError("degenerate polytope: not full-dimensional");
  return g.rays;
}

/// d_k = #(kP ∩ Z^n), w_k = sum over those points of <u, alpha>, k = 1..k_max.
inline HilbertSamples toric_product_config(const LatticePolytopeAction& cfg, std::size_t k_max) {
  if (cfg.vertices.empty()) throw InputError("empty polytope");
  const std::size_t n = cfg.vertices.front().size();
  if (n == 0) throw InputError("degenerate polytope: dimension 0");
  if (cfg.alpha.size() != n) throw InputError("alpha has wrong dimension");
  if (k_max < n + 4) throw InputError("k_max must be at least n+4");
  const IntMatrix facets = polytope_facets(cfg.vertices, n);
  IntVec lo = cfg.vertices.front(), hi = cfg.vertices.front();
  for (const auto& v : cfg.vertices)
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = std::min(lo[i], v[i]);
      hi[i] = std::max(hi[i], v[i]);
    }
  HilbertSamples out;
  out.n = n;
  for (std::size_t kk = 1; kk <= k_max; ++kk) {
    const BigInt k(static_cast<long>(kk));
    IntVec x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = k * lo[i];
    HilbertSample s{k, 0, 0};
    for (;;) {
      bool inside = true;
      for (const auto& f : facets) {
        BigInt v = f[0] * k;
        for (std::size_t i = 0; i < n; ++i) v += f[i + 1] * x[i];
        if (v < 0) {
          inside = false;
          break;
        }
      }
      if (inside) {
        s.d += 1;
        s.w += dot(cfg.alpha, x);
      }
      std::size_t i = n;
      while (i > 0) {
        --i;
        if (x[i] < k * hi[i]) {
          ++x[i];
          break;
        }
        x[i] = k * lo[i];
        if (i == 0) {
          i = n + 1;
          break;
        }
      }
      if (i == n + 1) break;
    }
    out.samples.push_back(std::move(s));
  }
  return out;
}

}  // namespace reebvolmin
