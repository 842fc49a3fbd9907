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

// Rational polyhedral cones C = {y | <lambda_j, y> >= 0} given by integer
// normals: generators, faces, goodness (smoothness) and height detection.
// Everything here is exact.

#include "arith.hpp"
#include "linalg.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

namespace reebvolmin {

/// A cone in R^{m+1} cut out by integer inward normals.
struct ToricDiagram {
  std::size_t m = 0;
  IntMatrix normals;
  /// Indices of input normals that were divided by their content on
  /// construction.
  std::vector<std::size_t> reduced;

  std::size_t dim() const { return m + 1; }

  /// Validates lengths and reduces every normal to a primitive vector.
  static ToricDiagram from_normals(std::size_t m, IntMatrix normals) {
    if (normals.empty()) throw InputError("diagram has no normals");
    ToricDiagram d;
    d.m = m;
    for (std::size_t j = 0; j < normals.size(); ++j) {
      if (normals[j].size() != m + 1)
        throw InputError("normal " + std::to_string(j) + " has length " +
                         std::to_string(normals[j].size()) + ", expected " +
                         std::to_string(m + 1));
      IntVec p = primitive_reduce(normals[j]);
      if (p != normals[j]) d.reduced.push_back(j);
      d.normals.push_back(std::move(p));
    }
    return d;
  }

  bool operator==(const ToricDiagram& o) const { return m == o.m && normals == o.normals; }
};

/// C = span(lineality) + cone(rays).
struct ConeGenerators {
  IntMatrix rays;       // primitive, sorted lexicographically
  IntMatrix lineality;  // primitive basis of {y | <lambda_j, y> = 0 all j}
};

namespace detail {

template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

/// Extreme rays and lineality space of {y in R^n | <a_j, y> >= 0}. Rays are
/// found as one-dimensional solutions of rank-1 subsets of the facet
/// equations inside span(a), kept when every a_j pairs with the same sign.
inline ConeGenerators extreme_rays(const IntMatrix& a, std::size_t n) {
  ConeGenerators out;
  out.lineality = rational_kernel(a, n);
  const std::size_t r = n - out.lineality.size();
  if (r == 0) return out;
  std::set<IntVec> found;
  detail::for_each_subset(a.size(), r - 1, [&](const std::vector<std::size_t>& idx) {
    IntMatrix sys;
    sys.reserve(idx.size() + out.lineality.size());
    for (auto i : idx) sys.push_back(a[i]);
    for (const auto& l : out.lineality) sys.push_back(l);
    IntMatrix ker = rational_kernel(sys, n);
    if (ker.size() != 1) return;
    IntVec y = ker.front();
    bool pos = true, neg = true;
    for (const auto& row : a) {
      BigInt s = dot(row, y);
      if (s < 0) pos = false;
      if (s > 0) neg = false;
    }
    if (neg && !pos)
      for (auto& x : y) x = -x;
    if (pos || neg) found.insert(std::move(y));
  });
  out.rays.assign(found.begin(), found.end());
  return out;
}

inline bool has_nonempty_interior(const ConeGenerators& g, std::size_t n) {
  IntMatrix all = g.rays;
  all.insert(all.end(), g.lineality.begin(), g.lineality.end());
  return rank(all) == n;
}

inline ConeGenerators generators(const ToricDiagram& d) { return extreme_rays(d.normals, d.dim()); }

/// Indices j whose inequality is implied by the others (lambda_j lies in the
/// cone spanned by the remaining normals).
inline std::vector<std::size_t> check_minimal(const ToricDiagram& d) {
  std::vector<std::size_t> redundant;
  for (std::size_t j = 0; j < d.normals.size(); ++j) {
    IntMatrix others;
    for (std::size_t k = 0; k < d.normals.size(); ++k)
      if (k != j) others.push_back(d.normals[k]);
    auto g = extreme_rays(others, d.dim());
    bool implied = true;
    for (const auto& l : g.lineality)
      if (dot(d.normals[j], l) != 0) implied = false;
    for (const auto& r : g.rays)
      if (dot(d.normals[j], r) < 0) implied = false;
    if (implied) redundant.push_back(j);
  }
  return redundant;
}

/// Primitive generators of the cone C itself, i.e. the dual of the cone
/// spanned by the normals. These are the vectors a Reeb vector must pair
/// positively with. A non-pointed cone also gets +/- its lineality basis.
inline IntMatrix dual_cone(const ToricDiagram& d) {
  auto g = generators(d);
  if (!has_nonempty_interior(g, d.dim())) throw InputError("degenerate cone: empty interior");
  IntMatrix out = g.rays;
  for (const auto& l : g.lineality) {
    out.push_back(l);
    IntVec neg = l;
    for (auto& x : neg) x = -x;
    out.push_back(std::move(neg));
  }
  return out;
}

/// A nonempty face of C recorded by its active normals (those vanishing on
/// the whole face) and the extreme rays it contains.
struct Face {
  std::vector<std::size_t> active;
  std::vector<std::size_t> rays;
  std::size_t dim = 0;

  bool operator<(const Face& o) const {
    if (active.size() != o.active.size()) return active.size() < o.active.size();
    return active < o.active;
  }
};

/// Face lattice of C. Faces are listed by increasing active-set size (the
/// full cone first) and lexicographically within a size.
inline std::vector<Face> faces(const ToricDiagram& d, const ConeGenerators& g) {
  const auto& N = d.normals;
  auto closure = [&](const std::vector<std::size_t>& rays) {
    std::vector<std::size_t> act;
    for (std::size_t i = 0; i < N.size(); ++i) {
      bool zero = true;
      for (auto r : rays)
        if (dot(N[i], g.rays[r]) != 0) {
          zero = false;
          break;
        }
      if (zero) act.push_back(i);
    }
    return act;
  };
  auto dimension = [&](const std::vector<std::size_t>& rays) {
    IntMatrix m = g.lineality;
    for (auto r : rays) m.push_back(g.rays[r]);
    return m.empty() ? std::size_t{0} : rank(m);
  };
  std::vector<std::size_t> all_rays(g.rays.size());
  for (std::size_t i = 0; i < all_rays.size(); ++i) all_rays[i] = i;

  std::map<std::vector<std::size_t>, Face> seen;
  std::queue<std::vector<std::size_t>> work;
  {
    Face top{closure(all_rays), all_rays, dimension(all_rays)};
    work.push(top.active);
    seen.emplace(top.active, std::move(top));
  }
  while (!work.empty()) {
    auto key = work.front();
    work.pop();
    const Face cur = seen.at(key);
    for (std::size_t j = 0; j < N.size(); ++j) {
      if (std::binary_search(cur.active.begin(), cur.active.end(), j)) continue;
      std::vector<std::size_t> sub;
      for (auto r : cur.rays)
        if (dot(N[j], g.rays[r]) == 0) sub.push_back(r);
      auto act = closure(sub);
      if (seen.count(act)) continue;
      Face f{act, sub, dimension(sub)};
      work.push(act);
      seen.emplace(std::move(act), std::move(f));
    }
  }
  std::vector<Face> out;
  for (auto& [k, f] : seen) out.push_back(f);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Face> faces(const ToricDiagram& d) { return faces(d, generators(d)); }

enum class GoodnessFailure { none, not_independent, lattice_saturation_fails, not_primitive, not_minimal };

inline const char* to_string(GoodnessFailure r) {
  switch (r) {
    case GoodnessFailure::none: return "none";
    case GoodnessFailure::not_independent: return "not-independent";
    case GoodnessFailure::lattice_saturation_fails: return "lattice-saturation-fails";
    case GoodnessFailure::not_primitive: return "not-primitive";
    case GoodnessFailure::not_minimal: return "not-minimal";
  }
  return "unknown";
}

struct GoodnessReport {
  bool verdict = false;
  std::optional<std::vector<std::size_t>> failing_face;
  GoodnessFailure reason = GoodnessFailure::none;
  std::vector<BigInt> divisors;          // Smith divisors of the failing face
  std::vector<std::size_t> reduced;      // normals auto-reduced to primitive
};

/// Raised by is_good when some normal is implied by the others.
class NotMinimalError : public InputError {
public:
  explicit NotMinimalError(std::vector<std::size_t> idx)
      : InputError(make_message(idx)), indices(std::move(idx)) {}
  std::vector<std::size_t> indices;

private:
  static std::string make_message(const std::vector<std::size_t>& idx) {
    std::string s = "redundant normals:";
    for (auto i : idx) s += " " + std::to_string(i);
    return s;
  }
};

/// True when the rows are linearly independent and saturate their real
/// span in the integer lattice, i.e. every Smith divisor equals 1.
inline bool is_unimodular_face(const IntMatrix& rows, std::vector<BigInt>* divisors = nullptr) {
  auto div = smith_divisors(rows);
  if (divisors) *divisors = div;
  if (div.size() != rows.size()) return false;
  return std::all_of(div.begin(), div.end(), [](const BigInt& x) { return x == 1; });
}

/// Smoothness test over every face except the apex {0}.
inline GoodnessReport is_good(const ToricDiagram& d) {
  if (auto red = check_minimal(d); !red.empty()) throw NotMinimalError(std::move(red));
  auto g = generators(d);
  if (!has_nonempty_interior(g, d.dim())) throw InputError("degenerate cone: empty interior");
  GoodnessReport rep;
  rep.reduced = d.reduced;
  for (const auto& f : faces(d, g)) {
    if (f.dim == 0 || f.active.empty()) continue;
    IntMatrix rows;
    for (auto i : f.active) rows.push_back(d.normals[i]);
    std::vector<BigInt> div;
    bool ok = is_unimodular_face(rows, &div);
    if (!ok) {
      rep.verdict = false;
      rep.failing_face = f.active;
      rep.divisors = div;
      rep.reason = div.size() != rows.size() ? GoodnessFailure::not_independent
                                             : GoodnessFailure::lattice_saturation_fails;
      return rep;
    }
  }
  rep.verdict = true;
  return rep;
}

/// Height data: <covector, lambda_j> = level for every j, and g in SL(n,Z)
/// with first row `covector`, so g*lambda_j = (level, ...).
struct Height {
  BigInt level;
  IntVec covector;
  IntMatrix g;
};

/// Completes a primitive row vector to a matrix in SL(n,Z) having it as the
/// first row. The identity is returned for e = e_1.
inline IntMatrix extend_to_unimodular(const IntVec& e) {
  const std::size_t n = e.size();
  IntMatrix row{e};
  auto ce = column_echelon(row, n);
  BigInt c = ce.reduced[0][0];
  if (abs(c) != 1) throw Error("covector is not primitive");
  IntMatrix g = unimodular_inverse(ce.u);
  if (c == -1)
    for (auto& x : g[0]) x = -x;
  if (determinant(g) < 0) {
    if (n < 2) throw Error("cannot fix orientation in dimension 1");
    for (auto& x : g[n - 1]) x = -x;
  }
  return g;
}

/// Finds the smallest positive level l and a primitive covector e with
/// <e, lambda_j> = l for all j. Returns nullopt when none exists.
inline std::optional<Height> detect_height(const ToricDiagram& d) {
  const std::size_t n = d.dim();
  IntMatrix diffs;
  for (std::size_t j = 1; j < d.normals.size(); ++j) {
    IntVec v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = d.normals[j][i] - d.normals[0][i];
    diffs.push_back(std::move(v));
  }
  IntMatrix basis = integer_kernel(diffs, n);
  if (basis.empty()) return std::nullopt;
  // values of <b_i, lambda_1>; the attainable levels form gcd * Z
  BigInt level = 0;
  IntVec e(n, 0);
  for (const auto& b : basis) {
    BigInt v = dot(b, d.normals[0]);
    if (v == 0) continue;
    if (level == 0) {
      level = abs(v);
      BigInt s = v > 0 ? 1 : -1;
      for (std::size_t i = 0; i < n; ++i) e[i] = s * b[i];
    } else {
      auto [gg, s, t] = xgcd(level, v);
      for (std::size_t i = 0; i < n; ++i) e[i] = s * e[i] + t * b[i];
      level = gg;
    }
  }
  if (level == 0) return std::nullopt;
  Height h;
  h.level = level;
  h.covector = e;
  h.g = extend_to_unimodular(e);
  return h;
}

/// Applies g to every normal.
inline ToricDiagram transform(const ToricDiagram& d, const IntMatrix& g) {
  IntMatrix out;
  for (const auto& l : d.normals) out.push_back(reebvolmin::apply(g, l));
  return ToricDiagram::from_normals(d.m, std::move(out));
}

/// Lattice polygon with vertices listed counterclockwise.
struct PolygonDiagram {
  std::vector<std::array<BigInt, 2>> vertices;
  bool operator==(const PolygonDiagram& o) const { return vertices == o.vertices; }
};

inline BigInt cross(const std::array<BigInt, 2>& o, const std::array<BigInt, 2>& a,
                    const std::array<BigInt, 2>& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

/// Strict convexity in counterclockwise order: every other vertex lies
/// strictly left of every edge.
inline void validate(const PolygonDiagram& p) {
  const auto& v = p.vertices;
  const std::size_t d = v.size();
  if (d < 3) throw InputError("polygon needs at least 3 vertices");
  for (std::size_t j = 0; j < d; ++j) {
    const auto& a = v[j];
    const auto& b = v[(j + 1) % d];
    for (std::size_t k = 0; k < d; ++k) {
      if (k == j || k == (j + 1) % d) continue;
      if (cross(a, b, v[k]) <= 0)
        throw InputError("polygon is not strictly convex counterclockwise at edge " +
                         std::to_string(j));
    }
  }
}

/// The cone {x + p_j y + q_j z >= 0} over a lattice polygon.
inline ToricDiagram polygon_to_cone(const PolygonDiagram& p) {
  validate(p);
  IntMatrix normals;
  for (const auto& v : p.vertices) normals.push_back({BigInt(1), v[0], v[1]});
  return ToricDiagram::from_normals(2, std::move(normals));
}

/// Edge criterion for goodness of the cone over a polygon.
inline bool polygon_is_good(const PolygonDiagram& p) {
  validate(p);
  const auto& v = p.vertices;
  for (std::size_t j = 0; j < v.size(); ++j) {
    const auto& a = v[j];
    const auto& b = v[(j + 1) % v.size()];
    BigInt dp = abs(BigInt(a[0] - b[0])), dq = abs(BigInt(a[1] - b[1]));
    if (dp == 1 || dq == 1) continue;
    if (dp != 0 && dq != 0 && gcd(dp, dq) == 1) continue;
    return false;
  }
  return true;
}

}  // namespace reebvolmin
