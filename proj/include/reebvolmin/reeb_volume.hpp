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

// Truncated Reeb polytopes Delta(xi) = {x in C | xi.x <= 1} and the volume
// functional. Every routine is templated on the scalar: `double` for the
// optimizer, `Rational` for exact identities.

#include "arith.hpp"
#include "cone.hpp"
#include "linalg.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <type_traits>
#include <vector>

namespace reebvolmin {

template <class Scalar>
inline constexpr bool is_exact_v = std::is_same_v<Scalar, Rational>;

template <class Scalar>
struct ReebVector {
  std::vector<Scalar> xi;
  bool on_slice = false;
};

/// Triangulation of a pointed full-dimensional cone into simplicial cones,
/// built once per diagram. Cap vertices of Delta(xi) are the rays scaled by
/// 1/<xi, r>, so the triangulation does not depend on xi and
///
///   Vol(Delta(xi)) = sum_s |det R_s| / (n! * prod_{r in s} <xi, r>).
class VolumeFan {
public:
  explicit VolumeFan(const ToricDiagram& d) : m_(d.m) {
    auto g = generators(d);
    if (!g.lineality.empty() || !has_nonempty_interior(g, d.dim()))
      throw InputError("cone is not pointed and full-dimensional");
    rays_ = g.rays;
    for (const auto& r : rays_) rays_d_.push_back(to_doubles(r));
    auto fs = faces(d, g);
    build(fs);
  }

  std::size_t m() const { return m_; }
  std::size_t dim() const { return m_ + 1; }
  const IntMatrix& rays() const { return rays_; }
  const std::vector<std::vector<std::size_t>>& simplices() const { return simplices_; }
  const std::vector<Rational>& coefficients() const { return coeff_; }

  template <class Scalar>
  bool in_interior(const std::vector<Scalar>& xi) const {
    for (std::size_t i = 0; i < rays_.size(); ++i)
      if (!(pairing(i, xi) > 0)) return false;
    return true;
  }

  template <class Scalar>
  Scalar pairing(std::size_t ray, const std::vector<Scalar>& xi) const {
    if constexpr (is_exact_v<Scalar>)
      return pair(rays_[ray], xi);
    else
      return dot(rays_d_[ray], xi);
  }

  template <class Scalar>
  Scalar volume(const std::vector<Scalar>& xi) const {
    check(xi);
    auto u = pairings(xi);
    Scalar s = 0;
    for (std::size_t k = 0; k < simplices_.size(); ++k) s += term(k, u);
    return s;
  }

  template <class Scalar>
  std::vector<Scalar> gradient(const std::vector<Scalar>& xi) const {
    check(xi);
    auto u = pairings(xi);
    std::vector<Scalar> grad(dim(), Scalar(0));
    for (std::size_t k = 0; k < simplices_.size(); ++k) {
      Scalar t = term(k, u);
      for (auto i : simplices_[k]) {
        Scalar f = t / u[i];
        for (std::size_t c = 0; c < dim(); ++c) grad[c] -= f * ray_entry<Scalar>(i, c);
      }
    }
    return grad;
  }

  /// Hessian of xi -> Vol(Delta(xi)); row-major n x n.
  template <class Scalar>
  std::vector<std::vector<Scalar>> hessian(const std::vector<Scalar>& xi) const {
    check(xi);
    auto u = pairings(xi);
    const std::size_t n = dim();
    std::vector<std::vector<Scalar>> h(n, std::vector<Scalar>(n, Scalar(0)));
    std::vector<Scalar> w(n);
    for (std::size_t k = 0; k < simplices_.size(); ++k) {
      Scalar t = term(k, u);
      std::fill(w.begin(), w.end(), Scalar(0));
      for (auto i : simplices_[k])
        for (std::size_t c = 0; c < n; ++c) w[c] += ray_entry<Scalar>(i, c) / u[i];
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) h[a][b] += t * w[a] * w[b];
      for (auto i : simplices_[k]) {
        Scalar f = t / (u[i] * u[i]);
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < n; ++b)
            h[a][b] += f * ray_entry<Scalar>(i, a) * ray_entry<Scalar>(i, b);
      }
    }
    return h;
  }

private:
  template <class Scalar>
  Scalar ray_entry(std::size_t i, std::size_t c) const {
    if constexpr (is_exact_v<Scalar>)
      return Scalar(rays_[i][c]);
    else
      return rays_d_[i][c];
  }

  template <class Scalar>
  void check(const std::vector<Scalar>& xi) const {
    if (xi.size() != dim()) throw InputError("Reeb vector has wrong dimension");
    if (!in_interior(xi)) throw InputError("unbounded truncation: Reeb vector not interior to the dual cone");
  }

  template <class Scalar>
  std::vector<Scalar> pairings(const std::vector<Scalar>& xi) const {
    std::vector<Scalar> u;
    u.reserve(rays_.size());
    for (std::size_t i = 0; i < rays_.size(); ++i) u.push_back(pairing(i, xi));
    return u;
  }

  template <class Scalar>
  Scalar term(std::size_t k, const std::vector<Scalar>& u) const {
    Scalar t;
    if constexpr (is_exact_v<Scalar>)
      t = coeff_[k];
    else
      t = coeff_d_[k];
    for (auto i : simplices_[k]) t /= u[i];
    return t;
  }

  void build(const std::vector<Face>& fs) {
    // faces keyed by ray set, with their facets
    std::map<std::vector<std::size_t>, std::size_t> index;
    for (std::size_t i = 0; i < fs.size(); ++i) index[fs[i].rays] = i;
    std::vector<std::vector<std::size_t>> facets(fs.size());
    for (std::size_t i = 0; i < fs.size(); ++i)
      for (std::size_t j = 0; j < fs.size(); ++j)
        if (fs[j].dim + 1 == fs[i].dim &&
            std::includes(fs[i].rays.begin(), fs[i].rays.end(), fs[j].rays.begin(), fs[j].rays.end()))
          facets[i].push_back(j);
    std::map<std::size_t, std::vector<std::vector<std::size_t>>> memo;
    std::function<const std::vector<std::vector<std::size_t>>&(std::size_t)> tri =
        [&](std::size_t f) -> const std::vector<std::vector<std::size_t>>& {
      if (auto it = memo.find(f); it != memo.end()) return it->second;
      std::vector<std::vector<std::size_t>> out;
      const auto& rs = fs[f].rays;
      if (rs.size() == fs[f].dim) {
        out.push_back(rs);
      } else {
        // pull from the lexicographically smallest ray
        std::size_t apex = rs.front();
        for (auto g : facets[f]) {
          const auto& gr = fs[g].rays;
          if (std::binary_search(gr.begin(), gr.end(), apex)) continue;
          for (auto s : tri(g)) {
            s.push_back(apex);
            std::sort(s.begin(), s.end());
            out.push_back(std::move(s));
          }
        }
      }
      return memo.emplace(f, std::move(out)).first->second;
    };
    std::size_t top = index.at([&] {
      std::vector<std::size_t> all(rays_.size());
      for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
      return all;
    }());
    simplices_ = tri(top);
    BigInt fact = 1;
    for (std::size_t i = 2; i <= dim(); ++i) fact *= i;
    for (const auto& s : simplices_) {
      IntMatrix mtx;
      for (auto i : s) mtx.push_back(rays_[i]);
      Rational c(abs(determinant(mtx)), fact);
      coeff_.push_back(c);
      coeff_d_.push_back(to_double(c));
    }
  }

  std::size_t m_;
  IntMatrix rays_;
  std::vector<std::vector<double>> rays_d_;
  std::vector<std::vector<std::size_t>> simplices_;
  std::vector<Rational> coeff_;
  std::vector<double> coeff_d_;
};

template <class Scalar>
bool in_interior(const ToricDiagram& d, const std::vector<Scalar>& xi) {
  if (xi.size() != d.dim()) throw InputError("Reeb vector has wrong dimension");
  auto g = generators(d);
  if (!g.lineality.empty()) return false;
  for (const auto& r : g.rays)
    if (!(pair(r, xi) > 0)) return false;
  return has_nonempty_interior(g, d.dim());
}

/// Vertex description of Delta(xi): the origin (index 0) and one cap vertex
/// per extreme ray, in ray order.
template <class Scalar>
struct TruncatedPolytope {
  std::size_t m = 0;
  std::vector<std::vector<Scalar>> vertices;
  /// Per normal, the vertices on its facet; the final entry is the cap.
  std::vector<std::vector<std::size_t>> facets;
  /// Simplicial decomposition: each simplex is the origin plus these
  /// vertex indices.
  std::vector<std::vector<std::size_t>> simplices;
  /// Combinatorial type: for each cap vertex, the normals vanishing on it.
  std::vector<std::vector<std::size_t>> chamber;
};

template <class Scalar>
TruncatedPolytope<Scalar> truncate(const ToricDiagram& d, const VolumeFan& fan,
                                   const std::vector<Scalar>& xi) {
  if (!fan.in_interior(xi)) throw InputError("unbounded truncation: Reeb vector not interior to the dual cone");
  TruncatedPolytope<Scalar> p;
  p.m = d.m;
  const std::size_t n = d.dim();
  p.vertices.emplace_back(n, Scalar(0));
  for (std::size_t i = 0; i < fan.rays().size(); ++i) {
    Scalar s = fan.pairing(i, xi);
    std::vector<Scalar> v(n);
    for (std::size_t c = 0; c < n; ++c) {
      if constexpr (is_exact_v<Scalar>)
        v[c] = Scalar(fan.rays()[i][c]) / s;
      else
        v[c] = to_double(fan.rays()[i][c]) / s;
    }
    p.vertices.push_back(std::move(v));
  }
  for (const auto& l : d.normals) {
    std::vector<std::size_t> on{0};
    for (std::size_t i = 0; i < fan.rays().size(); ++i)
      if (dot(l, fan.rays()[i]) == 0) on.push_back(i + 1);
    p.facets.push_back(std::move(on));
  }
  std::vector<std::size_t> cap;
  for (std::size_t i = 0; i < fan.rays().size(); ++i) cap.push_back(i + 1);
  p.facets.push_back(std::move(cap));
  for (const auto& s : fan.simplices()) {
    std::vector<std::size_t> t;
    for (auto i : s) t.push_back(i + 1);
    p.simplices.push_back(std::move(t));
  }
  for (std::size_t i = 0; i < fan.rays().size(); ++i) {
    std::vector<std::size_t> act;
    for (std::size_t j = 0; j < d.normals.size(); ++j)
      if (dot(d.normals[j], fan.rays()[i]) == 0) act.push_back(j);
    p.chamber.push_back(std::move(act));
  }
  return p;
}

template <class Scalar>
TruncatedPolytope<Scalar> truncate(const ToricDiagram& d, const std::vector<Scalar>& xi) {
  if (xi.size() != d.dim()) throw InputError("Reeb vector has wrong dimension");
  return truncate(d, VolumeFan(d), xi);
}

namespace detail {

template <class Scalar>
Scalar determinant(std::vector<std::vector<Scalar>> a) {
  const std::size_t n = a.size();
  Scalar det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if constexpr (is_exact_v<Scalar>) {
        if (a[p][k] == 0 && a[i][k] != 0) p = i;
      } else {
        if (std::abs(a[i][k]) > std::abs(a[p][k])) p = i;
      }
    }
    if (a[p][k] == 0) return Scalar(0);
    if (p != k) {
      std::swap(a[p], a[k]);
      det = -det;
    }
    det *= a[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      Scalar f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return det;
}

}  // namespace detail

/// Euclidean volume from the simplicial decomposition, coning every
/// simplex to the origin.
template <class Scalar>
Scalar volume(const TruncatedPolytope<Scalar>& p) {
  Scalar fact = 1;
  for (std::size_t i = 2; i <= p.m + 1; ++i) fact *= Scalar(static_cast<long>(i));
  Scalar vol = 0;
  for (const auto& s : p.simplices) {
    std::vector<std::vector<Scalar>> mtx;
    for (auto i : s) mtx.push_back(p.vertices[i]);
    Scalar det = detail::determinant(std::move(mtx));
    vol += (det < 0 ? Scalar(-det) : det) / fact;
  }
  if (!(vol > 0)) throw InputError("degenerate polytope");
  return vol;
}

/// 8m(m+1)(2 pi)^{m+1}, the factor turning Vol(Delta) into S-tilde.
inline double s_tilde_factor(std::size_t m) {
  return 8.0 * m * (m + 1) * std::pow(2.0 * std::numbers::pi, m + 1);
}

template <class Scalar>
struct VolumeValue {
  Scalar vol_delta;
  /// S-tilde divided by pi^{m+1}; exact in rational mode.
  Scalar s_tilde_pi_coeff;
  double s_tilde = 0;
  double vol_riemannian = 0;
};

template <class Scalar>
VolumeValue<Scalar> vol_fn(const VolumeFan& fan, const std::vector<Scalar>& xi) {
  VolumeValue<Scalar> v;
  v.vol_delta = fan.volume(xi);
  const std::size_t m = fan.m();
  Scalar c = Scalar(static_cast<long>(8 * m * (m + 1)));
  for (std::size_t i = 0; i <= m; ++i) c *= Scalar(2);
  v.s_tilde_pi_coeff = c * v.vol_delta;
  v.s_tilde = s_tilde_factor(m) * to_double(v.vol_delta);
  v.vol_riemannian = v.s_tilde / (4.0 * m);
  return v;
}

template <class Scalar>
VolumeValue<Scalar> vol_fn(const ToricDiagram& d, const std::vector<Scalar>& xi) {
  return vol_fn(VolumeFan(d), xi);
}

/// Gradient of xi -> Vol(Delta(xi)). Satisfies <xi, grad> = -(m+1) Vol.
template <class Scalar>
std::vector<Scalar> grad_vol(const VolumeFan& fan, const std::vector<Scalar>& xi) {
  return fan.gradient(xi);
}

template <class Scalar>
std::vector<Scalar> grad_vol(const ToricDiagram& d, const std::vector<Scalar>& xi) {
  return VolumeFan(d).gradient(xi);
}

}  // namespace reebvolmin
