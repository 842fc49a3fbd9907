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

// Exact linear algebra over Z and Q. Matrices are row lists; all routines
// are value-in, value-out.

#include "arith.hpp"

#include <algorithm>
#include <cassert>
#include <utility>
#include <vector>

namespace reebvolmin {

using IntMatrix = std::vector<IntVec>;
using RatMatrix = std::vector<RatVec>;

inline std::size_t num_cols(const IntMatrix& a, std::size_t fallback = 0) {
  return a.empty() ? fallback : a.front().size();
}

/// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<std::size_t> rref(RatMatrix& a) {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  const std::size_t rows = a.size(), cols = a.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    Rational inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline RatMatrix to_rational(const IntMatrix& a) {
  RatMatrix out;
  out.reserve(a.size());
  for (const auto& row : a) out.push_back(to_ratvec(row));
  return out;
}

inline std::size_t rank(const IntMatrix& a) {
  RatMatrix r = to_rational(a);
  return rref(r).size();
}

/// Clears denominators and divides by the content.
inline IntVec integral_primitive(const RatVec& v) {
  BigInt den = 1;
  for (const auto& x : v) den = lcm(den, boost::multiprecision::denominator(x));
  IntVec out;
  out.reserve(v.size());
  for (const auto& x : v)
    out.push_back(boost::multiprecision::numerator(x) * (den / boost::multiprecision::denominator(x)));
  BigInt g = gcd_of(out);
  if (g > 1)
    for (auto& x : out) x /= g;
  return out;
}

/// A basis of {x in Q^n : a x = 0}, each vector integral and primitive.
inline IntMatrix rational_kernel(const IntMatrix& a, std::size_t n) {
  IntMatrix basis;
  if (a.empty()) {
    for (std::size_t i = 0; i < n; ++i) {
      IntVec e(n, 0);
      e[i] = 1;
      basis.push_back(e);
    }
    return basis;
  }
  RatMatrix r = to_rational(a);
  auto pivots = rref(r);
  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) is_pivot[p] = true;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    RatVec v(n, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r[i][free];
    basis.push_back(integral_primitive(v));
  }
  return basis;
}

/// Determinant of a square integer matrix (fraction-free Bareiss).
inline BigInt determinant(IntMatrix a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

inline IntMatrix transpose(const IntMatrix& a, std::size_t cols_if_empty = 0) {
  const std::size_t rows = a.size(), cols = num_cols(a, cols_if_empty);
  IntMatrix t(cols, IntVec(rows));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) t[j][i] = a[i][j];
  return t;
}

inline IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size(), k = b.size(), m = num_cols(b);
  IntMatrix c(n, IntVec(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l)
      if (a[i][l] != 0)
        for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
  return c;
}

inline IntVec apply(const IntMatrix& g, const IntVec& v) {
  IntVec out(g.size(), 0);
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = dot(g[i], v);
  return out;
}

inline IntMatrix identity(std::size_t n) {
  IntMatrix id(n, IntVec(n, 0));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
  return id;
}

/// Inverse of a unimodular integer matrix.
inline IntMatrix unimodular_inverse(const IntMatrix& g) {
  const std::size_t n = g.size();
  RatMatrix aug(n, RatVec(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = g[i][j];
    aug[i][n + i] = 1;
  }
  auto piv = rref(aug);
  if (piv.size() != n || piv.back() != n - 1) throw Error("singular matrix");
  IntMatrix inv(n, IntVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& x = aug[i][n + j];
      if (boost::multiprecision::denominator(x) != 1) throw Error("matrix is not unimodular");
      inv[i][j] = boost::multiprecision::numerator(x);
    }
  return inv;
}

/// Extended gcd: returns (g, s, t) with s*a + t*b = g >= 0.
inline std::tuple<BigInt, BigInt, BigInt> xgcd(const BigInt& a, const BigInt& b) {
  BigInt r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    BigInt q = r0 / r1;
    BigInt tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = s0 - q * s1;
    s0 = s1;
    s1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (r0 < 0) {
    r0 = -r0;
    s0 = -s0;
    t0 = -t0;
  }
  return {r0, s0, t0};
}

/// Column-style echelon reduction: returns a unimodular U (n x n) such that
/// the columns of a*U are [B | 0] with B of full column rank r. The last
/// n-r columns of U are then a Z-basis of ker(a) intersected with Z^n.
struct ColumnEchelon {
  IntMatrix reduced;  // a * U
  IntMatrix u;
  std::size_t rank = 0;
};

inline ColumnEchelon column_echelon(const IntMatrix& a, std::size_t n) {
  ColumnEchelon out{a, identity(n), 0};
  auto& h = out.reduced;
  auto& u = out.u;
  auto col_op = [&](std::size_t i, std::size_t j, const BigInt& s, const BigInt& t,
                    const BigInt& p, const BigInt& q) {
    // (col_i, col_j) <- (s col_i + t col_j, p col_i + q col_j)
    for (auto* m : {&h, &u}) {
      for (auto& row : *m) {
        BigInt ci = row[i], cj = row[j];
        row[i] = s * ci + t * cj;
        row[j] = p * ci + q * cj;
      }
    }
  };
  std::size_t pc = 0;
  for (std::size_t r = 0; r < h.size() && pc < n; ++r) {
    for (std::size_t j = pc + 1; j < n; ++j) {
      if (h[r][j] == 0) continue;
      auto [g, s, t] = xgcd(h[r][pc], h[r][j]);
      BigInt a1 = h[r][pc] / g, b1 = h[r][j] / g;
      col_op(pc, j, s, t, -b1, a1);
    }
    if (h[r][pc] != 0) ++pc;
  }
  out.rank = pc;
  return out;
}

/// A Z-basis of the lattice {x in Z^n : a x = 0}.
inline IntMatrix integer_kernel(const IntMatrix& a, std::size_t n) {
  auto ce = column_echelon(a, n);
  IntMatrix basis;
  for (std::size_t j = ce.rank; j < n; ++j) {
    IntVec col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = ce.u[i][j];
    basis.push_back(std::move(col));
  }
  return basis;
}

/// Elementary divisors (Smith normal form diagonal, nonzero entries only)
/// of an integer matrix. Each divides the next.
inline std::vector<BigInt> smith_divisors(IntMatrix a) {
  std::vector<BigInt> diag;
  if (a.empty()) return diag;
  const std::size_t rows = a.size(), cols = a.front().size();
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // pivot: smallest nonzero |entry| in the trailing block
    std::size_t pr = rows, pcl = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (a[i][j] != 0 && (pr == rows || abs(a[i][j]) < abs(a[pr][pcl]))) {
          pr = i;
          pcl = j;
        }
    if (pr == rows) break;
    std::swap(a[t], a[pr]);
    for (auto& row : a) std::swap(row[t], row[pcl]);
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        if (a[i][t] % a[t][t] == 0) {
          BigInt k = a[i][t] / a[t][t];
          for (std::size_t j = t; j < cols; ++j) a[i][j] -= k * a[t][j];
          continue;
        }
        auto [g, s, u] = xgcd(a[t][t], a[i][t]);
        BigInt x = a[t][t] / g, y = a[i][t] / g;
        for (std::size_t j = t; j < cols; ++j) {
          BigInt rt = a[t][j], ri = a[i][j];
          a[t][j] = s * rt + u * ri;
          a[i][j] = -y * rt + x * ri;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        if (a[t][j] % a[t][t] == 0) {
          BigInt k = a[t][j] / a[t][t];
          for (std::size_t i = t; i < rows; ++i) a[i][j] -= k * a[i][t];
          continue;
        }
        auto [g, s, u] = xgcd(a[t][t], a[t][j]);
        BigInt x = a[t][t] / g, y = a[t][j] / g;
        for (std::size_t i = t; i < rows; ++i) {
          BigInt ct = a[i][t], cj = a[i][j];
          a[i][t] = s * ct + u * cj;
          a[i][j] = -y * ct + x * cj;
        }
        clean = false;
      }
      for (std::size_t i = t + 1; i < rows && clean; ++i)
        if (a[i][t] != 0) clean = false;
      if (!clean) continue;
      // divisibility: fold any entry not divisible by the pivot into row t
      bool divisible = true;
      for (std::size_t i = t + 1; i < rows && divisible; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a[i][j] % a[t][t] != 0) {
            for (std::size_t k = t; k < cols; ++k) a[t][k] += a[i][k];
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    diag.push_back(abs(a[t][t]));
  }
  return diag;
}

}  // namespace reebvolmin
