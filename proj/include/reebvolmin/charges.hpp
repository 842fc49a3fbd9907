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

// Charge spectrum of a toric cone: the torus weights n in C ∩ Z^{m+1}
// graded by <xi, n>, the heat-trace volume it determines, and the lattice
// count limit #{<xi,n> <= R} / R^{m+1} -> Vol(Delta(xi)).

#include "cone.hpp"
#include "reeb_volume.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace reebvolmin {

/// Worker cap from REEBVOLMIN_THREADS (default 1).
inline unsigned worker_count() {
  if (const char* s = std::getenv("REEBVOLMIN_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end != s && v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

/// Scans C ∩ Z^n ∩ {<xi, x> <= R} column by column: the first n-1
/// coordinates are boxed, the last one is an exact integer interval.
template <class Scalar>
class LatticeScan {
public:
  LatticeScan(const ToricDiagram& d, std::vector<Scalar> xi, Scalar cutoff)
      : n_(d.dim()), xi_(std::move(xi)), cutoff_(cutoff) {
    VolumeFan fan(d);
    if (xi_.size() != n_) throw InputError("Reeb vector has wrong dimension");
    if (!fan.in_interior(xi_)) throw InputError("Reeb vector on the boundary: infinite enumeration");
    if (!(cutoff_ >= 0)) throw InputError("cutoff must be nonnegative");
    for (const auto& l : d.normals) {
      std::vector<std::int64_t> row;
      for (const auto& x : l) {
        if (abs(x) > BigInt(1) << 40) throw InputError("normal entries too large for enumeration");
        row.push_back(x.convert_to<std::int64_t>());
      }
      normals_.push_back(std::move(row));
    }
    lo_.assign(n_, 0);
    hi_.assign(n_, 0);
    for (std::size_t i = 0; i < fan.rays().size(); ++i) {
      Scalar s = fan.pairing(i, xi_);
      for (std::size_t c = 0; c < n_; ++c) {
        double v = to_double(cutoff_) * to_double(fan.rays()[i][c]) / to_double(s);
        lo_[c] = std::min<std::int64_t>(lo_[c], static_cast<std::int64_t>(std::floor(v)) - 1);
        hi_[c] = std::max<std::int64_t>(hi_[c], static_cast<std::int64_t>(std::ceil(v)) + 1);
      }
    }
  }

  std::size_t dim() const { return n_; }
  std::int64_t first_lo() const { return lo_[0]; }
  std::int64_t first_hi() const { return hi_[0]; }
  const std::vector<Scalar>& xi() const { return xi_; }

  /// Calls f(prefix, lo, hi, a) for every column with a nonempty interval;
  /// a = <xi', prefix>. When n = 1 the single column has an empty prefix.
  /// Restricted to prefix[0] == first when n > 1.
  template <class F>
  void scan_slab(std::int64_t first, F&& f) const {
    std::vector<std::int64_t> x(n_ - 1, 0);
    if (n_ == 1) {
      column(x, f);
      return;
    }
    x[0] = first;
    for (std::size_t i = 1; i + 1 < n_; ++i) x[i] = lo_[i];
    for (;;) {
      column(x, f);
      std::size_t i = n_ - 2;
      for (;;) {
        if (i == 0) return;
        if (x[i] < hi_[i]) {
          ++x[i];
          break;
        }
        x[i] = lo_[i];
        --i;
      }
    }
  }

  template <class F>
  void scan(F&& f) const {
    if (n_ == 1) {
      scan_slab(0, f);
      return;
    }
    for (std::int64_t a = lo_[0]; a <= hi_[0]; ++a) scan_slab(a, f);
  }

private:
  static std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
  }
  static std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

  template <class F>
  void column(const std::vector<std::int64_t>& x, F& f) const {
    const std::size_t last = n_ - 1;
    std::int64_t lo = lo_[last], hi = hi_[last];
    for (const auto& l : normals_) {
      std::int64_t s = 0;
      for (std::size_t i = 0; i < last; ++i) s += l[i] * x[i];
      std::int64_t c = l[last];
      if (c > 0)
        lo = std::max(lo, ceil_div(-s, c));
      else if (c < 0)
        hi = std::min(hi, floor_div(s, -c));
      else if (s < 0)
        return;
      if (lo > hi) return;
    }
    Scalar a = 0;
    for (std::size_t i = 0; i < last; ++i) a += xi_[i] * Scalar(static_cast<long>(x[i]));
    const Scalar& c = xi_[last];
    Scalar room = cutoff_ - a;
    if constexpr (is_exact_v<Scalar>) {
      if (c > 0)
        hi = std::min(hi, floor_of(room / c).template convert_to<std::int64_t>());
      else if (c < 0)
        lo = std::max(lo, ceil_of(room / c).template convert_to<std::int64_t>());
      else if (room < 0)
        return;
    } else {
      const double slack = 1e-12 * std::max(1.0, std::abs(cutoff_));
      if (c > 0)
        hi = std::min(hi, static_cast<std::int64_t>(std::floor((room + slack) / c)));
      else if (c < 0)
        lo = std::max(lo, static_cast<std::int64_t>(std::ceil((room + slack) / c)));
      else if (room < -slack)
        return;
    }
    if (lo > hi) return;
    f(x, lo, hi, a);
  }

  std::size_t n_;
  std::vector<Scalar> xi_;
  Scalar cutoff_;
  std::vector<std::vector<std::int64_t>> normals_;
  std::vector<std::int64_t> lo_, hi_;
};

/// All n in C ∩ Z^{m+1} with <xi, n> <= R, lexicographically ordered.
template <class Scalar>
IntMatrix lattice_points(const ToricDiagram& d, const std::vector<Scalar>& xi, Scalar cutoff) {
  LatticeScan<Scalar> scan(d, xi, cutoff);
  IntMatrix out;
  scan.scan([&](const std::vector<std::int64_t>& x, std::int64_t lo, std::int64_t hi, const Scalar&) {
    for (std::int64_t k = lo; k <= hi; ++k) {
      IntVec p;
      for (auto v : x) p.emplace_back(static_cast<long long>(v));
      p.emplace_back(static_cast<long long>(k));
      out.push_back(std::move(p));
    }
  });
  return out;
}

namespace detail {

/// Runs f(first) over the first-coordinate slabs on up to `threads`
/// workers; results are stored per slab so merging is order-independent.
template <class T, class F>
std::vector<T> per_slab(std::int64_t lo, std::int64_t hi, unsigned threads, F&& f) {
  const std::size_t count = static_cast<std::size_t>(hi - lo + 1);
  std::vector<T> out(count);
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = f(lo + static_cast<std::int64_t>(i));
    return out;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += threads) out[i] = f(lo + static_cast<std::int64_t>(i));
    });
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace detail

/// #{n in C ∩ Z^{m+1} : <xi, n> <= R}.
template <class Scalar>
std::uint64_t count_lattice_points(const ToricDiagram& d, const std::vector<Scalar>& xi, Scalar cutoff,
                                   unsigned threads = worker_count()) {
  LatticeScan<Scalar> scan(d, xi, cutoff);
  auto slab = [&](std::int64_t first) {
    std::uint64_t c = 0;
    scan.scan_slab(first, [&](const auto&, std::int64_t lo, std::int64_t hi, const Scalar&) {
      c += static_cast<std::uint64_t>(hi - lo + 1);
    });
    return c;
  };
  if (scan.dim() == 1) return slab(0);
  auto parts = detail::per_slab<std::uint64_t>(scan.first_lo(), scan.first_hi(), threads, slab);
  std::uint64_t total = 0;
  for (auto c : parts) total += c;
  return total;
}

template <class Scalar>
struct ChargeSpectrum {
  std::vector<std::pair<Scalar, std::uint64_t>> entries;
  Scalar cutoff;
};

/// Charges <xi, n> with multiplicities. Float charges closer than 1e-12
/// (relative) are merged.
template <class Scalar>
ChargeSpectrum<Scalar> charge_spectrum(const ToricDiagram& d, const std::vector<Scalar>& xi, Scalar cutoff) {
  LatticeScan<Scalar> scan(d, xi, cutoff);
  std::vector<Scalar> charges;
  const Scalar& c = xi.back();
  scan.scan([&](const auto&, std::int64_t lo, std::int64_t hi, const Scalar& a) {
    for (std::int64_t k = lo; k <= hi; ++k) charges.push_back(a + c * Scalar(static_cast<long>(k)));
  });
  std::sort(charges.begin(), charges.end());
  ChargeSpectrum<Scalar> out;
  out.cutoff = cutoff;
  for (const auto& q : charges) {
    bool same = false;
    if (!out.entries.empty()) {
      const Scalar& last = out.entries.back().first;
      if constexpr (is_exact_v<Scalar>)
        same = q == last;
      else
        same = std::abs(q - last) <= 1e-12 * std::max(1.0, std::abs(q));
    }
    if (same)
      ++out.entries.back().second;
    else
      out.entries.emplace_back(q, 1);
  }
  return out;
}

/// Eigenvalue of the Laplacian on S for a holomorphic function of charge
/// lambda: lambda(lambda + 2m).
template <class Scalar>
Scalar laplacian_eigenvalue(const Scalar& lambda, std::size_t m) {
  if (lambda < 0) throw InputError("charge must be nonnegative");
  return lambda * (lambda + Scalar(static_cast<long>(2 * m)));
}

/// Volume of the unit sphere S^{2m+1}: 2 pi^{m+1} / m!.
inline double unit_sphere_volume(std::size_t m) {
  double fact = 1;
  for (std::size_t i = 2; i <= m; ++i) fact *= static_cast<double>(i);
  return 2.0 * std::pow(std::numbers::pi, static_cast<double>(m + 1)) / fact;
}

/// Regularized upper incomplete gamma Q(k, x) for integer k.
inline double upper_gamma_q(std::size_t k, double x) {
  double term = 1, sum = 1;
  for (std::size_t i = 1; i < k; ++i) {
    term *= x / static_cast<double>(i);
    sum += term;
  }
  return std::exp(-x) * sum;
}

/// Smallest cutoff R with tail fraction Q(m+1, t_min R) <= tail.
inline double required_cutoff(std::size_t m, double t_min, double tail = 1e-6) {
  double lo = 0, hi = 1;
  while (upper_gamma_q(m + 1, hi) > tail) hi *= 2;
  for (int i = 0; i < 100; ++i) {
    double mid = 0.5 * (lo + hi);
    (upper_gamma_q(m + 1, mid) > tail ? lo : hi) = mid;
  }
  return std::ceil(hi / t_min);
}

class InsufficientCutoff : public InputError {
public:
  InsufficientCutoff(double given, double needed)
      : InputError("cutoff " + fmt(given) + " too small; need at least " + fmt(needed)), required(needed) {}
  double required;

private:
  static std::string fmt(double x) {
    std::ostringstream os;
    os << x;
    return os.str();
  }
};

inline const std::vector<double>& default_t_grid() {
  static const std::vector<double> grid{0.2, 0.1, 0.05, 0.025};
  return grid;
}

/// Richardson table for samples f(h_0), f(h_0/2), ... with error expansion
/// in integer powers of h. Row k eliminates h^1..h^k.
inline std::vector<std::vector<double>> richardson(const std::vector<double>& f, std::size_t order) {
  std::vector<std::vector<double>> table{f};
  for (std::size_t k = 1; k <= order && table.back().size() > 1; ++k) {
    const auto& prev = table.back();
    double p = std::pow(2.0, static_cast<double>(k));
    std::vector<double> next;
    for (std::size_t i = 0; i + 1 < prev.size(); ++i) next.push_back((p * prev[i + 1] - prev[i]) / (p - 1));
    table.push_back(std::move(next));
  }
  return table;
}

struct HeatTraceEstimate {
  std::vector<double> t_grid;
  std::vector<double> partial_values;  // gamma t^{m+1} sum_{lambda <= R} e^{-t lambda}
  std::vector<std::vector<double>> table;
  double extrapolated = 0;
  double truncation_bound = 0;
  double cutoff = 0;
};

/// gamma_{2m+1} lim_{t -> 0} t^{m+1} sum_j exp(-t lambda_j), evaluated on a
/// halving t grid and Richardson-extrapolated (order 2, finest entry).
inline HeatTraceEstimate heat_trace_volume(const ToricDiagram& d, const std::vector<double>& xi, double cutoff,
                                           const std::vector<double>& t_grid = default_t_grid(),
                                           unsigned threads = worker_count()) {
  if (t_grid.size() < 3) throw InputError("t grid needs at least 3 points");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (std::abs(t_grid[i] - t_grid[i - 1] / 2) > 1e-15 * t_grid[i - 1])
      throw InputError("t grid must halve at each step");
  const double t_min = t_grid.back();
  const double need = required_cutoff(d.m, t_min);
  if (cutoff < need) throw InsufficientCutoff(cutoff, need);

  LatticeScan<double> scan(d, xi, cutoff);
  const std::size_t nt = t_grid.size();
  const double c = xi.back();
  auto slab = [&](std::int64_t first) {
    std::vector<double> s(nt, 0.0);
    scan.scan_slab(first, [&](const auto&, std::int64_t lo, std::int64_t hi, double a) {
      double cnt = static_cast<double>(hi - lo + 1);
      double base = std::min(a + c * static_cast<double>(lo), a + c * static_cast<double>(hi));
      double step = std::abs(c);
      for (std::size_t j = 0; j < nt; ++j) {
        double t = t_grid[j];
        double lead = std::exp(-t * std::max(base, 0.0));
        if (step == 0)
          s[j] += cnt * lead;
        else
          s[j] += lead * std::expm1(-t * step * cnt) / std::expm1(-t * step);
      }
    });
    return s;
  };
  std::vector<std::vector<double>> parts;
  if (scan.dim() == 1)
    parts.push_back(slab(0));
  else
    parts = detail::per_slab<std::vector<double>>(scan.first_lo(), scan.first_hi(), threads, slab);
  std::vector<double> sums(nt, 0.0);
  for (const auto& p : parts)
    for (std::size_t j = 0; j < nt; ++j) sums[j] += p[j];

  HeatTraceEstimate est;
  est.t_grid = t_grid;
  est.cutoff = cutoff;
  const double gamma = unit_sphere_volume(d.m);
  for (std::size_t j = 0; j < nt; ++j)
    est.partial_values.push_back(gamma * std::pow(t_grid[j], static_cast<double>(d.m + 1)) * sums[j]);
  est.table = richardson(est.partial_values, 2);
  est.extrapolated = est.table.back().back();
  est.truncation_bound = est.partial_values.back() * upper_gamma_q(d.m + 1, t_min * cutoff);
  if (!(est.extrapolated > 0)) throw Error("heat-trace extrapolation is not positive");
  return est;
}

inline HeatTraceEstimate heat_trace_volume(const ToricDiagram& d, const std::vector<double>& xi) {
  return heat_trace_volume(d, xi, required_cutoff(d.m, default_t_grid().back()));
}

/// Ratio of the heat-trace volume to S-tilde/(4m). Analytically this is
/// 2^{-(m+1)} for every diagram and Reeb vector.
inline double calibrate_volume_constant(const ToricDiagram& d, const std::vector<double>& xi) {
  auto heat = heat_trace_volume(d, xi);
  auto v = vol_fn(d, xi);
  return heat.extrapolated / v.vol_riemannian;
}

struct LatticeLimit {
  std::vector<double> cutoffs;
  std::vector<std::uint64_t> counts;
  std::vector<double> ratios;  // count / R^{m+1}
  double extrapolated = 0;
};

/// Richardson-extrapolated #{<xi,n> <= R} / R^{m+1} on a doubling R grid.
inline LatticeLimit lattice_count_limit(const ToricDiagram& d, const std::vector<double>& xi,
                                        const std::vector<double>& cutoffs = {20, 40, 80},
                                        unsigned threads = worker_count()) {
  LatticeLimit out;
  out.cutoffs = cutoffs;
  for (double r : cutoffs) {
    auto c = count_lattice_points(d, xi, r, threads);
    out.counts.push_back(c);
    out.ratios.push_back(static_cast<double>(c) / std::pow(r, static_cast<double>(d.dim())));
  }
  out.extrapolated = richardson(out.ratios, out.ratios.size() - 1).back().back();
  return out;
}

}  // namespace reebvolmin
