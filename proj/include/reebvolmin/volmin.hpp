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

// Minimization of the volume functional over the Reeb slice
// {xi in int C* | <e, xi> = l(m+1)} and the gradient form of the Futaki
// obstruction.

#include "cone.hpp"
#include "reeb_volume.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace reebvolmin {

/// Raised when a diagram is not good or has no height.
class NotGoodError : public Error {
public:
  NotGoodError(std::string what, GoodnessReport rep) : Error(std::move(what)), report(std::move(rep)) {}
  GoodnessReport report;
};

class NoHeightError : public Error {
public:
  using Error::Error;
};

/// Affine parameterization of the Reeb slice: xi(u) = base + B u with B the
/// last m columns of g^{-1}, so that g xi(u) = (l(m+1), u).
class ReebSlice {
public:
  ReebSlice(const ToricDiagram& d, const Height& h) : m_(d.m), height_(h) {
    const std::size_t n = d.dim();
    ginv_ = unimodular_inverse(h.g);
    level_ = Rational(h.level * BigInt(static_cast<long>(d.m + 1)));
    base_.assign(n, 0.0);
    basis_ = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d.m));
    for (std::size_t i = 0; i < n; ++i) {
      base_[i] = to_double(level_) * to_double(ginv_[i][0]);
      for (std::size_t j = 0; j < d.m; ++j)
        basis_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = to_double(ginv_[i][j + 1]);
    }
    e_ = to_doubles(h.covector);
  }

  std::size_t m() const { return m_; }
  const Height& height() const { return height_; }
  /// l(m+1)
  const Rational& level() const { return level_; }
  const Eigen::MatrixXd& basis() const { return basis_; }

  std::vector<double> point(const Eigen::VectorXd& u) const {
    std::vector<double> xi = base_;
    for (std::size_t i = 0; i < xi.size(); ++i)
      xi[i] += basis_.row(static_cast<Eigen::Index>(i)).dot(u);
    return xi;
  }

  /// Slice coordinates u of a point xi on the slice: the tail of g xi.
  Eigen::VectorXd coords(const std::vector<double>& xi) const {
    Eigen::VectorXd u(static_cast<Eigen::Index>(m_));
    for (std::size_t j = 0; j < m_; ++j) {
      double s = 0;
      for (std::size_t i = 0; i < xi.size(); ++i) s += to_double(height_.g[j + 1][i]) * xi[i];
      u(static_cast<Eigen::Index>(j)) = s;
    }
    return u;
  }

  template <class Scalar>
  Scalar offset(const std::vector<Scalar>& xi) const {
    Scalar s = pair(height_.covector, xi);
    if constexpr (is_exact_v<Scalar>)
      return s - level_;
    else
      return s - to_double(level_);
  }

  /// Component of v orthogonal to the slice normal e.
  std::vector<double> tangential(const std::vector<double>& v) const {
    double ee = dot(e_, e_), ev = dot(e_, v);
    std::vector<double> out = v;
    for (std::size_t i = 0; i < v.size(); ++i) out[i] -= ev / ee * e_[i];
    return out;
  }

private:
  std::size_t m_;
  Height height_;
  IntMatrix ginv_;
  Rational level_;
  std::vector<double> base_;
  Eigen::MatrixXd basis_;
  std::vector<double> e_;
};

inline double norm(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

/// Checks goodness and height; throws NotGoodError / NoHeightError.
inline Height require_good_height(const ToricDiagram& d) {
  auto rep = is_good(d);
  if (!rep.verdict) throw NotGoodError(std::string("diagram is not good: ") + to_string(rep.reason), rep);
  auto h = detect_height(d);
  if (!h) throw NoHeightError("diagram has no height");
  return *h;
}

/// (m+1) times the mean of the normals; first normalized coordinate l(m+1).
inline std::vector<double> initial_point(const ToricDiagram& d, const Height& h) {
  VolumeFan fan(d);
  RatVec mean(d.dim(), 0);
  for (const auto& l : d.normals)
    for (std::size_t i = 0; i < d.dim(); ++i) mean[i] += l[i];
  for (auto& x : mean) x *= Rational(static_cast<long>(d.m + 1), static_cast<long>(d.normals.size()));
  if (pair(h.covector, mean) != h.level * BigInt(static_cast<long>(d.m + 1)))
    throw Error("normals do not share the detected height");
  auto xi = to_doubles(mean);
  if (!fan.in_interior(xi)) throw InputError("degenerate cone: empty interior");
  return xi;
}

struct MinimizeOptions {
  double tolerance = 1e-10;  // on |slice gradient| / S-tilde
  int max_iterations = 200;
  double backtrack = 0.5;
  double armijo = 1e-4;
  int max_halvings = 60;
  std::optional<std::vector<double>> start;
};

struct MinimizationResult {
  std::vector<double> xi_min;
  double s_tilde_min = 0;
  double vol_delta_min = 0;
  double grad_norm = 0;  // |tangential grad S-tilde|
  int iterations = 0;
  bool converged = false;
  int bfgs_steps = 0;
  std::vector<double> history;  // S-tilde after each accepted step, start first
  std::string diagnostics;
};

/// Damped Newton on the slice with a backtracking line search that rejects
/// steps leaving the open slice. Falls back to a BFGS direction whenever the
/// analytic Hessian fails to factor.
inline MinimizationResult minimize(const ToricDiagram& d, const MinimizeOptions& opt = {}) {
  Height h = require_good_height(d);
  VolumeFan fan(d);
  ReebSlice slice(d, h);
  const double K = s_tilde_factor(d.m);
  const auto& B = slice.basis();
  const auto mi = static_cast<Eigen::Index>(d.m);

  auto value = [&](const std::vector<double>& xi) { return K * fan.volume(xi); };
  auto slice_grad = [&](const std::vector<double>& xi) {
    auto g = fan.gradient(xi);
    Eigen::VectorXd gx(static_cast<Eigen::Index>(g.size()));
    for (std::size_t i = 0; i < g.size(); ++i) gx(static_cast<Eigen::Index>(i)) = K * g[i];
    return Eigen::VectorXd(B.transpose() * gx);
  };
  auto tangential_norm = [&](const std::vector<double>& xi) {
    auto g = fan.gradient(xi);
    for (auto& x : g) x *= K;
    return norm(slice.tangential(g));
  };

  MinimizationResult res;
  std::vector<double> xi = opt.start ? *opt.start : initial_point(d, h);
  if (xi.size() != d.dim()) throw InputError("start point has wrong dimension");
  if (std::abs(slice.offset(xi)) > 1e-9 * std::abs(to_double(slice.level())))
    throw InputError("start point is not on the Reeb slice");
  if (!fan.in_interior(xi)) throw InputError("start point is not interior to the dual cone");
  Eigen::VectorXd u = slice.coords(xi);
  xi = slice.point(u);

  double f = value(xi);
  res.history.push_back(f);
  Eigen::VectorXd grad = slice_grad(xi);
  Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(mi, mi);  // BFGS inverse estimate
  bool have_bfgs = false;

  for (int it = 0; it < opt.max_iterations; ++it) {
    res.grad_norm = tangential_norm(xi);
    if (res.grad_norm <= opt.tolerance * f) {
      res.converged = true;
      break;
    }
    auto hx = fan.hessian(xi);
    Eigen::MatrixXd H(mi, mi);
    {
      Eigen::MatrixXd Hx(static_cast<Eigen::Index>(d.dim()), static_cast<Eigen::Index>(d.dim()));
      for (std::size_t a = 0; a < d.dim(); ++a)
        for (std::size_t b = 0; b < d.dim(); ++b)
          Hx(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = K * hx[a][b];
      H = B.transpose() * Hx * B;
    }
    Eigen::VectorXd step;
    Eigen::LLT<Eigen::MatrixXd> llt(H);
    if (llt.info() == Eigen::Success) {
      step = -llt.solve(grad);
    } else {
      if (!have_bfgs) hinv = Eigen::MatrixXd::Identity(mi, mi) / std::max(1.0, grad.norm());
      step = -hinv * grad;
      ++res.bfgs_steps;
    }
    double slope = grad.dot(step);
    if (!(slope < 0)) {
      res.diagnostics = "search direction is not a descent direction";
      break;
    }
    double t = 1.0;
    bool accepted = false;
    std::vector<double> trial;
    double ftrial = 0;
    for (int k = 0; k <= opt.max_halvings; ++k, t *= opt.backtrack) {
      trial = slice.point(u + t * step);
      if (!fan.in_interior(trial)) continue;
      ftrial = value(trial);
      if (ftrial <= f + opt.armijo * t * slope && ftrial < f) {
        accepted = true;
        break;
      }
      // Near the minimum the decrease drops below double rounding; fall back
      // to requiring a smaller gradient.
      if (std::abs(ftrial - f) <= 64 * std::numeric_limits<double>::epsilon() * f &&
          tangential_norm(trial) < res.grad_norm) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      res.diagnostics = "line search failed";
      break;
    }
    Eigen::VectorXd unew = u + t * step;
    Eigen::VectorXd gnew = slice_grad(trial);
    Eigen::VectorXd s = unew - u, y = gnew - grad;
    double sy = s.dot(y);
    if (sy > 0) {
      if (!have_bfgs) hinv = Eigen::MatrixXd::Identity(mi, mi) * (sy / y.dot(y));
      Eigen::MatrixXd I = Eigen::MatrixXd::Identity(mi, mi);
      double rho = 1.0 / sy;
      hinv = (I - rho * s * y.transpose()) * hinv * (I - rho * y * s.transpose()) +
             rho * s * s.transpose();
      have_bfgs = true;
    }
    u = unew;
    xi = trial;
    f = ftrial;
    grad = gnew;
    res.history.push_back(f);
    res.iterations = it + 1;
  }
  res.grad_norm = tangential_norm(xi);
  if (!res.converged && res.grad_norm <= opt.tolerance * f) res.converged = true;
  if (!res.converged && res.diagnostics.empty()) res.diagnostics = "iteration limit reached";
  res.xi_min = xi;
  res.s_tilde_min = f;
  res.vol_delta_min = fan.volume(xi);
  return res;
}

struct FutakiReport {
  std::vector<double> slice_gradient;
  double norm = 0;
  double s_tilde = 0;
  bool vanishes = false;
};

/// Tangential gradient of S-tilde at xi. Its vanishing is equivalent to the
/// vanishing of the Futaki character on the slice.
inline FutakiReport futaki_obstruction(const ToricDiagram& d, const std::vector<double>& xi,
                                       double rel_tolerance = 1e-8) {
  Height h = require_good_height(d);
  ReebSlice slice(d, h);
  if (xi.size() != d.dim()) throw InputError("Reeb vector has wrong dimension");
  if (std::abs(slice.offset(xi)) > 1e-9 * std::abs(to_double(slice.level())))
    throw InputError("Reeb vector is not on the slice <e, xi> = " + to_string(slice.level()));
  VolumeFan fan(d);
  const double K = s_tilde_factor(d.m);
  auto g = fan.gradient(xi);
  for (auto& x : g) x *= K;
  FutakiReport rep;
  rep.slice_gradient = slice.tangential(g);
  rep.norm = norm(rep.slice_gradient);
  rep.s_tilde = K * fan.volume(xi);
  rep.vanishes = rep.norm <= rel_tolerance * rep.s_tilde;
  return rep;
}

struct EinsteinVerdict {
  bool admits = false;
  std::vector<double> xi_min;
  double distance = 0;
  MinimizationResult minimization;
};

/// Whether xi is the Sasaki-Einstein Reeb vector (the slice minimizer).
inline EinsteinVerdict einstein_verdict(const ToricDiagram& d, const std::vector<double>& xi,
                                        double tolerance = 1e-6) {
  Height h = require_good_height(d);
  ReebSlice slice(d, h);
  if (xi.size() != d.dim()) throw InputError("Reeb vector has wrong dimension");
  if (std::abs(slice.offset(xi)) > 1e-9 * std::abs(to_double(slice.level())))
    throw InputError("Reeb vector is not on the slice");
  EinsteinVerdict v;
  v.minimization = minimize(d);
  v.xi_min = v.minimization.xi_min;
  double dist = 0;
  for (std::size_t i = 0; i < xi.size(); ++i) dist = std::max(dist, std::abs(xi[i] - v.xi_min[i]));
  v.distance = dist;
  v.admits = dist <= tolerance;
  return v;
}

}  // namespace reebvolmin
