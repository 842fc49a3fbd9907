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

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace reebvolmin {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

using IntVec = std::vector<BigInt>;
using RatVec = std::vector<Rational>;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent user input.
class InputError : public Error {
public:
  using Error::Error;
};

inline BigInt abs(const BigInt& a) { return a < 0 ? BigInt(-a) : a; }

inline BigInt gcd(BigInt a, BigInt b) {
  a = abs(a);
  b = abs(b);
  while (b != 0) {
    BigInt t = a % b;
    a = std::move(b);
    b = std::move(t);
  }
  return a;
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a / gcd(a, b) * b);
}

inline BigInt gcd_of(std::span<const BigInt> v) {
  BigInt g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

/// Floor of a rational as an integer.
inline BigInt floor_of(const Rational& q) {
  BigInt n = boost::multiprecision::numerator(q);
  BigInt d = boost::multiprecision::denominator(q);
  BigInt f = n / d;
  if (n % d != 0 && (n < 0) != (d < 0)) f -= 1;
  return f;
}

inline BigInt ceil_of(const Rational& q) { return -floor_of(Rational(-q)); }

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline double to_double(const BigInt& q) { return q.convert_to<double>(); }
inline double to_double(double x) { return x; }

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& q) {
  if (boost::multiprecision::denominator(q) == 1)
    return boost::multiprecision::numerator(q).str();
  return boost::multiprecision::numerator(q).str() + "/" +
         boost::multiprecision::denominator(q).str();
}

/// Parses "p", "-p" or "p/q" into an exact rational.
inline Rational parse_rational(std::string_view s) {
  auto is_int = [](std::string_view t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  auto as_int = [](std::string_view t) {
    if (t[0] == '+') t.remove_prefix(1);
    return BigInt(std::string(t));
  };
  auto slash = s.find('/');
  if (slash == std::string_view::npos) {
    if (!is_int(s)) throw InputError("not a rational: '" + std::string(s) + "'");
    return Rational(as_int(s));
  }
  auto num = s.substr(0, slash);
  auto den = s.substr(slash + 1);
  if (!is_int(num) || !is_int(den))
    throw InputError("not a rational: '" + std::string(s) + "'");
  BigInt d = as_int(den);
  if (d == 0) throw InputError("zero denominator in '" + std::string(s) + "'");
  return Rational(as_int(num), d);
}

inline Rational to_rational(double x) {
  if (!std::isfinite(x)) throw InputError("non-finite value");
  return Rational(x);
}

/// The entries of `v` divided by their gcd.
inline IntVec primitive_reduce(IntVec v) {
  BigInt g = gcd_of(v);
  if (g == 0) throw InputError("zero normal");
  if (g != 1)
    for (auto& x : v) x /= g;
  return v;
}

inline IntVec to_intvec(std::span<const std::int64_t> v) {
  return IntVec(v.begin(), v.end());
}

template <class A, class B>
auto dot(const std::vector<A>& a, const std::vector<B>& b) {
  using R = decltype(A() * B());
  R s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Pairing of an integer vector with a scalar vector (double or Rational).
template <class Scalar>
Scalar pair(const IntVec& a, const std::vector<Scalar>& x) {
  Scalar s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if constexpr (std::is_same_v<Scalar, double>)
      s += to_double(a[i]) * x[i];
    else
      s += Scalar(a[i]) * x[i];
  }
  return s;
}

inline RatVec to_ratvec(const IntVec& v) { return RatVec(v.begin(), v.end()); }

inline std::vector<double> to_doubles(const IntVec& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(to_double(x));
  return out;
}

inline std::vector<double> to_doubles(const RatVec& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(to_double(x));
  return out;
}

inline std::vector<double> to_doubles(const std::vector<double>& v) { return v; }

}  // namespace reebvolmin
