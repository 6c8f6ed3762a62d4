#pragma once

// Exact rational arithmetic helpers and the truncated polynomial ring
// Q[eps]/(eps^K) used for log-series ladders.

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hessegkz {

using Rat = mpq_class;
using cplx = std::complex<double>;

inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat rat_pow(const Rat& base, long e) {
  if (e == 0) return Rat(1);
  Rat b = base;
  bool neg = e < 0;
  unsigned long n = neg ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  Rat acc(1);
  while (n) {
    if (n & 1) acc *= b;
    b *= b;
    n >>= 1;
  }
  if (neg) {
    if (acc == 0) throw std::domain_error("rat_pow: zero to negative power");
    acc = Rat(1) / acc;
  }
  return acc;
}

inline double to_double(const Rat& r) { return r.get_d(); }

inline std::string rat_str(const Rat& r) { return r.get_str(); }

// Parses "p", "-p", "p/q".
inline Rat rat_parse(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  r.canonicalize();
  return r;
}

// Truncated polynomials in a nilpotent variable eps with eps^K == 0.
// All elements of one computation share the same K.
struct EpsPoly {
  std::vector<Rat> c;  // c[i] multiplies eps^i, size == K

  EpsPoly() = default;
  explicit EpsPoly(std::size_t K) : c(K, Rat(0)) {}
  EpsPoly(std::size_t K, const Rat& c0) : c(K, Rat(0)) {
    if (K > 0) c[0] = c0;
  }

  std::size_t order() const { return c.size(); }

  bool is_zero() const {
    for (const auto& x : c)
      if (x != 0) return false;
    return true;
  }

  EpsPoly& operator+=(const EpsPoly& o) {
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
    return *this;
  }
  EpsPoly& operator-=(const EpsPoly& o) {
    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.c[i];
    return *this;
  }
  friend EpsPoly operator+(EpsPoly a, const EpsPoly& b) { return a += b; }
  friend EpsPoly operator-(EpsPoly a, const EpsPoly& b) { return a -= b; }

  friend EpsPoly operator*(const EpsPoly& a, const EpsPoly& b) {
    EpsPoly r(a.c.size());
    for (std::size_t i = 0; i < a.c.size(); ++i) {
      if (a.c[i] == 0) continue;
      for (std::size_t j = 0; i + j < b.c.size(); ++j) {
        if (b.c[j] == 0) continue;
        r.c[i + j] += a.c[i] * b.c[j];
      }
    }
    return r;
  }

  friend EpsPoly operator*(const Rat& s, EpsPoly a) {
    for (auto& x : a.c) x *= s;
    return a;
  }

  // Division by a unit (constant term nonzero).
  friend EpsPoly operator/(const EpsPoly& a, const EpsPoly& b) {
    if (b.c.empty() || b.c[0] == 0)
      throw std::domain_error("EpsPoly division by non-unit");
    EpsPoly q(a.c.size());
    for (std::size_t i = 0; i < a.c.size(); ++i) {
      Rat acc = a.c[i];
      for (std::size_t j = 1; j <= i; ++j) acc -= b.c[j] * q.c[i - j];
      q.c[i] = acc / b.c[0];
    }
    return q;
  }
};

inline Rat factorial_rat(long n) {
  Rat r(1);
  for (long i = 2; i <= n; ++i) r *= i;
  return r;
}

inline Rat binomial_rat(long n, long k) {
  if (k < 0 || k > n) return Rat(0);
  Rat r(1);
  for (long i = 0; i < k; ++i) r *= Rat(n - i, i + 1);
  return r;
}

}  // namespace hessegkz
