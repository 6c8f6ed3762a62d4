#pragma once

// Numeric special functions: complex Gamma (Lanczos) and generalized
// hypergeometric series evaluation inside the unit disk.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "hessegkz/rational.hpp"

namespace hessegkz {

inline cplx gamma_complex(cplx z) {
  // Lanczos approximation, g = 7, n = 9
  static const double g = 7.0;
  static const double coef[9] = {
      0.99999999999980993,  676.5203681218851,   -1259.1392167224028,
      771.32342877765313,   -176.61502916214059, 12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (z.real() < 0.5) {
    // reflection
    return M_PI / (std::sin(M_PI * z) * gamma_complex(1.0 - z));
  }
  z -= 1.0;
  cplx x = coef[0];
  for (int i = 1; i < 9; ++i) x += coef[i] / (z + cplx(i, 0));
  cplx t = z + g + 0.5;
  return std::sqrt(2.0 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

inline double gamma_real(double x) { return gamma_complex(cplx(x, 0)).real(); }

struct PFqSpec {
  std::vector<Rat> upper;
  std::vector<Rat> lower;
  long arg_power = 1;    // series argument is prefactor * z^arg_power
  Rat arg_prefactor{1};

  void validate() const {
    for (const auto& b : lower) {
      if (b <= 0 && b.get_den() == 1)
        throw std::invalid_argument("pFq lower parameter is a non-positive integer");
    }
  }
};

// Exact rational Taylor coefficients t_n of pFq(upper; lower; x), n = 0..N.
inline std::vector<Rat> pfq_terms(const std::vector<Rat>& upper,
                                  const std::vector<Rat>& lower, long N) {
  std::vector<Rat> t(N + 1);
  t[0] = Rat(1);
  for (long n = 0; n < N; ++n) {
    Rat r(1);
    for (const auto& a : upper) r *= a + n;
    for (const auto& b : lower) {
      Rat d = b + n;
      if (d == 0) throw std::invalid_argument("pFq lower parameter pole");
      r /= d;
    }
    r /= (n + 1);
    t[n + 1] = t[n] * r;
  }
  return t;
}

struct PFqResult {
  cplx value;
  double achieved_tol;
  long terms_used;
};

// Numeric pFq inside the unit disk of the transformed argument.
inline PFqResult pfq_eval(const PFqSpec& spec, cplx x, double tol) {
  spec.validate();
  cplx arg = to_double(spec.arg_prefactor) * std::pow(x, (double)spec.arg_power);
  double r = std::abs(arg);
  if (r >= 1.0)
    throw std::domain_error("pFq argument outside the open unit disk");
  cplx term = 1.0, acc = 1.0;
  long n = 0;
  double tail = 1.0;
  const long nmax = 200000;
  while (n < nmax) {
    cplx ratio = arg;
    for (const auto& a : spec.upper) ratio *= to_double(a) + (double)n;
    for (const auto& b : spec.lower) ratio /= to_double(b) + (double)n;
    ratio /= (double)(n + 1);
    term *= ratio;
    acc += term;
    ++n;
    // geometric tail bound once the term ratio settles under r' < 1
    double rr = std::abs(ratio);
    if (rr < 1.0) {
      tail = std::abs(term) * rr / (1.0 - rr);
      if (tail < tol && n > 4) break;
    }
  }
  return {acc, tail, n};
}

inline cplx hyp2f1(const Rat& a, const Rat& b, const Rat& c, cplx x,
                   double tol = 1e-14) {
  PFqSpec s;
  s.upper = {a, b};
  s.lower = {c};
  return pfq_eval(s, x, tol).value;
}

inline double digamma_real(double x) {
  double acc = 0.0;
  while (x < 8.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  // asymptotic expansion
  double inv = 1.0 / x, inv2 = inv * inv;
  double s = std::log(x) - 0.5 * inv -
             inv2 * (1.0 / 12 - inv2 * (1.0 / 120 - inv2 * (1.0 / 252 -
                     inv2 * (1.0 / 240 - inv2 * (1.0 / 132)))));
  return acc + s;
}

// 2F1 outside the unit disk via the 1/z connection.  For a != b (mod Z) the
// standard two-term formula; for a == b the logarithmic limit.  z is taken
// with its given side of the cut [1, inf) (use a signed tiny imaginary part
// to choose a side for real z > 1).
inline cplx hyp2f1_continued(const Rat& a, const Rat& b, const Rat& c, cplx z,
                             double tol = 1e-14) {
  if (std::abs(z) < 1.0) return hyp2f1(a, b, c, z, tol);
  if (a == b) {
    double ad = to_double(a), cd = to_double(c);
    cplx pref = gamma_complex(cd) /
                (gamma_complex(ad) * gamma_complex(cd - ad)) *
                std::pow(-z, -ad);
    cplx logmz = std::log(-z);
    cplx term = 1.0, acc = 0.0;
    for (int k = 0; k < 4000; ++k) {
      if (k > 0)
        term *= (ad + k - 1.0) * (ad - cd + k) / ((double)k * (double)k) / z;
      cplx brack = logmz + 2.0 * digamma_real(k + 1.0) -
                   digamma_real(ad + k) - digamma_real(cd - ad - k);
      cplx piece = term * brack;
      acc += piece;
      if (k > 4 && std::abs(piece) < tol * std::abs(acc)) break;
    }
    return pref * acc;
  }
  auto piece = [&](const Rat& p, const Rat& q) {
    double pd = to_double(p), qd = to_double(q), cd = to_double(c);
    cplx coef = gamma_complex(cd) * gamma_complex(qd - pd) /
                (gamma_complex(qd) * gamma_complex(cd - pd));
    return coef * std::pow(-z, -pd) *
           hyp2f1(p, p - c + 1, p - q + 1, 1.0 / z, tol);
  };
  return piece(a, b) + piece(b, a);
}

}  // namespace hessegkz
