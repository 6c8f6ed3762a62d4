#pragma once

// Truncated series  sum_j (log z)^j/j! * sum_k c_{j,k} z^{k+rho}  with exact
// rational coefficients.  The log basis may carry a rational shift: the
// stored powers are of  L = log(z * log_shift)  (log_shift = 1/27 realizes
// the log(alpha/27) basis used by the epsilon-ladder identities).

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "hessegkz/rational.hpp"
#include "hessegkz/thetaop.hpp"

namespace hessegkz {

struct LogSeries {
  Rat rho;        // exponent offset
  long N = 0;     // coefficients k = 0..N are valid
  Rat log_shift;  // L = log(z * log_shift); purely an interpretation tag
  // c[j][k] multiplies L^j/j! * z^{k+rho}; outer size = depth+1
  std::vector<std::vector<Rat>> c;

  LogSeries() : rho(0), log_shift(1) {}
  LogSeries(const Rat& rho_, long N_, int depth = 0, const Rat& shift = Rat(1))
      : rho(rho_), N(N_), log_shift(shift),
        c(depth + 1, std::vector<Rat>(N_ + 1, Rat(0))) {}

  int depth() const { return static_cast<int>(c.size()) - 1; }

  bool is_zero() const {
    for (const auto& row : c)
      for (const auto& x : row)
        if (x != 0) return false;
    return true;
  }

  // Trim trailing log levels that are identically zero.
  void trim_depth() {
    while (c.size() > 1) {
      bool allz = true;
      for (const auto& x : c.back())
        if (x != 0) {
          allz = false;
          break;
        }
      if (!allz) break;
      c.pop_back();
    }
  }

  Rat coeff(int j, long k) const {
    if (j < 0 || j >= static_cast<int>(c.size()) || k < 0 || k > N) return Rat(0);
    return c[j][k];
  }

  LogSeries& operator+=(const LogSeries& o) {
    if (rho != o.rho || log_shift != o.log_shift)
      throw std::invalid_argument("log-series basis mismatch in addition");
    N = std::min(N, o.N);
    if (o.c.size() > c.size()) c.resize(o.c.size(), std::vector<Rat>(N + 1, Rat(0)));
    for (auto& row : c) row.resize(N + 1);
    for (std::size_t j = 0; j < o.c.size(); ++j)
      for (long k = 0; k <= N; ++k) c[j][k] += o.c[j][k];
    return *this;
  }
  friend LogSeries operator+(LogSeries a, const LogSeries& b) { return a += b; }
  friend LogSeries operator*(const Rat& s, LogSeries a) {
    for (auto& row : a.c)
      for (auto& x : row) x *= s;
    return a;
  }
  friend LogSeries operator-(const LogSeries& a, const LogSeries& b) {
    return a + Rat(-1) * b;
  }

  bool equal_through_truncation(const LogSeries& o) const {
    LogSeries d = *this - o;
    return d.is_zero();
  }

  // Product (same log basis).  Exponent offsets add.
  friend LogSeries operator*(const LogSeries& a, const LogSeries& b) {
    if (a.log_shift != b.log_shift)
      throw std::invalid_argument("log-series basis mismatch in product");
    LogSeries r(a.rho + b.rho, std::min(a.N, b.N),
                a.depth() + b.depth(), a.log_shift);
    for (int j1 = 0; j1 <= a.depth(); ++j1)
      for (int j2 = 0; j2 <= b.depth(); ++j2) {
        Rat binom = binomial_rat(j1 + j2, j1);
        if (binom == 0) continue;
        for (long k1 = 0; k1 <= r.N; ++k1) {
          if (a.c[j1][k1] == 0) continue;
          for (long k2 = 0; k1 + k2 <= r.N; ++k2) {
            if (b.c[j2][k2] == 0) continue;
            r.c[j1 + j2][k1 + k2] += binom * a.c[j1][k1] * b.c[j2][k2];
          }
        }
      }
    return r;
  }

  // d/dz of a log-free series.
  LogSeries derivative() const {
    if (depth() != 0)
      throw std::invalid_argument("derivative implemented for log-free series");
    LogSeries r(rho - 1, N, 0, log_shift);
    for (long k = 0; k <= N; ++k) r.c[0][k] = (Rat(k) + rho) * c[0][k];
    return r;
  }

  // Termwise primitive from 0 of a log-free series (requires k+rho != -1).
  LogSeries integrate() const {
    if (depth() != 0)
      throw std::invalid_argument("integrate implemented for log-free series");
    LogSeries r(rho + 1, N, 0, log_shift);
    for (long k = 0; k <= N; ++k) {
      Rat e = Rat(k) + rho + 1;
      if (e == 0) {
        if (c[0][k] != 0)
          throw std::domain_error("termwise integration hits exponent -1");
        continue;
      }
      r.c[0][k] = c[0][k] / e;
    }
    return r;
  }

  cplx eval(cplx z) const {
    cplx L = std::log(z * to_double(log_shift));
    cplx zr = std::pow(z, to_double(rho));
    cplx acc = 0.0;
    for (int j = 0; j <= depth(); ++j) {
      cplx pw = 1.0;
      cplx sum = 0.0;
      for (long k = 0; k <= N; ++k) {
        sum += to_double(c[j][k]) * pw;
        pw *= z;
      }
      double jf = 1.0;
      for (int i = 2; i <= j; ++i) jf *= i;
      acc += sum * std::pow(L, j) / jf;
    }
    return acc * zr;
  }

  void emit_csv(std::ostream& os) const {
    os << "j,k,numerator,denominator\n";
    for (int j = 0; j <= depth(); ++j)
      for (long k = 0; k <= N; ++k)
        if (c[j][k] != 0)
          os << j << "," << k << "," << c[j][k].get_num().get_str() << ","
             << c[j][k].get_den().get_str() << "\n";
  }
};

// Exact action of a one-variable theta-operator on a log-series.  The result
// is truncated at N minus the Laurent spread of the operator.
inline LogSeries apply_to_series(const ThetaOperator& A, const LogSeries& s) {
  if (A.nvars() != 1)
    throw std::invalid_argument("apply_to_series: one-variable operator expected");
  if (A.terms.empty()) return LogSeries(s.rho, s.N, 0, s.log_shift);
  long m_min = A.terms.begin()->first[0];
  long m_max = A.terms.rbegin()->first[0];
  long Nout = s.N - (m_max - m_min);
  if (Nout < 0) Nout = 0;
  LogSeries r(s.rho + m_min, Nout, s.depth(), s.log_shift);
  std::size_t K = static_cast<std::size_t>(s.depth()) + 1;
  for (const auto& [m, P] : A.terms) {
    long off = m[0] - m_min;
    for (long k = 0; k <= s.N; ++k) {
      long kout = k + off;
      if (kout > Nout) break;
      // P(theta) on L^j/j! z^{k+rho}: theta = (k+rho) + lambda with lambda
      // the nilpotent log-lowering map; eval_eps gives the Taylor pieces.
      EpsPoly taylor = P.eval_eps(s.rho + k, K);
      for (int j = 0; j <= s.depth(); ++j) {
        if (s.c[j][k] == 0) continue;
        for (int i = 0; i <= j; ++i) {
          if (taylor.c[i] == 0) continue;
          r.c[j - i][kout] += taylor.c[i] * s.c[j][k];
        }
      }
    }
  }
  r.trim_depth();
  return r;
}

// If A*s is a constant series through truncation, return that constant.
// Throws (reporting the first offending order) otherwise.
inline Rat inhomogeneous_constant(const ThetaOperator& A, const LogSeries& s) {
  LogSeries r = apply_to_series(A, s);
  Rat value(0);
  for (int j = 0; j <= r.depth(); ++j)
    for (long k = 0; k <= r.N; ++k) {
      if (r.c[j][k] == 0) continue;
      if (j == 0 && Rat(k) + r.rho == 0 && value == 0) {
        value = r.c[j][k];
      } else {
        throw std::domain_error(
            "operator application is not constant; first offending order: z^(" +
            Rat(Rat(k) + r.rho).get_str() + ") log-depth " + std::to_string(j));
      }
    }
  return value;
}

}  // namespace hessegkz
