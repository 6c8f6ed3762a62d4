#pragma once

// Exact q-expansions: truncated rational power series in q, eta-quotient
// products, Lambert sums, and the formal tau-polynomial + q-series values
// used by the Eichler-integral expressions.

#include <ostream>
#include <stdexcept>
#include <vector>

#include "hessegkz/rational.hpp"

namespace hessegkz {

struct QSeries {
  Rat lead;               // overall prefactor exponent q^lead (usually 0)
  std::vector<Rat> c;     // c[k] multiplies q^{k+lead}

  QSeries() : lead(0) {}
  explicit QSeries(long N, const Rat& lead_ = Rat(0))
      : lead(lead_), c(N + 1, Rat(0)) {}

  long order() const { return (long)c.size() - 1; }

  static QSeries one(long N) {
    QSeries s(N);
    s.c[0] = Rat(1);
    return s;
  }

  QSeries& operator+=(const QSeries& o) {
    if (lead != o.lead) throw std::invalid_argument("q-series leading mismatch");
    std::size_t n = std::min(c.size(), o.c.size());
    c.resize(n);
    for (std::size_t k = 0; k < n; ++k) c[k] += o.c[k];
    return *this;
  }
  friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
  friend QSeries operator*(const Rat& s, QSeries a) {
    for (auto& x : a.c) x *= s;
    return a;
  }
  friend QSeries operator-(const QSeries& a, const QSeries& b) {
    return a + Rat(-1) * b;
  }

  friend QSeries operator*(const QSeries& a, const QSeries& b) {
    QSeries r(std::min(a.order(), b.order()), a.lead + b.lead);
    for (long i = 0; i <= r.order(); ++i) {
      if (a.c[i] == 0) continue;
      for (long j = 0; i + j <= r.order(); ++j) {
        if (b.c[j] == 0) continue;
        r.c[i + j] += a.c[i] * b.c[j];
      }
    }
    return r;
  }

  // Multiplicative inverse (leading coefficient must be a unit).
  QSeries inverse() const {
    if (c.empty() || c[0] == 0)
      throw std::domain_error("q-series inverse requires nonzero constant term");
    QSeries r(order(), -lead);
    r.c[0] = Rat(1) / c[0];
    for (long k = 1; k <= order(); ++k) {
      Rat acc(0);
      for (long j = 1; j <= k; ++j) acc += c[j] * r.c[k - j];
      r.c[k] = -acc / c[0];
    }
    return r;
  }

  bool is_zero() const {
    for (const auto& x : c)
      if (x != 0) return false;
    return true;
  }

  // D = q d/dq.
  QSeries D() const {
    QSeries r = *this;
    for (long k = 0; k <= order(); ++k) r.c[k] *= (Rat(k) + lead);
    return r;
  }

  cplx eval(cplx q) const {
    cplx acc = 0.0, pw = 1.0;
    for (long k = 0; k <= order(); ++k) {
      acc += to_double(c[k]) * pw;
      pw *= q;
    }
    if (lead != 0) acc *= std::pow(q, to_double(lead));
    return acc;
  }

  void emit_csv(std::ostream& os) const {
    os << "k,numerator,denominator\n";
    for (long k = 0; k <= order(); ++k)
      if (c[k] != 0)
        os << rat_str(Rat(k) + lead) << "," << c[k].get_num().get_str() << ","
           << c[k].get_den().get_str() << "\n";
  }
};

inline int chi_minus3(long n) {
  if (n < 0) throw std::invalid_argument("chi_minus3 expects n >= 0");
  switch (n % 3) {
    case 1: return 1;
    case 2: return -1;
    default: return 0;
  }
}

// B = eta(tau)^3 / eta(3 tau) = prod (1-q^n)^3 / (1-q^{3n}); the fractional
// eta exponents cancel so this is an integral q-series.
inline QSeries eta_quotient_B(long N) {
  QSeries b = QSeries::one(N);
  for (long n = 1; n <= N; ++n) {
    // multiply by (1-q^n)^3
    QSeries f = QSeries::one(N);
    f.c[n] = Rat(-1);
    b = b * f * f * f;
    // divide by (1-q^{3n}) = multiply by geometric series
    if (3 * n <= N) {
      QSeries g(N);
      for (long k = 0; 3 * n * k <= N; ++k) g.c[3 * n * k] = Rat(1);
      b = b * g;
    }
  }
  return b;
}

// 1 - 9 sum_{n>=1} chi_{-3}(n) n^2 q^n/(1-q^n).
inline QSeries lambert_B3(long N) {
  QSeries s = QSeries::one(N);
  for (long n = 1; n <= N; ++n) {
    int ch = chi_minus3(n);
    if (ch == 0) continue;
    Rat coef = Rat(-9 * ch) * Rat(n) * Rat(n);
    for (long k = n; k <= N; k += n) s.c[k] += coef;
  }
  return s;
}

// q-part of the mirror map t = log(-q) + 9 sum_n n chi_{-3}(n) log(1-q^n);
// the log(-q) part is kept formal (D log(-q) = 1).
inline QSeries mirror_map_qpart(long N) {
  QSeries s(N);
  for (long n = 1; n <= N; ++n) {
    int ch = chi_minus3(n);
    if (ch == 0) continue;
    // 9 n chi(n) log(1-q^n) = -9 n chi(n) sum_k q^{nk}/k
    for (long k = 1; n * k <= N; ++k) s.c[n * k] += Rat(-9 * ch * n, k);
  }
  return s;
}

// Formal 1/2 tau^2 + b tau + a plus a q-series; houses t_GKZ.
struct TauPolynomialPlusQSeries {
  Rat a, b;        // free constants; tau^2 coefficient fixed at 1/2
  QSeries qpart;
};

// t_GKZ = 1/2 tau^2 + b tau + a + 9 sum_n chi_{-3}(n) Li_2(q^n), the
// dilogarithms expanded as formal double sums.
inline TauPolynomialPlusQSeries t_gkz_qseries(long N, const Rat& a,
                                              const Rat& b) {
  TauPolynomialPlusQSeries t;
  t.a = a;
  t.b = b;
  t.qpart = QSeries(N);
  for (long n = 1; n <= N; ++n) {
    int ch = chi_minus3(n);
    if (ch == 0) continue;
    for (long k = 1; n * k <= N; ++k)
      t.qpart.c[n * k] += Rat(9 * ch) / (Rat(k) * Rat(k));
  }
  return t;
}

}  // namespace hessegkz
