#pragma once

// Series solutions of the one-variable operators: hypergeometric bases at
// the orbifold point, the Frobenius ladder (repeated indicial roots handled
// through the nilpotent ring Q[eps]/(eps^mu)), the epsilon-deformation of
// the fundamental period, connection data at the cusp, and monodromy.

#include <array>
#include <complex>
#include <stdexcept>
#include <vector>

#include "hessegkz/logseries.hpp"
#include "hessegkz/rational.hpp"
#include "hessegkz/special.hpp"
#include "hessegkz/thetaop.hpp"

namespace hessegkz {

// ----------------------- orbifold basis -----------------------

struct OrbifoldBasis {
  LogSeries pi1;  // psi * 2F1(1/3,1/3;2/3;psi^3)
  LogSeries pi2;  // psi^2 * 2F1(2/3,2/3;4/3;psi^3)
  LogSeries j3;   // psi^3 * 3F2(1,1,1;4/3,5/3;psi^3)
};

inline LogSeries hypergeometric_power_series(const std::vector<Rat>& upper,
                                             const std::vector<Rat>& lower,
                                             long leading_power, long N) {
  LogSeries s(Rat(0), N, 0);
  std::vector<Rat> t = pfq_terms(upper, lower, N / 3 + 1);
  for (long n = 0; leading_power + 3 * n <= N; ++n)
    s.c[0][leading_power + 3 * n] = t[n];
  return s;
}

inline OrbifoldBasis orbifold_basis(long N) {
  OrbifoldBasis b;
  b.pi1 = hypergeometric_power_series({rat(1, 3), rat(1, 3)}, {rat(2, 3)}, 1, N);
  b.pi2 = hypergeometric_power_series({rat(2, 3), rat(2, 3)}, {rat(4, 3)}, 2, N);
  b.j3 = hypergeometric_power_series({rat(1), rat(1), rat(1)},
                                     {rat(4, 3), rat(5, 3)}, 3, N);
  return b;
}

// ----------------------- Frobenius solver -----------------------

struct IndicialRoot {
  Rat root;
  int multiplicity;
};

// Rational roots with multiplicities of a rational-coefficient polynomial
// (poly[i] multiplies x^i).  Works by the rational-root theorem on the
// denominator-cleared polynomial, with synthetic deflation.
inline std::vector<IndicialRoot> rational_roots(std::vector<Rat> poly) {
  auto eval_at = [](const std::vector<Rat>& p, const Rat& x) {
    Rat acc(0);
    for (long i = (long)p.size() - 1; i >= 0; --i) acc = acc * x + p[i];
    return acc;
  };
  auto deflate = [](std::vector<Rat>& p, const Rat& r) {
    // synthetic division by (x - r); assumes r is a root
    std::vector<Rat> q(p.size() - 1);
    Rat carry = p.back();
    for (long i = (long)p.size() - 2; i >= 0; --i) {
      q[i] = carry;
      carry = p[i] + r * carry;
    }
    p = q;
  };
  std::vector<IndicialRoot> roots;
  auto record = [&](const Rat& r, int mult) {
    for (auto& x : roots)
      if (x.root == r) {
        x.multiplicity += mult;
        return;
      }
    roots.push_back({r, mult});
  };
  // strip trailing zero coefficients, then zero roots
  while (!poly.empty() && poly.back() == 0) poly.pop_back();
  if (poly.empty()) throw std::domain_error("zero indicial polynomial");
  std::size_t v = 0;
  while (v < poly.size() && poly[v] == 0) ++v;
  if (v > 0) {
    record(Rat(0), (int)v);
    poly.erase(poly.begin(), poly.begin() + v);
  }
  while (poly.size() > 1) {
    // clear denominators: candidates p/q with p | |a0|, q | |an|
    mpz_class lcm = 1;
    for (const auto& c : poly) {
      mpz_class d = c.get_den(), g;
      mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), d.get_mpz_t());
      lcm = lcm / g * d;
    }
    mpz_class a0 = abs(mpz_class(Rat(poly.front() * Rat(lcm)).get_num()));
    mpz_class an = abs(mpz_class(Rat(poly.back() * Rat(lcm)).get_num()));
    bool found = false;
    for (mpz_class p = 1; p <= a0 && !found; ++p) {
      if (a0 % p != 0) continue;
      for (mpz_class q = 1; q <= an && !found; ++q) {
        if (an % q != 0) continue;
        for (int sgn : {1, -1}) {
          Rat cand(sgn > 0 ? p : mpz_class(-p), q);
          cand.canonicalize();
          if (eval_at(poly, cand) != 0) continue;
          int mult = 0;
          while (poly.size() > 1 && eval_at(poly, cand) == 0) {
            deflate(poly, cand);
            ++mult;
          }
          record(cand, mult);
          found = true;
          break;
        }
      }
    }
    if (!found)
      throw std::domain_error(
          "indicial polynomial has irrational roots; not supported");
  }
  return roots;
}

// Solve A y = 0 by Frobenius series at the chart origin.  Returns a full
// basis; each repeated indicial root of multiplicity mu yields solutions of
// log depth 0..mu-1.  Resonant couplings outside the equal-root ladder are
// reported by exception (diagnostic), not solved.
inline std::vector<LogSeries> frobenius_solve(const ThetaOperator& A, long N) {
  if (A.nvars() != 1)
    throw std::invalid_argument("frobenius_solve: one-variable operator");
  if (A.terms.empty()) throw std::invalid_argument("zero operator");
  // normalize so the lowest Laurent exponent is 0
  long m_min = A.terms.begin()->first[0];
  std::map<long, ThetaPoly> P;  // exponent -> theta-polynomial
  for (const auto& [m, p] : A.terms) P[m[0] - m_min] = p;
  if (P.find(0) == P.end())
    throw std::domain_error("no indicial term at the origin");
  // indicial polynomial = P_0 viewed as univariate polynomial
  const ThetaPoly& P0 = P.at(0);
  std::vector<Rat> ind(P0.degree_in(0) + 1, Rat(0));
  for (const auto& [d, c] : P0.coeffs) ind[d[0]] = c;
  std::vector<IndicialRoot> roots = rational_roots(ind);

  std::vector<LogSeries> basis;
  for (const auto& ir : roots) {
    std::size_t mu = (std::size_t)ir.multiplicity;
    // deformed coefficients c_k(eps) with c_0 = 1 in Q[eps]/(eps^mu)
    std::vector<EpsPoly> c(N + 1, EpsPoly(mu));
    c[0].c[0] = Rat(1);
    for (long k = 1; k <= N; ++k) {
      EpsPoly num(mu);
      for (const auto& [m, Pm] : P) {
        if (m == 0 || m > k) continue;
        if (c[k - m].is_zero()) continue;
        num += Pm.eval_eps(ir.root + (k - m), mu) * c[k - m];
      }
      if (num.is_zero()) {
        c[k] = EpsPoly(mu);
        continue;
      }
      EpsPoly den = P0.eval_eps(ir.root + k, mu);
      if (den.c[0] == 0)
        throw std::domain_error(
            "resonant indicial roots (integer spacing with coupling) at shift " +
            std::to_string(k) + "; ladder not implemented");
      c[k] = Rat(-1) * (num / den);
    }
    // solutions: eps^d coefficient of sum_k c_k(eps) z^{k+root+eps}
    for (std::size_t d = 0; d < mu; ++d) {
      LogSeries s(ir.root, N, (int)d);
      for (long k = 0; k <= N; ++k)
        for (std::size_t j = 0; j <= d; ++j) s.c[j][k] = c[k].c[d - j];
      s.trim_depth();
      basis.push_back(s);
    }
  }
  return basis;
}

// ----------------------- epsilon deformation -----------------------

// Coefficients f_0..f_K of the deformed fundamental period
//   sum_n Q(eps) Gamma(3n+3eps+1)/Gamma(n+eps+1)^3 (alpha/27)^{n+eps},
// returned as log-series in alpha whose log basis is log(alpha/27).
inline std::vector<LogSeries> epsilon_deformation(long N, int K) {
  if (K < 2) throw std::invalid_argument("epsilon depth must be >= 2");
  std::size_t mu = (std::size_t)K + 1;
  std::vector<EpsPoly> c(N + 1, EpsPoly(mu));
  c[0].c[0] = Rat(1);
  for (long n = 1; n <= N; ++n) {
    // ratio (3n+3eps)(3n-1+3eps)(3n-2+3eps) / (27 (n+eps)^3)
    auto lin = [&](const Rat& a, const Rat& b) {
      EpsPoly e(mu);
      e.c[0] = a;
      if (mu > 1) e.c[1] = b;
      return e;
    };
    EpsPoly num = lin(Rat(3 * n), Rat(3)) * lin(Rat(3 * n - 1), Rat(3)) *
                  lin(Rat(3 * n - 2), Rat(3));
    EpsPoly den = Rat(27) * (lin(Rat(n), Rat(1)) * lin(Rat(n), Rat(1)) *
                             lin(Rat(n), Rat(1)));
    c[n] = (c[n - 1] * num) / den;
  }
  std::vector<LogSeries> f;
  for (int d = 0; d <= K; ++d) {
    LogSeries s(Rat(0), N, d, rat(1, 27));
    for (long n = 0; n <= N; ++n)
      for (int j = 0; j <= d; ++j) s.c[j][n] = c[n].c[d - j];
    s.trim_depth();
    f.push_back(s);
  }
  return f;
}

// ----------------------- cusp basis (numeric) -----------------------

struct CuspBasis {
  // all functions of alpha = psi^{-3}, valid for 0 < |alpha| < 1 off the cut
  cplx omega0(cplx alpha) const {
    return hyp2f1(rat(1, 3), rat(2, 3), rat(1), alpha);
  }
  cplx omega1(cplx alpha) const {
    return kappa() * hyp2f1(rat(1, 3), rat(2, 3), rat(1), 1.0 - alpha);
  }
  static cplx kappa() { return cplx(0, 1) / std::sqrt(3.0); }
  static cplx rho() { return std::exp(cplx(0, 2.0 * M_PI / 3.0)); }

  // Gamma-rescaled orbifold solutions evaluated at psi = rho * alpha^{-1/3};
  // for 0 < alpha < 1 the hypergeometric argument psi^3 = 1/alpha exceeds 1
  // and is continued on the lower side of the cut.  This branch convention
  // is the one under which both displayed connection identities hold.
  cplx psi_of_alpha(cplx alpha) const {
    return rho() * std::pow(alpha, -1.0 / 3.0);
  }
  cplx hyparg(cplx alpha) const {
    cplx w = 1.0 / alpha;
    if (w.imag() == 0.0 && w.real() > 1.0) w = cplx(w.real(), -1e-30);
    return w;
  }
  cplx pi_tilde1(cplx alpha) const {
    cplx psi = psi_of_alpha(alpha);
    cplx f = hyp2f1_continued(rat(1, 3), rat(1, 3), rat(2, 3), hyparg(alpha));
    double g13 = gamma_real(1.0 / 3.0), g23 = gamma_real(2.0 / 3.0);
    return -rho() * g13 / (g23 * g23) * psi * f;
  }
  cplx pi_tilde2(cplx alpha) const {
    cplx psi = psi_of_alpha(alpha);
    cplx f = hyp2f1_continued(rat(2, 3), rat(2, 3), rat(4, 3), hyparg(alpha));
    double gm13 = gamma_real(-1.0 / 3.0), g13 = gamma_real(1.0 / 3.0);
    return rho() * rho() * gm13 / (g13 * g13) * psi * psi * f;
  }

  // residuals of the two displayed connection identities
  double connection_residual0(cplx alpha) const {
    return std::abs(omega0(alpha) - (pi_tilde1(alpha) + pi_tilde2(alpha)));
  }
  double connection_residual1(cplx alpha) const {
    cplx rhs = kappa() * (-rho() * pi_tilde1(alpha) +
                          rho() * rho() * pi_tilde2(alpha));
    return std::abs(omega1(alpha) - rhs);
  }
};

// ----------------------- monodromy -----------------------

using Mat3 = std::array<std::array<cplx, 3>, 3>;

inline Mat3 mat_mul(const Mat3& A, const Mat3& B) {
  Mat3 C{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      cplx s = 0.0;
      for (int k = 0; k < 3; ++k) s += A[i][k] * B[k][j];
      C[i][j] = s;
    }
  return C;
}

enum class MonodromyPoint { orbifold, cusp };

// Monodromy of the fixed bases: (pi1, pi2, J3) under psi -> e^{2 pi i} psi,
// or (f0, f1, f2) under alpha -> e^{2 pi i} alpha.  Read off exactly from
// exponents and log depths.
inline Mat3 monodromy_matrix(MonodromyPoint p) {
  Mat3 M{};
  if (p == MonodromyPoint::orbifold) {
    cplx rho = std::exp(cplx(0, 2.0 * M_PI / 3.0));
    M[0][0] = rho;          // pi1 ~ psi^1
    M[1][1] = rho * rho;    // pi2 ~ psi^2
    M[2][2] = 1.0;          // J3  ~ psi^3
  } else {
    // f_j -> sum_{i<=j} (2 pi i)^{j-i}/(j-i)! f_i
    cplx t(0, 2.0 * M_PI);
    for (int j = 0; j < 3; ++j)
      for (int i = 0; i <= j; ++i) {
        cplx num = 1.0;
        double fact = 1.0;
        for (int k = 0; k < j - i; ++k) {
          num *= t;
          fact *= (k + 1);
        }
        M[i][j] = num / fact;
      }
  }
  return M;
}

}  // namespace hessegkz
