#pragma once

// The analytic side of the q-expansion identities: Wronskian of the period
// basis, the variation-of-parameters fit of the extra solution, the
// Hauptmodul bridge (1-alpha) omega0^3 = B^3(q(tau)), the mirror-map check
// theta_alpha t = omega0, and the singular-cycle pairing.

#include <array>
#include <cmath>
#include <stdexcept>

#include "hessegkz/frobenius.hpp"
#include "hessegkz/logseries.hpp"
#include "hessegkz/qseries.hpp"
#include "hessegkz/quadrature.hpp"
#include "hessegkz/special.hpp"

namespace hessegkz {

// W(psi) = psi^2 (1 - psi^3)^{-1}.
inline cplx wronskian_value(cplx psi) {
  cplx d = 1.0 - psi * psi * psi;
  if (std::abs(d) < 1e-14)
    throw std::domain_error("Wronskian pole at psi^3 = 1");
  return psi * psi / d;
}

// Exact series of pi1' pi2 - pi1 pi2'; proportional to psi^2/(1-psi^3) with
// one constant, which is returned.  Throws if proportionality fails.
inline Rat wronskian_series_constant(long N) {
  OrbifoldBasis b = orbifold_basis(N);
  LogSeries w = b.pi1.derivative() * b.pi2 - b.pi1 * b.pi2.derivative();
  // psi^2/(1-psi^3) = sum psi^{2+3k}
  // w has rho = 1' + 2 - 1 = 2
  Rat constant(0);
  for (long k = 0; k <= w.N; ++k) {
    Rat expect = (k % 3 == 0) ? Rat(1) : Rat(0);
    Rat have = w.c[0][k];
    if (expect == 0) {
      if (have != 0) throw std::domain_error("Wronskian series shape mismatch");
      continue;
    }
    if (constant == 0)
      constant = have;
    else if (have != constant)
      throw std::domain_error("Wronskian series not proportional");
  }
  return constant;
}

struct WronskianFit {
  Rat a, b, c;
  bool residual_zero;
};

// Fit a pi1 + b pi2 + c * [pi1 * I2 - pi2 * I1] = J3-series, where
// I_i = integral from 0 of v^{-1} pi_i(v) dv, all as exact series.
inline WronskianFit wronskian_solution_fit(long N) {
  OrbifoldBasis bas = orbifold_basis(N);
  // v^{-1} pi_i: shift exponent down by one, then integrate termwise
  auto shift_int = [](const LogSeries& s) {
    LogSeries t = s;
    t.rho -= 1;
    return t.integrate();
  };
  LogSeries I1 = shift_int(bas.pi1), I2 = shift_int(bas.pi2);
  LogSeries particular = bas.pi1 * I2 - bas.pi2 * I1;  // rho = 3
  // target J3 has rho = 3; pi1 rho = 1, pi2 rho = 2.  Work in a common
  // rho = 1 frame padded to order N.
  long M = particular.N;  // product shrinks the valid order
  auto coeff_at = [&](const LogSeries& s, long power) {
    // coefficient of psi^power
    Rat off = Rat(power) - s.rho;
    if (off.get_den() != 1) return Rat(0);
    long k = off.get_num().get_si();
    return s.coeff(0, k);
  };
  WronskianFit fit;
  fit.a = coeff_at(bas.j3, 1);  // J3 has no psi^1 term -> a = 0 forced
  fit.b = coeff_at(bas.j3, 2);
  Rat p3 = coeff_at(particular, 3);
  if (p3 == 0) throw std::domain_error("degenerate Wronskian fit");
  fit.c = (coeff_at(bas.j3, 3) - fit.a * coeff_at(bas.pi1, 3) -
           fit.b * coeff_at(bas.pi2, 3)) /
          p3;
  fit.residual_zero = true;
  for (long p = 1; p <= M; ++p) {
    Rat lhs = fit.a * coeff_at(bas.pi1, p) + fit.b * coeff_at(bas.pi2, p) +
              fit.c * coeff_at(particular, p);
    if (lhs != coeff_at(bas.j3, p)) {
      fit.residual_zero = false;
      break;
    }
  }
  return fit;
}

// tau(alpha) = omega1/omega0 with the displayed kappa = i/sqrt(3).
inline cplx tau_of_alpha(cplx alpha) {
  CuspBasis cb;
  return cb.omega1(alpha) / cb.omega0(alpha);
}

struct BridgeValue {
  cplx tau;
  cplx q;
  cplx ratio;  // (1-alpha) omega0^3 / B^3(q)
};

inline BridgeValue hauptmodul_bridge(cplx alpha, const QSeries& b3) {
  CuspBasis cb;
  cplx om0 = cb.omega0(alpha);
  cplx tau = cb.omega1(alpha) / om0;
  if (tau.imag() <= 0.0)
    throw std::domain_error("tau(alpha) not in the upper half-plane");
  cplx q = std::exp(cplx(0, 2.0 * M_PI) * tau);
  cplx B3 = b3.eval(q);
  return {tau, q, (1.0 - alpha) * om0 * om0 * om0 / B3};
}

struct MirrorMapCheck {
  bool dt_equals_b3_exact;      // D t = B^3 as exact q-series
  double theta_alpha_residual;  // |theta_alpha t - omega0| at the sample
};

// theta_alpha t computed through the bridge: t(alpha) = t(q(tau(alpha))),
// theta_alpha t = D t(q) * 2 pi i * theta_alpha tau, with theta_alpha tau
// from Cauchy differentiation of tau(alpha).
inline MirrorMapCheck mirror_map_check(long N, cplx alpha_sample = cplx(0.05, 0.0)) {
  MirrorMapCheck out;
  QSeries b3 = lambert_B3(N);
  QSeries dt = mirror_map_qpart(N).D();
  dt.c[0] += Rat(1);  // D log(-q) = 1
  out.dt_equals_b3_exact = (dt - b3).is_zero();

  std::vector<cplx> taylor =
      cauchy_taylor([&](cplx a) { return tau_of_alpha(a); }, alpha_sample,
                    0.25 * std::abs(alpha_sample), 1);
  cplx dtau = taylor[1];  // d tau / d alpha
  cplx tau = taylor[0];
  cplx q = std::exp(cplx(0, 2.0 * M_PI) * tau);
  cplx Dt_q = b3.eval(q);  // D t = B^3 just verified
  cplx theta_alpha_t = Dt_q * cplx(0, 2.0 * M_PI) * dtau * alpha_sample;
  CuspBasis cb;
  out.theta_alpha_residual = std::abs(theta_alpha_t - cb.omega0(alpha_sample));
  return out;
}

// omega0(v) omega1(alpha) - omega0(alpha) omega1(v), and the Beltrami
// identity residual against -(tau(v)-tau(alpha)) omega0(v) omega0(alpha).
struct PairingValue {
  cplx value;
  double beltrami_residual;
};

inline PairingValue singular_cycle_pairing(cplx v, cplx alpha) {
  CuspBasis cb;
  cplx p = cb.omega0(v) * cb.omega1(alpha) - cb.omega0(alpha) * cb.omega1(v);
  cplx rhs = -(tau_of_alpha(v) - tau_of_alpha(alpha)) * cb.omega0(v) *
             cb.omega0(alpha);
  return {p, std::abs(p - rhs)};
}

}  // namespace hessegkz
