#pragma once

// Oscillating integrals over the positive octant and its rotations: series
// evaluation, the three-piece hypergeometric decomposition, direct 3d/2d
// quadrature, functional relations, and the one-dimensional Airy/Scorer
// model integrals.

#include <cmath>
#include <stdexcept>
#include <string>

#include "hessegkz/quadrature.hpp"
#include "hessegkz/special.hpp"

namespace hessegkz {

inline cplx cube_root_of_unity() { return std::exp(cplx(0, 2.0 * M_PI / 3.0)); }

struct SeriesValue {
  cplx value;
  double tail_bound;
  long terms;
};

// psi * sum_n (3 psi)^n / n! * Gamma((n+1)/3)^3 / 27.
inline SeriesValue oscillating_series(cplx psi, long N = 200) {
  if (std::abs(psi) >= 1.0)
    throw std::domain_error("oscillating series requires |psi| < 1");
  cplx acc = 0.0;
  double g[3] = {gamma_real(1.0 / 3.0), gamma_real(2.0 / 3.0), 1.0};
  // term_n = (3 psi)^n / n! * (Gamma((n+1)/3)/ 3 ... ) handled by ratio:
  // t_0 = Gamma(1/3)^3/27; t_n = t_{n-1} * 3 psi / n * (G((n+1)/3)/G(n/3))^3
  cplx t = std::pow(g[0], 3.0) / 27.0;
  double last = std::abs(t);
  long n = 0;
  for (; n < N; ++n) {
    acc += t;
    double r0 = gamma_real((n + 2) / 3.0) / gamma_real((n + 1) / 3.0);
    t *= 3.0 * psi / (double)(n + 1) * std::pow(r0, 3.0);
    last = std::abs(t);
    if (last < 1e-18 * std::abs(acc) && n > 8) {
      ++n;
      break;
    }
  }
  return {psi * acc, std::abs(psi) * last * 2.0, n};
}

struct JPieces {
  cplx j1, j2, j3;
  cplx sum() const { return j1 + j2 + j3; }
};

// The three residue-class pieces: Gamma prefactors times the hypergeometric
// closed forms.
inline JPieces j_decomposition(cplx psi) {
  if (std::abs(psi) >= 1.0)
    throw std::domain_error("j_decomposition requires |psi| < 1");
  cplx w = psi * psi * psi;
  double g13 = gamma_real(1.0 / 3.0), g23 = gamma_real(2.0 / 3.0);
  JPieces j;
  j.j1 = std::pow(g13, 3.0) / 27.0 * psi *
         hyp2f1(rat(1, 3), rat(1, 3), rat(2, 3), w);
  j.j2 = std::pow(g23, 3.0) / 9.0 * psi * psi *
         hyp2f1(rat(2, 3), rat(2, 3), rat(4, 3), w);
  PFqSpec f32;
  f32.upper = {rat(1), rat(1), rat(1)};
  f32.lower = {rat(4, 3), rat(5, 3)};
  j.j3 = (1.0 / 6.0) * psi * psi * psi * pfq_eval(f32, w, 1e-15).value;
  return j;
}

struct OscillatingSetup {
  cplx psi;
  int rotation = 0;   // k in {0,1,2}
  double R = 6.0;
  int order = 64;

  bool in_convergence_domain() const {
    cplx rk = std::pow(cube_root_of_unity(), rotation);
    return (rk * psi).real() <= 0.0;
  }
};

struct QuadratureValue {
  cplx value;
  double tail_bound;
  bool convergence_flag;
};

// psi * integral over [0,R]^3 of e^{-F(x,y,z;psi)}; the rotated chain is
// realized by the variable change y -> rho^k y (Jacobian rho^k), which maps
// it to the straight chain at rho^k psi.
inline QuadratureValue quadrature_3d(const OscillatingSetup& s) {
  cplx rk = std::pow(cube_root_of_unity(), s.rotation);
  cplx p = rk * s.psi;
  const QuadRule& r = gauss_legendre(s.order);
  double half = 0.5 * s.R;
  std::vector<double> x(s.order), w(s.order), e3(s.order);
  for (int i = 0; i < s.order; ++i) {
    x[i] = half * (1.0 + r.x[i]);
    w[i] = half * r.w[i];
    e3[i] = std::exp(-x[i] * x[i] * x[i]);
  }
  cplx acc = 0.0;
  for (int i = 0; i < s.order; ++i)
    for (int j = 0; j < s.order; ++j) {
      double xy = x[i] * x[j];
      double wij = w[i] * w[j] * e3[i] * e3[j];
      cplx inner = 0.0;
      for (int k = 0; k < s.order; ++k)
        inner += w[k] * e3[k] * std::exp(3.0 * p * xy * x[k]);
      acc += wij * inner;
    }
  // truncation error of the [0,R] cutoff: the integrand decays like
  // e^{-x^3 + 3|psi| x R^2 ...}; crude bound for |psi| < 1, R >= 4
  double tail = 3.0 * std::exp(-s.R * s.R * s.R + 3.0 * std::abs(p) * s.R * s.R);
  return {s.psi * rk * acc, tail, s.in_convergence_domain()};
}

// Dimensional reduction: I(psi) = (psi/3) * double integral over (0,inf)^2
// of dx dy / F(x, y, 1; psi).  The x = e^u - 1 substitution (both axes)
// compactifies the tail; cutoff U in the u-variable.
inline cplx quadrature_2d(cplx psi, double U = 14.0, int order = 160) {
  if (psi.imag() == 0.0 && psi.real() >= 1.0)
    throw std::domain_error(
        "real psi >= 1: the curve meets the integration chain");
  const QuadRule& r = gauss_legendre(order);
  double half = 0.5 * U;
  std::vector<double> xv(order), jac(order);
  std::vector<double> wv(order);
  for (int i = 0; i < order; ++i) {
    double u = half * (1.0 + r.x[i]);
    xv[i] = std::expm1(u);
    jac[i] = xv[i] + 1.0;  // dx = e^u du
    wv[i] = half * r.w[i];
  }
  cplx acc = 0.0;
  for (int i = 0; i < order; ++i) {
    double x = xv[i];
    double x3 = x * x * x;
    cplx row = 0.0;
    for (int j = 0; j < order; ++j) {
      double y = xv[j];
      cplx F = x3 + y * y * y + 1.0 - 3.0 * psi * x * y;
      row += wv[j] * jac[j] / F;
    }
    acc += wv[i] * jac[i] * row;
  }
  return psi / 3.0 * acc;
}

struct FunctionalRelationResult {
  double residual_rho;      // I(rho psi) vs rho J1 + rho^2 J2 + J3
  double residual_rho2;     // I(rho^2 psi) vs rho^2 J1 + rho J2 + J3
  double residual_diff;     // I_rho - I vs (rho-1) J1 + (rho^2-1) J2
  double period_fit_residual;  // I_rho - I against a pi1 + b pi2
};

inline cplx pi1_value(cplx psi) {
  return psi * hyp2f1(rat(1, 3), rat(1, 3), rat(2, 3), psi * psi * psi);
}
inline cplx pi2_value(cplx psi) {
  return psi * psi * hyp2f1(rat(2, 3), rat(2, 3), rat(4, 3), psi * psi * psi);
}

inline FunctionalRelationResult functional_relation_check(cplx psi) {
  cplx rho = cube_root_of_unity();
  JPieces j = j_decomposition(psi);
  cplx i0 = oscillating_series(psi).value;
  cplx i1 = oscillating_series(rho * psi).value;
  cplx i2 = oscillating_series(rho * rho * psi).value;
  FunctionalRelationResult res;
  res.residual_rho = std::abs(i1 - (rho * j.j1 + rho * rho * j.j2 + j.j3));
  res.residual_rho2 = std::abs(i2 - (rho * rho * j.j1 + rho * j.j2 + j.j3));
  res.residual_diff =
      std::abs((i1 - i0) - ((rho - 1.0) * j.j1 + (rho * rho - 1.0) * j.j2));
  // identify I_rho - I with a member of the period span: solve a 2x2 system
  // at two nearby points and test at psi itself
  cplx s1 = 0.6 * psi, s2 = 0.8 * psi;
  auto diff = [&](cplx p) {
    return oscillating_series(rho * p).value - oscillating_series(p).value;
  };
  cplx a11 = pi1_value(s1), a12 = pi2_value(s1);
  cplx a21 = pi1_value(s2), a22 = pi2_value(s2);
  cplx det = a11 * a22 - a12 * a21;
  cplx b1 = diff(s1), b2 = diff(s2);
  cplx ca = (b1 * a22 - b2 * a12) / det;
  cplx cb = (a11 * b2 - a21 * b1) / det;
  res.period_fit_residual =
      std::abs(diff(psi) - (ca * pi1_value(psi) + cb * pi2_value(psi)));
  return res;
}

struct ScorerValue {
  cplx value;
  int wedge;  // index k of the wedge |arg y - k 2pi/3| <= pi/6
};

// Integral of e^{-y^3 + 3 psi y} along the ray y = e^{i angle} t, t in [0,R].
inline ScorerValue airy_scorer(cplx psi, double ray_angle, double R = 8.0,
                               int order = 96) {
  double a = std::remainder(ray_angle, 2.0 * M_PI);
  int wedge = -1;
  for (int k = 0; k < 3; ++k) {
    double center = std::remainder(k * 2.0 * M_PI / 3.0, 2.0 * M_PI);
    double d = std::abs(std::remainder(a - center, 2.0 * M_PI));
    // strictly inside: on the boundary Re(y^3) = 0 and the integral is not
    // absolutely convergent
    if (d < M_PI / 6.0 - 1e-12) wedge = k;
  }
  if (wedge < 0)
    throw std::domain_error(
        "ray outside the convergence wedges |arg y - k*2pi/3| <= pi/6");
  cplx dir = std::exp(cplx(0, ray_angle));
  cplx dir3 = dir * dir * dir;
  cplx v = integrate_gl(
      [&](double t) {
        return std::exp(-dir3 * t * t * t + 3.0 * psi * dir * t);
      },
      0.0, R, order);
  return {dir * v, wedge};
}

// Third-order ODE residual g''' = 9 g + 9 psi g' for the wedge-ray integral,
// via central divided differences in psi along the given ray.
inline double scorer_ode_residual(cplx psi, double ray_angle, double h = 0.02) {
  auto g = [&](cplx p) { return airy_scorer(p, ray_angle).value; };
  auto stencil = [&](double hh, cplx& d1, cplx& d3) {
    cplx gm2 = g(psi - 2.0 * hh), gm1 = g(psi - hh), gp1 = g(psi + hh),
         gp2 = g(psi + 2.0 * hh);
    d1 = (gp1 - gm1) / (2.0 * hh);
    d3 = (gp2 - 2.0 * gp1 + 2.0 * gm1 - gm2) / (2.0 * hh * hh * hh);
  };
  // Richardson extrapolation of the O(h^2) central stencils to O(h^4)
  cplx d1a, d3a, d1b, d3b;
  stencil(h, d1a, d3a);
  stencil(0.5 * h, d1b, d3b);
  cplx d1 = (4.0 * d1b - d1a) / 3.0;
  cplx d3 = (4.0 * d3b - d3a) / 3.0;
  return std::abs(d3 - 9.0 * g(psi) - 9.0 * psi * d1);
}

}  // namespace hessegkz
