#pragma once

// Deterministic quadrature building blocks: Gauss-Legendre nodes on [a,b],
// tanh-sinh nodes for endpoint-singular integrands, trapezoid rule on a
// circle for Cauchy-integral differentiation, and adaptive refinement by
// interval bisection with fixed-order panels.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "hessegkz/rational.hpp"

namespace hessegkz {

struct QuadRule {
  std::vector<double> x, w;  // nodes and weights on [-1, 1]
};

// Gauss-Legendre nodes via Newton iteration on Legendre polynomials.
inline const QuadRule& gauss_legendre(int n) {
  static std::vector<QuadRule> cache(257);
  if (n < 1 || n > 256) throw std::invalid_argument("gauss_legendre order");
  QuadRule& r = cache[n];
  if (!r.x.empty()) return r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    double dp = n * (x * p1 - p0) / (x * x - 1.0);
    r.x[n - 1 - i] = x;
    r.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

template <typename F>
cplx integrate_gl(F&& f, double a, double b, int order) {
  const QuadRule& r = gauss_legendre(order);
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  cplx acc = 0.0;
  for (std::size_t i = 0; i < r.x.size(); ++i)
    acc += r.w[i] * f(mid + half * r.x[i]);
  return acc * half;
}

// Adaptive bisection with fixed-order Gauss panels; deterministic order of
// evaluation (depth-first, left to right).
template <typename F>
cplx integrate_adaptive(F&& f, double a, double b, double reltol,
                        int order = 15, int max_depth = 24) {
  std::function<cplx(double, double, cplx, int)> rec =
      [&](double lo, double hi, cplx whole, int depth) -> cplx {
    double mid = 0.5 * (lo + hi);
    cplx left = integrate_gl(f, lo, mid, order);
    cplx right = integrate_gl(f, mid, hi, order);
    cplx sum = left + right;
    if (depth >= max_depth) return sum;
    double scale = std::abs(sum) + 1e-300;
    if (std::abs(sum - whole) <= reltol * scale) return sum;
    return rec(lo, mid, left, depth + 1) + rec(mid, hi, right, depth + 1);
  };
  cplx whole = integrate_gl(f, a, b, order);
  return rec(a, b, whole, 0);
}

// tanh-sinh quadrature of f over (0, 1); tolerates integrable endpoint
// singularities.  f may return complex values (e.g. a deformed contour).
template <typename F>
cplx integrate_tanh_sinh(F&& f, double h = 1.0 / 32, int kmax = 256) {
  cplx acc = 0.0;
  for (int k = -kmax; k <= kmax; ++k) {
    double t = k * h;
    double u = M_PI_2 * std::sinh(t);
    double x = 0.5 * (1.0 + std::tanh(u));  // in (0,1)
    double w = 0.5 * h * M_PI_2 * std::cosh(t) / (std::cosh(u) * std::cosh(u));
    if (x <= 0.0 || x >= 1.0 || w < 1e-300) continue;
    acc += w * f(x);
  }
  return acc;
}

// n-th Cauchy-derivative data: values of f on a trapezoid circle around z0.
// Returns the Taylor coefficients c_m = f^(m)(z0)/m!, m = 0..mmax.
template <typename F>
std::vector<cplx> cauchy_taylor(F&& f, cplx z0, double radius, int mmax,
                                int nodes = 64) {
  std::vector<cplx> vals(nodes);
  for (int j = 0; j < nodes; ++j) {
    double th = 2.0 * M_PI * j / nodes;
    vals[j] = f(z0 + radius * cplx(std::cos(th), std::sin(th)));
  }
  std::vector<cplx> c(mmax + 1, 0.0);
  for (int m = 0; m <= mmax; ++m) {
    cplx acc = 0.0;
    for (int j = 0; j < nodes; ++j) {
      double th = 2.0 * M_PI * j / nodes;
      acc += vals[j] * std::exp(cplx(0, -th * m));
    }
    c[m] = acc / (double)nodes / std::pow(radius, m);
  }
  return c;
}

}  // namespace hessegkz
